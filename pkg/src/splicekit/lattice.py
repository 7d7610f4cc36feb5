"""Dual lattice, discriminant group and the diagonal leaf representation.

Elements of the dual lattice are integer vectors in the dual basis ``e_i``
(``e_i(E_j) = delta_ij``).  The curve lattice sits inside as the image of the
intersection matrix ``A``, and the pairing ``e_i . e_j`` is ``(A^-1)_ij``.
Values in Q/Z are kept as Fractions normalised to ``[0, 1)``.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product

from . import linalg
from .errors import ConsistencyError, DomainError
from .graph import intersection_matrix
from .report import frac_str

EXHAUSTIVE_ORDER_LIMIT = 10**4


def mod1(x):
    return Fraction(x) - math.floor(x)


@dataclass(frozen=True)
class DualPairingTable:
    names: tuple
    entries: tuple

    def pairing(self, a, b):
        idx = {n: i for i, n in enumerate(self.names)}
        return self.entries[idx[a]][idx[b]]

    def pair_vectors(self, x, y):
        return sum(xi * self.entries[i][j] * y[j]
                   for i, xi in enumerate(x) if xi for j in range(len(y)) if y[j])


@dataclass(frozen=True)
class DiscriminantGroup:
    """Finite abelian group E*/E in Smith-normal-form coordinates.

    ``generators`` are integer vectors in the dual basis; ``invariant_factors``
    lists only the nontrivial elementary divisors, so the trivial group has no
    generators at all.
    """

    order: int
    invariant_factors: tuple
    generators: tuple
    transform: tuple      # rows of U restricted to the nontrivial factors
    names: tuple

    def reduce(self, x):
        """Canonical coordinates ``(c_1 mod d_1, ...)`` of a dual-lattice vector."""
        return tuple(sum(u * xi for u, xi in zip(row, x)) % d
                     for row, d in zip(self.transform, self.invariant_factors))

    def elements(self):
        return product(*(range(d) for d in self.invariant_factors))

    def element_vector(self, coords):
        n = len(self.names)
        return [sum(c * g[i] for c, g in zip(coords, self.generators)) for i in range(n)]

    def to_json(self):
        return {"order": self.order, "invariant_factors": list(self.invariant_factors)}


@dataclass(frozen=True)
class LeafCharacterTable:
    """``rows[k][j]`` is ``generator_k . e_{leaf_j}`` in Q/Z."""

    leaves: tuple
    rows: tuple
    group: DiscriminantGroup
    injective: bool

    def column(self, leaf):
        j = self.leaves.index(leaf)
        return tuple(r[j] for r in self.rows)

    def evaluate(self, coords):
        """Image of a group element (canonical coordinates) in (Q/Z)^t."""
        return tuple(mod1(sum(c * r[j] for c, r in zip(coords, self.rows)))
                     for j in range(len(self.leaves)))

    def to_json(self):
        return {
            "order": self.group.order,
            "invariant_factors": list(self.group.invariant_factors),
            "leaf_characters": {
                str(k): {leaf: frac_str(v) for leaf, v in zip(self.leaves, row)}
                for k, row in enumerate(self.rows)
            },
        }


def dual_pairing(g):
    A = intersection_matrix(g)
    if A.det() == 0:
        raise DomainError("intersection matrix is singular")
    inv = linalg.inverse(A.rows())
    return DualPairingTable(A.names, tuple(tuple(r) for r in inv))


def discriminant_group(g):
    A = intersection_matrix(g).rows()
    U, D, V, Uinv = linalg.smith_normal_form(A)
    diag = [D[i][i] for i in range(len(A))]
    if 0 in diag:
        raise DomainError("intersection matrix is singular; discriminant group is infinite")
    keep = [i for i, d in enumerate(diag) if d > 1]
    order = math.prod(diag)
    if order != abs(linalg.det(A)):
        raise ConsistencyError("product of invariant factors differs from |det A|")
    return DiscriminantGroup(
        order=order,
        invariant_factors=tuple(diag[i] for i in keep),
        generators=tuple(tuple(row[i] for row in Uinv) for i in keep),
        transform=tuple(tuple(U[i]) for i in keep),
        names=tuple(g.names),
    )


def leaf_representation(g, group=None, pairing=None):
    leaves = tuple(g.leaves())
    if not leaves:
        raise DomainError("graph has no leaves")
    group = group or discriminant_group(g)
    pairing = pairing or dual_pairing(g)
    idx = {n: i for i, n in enumerate(pairing.names)}
    inv = pairing.entries
    rows = tuple(
        tuple(mod1(sum(gen[i] * inv[i][idx[w]] for i in range(len(gen)) if gen[i]))
              for w in leaves)
        for gen in group.generators
    )
    table = LeafCharacterTable(leaves, rows, group, injective=False)
    if not is_injective(table):
        raise ConsistencyError("leaf character map is not injective on the discriminant group")
    return LeafCharacterTable(leaves, rows, group, injective=True)


def is_injective(table):
    if table.group.order <= EXHAUSTIVE_ORDER_LIMIT:
        return injective_by_enumeration(table)
    return injective_by_image_order(table)


def injective_by_enumeration(table):
    zero = tuple(Fraction(0) for _ in table.leaves)
    for coords in table.group.elements():
        if any(coords) and table.evaluate(coords) == zero:
            return False
    return True


def injective_by_image_order(table):
    """Compare the order of the image subgroup of (Q/Z)^t with the group order.

    With N a common denominator, the image is (rowspan(N*rows) + N Z^t) / N Z^t,
    whose order is N^t divided by the product of the Smith invariants of the
    stacked matrix [N*rows; N*I].
    """
    t = len(table.leaves)
    if not table.rows:
        return True
    N = reduce(math.lcm, (x.denominator for r in table.rows for x in r), 1)
    M = [[int(x * N) for x in r] for r in table.rows]
    M += [[N * int(i == j) for j in range(t)] for i in range(t)]
    _, D, _, _ = linalg.smith_normal_form(M)
    index = math.prod(D[i][i] for i in range(t))
    return N**t // index == table.group.order


def character_of_monomial(table, exponents):
    """Character by which the group scales the monomial ``prod z_w^exponents[w]``.

    Returned as one Q/Z value per group generator.
    """
    for w in exponents:
        if w not in table.leaves:
            raise DomainError(f"unknown leaf {w!r}")
    cols = {w: table.column(w) for w in exponents}
    return tuple(
        mod1(sum(a * cols[w][k] for w, a in exponents.items()))
        for k in range(len(table.rows))
    )
