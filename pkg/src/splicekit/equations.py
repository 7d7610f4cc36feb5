"""Splice-type equations: admissible monomials, Hamm matrices, equation systems.

Higher-order terms are never generated; every equation is the linear
combination of admissible monomials alone.
"""

from dataclasses import dataclass, field

from . import linalg
from .errors import ConditionError, ConsistencyError, DomainError
from .graph import cf_contract, star_arms, validate_resolution_graph
from .lattice import leaf_representation
from .splice import (
    SpliceDiagram,
    check_semigroup_conditions,
    iter_representations,
    validate_splice_diagram,
    weight_system,
)

DEFAULT_MONOMIAL_LIMIT = 10_000
HAMM_RETRIES = 100

STATUS_SPLICE_TYPE = "splice type"
STATUS_CONJECTURAL = "conjectural universal abelian cover (QHS diagram)"


@dataclass(frozen=True)
class Monomial:
    coeff: int
    exponents: dict

    def to_json(self):
        return {"coeff": self.coeff, "exp": dict(self.exponents)}


@dataclass(frozen=True)
class NodeEquations:
    node: str
    edges: tuple          # neighbour names, one admissible monomial each
    monomials: tuple      # exponent maps, aligned with ``edges``
    matrix: tuple
    equations: tuple      # each a tuple of Monomials

    def to_json(self):
        return {
            "node": self.node,
            "matrix": [list(r) for r in self.matrix],
            "equations": [[m.to_json() for m in eq] for eq in self.equations],
        }


@dataclass(frozen=True)
class EquationSystem:
    variables: tuple
    nodes: tuple
    status: str = STATUS_SPLICE_TYPE
    aliases: dict = field(default_factory=dict, compare=False)
    higher_order: tuple = ()

    @property
    def equations(self):
        return [eq for ne in self.nodes for eq in ne.equations]

    def to_json(self):
        return {
            "variables": list(self.variables),
            "status": self.status,
            "nodes": [ne.to_json() for ne in self.nodes],
        }


@dataclass(frozen=True)
class BrieskornSystem:
    variables: tuple
    exponents: dict
    arms: dict            # leaf -> (n, q)
    matrix: tuple
    equations: tuple
    action: object        # LeafCharacterTable

    def to_json(self):
        return {
            "variables": list(self.variables),
            "exponents": dict(self.exponents),
            "arms": {w: list(nq) for w, nq in self.arms.items()},
            "matrix": [list(r) for r in self.matrix],
            "equations": [[m.to_json() for m in eq] for eq in self.equations],
            "action": self.action.to_json(),
        }


def enumerate_admissible(ws, v, u, limit=DEFAULT_MONOMIAL_LIMIT):
    """Admissible exponent maps for node ``v`` and the edge towards ``u``.

    Returns ``(monomials, exhaustive)``: at most ``limit`` maps in
    lexicographic order of their exponent vectors (leaves sorted by name),
    and whether that list is the complete solution set.
    """
    leaves = ws.sides[v, u]
    gens = [ws.reduced_leaf_weight[v, w] for w in leaves]
    out = []
    exhaustive = True
    for coeffs in iter_representations(ws.edge_weight[v, u], gens):
        if len(out) == limit:
            exhaustive = False
            break
        out.append({w: a for w, a in zip(leaves, coeffs) if a})
    return out, exhaustive


def admissible_monomials(ws, v, u, limit=DEFAULT_MONOMIAL_LIMIT):
    monomials, _ = enumerate_admissible(ws, v, u, limit)
    if not monomials:
        leaves = ws.sides[v, u]
        gens = tuple(ws.reduced_leaf_weight[v, w] for w in leaves)
        raise ConditionError(
            f"semigroup condition fails at node {v} towards {u}: "
            f"{ws.edge_weight[v, u]} not in N{tuple(sorted(gens))}",
            certificate={"node": v, "toward": u, "target": ws.edge_weight[v, u],
                         "generators": dict(zip(leaves, gens))})
    return monomials


def monomial_weight(ws, v, exponents):
    return sum(a * ws.leaf_weight[v, w] for w, a in exponents.items())


def hamm_matrix(rows, cols):
    """A ``rows x cols`` integer matrix whose maximal minors are all nonzero.

    Rows are powers ``c_e^i`` of distinct positive constants ``c_e``; if a
    minor ever vanishes the constants are shifted and the check repeated.
    """
    if cols < 3 or not 1 <= rows <= cols:
        raise DomainError(f"need cols >= 3 and 1 <= rows <= cols, got {rows}x{cols}")
    for shift in range(HAMM_RETRIES):
        consts = [e + 1 + shift for e in range(cols)]
        M = [[c**i for c in consts] for i in range(rows)]
        if all(linalg.maximal_minors(M).values()):
            return tuple(tuple(r) for r in M)
    raise ConsistencyError("could not find a matrix satisfying the Hamm condition")


def _node_equations(ws, v, neighbours, monomials, variables):
    t = len(neighbours)
    matrix = hamm_matrix(t - 2, t)
    order = {w: i for i, w in enumerate(variables)}
    monomials = tuple(dict(sorted(m.items(), key=lambda kv: order[kv[0]])) for m in monomials)
    equations = tuple(
        tuple(Monomial(a, m) for a, m in zip(row, monomials) if a)
        for row in matrix
    )
    for m in monomials:
        if monomial_weight(ws, v, m) != ws.node_weight[v]:
            raise ConsistencyError(f"monomial {m} at node {v} is not of weight d_v")
    return NodeEquations(v, tuple(neighbours), monomials, matrix, equations)


def edge_order(d, v):
    """Neighbours of node ``v``: leaf edges first, then node edges, each in edge-list order."""
    nbrs = d.neighbors(v)
    return [u for u in nbrs if not d.is_node(u)] + [u for u in nbrs if d.is_node(u)]


def generate_splice_equations(d, choices=None, status=None):
    """Splice-type equations of a diagram satisfying the semigroup condition.

    ``choices`` optionally fixes the admissible monomial for some
    ``(node, neighbour)`` pairs; all others use the lexicographically least
    semigroup witness.
    """
    if not isinstance(d, SpliceDiagram):
        raise DomainError("expected a splice diagram")
    ws = weight_system(d)
    cert = check_semigroup_conditions(d, ws)
    if not cert.passed:
        bad = cert.failures()[0]
        raise ConditionError(
            f"semigroup condition fails at node {bad.node} towards {bad.toward}: "
            f"{bad.target} not in N{tuple(sorted(bad.generators))}", certificate=cert)
    choices = choices or {}
    variables = tuple(sorted(d.leaves))
    nodes = []
    for v in d.nodes:
        nbrs = edge_order(d, v)
        mons = []
        for u in nbrs:
            m = choices.get((v, u))
            if m is None:
                e = cert.entry(v, u)
                m = {w: a for w, a in e.witness.items() if a}
            mons.append(m)
        nodes.append(_node_equations(ws, v, nbrs, mons, variables))
    if sum(len(n.equations) for n in nodes) != len(variables) - 2:
        raise ConsistencyError("equation count differs from (number of leaves) - 2")
    if status is None:
        status = STATUS_SPLICE_TYPE if validate_splice_diagram(d).passed else STATUS_CONJECTURAL
    return EquationSystem(variables, tuple(nodes), status, dict(d.aliases))


def brieskorn_uac(g):
    """Brieskorn complete intersection covering a star-shaped graph, with its group action."""
    report = validate_resolution_graph(g)
    if not report.passed:
        raise DomainError("graph fails resolution-graph validation")
    centre, arms = star_arms(g)
    t = len(arms)
    variables = tuple(a[-1] for a in arms)
    arm_data = {a[-1]: cf_contract([-g.selfint(x) for x in a]) for a in arms}
    exponents = {w: arm_data[w][0] for w in variables}
    matrix = hamm_matrix(t - 2, t)
    equations = tuple(
        tuple(Monomial(a, {w: exponents[w]}) for a, w in zip(row, variables))
        for row in matrix
    )
    return BrieskornSystem(variables, exponents, arm_data, matrix, equations, leaf_representation(g))


def _var(name, aliases):
    return aliases.get(name, f"z_{name}")


def format_monomial(m, aliases=None):
    aliases = aliases or {}
    parts = [_var(w, aliases) + (f"^{a}" if a != 1 else "") for w, a in m.exponents.items() if a]
    body = "*".join(parts) or "1"
    if m.coeff == 1:
        return body
    if m.coeff == -1:
        return "-" + body
    return f"{m.coeff}*{body}"


def format_equation(eq, aliases=None):
    text = ""
    for i, m in enumerate(eq):
        s = format_monomial(m, aliases)
        if i == 0:
            text = s
        elif s.startswith("-"):
            text += " - " + s[1:]
        else:
            text += " + " + s
    return text + " = 0"


def format_equations(system):
    aliases = getattr(system, "aliases", {}) or {}
    return [format_equation(eq, aliases) for eq in system.equations]
