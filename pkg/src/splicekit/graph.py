"""Resolution (plumbing) graphs of rational homology sphere links.

A plumbing graph here is a tree of smooth rational curves: each vertex
carries only a self-intersection number.  All arithmetic is exact.
"""

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import DomainError, ParseError
from .report import Check, ValidationReport

NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class PlumbingGraph:
    """Vertices ``(name, selfint)`` in file order and undirected edges.

    ``aliases`` optionally maps leaf names to display names used by the
    equation pretty-printer.
    """

    vertices: tuple
    edges: tuple
    aliases: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple((str(n), int(s)) for n, s in self.vertices))
        object.__setattr__(self, "edges", tuple((str(a), str(b)) for a, b in self.edges))
        names = [n for n, _ in self.vertices]
        if len(set(names)) != len(names):
            raise DomainError("vertex names must be unique")
        for n in names:
            if not NAME_RE.match(n):
                raise DomainError(f"invalid vertex name {n!r}")
        known = set(names)
        seen = set()
        for a, b in self.edges:
            if a not in known or b not in known:
                raise DomainError(f"edge {a}-{b} references an unknown vertex")
            if a == b:
                raise DomainError(f"loop at {a}")
            key = frozenset((a, b))
            if key in seen:
                raise DomainError(f"duplicate edge {a}-{b}")
            seen.add(key)

    @cached_property
    def names(self):
        return [n for n, _ in self.vertices]

    @cached_property
    def index(self):
        return {n: i for i, n in enumerate(self.names)}

    @cached_property
    def _adjacency(self):
        adj = {n: [] for n in self.names}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def selfint(self, name):
        return self.vertices[self.index[name]][1]

    def neighbors(self, name):
        """Neighbours of ``name`` in edge-list order."""
        return list(self._adjacency[name])

    def valency(self, name):
        return len(self._adjacency[name])

    def leaves(self):
        """Ends of the graph, sorted by name.

        A lone vertex counts as an end, so a one-vertex string has one leaf.
        """
        return sorted(n for n in self.names if self.valency(n) <= 1)

    def nodes(self):
        """Vertices of valency >= 3, in vertex order."""
        return [n for n in self.names if self.valency(n) >= 3]

    def is_tree(self):
        if len(self.edges) != len(self.vertices) - 1 or not self.vertices:
            return False
        return len(self.component(self.names[0])) == len(self.vertices)

    def component(self, start, removed=()):
        """Vertices reachable from ``start`` without passing through ``removed``."""
        blocked = set(removed)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self._adjacency[v]:
                if w not in seen and w not in blocked:
                    seen.add(w)
                    stack.append(w)
        return seen

    def branch(self, v, w):
        """Vertices of the component of the graph minus ``v`` containing neighbour ``w``."""
        return self.component(w, removed=(v,))

    def subgraph(self, keep):
        keep = set(keep)
        return PlumbingGraph(
            [(n, s) for n, s in self.vertices if n in keep],
            [(a, b) for a, b in self.edges if a in keep and b in keep],
        )


@dataclass(frozen=True)
class IntersectionMatrix:
    names: tuple
    entries: tuple

    def rows(self):
        return [list(r) for r in self.entries]

    def det(self):
        return linalg.det(self.rows())

    def is_symmetric(self):
        n = len(self.entries)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))

    def is_negative_definite(self):
        neg = [[-x for x in row] for row in self.entries]
        return all(m > 0 for m in linalg.leading_principal_minors(neg))


@dataclass(frozen=True)
class ContinuedFraction:
    """``n/q = b_1 - 1/(b_2 - ... - 1/b_s)`` with every ``b_i >= 2``."""

    n: int
    q: int
    terms: tuple

    def value(self):
        x = Fraction(self.terms[-1])
        for b in reversed(self.terms[:-1]):
            x = b - 1 / x
        return x


def intersection_matrix(g):
    idx = g.index
    n = len(g.vertices)
    A = [[0] * n for _ in range(n)]
    for name, s in g.vertices:
        A[idx[name]][idx[name]] = s
    for a, b in g.edges:
        A[idx[a]][idx[b]] = A[idx[b]][idx[a]] = 1
    return IntersectionMatrix(tuple(g.names), tuple(tuple(r) for r in A))


def validate_resolution_graph(g):
    A = intersection_matrix(g)
    d = A.det()
    minors = linalg.leading_principal_minors([[-x for x in r] for r in A.entries])
    bad = next((k + 1 for k, m in enumerate(minors) if m <= 0), None)
    checks = (
        Check("tree", g.is_tree(), {"vertices": len(g.vertices), "edges": len(g.edges)}),
        Check("negative_definite", bad is None,
              {} if bad is None else {"first_nonpositive_minor_of_minus_A": bad}),
        Check("nonzero_determinant", d != 0),
    )
    return ValidationReport(checks, {"determinant": d, "zhs": abs(d) == 1})


def cf_expand(n, q):
    if not 0 < q < n:
        raise DomainError(f"need 0 < q < n, got n={n}, q={q}")
    if math.gcd(n, q) != 1:
        raise DomainError(f"n={n} and q={q} are not coprime")
    terms = []
    a, b = n, q
    while b:
        t = -(-a // b)
        terms.append(t)
        a, b = b, t * b - a
    return ContinuedFraction(n, q, tuple(terms))


def cf_contract(terms):
    terms = list(terms)
    if not terms:
        raise DomainError("empty continued fraction")
    if any(b < 2 for b in terms):
        raise DomainError(f"continued fraction terms must be >= 2, got {terms}")
    n, q = terms[-1], 1
    for b in reversed(terms[:-1]):
        n, q = b * n - q, n
    return n, q


def build_star_graph(d, arms):
    """Star-shaped graph: centre of self-intersection ``-d`` and one string per arm.

    Arm ``i`` is the string ``-b_1, ..., -b_s`` of the expansion of
    ``n_i/q_i``, attached to the centre at its ``b_1`` end.  Vertices are named
    ``c`` and ``a<i>_<j>`` (1-based).  Negative definiteness is not checked.
    """
    arms = list(arms)
    if len(arms) < 3:
        raise DomainError(f"a star needs at least 3 arms, got {len(arms)}")
    if d < 1:
        raise DomainError("central weight d must be >= 1")
    vertices = [("c", -d)]
    edges = []
    for i, (n, q) in enumerate(arms, 1):
        prev = "c"
        for j, b in enumerate(cf_expand(n, q).terms, 1):
            name = f"a{i}_{j}"
            vertices.append((name, -b))
            edges.append((prev, name))
            prev = name
    return PlumbingGraph(vertices, edges)


def star_arms(g):
    """Centre name and the arm strings (centre side first), ordered by end-leaf name."""
    nodes = g.nodes()
    if len(nodes) != 1 or not g.is_tree():
        raise DomainError("graph is not star-shaped (needs exactly one vertex of valency >= 3)")
    centre = nodes[0]
    arms = []
    for w in g.neighbors(centre):
        string = [w]
        prev, cur = centre, w
        while g.valency(cur) == 2:
            nxt = next(x for x in g.neighbors(cur) if x != prev)
            string.append(nxt)
            prev, cur = cur, nxt
        arms.append(string)
    arms.sort(key=lambda s: s[-1])
    return centre, arms


def parse_graph(text):
    vertices = []
    edges = []
    aliases = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *args = line.split()
        if kind == "v":
            if len(args) == 3:
                raise ParseError("genus decorations are not supported (rational curves only)", lineno)
            if len(args) != 2:
                raise ParseError("expected 2 arguments", lineno)
            name, s = args
            _check_name(name, lineno)
            try:
                vertices.append((name, int(s)))
            except ValueError:
                raise ParseError(f"self-intersection {s!r} is not an integer", lineno) from None
        elif kind == "e":
            if len(args) != 2:
                raise ParseError("expected 2 arguments", lineno)
            known = {n for n, _ in vertices}
            for name in args:
                if name not in known:
                    raise ParseError(f"edge references undeclared vertex {name!r}", lineno)
            edges.append((args[0], args[1]))
        elif kind == "a":
            if len(args) != 2:
                raise ParseError("expected 2 arguments", lineno)
            aliases[args[0]] = args[1]
        elif kind in ("n", "l"):
            raise ParseError(f"splice diagram directive {kind!r} in a plumbing graph file", lineno)
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    try:
        return PlumbingGraph(vertices, edges, aliases)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def format_graph(g):
    lines = [f"v {n} {s}" for n, s in g.vertices]
    lines += [f"e {a} {b}" for a, b in g.edges]
    lines += [f"a {k} {v}" for k, v in g.aliases.items()]
    return "\n".join(lines) + "\n"


def _check_name(name, lineno):
    if not NAME_RE.match(name):
        raise ParseError(f"invalid name {name!r}", lineno)
