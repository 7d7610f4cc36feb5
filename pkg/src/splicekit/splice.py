"""Splice diagrams, their weights, and the semigroup condition.

A splice diagram is a tree whose vertices are leaves (valency 1) or nodes
(valency >= 3), with a positive integer weight at every node end of every
edge.  Edges are stored as ``(v1, v2, w1, w2)`` where ``w_i`` is the weight at
the ``v_i`` end, or ``None`` when ``v_i`` is a leaf.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DomainError, ParseError
from .graph import NAME_RE, intersection_matrix
from .report import Check, ValidationReport

SEMIGROUP_TARGET_CAP = 10**7


@dataclass(frozen=True)
class SpliceDiagram:
    nodes: tuple
    leaves: tuple
    edges: tuple
    aliases: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "leaves", tuple(self.leaves))
        object.__setattr__(self, "edges", tuple(
            (a, b, None if wa is None else int(wa), None if wb is None else int(wb))
            for a, b, wa, wb in self.edges))
        names = self.nodes + self.leaves
        if len(set(names)) != len(names):
            raise DomainError("vertex names must be unique")
        for n in names:
            if not NAME_RE.match(n):
                raise DomainError(f"invalid vertex name {n!r}")
        kinds = {n: "node" for n in self.nodes} | {n: "leaf" for n in self.leaves}
        for a, b, wa, wb in self.edges:
            for v, w in ((a, wa), (b, wb)):
                if v not in kinds:
                    raise DomainError(f"edge {a}-{b} references an unknown vertex {v!r}")
                if kinds[v] == "leaf" and w is not None:
                    raise DomainError(f"edge {a}-{b} carries a weight at leaf {v}")
                if kinds[v] == "node" and (w is None or w < 1):
                    raise DomainError(f"edge {a}-{b} needs a weight >= 1 at node {v}")
            if a == b:
                raise DomainError(f"loop at {a}")
        if len({frozenset(e[:2]) for e in self.edges}) != len(self.edges):
            raise DomainError("duplicate edge")
        for v in self.nodes:
            if len(self._incident[v]) < 3:
                raise DomainError(f"node {v} has valency {len(self._incident[v])} < 3")
        for v in self.leaves:
            if len(self._incident[v]) != 1:
                raise DomainError(f"leaf {v} has valency {len(self._incident[v])} != 1")
        if not self.nodes:
            raise DomainError("a splice diagram needs at least one node")
        if len(self.edges) != len(names) - 1 or len(self._reach(self.nodes[0])) != len(names):
            raise DomainError("splice diagram is not a tree")

    @cached_property
    def _incident(self):
        inc = {n: [] for n in self.nodes + self.leaves}
        for a, b, wa, wb in self.edges:
            inc[a].append((b, wa, wb))
            inc[b].append((a, wb, wa))
        return inc

    def is_node(self, v):
        return v in self.nodes

    def neighbors(self, v):
        """Neighbours of ``v`` in edge-list order."""
        return [u for u, _, _ in self._incident[v]]

    def weight(self, v, u):
        """Weight at the ``v`` end of the edge ``v-u``."""
        for x, wv, _ in self._incident[v]:
            if x == u:
                return wv
        raise DomainError(f"no edge {v}-{u}")

    def _reach(self, start, removed=()):
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u, _, _ in self._incident[v]:
                if u not in seen and u not in removed:
                    seen.add(u)
                    stack.append(u)
        return seen

    def side(self, v, u):
        """Vertices beyond ``v`` in the direction of neighbour ``u``."""
        return self._reach(u, removed=(v,))

    def side_leaves(self, v, u):
        side = self.side(v, u)
        return sorted(w for w in self.leaves if w in side)

    def path(self, v, w):
        parent = {v: None}
        stack = [v]
        while stack:
            x = stack.pop()
            for u, _, _ in self._incident[x]:
                if u not in parent:
                    parent[u] = x
                    stack.append(u)
        out = [w]
        while out[-1] != v:
            out.append(parent[out[-1]])
        return out[::-1]

    def node_edges(self):
        """Edges joining two nodes, as ``(v1, v2)`` pairs in edge-list order."""
        return [(a, b) for a, b, wa, wb in self.edges if wa is not None and wb is not None]

    def structure_key(self):
        """Order-independent description, for structural equality."""
        return (
            frozenset(self.nodes),
            frozenset(self.leaves),
            frozenset(frozenset(((a, wa), (b, wb))) for a, b, wa, wb in self.edges),
        )

    def to_json(self):
        return {
            "nodes": list(self.nodes),
            "leaves": list(self.leaves),
            "edges": [{"ends": [a, b], "weights": [wa, wb]} for a, b, wa, wb in self.edges],
        }


@dataclass(frozen=True)
class WeightSystem:
    """Node weights and leaf weights of a splice diagram.

    Keys: ``node_weight[v]``, ``edge_weight[v, u]`` (weight at ``v`` towards
    neighbour ``u``), ``leaf_weight[v, w]`` and ``reduced_leaf_weight[v, w]``
    for node ``v`` and leaf ``w``.  ``sides[v, u]`` lists the leaves beyond
    ``v`` in the direction of ``u``, sorted by name.
    """

    node_weight: dict
    edge_weight: dict
    leaf_weight: dict
    reduced_leaf_weight: dict
    sides: dict


@dataclass(frozen=True)
class Membership:
    target: int
    generators: tuple
    member: bool
    coefficients: tuple = None


@dataclass(frozen=True)
class SemigroupEntry:
    node: str
    toward: str
    target: int
    leaves: tuple
    generators: tuple
    member: bool
    witness: dict = None

    def to_json(self):
        out = {
            "node": self.node, "toward": self.toward, "target": self.target,
            "generators": {w: g for w, g in zip(self.leaves, self.generators)},
            "verdict": "pass" if self.member else "fail",
        }
        if self.member:
            out["witness"] = dict(self.witness)
        else:
            out["reason"] = f"{self.target} not in N({', '.join(map(str, sorted(self.generators)))})"
        return out


@dataclass(frozen=True)
class SemigroupCertificate:
    entries: tuple

    @property
    def passed(self):
        return all(e.member for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.member]

    def entry(self, node, toward):
        for e in self.entries:
            if e.node == node and e.toward == toward:
                return e
        raise KeyError((node, toward))

    def to_json(self):
        return {"verdict": "pass" if self.passed else "fail",
                "entries": [e.to_json() for e in self.entries]}


def resolution_to_splice(g):
    """Splice diagram of a resolution graph.

    Valency-2 chains are suppressed.  The weight at node ``v`` towards a
    neighbour is ``|det|`` of the intersection matrix of the branch beyond it.
    """
    if not g.is_tree():
        raise DomainError("plumbing graph is not a tree")
    nodes = g.nodes()
    if not nodes:
        raise DomainError("string graph: splice diagram undefined here")

    def outer_det(v, u):
        branch = g.branch(v, u)
        return abs(intersection_matrix(g.subgraph(branch)).det()) if branch else 1

    edges = []
    seen = set()
    for v in nodes:
        for u in g.neighbors(v):
            prev, cur = v, u
            while g.valency(cur) == 2:
                prev, cur = cur, next(x for x in g.neighbors(cur) if x != prev)
            key = frozenset((v, cur))
            if key in seen:
                continue
            seen.add(key)
            far = outer_det(cur, prev) if g.valency(cur) >= 3 else None
            edges.append((v, cur, outer_det(v, u), far))
    leaves = [w for w in g.leaves() if g.valency(w) == 1]
    aliases = {k: a for k, a in g.aliases.items() if k in leaves}
    return SpliceDiagram(nodes, leaves, edges, aliases)


def edge_determinant(d, v1, v2):
    if not (d.is_node(v1) and d.is_node(v2)):
        raise DomainError(f"edge {v1}-{v2} does not join two nodes")
    on_edge = d.weight(v1, v2) * d.weight(v2, v1)
    adjacent = math.prod(d.weight(v1, u) for u in d.neighbors(v1) if u != v2)
    adjacent *= math.prod(d.weight(v2, u) for u in d.neighbors(v2) if u != v1)
    return on_edge - adjacent


def validate_splice_diagram(d):
    coprime_fail = None
    for v in d.nodes:
        ws = [(u, d.weight(v, u)) for u in d.neighbors(v)]
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                if math.gcd(ws[i][1], ws[j][1]) != 1:
                    coprime_fail = coprime_fail or {"node": v, "pair": [ws[i][1], ws[j][1]]}
    leaf_fail = [{"node": v, "leaf": u, "weight": d.weight(v, u)}
                 for v in d.nodes for u in d.neighbors(v)
                 if not d.is_node(u) and d.weight(v, u) <= 1]
    dets = [{"edge": [a, b], "determinant": edge_determinant(d, a, b)} for a, b in d.node_edges()]
    det_fail = [x for x in dets if x["determinant"] <= 0]

    checks = (
        Check("weights_positive_coprime", coprime_fail is None,
              {} if coprime_fail is None else {"witness": coprime_fail}),
        Check("leaf_weights_gt_1", not leaf_fail, {"witness": leaf_fail[0]} if leaf_fail else {}),
        Check("edge_determinants_positive", not det_fail,
              {"witness": det_fail[0]} if det_fail else {}),
    )
    if all(c.passed for c in checks):
        verdict = "ZHS singularity link"
    elif checks[1].passed and checks[2].passed:
        verdict = "not a ZHS diagram; link conditions for QHS diagrams not characterized"
    else:
        verdict = "not a singularity link diagram"
    return ValidationReport(checks, {"zhs_link": all(c.passed for c in checks),
                                     "verdict": verdict, "edge_determinants": dets})


def weight_system(d):
    node_weight = {}
    edge_weight = {}
    sides = {}
    for v in d.nodes:
        node_weight[v] = 1
        for u in d.neighbors(v):
            edge_weight[v, u] = d.weight(v, u)
            node_weight[v] *= edge_weight[v, u]
            sides[v, u] = tuple(d.side_leaves(v, u))
    leaf_weight = {}
    reduced = {}
    for v in d.nodes:
        for w in d.leaves:
            p = d.path(v, w)
            r = 1
            for i in range(1, len(p) - 1):
                x = p[i]
                r *= math.prod(d.weight(x, u) for u in d.neighbors(x) if u not in (p[i - 1], p[i + 1]))
            reduced[v, w] = r
            leaf_weight[v, w] = r * math.prod(edge_weight[v, u] for u in d.neighbors(v) if u != p[1])
    return WeightSystem(node_weight, edge_weight, leaf_weight, reduced, sides)


def _closure(generators, limit):
    """Bitmask of the values <= limit reachable as nonnegative combinations."""
    mask = (1 << (limit + 1)) - 1
    reach = 1
    for g in generators:
        step = g
        while step <= limit:
            reach = (reach | (reach << step)) & mask
            step <<= 1
    return reach


def _suffix_closures(target, generators):
    return [_closure(generators[k:], target) for k in range(len(generators) + 1)]


def _check_cap(target, cap):
    if target > cap:
        raise DomainError(f"semigroup target {target} exceeds the table cap {cap}")


def semigroup_member(target, generators, cap=SEMIGROUP_TARGET_CAP):
    """Decide ``target`` in N(generators); on success return the lexicographically
    least coefficient vector."""
    generators = tuple(generators)
    if not generators or any(g < 1 for g in generators):
        raise DomainError("generators must be a nonempty list of positive integers")
    if target < 0:
        return Membership(target, generators, False)
    _check_cap(target, cap)
    suffix = _suffix_closures(target, generators)
    if not suffix[0] >> target & 1:
        return Membership(target, generators, False)
    coeffs = []
    rest = target
    for k, g in enumerate(generators):
        a = 0
        while not suffix[k + 1] >> (rest - a * g) & 1:
            a += 1
        coeffs.append(a)
        rest -= a * g
    return Membership(target, generators, True, tuple(coeffs))


def iter_representations(target, generators, cap=SEMIGROUP_TARGET_CAP):
    """All coefficient vectors with ``sum(a_i * g_i) == target``, lexicographic order."""
    generators = tuple(generators)
    _check_cap(target, cap)
    suffix = _suffix_closures(target, generators)

    def rec(k, rest):
        if k == len(generators):
            if rest == 0:
                yield ()
            return
        g = generators[k]
        for a in range(rest // g + 1):
            r = rest - a * g
            if suffix[k + 1] >> r & 1:
                for tail in rec(k + 1, r):
                    yield (a,) + tail

    if target >= 0 and suffix[0] >> target & 1:
        yield from rec(0, target)


def check_semigroup_conditions(d, ws=None):
    ws = ws or weight_system(d)
    entries = []
    for v in d.nodes:
        for u in d.neighbors(v):
            leaves = ws.sides[v, u]
            gens = tuple(ws.reduced_leaf_weight[v, w] for w in leaves)
            target = ws.edge_weight[v, u]
            m = semigroup_member(target, gens)
            witness = dict(zip(leaves, m.coefficients)) if m.member else None
            entries.append(SemigroupEntry(v, u, target, leaves, gens, m.member, witness))
    return SemigroupCertificate(tuple(entries))


def _fresh(name, taken):
    while name in taken:
        name += "_2"
    return name


def splice_join(d1, leaf1, d2, leaf2):
    """Splice two diagrams along leaves.

    Both leaves are removed and their nodes joined by a single edge keeping
    the former leaf-edge weights.  Names from ``d2`` that collide with ``d1``
    get a ``_2`` suffix.  Returns the new diagram and its validation report.
    """
    for d, leaf in ((d1, leaf1), (d2, leaf2)):
        if leaf not in d.leaves:
            raise DomainError(f"{leaf!r} is not a leaf")
    n1 = d1.neighbors(leaf1)[0]
    n2 = d2.neighbors(leaf2)[0]
    taken = set(d1.nodes) | set(d1.leaves)
    rename = {}
    for name in d2.nodes + d2.leaves:
        if name == leaf2:
            continue
        rename[name] = _fresh(name, taken)
        taken.add(rename[name])

    edges = [e for e in d1.edges if leaf1 not in e[:2]]
    edges.append((n1, rename[n2], d1.weight(n1, leaf1), d2.weight(n2, leaf2)))
    edges += [(rename[a], rename[b], wa, wb) for a, b, wa, wb in d2.edges if leaf2 not in (a, b)]
    aliases = {k: v for k, v in d1.aliases.items() if k != leaf1}
    aliases.update({rename[k]: v for k, v in d2.aliases.items() if k != leaf2})
    joined = SpliceDiagram(
        d1.nodes + tuple(rename[n] for n in d2.nodes),
        tuple(w for w in d1.leaves if w != leaf1) + tuple(rename[w] for w in d2.leaves if w != leaf2),
        edges, aliases)
    return joined, validate_splice_diagram(joined)


def splice_cut(d, v1, v2, leaf1, leaf2):
    """Inverse of :func:`splice_join`: cut the node edge ``v1-v2``.

    The halves get new leaves ``leaf1`` (at ``v1``) and ``leaf2`` (at ``v2``)
    carrying the weights the cut edge had at those ends.
    """
    if (v1, v2) not in d.node_edges() and (v2, v1) not in d.node_edges():
        raise DomainError(f"{v1}-{v2} is not an edge between nodes")
    halves = []
    for v, u, leaf in ((v1, v2, leaf1), (v2, v1, leaf2)):
        side = d._reach(v, removed=(u,))
        if leaf in side:
            raise DomainError(f"leaf name {leaf!r} already used")
        edges = [e for e in d.edges if e[0] in side and e[1] in side]
        edges.append((v, leaf, d.weight(v, u), None))
        halves.append(SpliceDiagram(
            tuple(n for n in d.nodes if n in side),
            tuple(w for w in d.leaves if w in side) + (leaf,),
            edges, {k: a for k, a in d.aliases.items() if k in side}))
    return tuple(halves)


def one_node_diagram(weights, prefix="w", node="v"):
    """Single node with leaves ``<prefix>1, <prefix>2, ...`` at the given weights."""
    leaves = [f"{prefix}{i}" for i in range(1, len(weights) + 1)]
    return SpliceDiagram([node], leaves, [(node, w, a, None) for w, a in zip(leaves, weights)])


def parse_splice(text):
    nodes, leaves, edges, aliases = [], [], [], {}
    kinds = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *args = line.split()
        if kind in ("n", "l"):
            if len(args) != 1:
                raise ParseError("expected 1 argument", lineno)
            name = args[0]
            if not NAME_RE.match(name):
                raise ParseError(f"invalid name {name!r}", lineno)
            if name in kinds:
                raise ParseError(f"duplicate vertex {name!r}", lineno)
            kinds[name] = kind
            (nodes if kind == "n" else leaves).append(name)
        elif kind == "e":
            if len(args) != 4:
                raise ParseError("expected 4 arguments", lineno)
            a, b, *ws = args
            parsed = []
            for v, w in zip((a, b), ws):
                if v not in kinds:
                    raise ParseError(f"edge references undeclared vertex {v!r}", lineno)
                if kinds[v] == "l":
                    if w != "-":
                        raise ParseError(f"leaf end {v} must carry '-' instead of a weight", lineno)
                    parsed.append(None)
                else:
                    try:
                        x = int(w)
                    except ValueError:
                        raise ParseError(f"weight {w!r} is not an integer", lineno) from None
                    if x < 1:
                        raise ParseError(f"weights must be >= 1, got {x}", lineno)
                    parsed.append(x)
            edges.append((a, b, *parsed))
        elif kind == "a":
            if len(args) != 2:
                raise ParseError("expected 2 arguments", lineno)
            aliases[args[0]] = args[1]
        elif kind == "v":
            raise ParseError("plumbing graph directive 'v' in a splice diagram file", lineno)
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    try:
        return SpliceDiagram(nodes, leaves, edges, aliases)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def format_splice(d):
    lines = [f"n {v}" for v in d.nodes] + [f"l {w}" for w in d.leaves]
    lines += [f"e {a} {b} {'-' if wa is None else wa} {'-' if wb is None else wb}"
              for a, b, wa, wb in d.edges]
    lines += [f"a {k} {v}" for k, v in d.aliases.items()]
    return "\n".join(lines) + "\n"
