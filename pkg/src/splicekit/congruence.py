"""Congruence conditions and splice-quotient data.

For each node the discriminant group must scale one admissible monomial per
edge by a common character.  Characters are tuples of exact Q/Z values, one
per group generator, so they can be compared and hashed directly.
"""

from dataclasses import dataclass, field

from .equations import (
    DEFAULT_MONOMIAL_LIMIT,
    STATUS_SPLICE_TYPE,
    edge_order,
    enumerate_admissible,
    generate_splice_equations,
)
from .errors import ConditionError, ConsistencyError, DomainError
from .graph import PlumbingGraph, validate_resolution_graph
from .lattice import character_of_monomial, discriminant_group, dual_pairing, leaf_representation
from .report import frac_str, jsonable
from .splice import (
    SpliceDiagram,
    check_semigroup_conditions,
    resolution_to_splice,
    validate_splice_diagram,
    weight_system,
)

STATUS_QUOTIENT_COVER = "universal abelian cover of a splice-quotient"
DEFORMATION_CAVEAT = (
    "higher-order terms are omitted; positive-weight deformations of these "
    "equations need not stay in the splice-quotient class"
)


def char_str(chi):
    return [frac_str(x) for x in chi]


@dataclass(frozen=True)
class NodeCongruence:
    node: str
    verdict: str                 # "pass", "fail" or "inconclusive"
    character: tuple = None
    choices: dict = None         # neighbour -> exponent map
    edge_characters: dict = None  # neighbour -> list of characters seen (on failure)
    exhaustive: dict = None       # neighbour -> whether enumeration was complete

    def to_json(self):
        out = {"node": self.node, "verdict": self.verdict}
        if self.verdict == "pass":
            out["character"] = char_str(self.character)
            out["monomials"] = {u: dict(m) for u, m in self.choices.items()}
        else:
            out["edge_characters"] = {u: [char_str(c) for c in cs]
                                      for u, cs in self.edge_characters.items()}
            out["exhaustive"] = dict(self.exhaustive)
        return out


@dataclass(frozen=True)
class CongruenceCertificate:
    nodes: tuple
    enum_limit: int

    @property
    def verdict(self):
        verdicts = {n.verdict for n in self.nodes}
        if verdicts <= {"pass"}:
            return "pass"
        return "fail" if "fail" in verdicts else "inconclusive"

    @property
    def passed(self):
        return self.verdict == "pass"

    def node(self, name):
        return next(n for n in self.nodes if n.node == name)

    def to_json(self):
        return {"verdict": self.verdict, "enum_limit": self.enum_limit,
                "nodes": [n.to_json() for n in self.nodes]}


@dataclass(frozen=True)
class SpliceQuotientData:
    equations: object            # EquationSystem
    group: object                # DiscriminantGroup
    action: object               # LeafCharacterTable
    node_characters: dict
    invariant_exponent: int
    notes: tuple = field(default=(DEFORMATION_CAVEAT,))

    def invariant_functions(self):
        """Per leaf, the invariant monomial ``z_w^|det|``."""
        return {w: {w: self.invariant_exponent} for w in self.action.leaves}

    def to_json(self):
        return {
            "equations": self.equations.to_json(),
            "action": self.action.to_json(),
            "node_characters": {v: char_str(c) for v, c in self.node_characters.items()},
            "invariant_exponent": self.invariant_exponent,
            "invariant_functions": self.invariant_functions(),
            "notes": list(self.notes),
        }


def _require_semigroup(d, ws):
    cert = check_semigroup_conditions(d, ws)
    if not cert.passed:
        bad = cert.failures()[0]
        raise ConditionError(
            f"semigroup condition fails at node {bad.node} towards {bad.toward}: "
            f"{bad.target} not in N{tuple(sorted(bad.generators))}", certificate=cert)
    return cert


def _node_search(ws, table, v, neighbours, limit):
    per_edge = []        # list of (neighbour, {character: first monomial}, exhaustive)
    for u in neighbours:
        monomials, exhaustive = enumerate_admissible(ws, v, u, limit)
        first = {}
        for m in monomials:
            first.setdefault(character_of_monomial(table, m), m)
        per_edge.append((u, first, exhaustive))
    common = set(per_edge[0][1])
    for _, first, _ in per_edge[1:]:
        common &= set(first)
    if common:
        # first edge's lexicographically least monomial with a shared character
        u0, first0, _ = per_edge[0]
        chi = next(c for c in first0 if c in common)
        return NodeCongruence(v, "pass", chi, {u: first[chi] for u, first, _ in per_edge})
    complete = all(ex for _, _, ex in per_edge)
    return NodeCongruence(
        v, "fail" if complete else "inconclusive",
        edge_characters={u: list(first) for u, first, _ in per_edge},
        exhaustive={u: ex for u, _, ex in per_edge})


def check_congruence_conditions(g, enum_limit=DEFAULT_MONOMIAL_LIMIT):
    d = resolution_to_splice(g)
    ws = weight_system(d)
    _require_semigroup(d, ws)
    table = leaf_representation(g)
    nodes = tuple(_node_search(ws, table, v, edge_order(d, v), enum_limit) for v in d.nodes)
    return CongruenceCertificate(nodes, enum_limit)


def verify_congruence_certificate(g, cert):
    """Recheck a passing certificate from scratch; raises ConsistencyError on any mismatch."""
    d = resolution_to_splice(g)
    ws = weight_system(d)
    table = leaf_representation(g, discriminant_group(g), dual_pairing(g))
    for nc in cert.nodes:
        if nc.verdict != "pass":
            raise ConsistencyError(f"node {nc.node} did not pass")
        if set(nc.choices) != set(d.neighbors(nc.node)):
            raise ConsistencyError(f"node {nc.node}: wrong edge set")
        for u, m in nc.choices.items():
            side = set(ws.sides[nc.node, u])
            if not set(m) <= side:
                raise ConsistencyError(f"monomial {m} uses leaves off the {u} side")
            if sum(a * ws.reduced_leaf_weight[nc.node, w] for w, a in m.items()) != ws.edge_weight[nc.node, u]:
                raise ConsistencyError(f"monomial {m} is not admissible")
            if character_of_monomial(table, m) != nc.character:
                raise ConsistencyError(f"monomial {m} has the wrong character")
    return True


def assemble_splice_quotient(g, enum_limit=DEFAULT_MONOMIAL_LIMIT):
    d = resolution_to_splice(g)
    ws = weight_system(d)
    _require_semigroup(d, ws)
    cert = check_congruence_conditions(g, enum_limit)
    if not cert.passed:
        raise ConditionError(f"congruence conditions: {cert.verdict}", certificate=cert)
    table = leaf_representation(g)
    group = table.group
    choices = {(nc.node, u): m for nc in cert.nodes for u, m in nc.choices.items()}
    status = STATUS_SPLICE_TYPE if group.order == 1 else STATUS_QUOTIENT_COVER
    system = generate_splice_equations(d, choices, status=status)
    chars = {}
    for ne in system.nodes:
        seen = {character_of_monomial(table, m.exponents) for eq in ne.equations for m in eq}
        if len(seen) != 1:
            raise ConsistencyError(f"equations at node {ne.node} are not isotypical")
        chars[ne.node] = seen.pop()
        if chars[ne.node] != cert.node(ne.node).character:
            raise ConsistencyError(f"node {ne.node}: character differs from certificate")
    return SpliceQuotientData(system, group, table, chars, group.order)


@dataclass(frozen=True)
class ClassificationReport:
    stages: tuple
    eligible: bool

    def stage(self, name):
        return next(s for s in self.stages if s["name"] == name)

    def to_json(self):
        return {"eligible": self.eligible, "stages": jsonable(list(self.stages))}


def _stage(name, verdict, **detail):
    return {"name": name, "verdict": verdict, **detail}


def _skip(names, reason):
    return [_stage(n, "skipped", reason=reason) for n in names]


def classify_graph(g, enum_limit=DEFAULT_MONOMIAL_LIMIT):
    """Run the whole condition pipeline on a resolution graph; failures are report entries."""
    stages = []
    later = ["homology", "splice_diagram", "splice_conditions", "semigroup", "congruence"]
    report = validate_resolution_graph(g)
    stages.append(_stage("resolution_graph", "pass" if report.passed else "fail", report=report.to_json()))
    if not report.passed:
        return ClassificationReport(tuple(stages + _skip(later, "invalid resolution graph")), False)

    group = discriminant_group(g)
    stages.append(_stage("homology", "pass", kind="ZHS" if group.order == 1 else "QHS",
                         determinant=report.facts["determinant"], group=group.to_json()))
    try:
        d = resolution_to_splice(g)
    except DomainError as exc:
        stages.append(_stage("splice_diagram", "fail", reason=str(exc)))
        return ClassificationReport(tuple(stages + _skip(later[2:], str(exc))), False)
    stages.append(_stage("splice_diagram", "pass", diagram=d.to_json()))
    stages.append(_stage("splice_conditions", "pass" if validate_splice_diagram(d).passed else "fail",
                         report=validate_splice_diagram(d).to_json()))
    sg = check_semigroup_conditions(d)
    stages.append(_stage("semigroup", "pass" if sg.passed else "fail", certificate=sg.to_json()))
    if not sg.passed:
        stages += _skip(later[4:], "semigroup conditions fail")
        return ClassificationReport(tuple(stages), False)
    cc = check_congruence_conditions(g, enum_limit)
    stages.append(_stage("congruence", cc.verdict, certificate=cc.to_json()))
    return ClassificationReport(tuple(stages), cc.passed)


def classify_diagram(d):
    """Pipeline for a bare splice diagram: starts at the diagram conditions.

    Only integral homology sphere diagrams can be eligible, since the
    congruence conditions need a resolution graph.
    """
    report = validate_splice_diagram(d)
    stages = [_stage("splice_conditions", "pass" if report.passed else "fail", report=report.to_json())]
    sg = check_semigroup_conditions(d)
    stages.append(_stage("semigroup", "pass" if sg.passed else "fail", certificate=sg.to_json()))
    if report.passed:
        stages.append(_stage("congruence", "pass", reason="trivial group (ZHS diagram)"))
    else:
        stages.append(_stage("congruence", "skipped", reason="requires a resolution graph"))
    return ClassificationReport(tuple(stages), report.passed and sg.passed)


def classify(obj, enum_limit=DEFAULT_MONOMIAL_LIMIT):
    if isinstance(obj, PlumbingGraph):
        return classify_graph(obj, enum_limit)
    if isinstance(obj, SpliceDiagram):
        return classify_diagram(obj)
    raise DomainError(f"cannot classify {type(obj).__name__}")
