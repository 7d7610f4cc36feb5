import json
from dataclasses import replace
from fractions import Fraction

import pytest

from oracles import congruence_oracle
from splicekit import corpus
from splicekit.congruence import (
    DEFORMATION_CAVEAT,
    STATUS_QUOTIENT_COVER,
    assemble_splice_quotient,
    check_congruence_conditions,
    classify,
    verify_congruence_certificate,
)
from splicekit.equations import format_equations, generate_splice_equations
from splicekit.errors import ConditionError, ConsistencyError, DomainError
from splicekit.graph import intersection_matrix
from splicekit.lattice import character_of_monomial
from splicekit.splice import check_semigroup_conditions, resolution_to_splice, weight_system

NODE_GRAPHS = [k for k, g in corpus.graphs().items() if g.nodes()]


def oracle_for(g):
    d = resolution_to_splice(g)
    ws = weight_system(d)
    node_edges = {
        v: [(ws.edge_weight[v, u], {w: ws.reduced_leaf_weight[v, w] for w in ws.sides[v, u]})
            for u in d.neighbors(v)]
        for v in d.nodes
    }
    return congruence_oracle(intersection_matrix(g).rows(), g.names, node_edges)


@pytest.mark.parametrize("name", NODE_GRAPHS)
def test_verdict_matches_census_oracle(graphs, name):
    g = graphs[name]
    if not check_semigroup_conditions(resolution_to_splice(g)).passed:
        pytest.skip("semigroup conditions fail")
    cert = check_congruence_conditions(g)
    expected = oracle_for(g)
    for nc in cert.nodes:
        assert nc.verdict == ("pass" if expected[nc.node] else "fail"), nc.node


def test_genuine_congruence_failure(graphs):
    g = graphs["no_congruence"]
    assert check_semigroup_conditions(resolution_to_splice(g)).passed
    cert = check_congruence_conditions(g)
    assert cert.verdict == "fail"
    assert all(all(nc.exhaustive.values()) for nc in cert.nodes if nc.verdict == "fail")
    with pytest.raises(ConditionError):
        assemble_splice_quotient(g)


def test_two_node_zhs_is_trivially_congruent(two_node):
    cert = check_congruence_conditions(two_node)
    assert cert.passed
    assert all(nc.character == () for nc in cert.nodes)


def test_zhs_quotient_equations_equal_splice_equations(two_node):
    data = assemble_splice_quotient(two_node)
    plain = generate_splice_equations(resolution_to_splice(two_node))
    assert json.dumps(data.equations.to_json()) == json.dumps(plain.to_json())
    assert data.invariant_exponent == 1


def test_quotient_cusp_equations(graphs):
    data = assemble_splice_quotient(graphs["qc_23"])
    assert data.group.invariant_factors == (4, 4)
    assert data.equations.status == STATUS_QUOTIENT_COVER
    assert format_equations(data.equations) == [
        "z_a1^2 + z_a2^2 + z_b1*z_b2^3 = 0",
        "z_b1^2 + z_b2^2 + z_a1*z_a2 = 0",
    ]
    assert DEFORMATION_CAVEAT in data.notes


def test_lex_least_witness_is_not_isotypical_for_cusp(graphs):
    g = graphs["qc_23"]
    d = resolution_to_splice(g)
    naive = generate_splice_equations(d)
    data = assemble_splice_quotient(g)
    chars = [{character_of_monomial(data.action, m.exponents) for m in eq}
             for eq in naive.equations]
    assert any(len(c) > 1 for c in chars)


@pytest.mark.parametrize("name", [k for k in NODE_GRAPHS if k.startswith("qc_")] +
                         ["d4", "d5", "d6", "e6", "e7", "e8", "star_2357"])
def test_assembled_equations_are_isotypical(graphs, name):
    data = assemble_splice_quotient(graphs[name])
    for node in data.equations.nodes:
        for eq in node.equations:
            chars = {character_of_monomial(data.action, m.exponents) for m in eq}
            assert chars == {data.node_characters[node.node]}
    for w, m in data.invariant_functions().items():
        assert all(x == 0 for x in character_of_monomial(data.action, m))


@pytest.mark.parametrize("name", ["qc_23", "qc_333", "d5", "two_node_zhs"])
def test_certificates_verify(graphs, name):
    g = graphs[name]
    assert verify_congruence_certificate(g, check_congruence_conditions(g))


def test_tampered_certificate_is_rejected(graphs):
    g = graphs["qc_23"]
    cert = check_congruence_conditions(g)
    nc = cert.nodes[0]
    shifted = tuple((x + Fraction(1, 4)) % 1 for x in nc.character)
    forged = type(cert)((replace(nc, character=shifted),) + cert.nodes[1:], cert.enum_limit)
    with pytest.raises(ConsistencyError):
        verify_congruence_certificate(g, forged)


def test_tiny_limit_is_inconclusive(graphs):
    cert = check_congruence_conditions(graphs["qc_23"], enum_limit=1)
    assert cert.verdict == "inconclusive"
    assert not cert.passed
    assert cert.to_json()["enum_limit"] == 1


def test_semigroup_failure_propagates(graphs):
    with pytest.raises(DomainError):
        check_congruence_conditions(graphs["a3"])


def test_classify_graph_stages(graphs):
    r = classify(graphs["two_node_zhs"])
    assert r.eligible
    assert [s["name"] for s in r.stages] == [
        "resolution_graph", "homology", "splice_diagram", "splice_conditions", "semigroup", "congruence"]
    assert r.stage("homology")["kind"] == "ZHS"
    r = classify(graphs["a3"])
    assert not r.eligible and r.stage("splice_diagram")["verdict"] == "fail"
    r = classify(graphs["no_congruence"])
    assert not r.eligible and r.stage("congruence")["verdict"] == "fail"


def test_classify_diagram(diagrams):
    r = classify(diagrams["q237_q2337"])
    assert not r.eligible
    assert r.stage("semigroup")["verdict"] == "fail"
    assert r.stage("splice_conditions")["verdict"] == "pass"
    assert classify(diagrams["zhs_237_2511"]).eligible
    with pytest.raises(DomainError):
        classify(42)
