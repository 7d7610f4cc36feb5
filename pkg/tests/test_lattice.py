import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oracles import cokernel_census, counts_from_factors, sympy_inverse, torsion_counts
from splicekit import linalg
from splicekit.errors import DomainError
from splicekit.graph import PlumbingGraph, intersection_matrix
from splicekit.lattice import (
    character_of_monomial,
    discriminant_group,
    dual_pairing,
    injective_by_enumeration,
    injective_by_image_order,
    leaf_representation,
)

# |det| and cokernel orders computed with sympy and the brute-force census.
ORACLE_ORDERS = {
    "two_node_zhs": 1, "sigma237": 1, "sigma235": 1, "e8": 1,
    "d4": 4, "d5": 4, "e6": 3, "e7": 2,
    "a1": 2, "a2": 3, "a3": 4, "a4": 5, "a5": 6,
    "star_2357": 173, "qc_23": 16,
}


def a3():
    return PlumbingGraph([("a", -2), ("b", -2), ("c", -2)], [("a", "b"), ("b", "c")])


def test_a3_pairing_table():
    p = dual_pairing(a3())
    assert p.entries == (
        (F(-3, 4), F(-1, 2), F(-1, 4)),
        (F(-1, 2), F(-1), F(-1, 2)),
        (F(-1, 4), F(-1, 2), F(-3, 4)),
    )


def test_a3_group_and_leaf_characters():
    table = leaf_representation(a3())
    assert table.group.order == 4 and table.group.invariant_factors == (4,)
    assert table.leaves == ("a", "c")
    assert table.rows == ((F(1, 4), F(3, 4)),)
    assert table.injective


def test_d4_group_is_klein_four(graphs):
    table = leaf_representation(graphs["d4"])
    assert table.group.invariant_factors == (2, 2)
    images = {table.evaluate(c) for c in table.group.elements()}
    assert len(images) == 4


def test_unimodular_graph_has_trivial_group(two_node):
    table = leaf_representation(two_node)
    assert table.group.order == 1 and table.rows == ()
    assert table.to_json() == {"order": 1, "invariant_factors": [], "leaf_characters": {}}


def test_single_vertex_is_its_own_leaf():
    table = leaf_representation(PlumbingGraph([("a", -2)], []))
    assert table.leaves == ("a",) and table.rows == ((F(1, 2),),)


def test_singular_matrix_is_a_domain_error():
    g = PlumbingGraph([("a", -1), ("b", -1)], [("a", "b")])
    with pytest.raises(DomainError):
        discriminant_group(g)
    with pytest.raises(DomainError):
        dual_pairing(g)


@pytest.mark.parametrize("name, order", sorted(ORACLE_ORDERS.items()))
def test_group_order_matches_oracle(graphs, name, order):
    g = graphs[name]
    grp = discriminant_group(g)
    assert grp.order == order == abs(intersection_matrix(g).det())
    assert math.prod(grp.invariant_factors) == order


def test_invariant_factors_match_census(graphs):
    for name, g in graphs.items():
        A = intersection_matrix(g).rows()
        census = cokernel_census(A)
        grp = discriminant_group(g)
        assert len(census) == grp.order, name
        exp = max(grp.invariant_factors, default=1)
        assert torsion_counts(census, exp) == counts_from_factors(grp.invariant_factors, exp), name


def test_generators_have_their_stated_orders(graphs):
    for name, g in graphs.items():
        grp = discriminant_group(g)
        inv = sympy_inverse(intersection_matrix(g).rows())
        n = len(grp.names)
        for gen, d in zip(grp.generators, grp.invariant_factors):
            img = [sum(inv[i][j] * gen[j] for j in range(n)) for i in range(n)]
            assert all((d * x).denominator == 1 for x in img), name
            assert any((d // p * x).denominator != 1 for p in range(2, d + 1)
                       if d % p == 0 for x in img), name


def test_injectivity_methods_agree(graphs):
    for name, g in graphs.items():
        table = leaf_representation(g)
        assert injective_by_enumeration(table) and injective_by_image_order(table), name


def test_non_injective_map_is_detected_by_both_methods():
    table = leaf_representation(a3())
    broken = type(table)(("a",), ((F(0),),), table.group, False)
    assert not injective_by_enumeration(broken)
    assert not injective_by_image_order(broken)


def test_curve_lattice_elements_act_trivially(graphs):
    # A x lies in E for every integer x, so it must have zero coordinates.
    for name, g in graphs.items():
        grp = discriminant_group(g)
        A = intersection_matrix(g).rows()
        for i in range(len(A)):
            col = [A[r][i] for r in range(len(A))]
            assert all(c == 0 for c in grp.reduce(col)), name


def test_leaf_power_det_is_invariant(graphs):
    for name, g in graphs.items():
        table = leaf_representation(g)
        det = table.group.order
        for w in table.leaves:
            assert all(x == 0 for x in character_of_monomial(table, {w: det})), name


@settings(max_examples=60)
@given(st.sampled_from(["d4", "d5", "e6", "e7", "a5", "qc_23", "star_2357"]),
       st.lists(st.integers(0, 12), min_size=4, max_size=4),
       st.lists(st.integers(0, 12), min_size=4, max_size=4))
def test_character_is_additive(name, xs, ys):
    from splicekit import corpus
    table = leaf_representation(corpus.graphs()[name])
    leaves = table.leaves
    a = {w: x for w, x in zip(leaves, xs)}
    b = {w: y for w, y in zip(leaves, ys)}
    ab = {w: a.get(w, 0) + b.get(w, 0) for w in leaves}
    ca, cb, cab = (character_of_monomial(table, m) for m in (a, b, ab))
    assert cab == tuple((x + y) % 1 for x, y in zip(ca, cb))


def test_character_unknown_leaf():
    with pytest.raises(DomainError):
        character_of_monomial(leaf_representation(a3()), {"b": 1})


def test_reduce_is_compatible_with_element_vector(graphs):
    for name in ("d4", "qc_23", "star_2357"):
        grp = discriminant_group(graphs[name])
        for coords in list(grp.elements())[:50]:
            assert grp.reduce(grp.element_vector(coords)) == coords


def test_smith_transform_is_unimodular(graphs):
    g = graphs["qc_23"]
    U, D, V, _ = linalg.smith_normal_form(intersection_matrix(g).rows())
    assert abs(linalg.det(U)) == abs(linalg.det(V)) == 1
