from fractions import Fraction

from hypothesis import given, settings, strategies as st

from oracles import sympy_det, sympy_inverse
from splicekit import linalg

small_ints = st.integers(min_value=-9, max_value=9)


def square(max_n=5):
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n))


def rect(max_m=4, max_n=5):
    return st.tuples(st.integers(1, max_m), st.integers(1, max_n)).flatmap(
        lambda mn: st.lists(st.lists(small_ints, min_size=mn[1], max_size=mn[1]),
                            min_size=mn[0], max_size=mn[0]))


@given(square())
def test_bareiss_matches_sympy_and_cofactor(A):
    assert linalg.det(A) == sympy_det(A) == linalg.cofactor_det(A)


def test_det_of_empty_matrix_is_one():
    assert linalg.det([]) == 1
    assert linalg.cofactor_det([]) == 1


@given(square(4))
def test_inverse_matches_sympy(A):
    if sympy_det(A) == 0:
        return
    assert linalg.inverse(A) == sympy_inverse(A)


@settings(max_examples=200)
@given(rect())
def test_smith_normal_form_properties(A):
    U, D, V, Uinv = linalg.smith_normal_form(A)
    m, n = len(A), len(A[0])
    assert linalg.matmul(linalg.matmul(U, A), V) == D
    assert linalg.matmul(U, Uinv) == linalg.identity(m)
    assert abs(linalg.det(U)) == 1 and abs(linalg.det(V)) == 1
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert diag[:len(nonzero)] == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_smith_normal_form_known_values():
    _, D, _, _ = linalg.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [D[i][i] for i in range(3)] == [2, 6, 12]
    _, D, _, _ = linalg.smith_normal_form([[-2, 1, 0], [1, -2, 1], [0, 1, -2]])
    assert [D[i][i] for i in range(3)] == [1, 1, 4]


@given(square(5))
def test_ldl_pivots_agree_with_leading_minors(A):
    S = [[A[i][j] + A[j][i] for j in range(len(A))] for i in range(len(A))]
    minors = linalg.leading_principal_minors(S)
    pivots = linalg.ldl_pivots(S)
    if all(m != 0 for m in minors[:-1]):
        prev = 1
        for p, m in zip(pivots, minors):
            assert p == Fraction(m, prev)
            prev = m


def test_maximal_minors_of_vandermonde_rows():
    minors = linalg.maximal_minors([[1, 1, 1, 1], [1, 2, 3, 4]])
    assert minors == {(0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 2): 1, (1, 3): 2, (2, 3): 1}
