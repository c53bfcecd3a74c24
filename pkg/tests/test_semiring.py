import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpqueue import DimensionError, InputError
from mpqueue.semiring import (
    E,
    EPS,
    as_matrix,
    as_vector,
    big_oplus,
    big_otimes,
    eps_matrix,
    format_value,
    identity,
    mat_mul,
    mat_vec,
    oplus,
    otimes,
    parse_value,
    render_matrix,
)

scalars = st.one_of(st.just(EPS), st.integers(-10**6, 10**6).map(float))


def brute_matmul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    return [[big_oplus(otimes(A[i][l], B[l][j]) for l in range(inner)) for j in range(cols)]
            for i in range(rows)]


@st.composite
def matrices(draw, rows, cols):
    return np.array(draw(st.lists(st.lists(scalars, min_size=cols, max_size=cols),
                                  min_size=rows, max_size=rows)), dtype=np.float64)


@pytest.mark.parametrize("a, b, expected", [(3, 5, 5), (7, EPS, 7), (4, 4, 4), (EPS, EPS, EPS)])
def test_oplus(a, b, expected):
    assert oplus(a, b) == expected


@pytest.mark.parametrize("a, b, expected", [(3, 5, 8), (9, E, 9), (2, EPS, EPS), (EPS, EPS, EPS)])
def test_otimes(a, b, expected):
    assert otimes(a, b) == expected


def test_eps_plus_eps_is_eps_not_nan():
    assert otimes(EPS, EPS) == EPS
    assert not np.isnan(otimes(EPS, EPS))


@pytest.mark.parametrize("xs, expected", [([1, 4, 2], 4), ([], EPS), ([EPS, EPS, 3], 3)])
def test_big_oplus(xs, expected):
    assert big_oplus(xs) == expected


@pytest.mark.parametrize("xs, expected", [([1, 4, 2], 7), ([], E), ([EPS, 3], EPS)])
def test_big_otimes(xs, expected):
    assert big_otimes(xs) == expected


@settings(max_examples=300)
@given(scalars, scalars, scalars)
def test_axioms(a, b, c):
    assert oplus(a, oplus(b, c)) == oplus(oplus(a, b), c)
    assert oplus(a, b) == oplus(b, a)
    assert otimes(a, otimes(b, c)) == otimes(otimes(a, b), c)
    assert otimes(a, b) == otimes(b, a)
    assert otimes(a, oplus(b, c)) == oplus(otimes(a, b), otimes(a, c))
    assert oplus(a, EPS) == a
    assert oplus(a, a) == a
    assert otimes(a, E) == a
    assert otimes(a, EPS) == EPS


def test_mat_vec_examples():
    assert list(mat_vec(identity(2), as_vector([3, 5]))) == [3, 5]
    assert list(mat_vec(as_matrix([[1, "eps"], [3, 1]]), as_vector([0, 0]))) == [1, 3]
    assert list(mat_vec(eps_matrix(2, 2), as_vector([3, 5]))) == [EPS, EPS]


def test_mat_mul_examples():
    A = as_matrix([[1, "eps"], [3, 1]])
    B = as_matrix([[2, "eps"], [5, 2]])
    np.testing.assert_array_equal(mat_mul(A, B), as_matrix([[3, "eps"], [6, 3]]))
    np.testing.assert_array_equal(np.array(brute_matmul(A, B)), mat_mul(A, B))
    C = as_matrix([[1, 2, "eps"], [0, 4, 1], ["eps", 3, 3]])
    np.testing.assert_array_equal(mat_mul(C, identity(3)), C)
    np.testing.assert_array_equal(mat_mul(C, eps_matrix(3, 3)), eps_matrix(3, 3))


def test_identity():
    np.testing.assert_array_equal(identity(1), [[E]])
    np.testing.assert_array_equal(identity(2), [[E, EPS], [EPS, E]])
    v = as_vector([4, "eps", -2])
    np.testing.assert_array_equal(mat_vec(identity(3), v), v)
    with pytest.raises(DimensionError):
        identity(0)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        mat_vec(identity(2), as_vector([1, 2, 3]))
    with pytest.raises(DimensionError):
        mat_mul(identity(2), identity(3))


def test_values_are_immutable():
    M = identity(2)
    with pytest.raises(ValueError):
        M[0, 0] = 1.0
    with pytest.raises(ValueError):
        mat_vec(M, as_vector([1, 2]))[0] = 3.0


def test_rejects_non_semiring_values():
    with pytest.raises(InputError):
        as_matrix([[np.inf]])
    with pytest.raises(InputError):
        as_vector([np.nan])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    matrices(n, n), matrices(n, n), matrices(n, n), matrices(n, 1))))
def test_mat_mul_associative_with_identity(mats):
    A, B, C, v = mats
    n = A.shape[0]
    np.testing.assert_array_equal(mat_mul(mat_mul(A, B), C), mat_mul(A, mat_mul(B, C)))
    np.testing.assert_array_equal(mat_mul(A, identity(n)), A)
    np.testing.assert_array_equal(mat_mul(identity(n), A), A)
    np.testing.assert_array_equal(mat_mul(A, B), np.array(brute_matmul(A.tolist(), B.tolist())))
    np.testing.assert_array_equal(mat_vec(mat_mul(A, B), v[:, 0]),
                                  mat_vec(A, mat_vec(B, v[:, 0])))


@settings(max_examples=60, deadline=None)
@given(st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5)).flatmap(
    lambda d: st.tuples(matrices(d[0], d[1]), matrices(d[1], d[2]))))
def test_rectangular_products_match_brute_force(mats):
    A, B = mats
    np.testing.assert_array_equal(mat_mul(A, B), np.array(brute_matmul(A.tolist(), B.tolist())))


def test_format_and_parse():
    assert format_value(EPS) == "eps"
    assert format_value(0.0) == "0"
    assert format_value(7.0) == "7"
    assert format_value(0.1) == "0.1"
    for x in (EPS, 0.0, 7.0, 1 / 3, 1e300, 2.0**60 + 0.5):
        assert parse_value(format_value(x)) == x
    with pytest.raises(InputError):
        parse_value("inf")


def test_render_matrix():
    lines = render_matrix(as_matrix([[1, "eps"], [4, 3]])).splitlines()
    assert [line.split() for line in lines] == [["1", "eps"], ["4", "3"]]
    assert len({len(line) for line in lines}) == 1
