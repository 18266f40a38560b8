from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from gradedring.errors import DimensionMismatch, Unsolvable
from gradedring.linalg import (
    LinearMap,
    Subspace,
    contains,
    dense,
    equal,
    format_scalar,
    full_subspace,
    invert_square,
    nullspace,
    rank,
    scalar,
    solve,
    span,
    subspace_intersect,
    subspace_sum,
    vector,
    zero_subspace,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def vectors(dim, max_size=5):
    return st.lists(st.lists(small, min_size=dim, max_size=dim), max_size=max_size)


def matvec(rows, x, ncols):
    return [sum((Fraction(r[j]) * x.get(j, 0) for j in range(ncols)), Fraction(0)) for r in rows]


# scalars


def test_scalar_parses_strings_and_rejects_floats():
    assert scalar("6/4") == Fraction(3, 2)
    assert scalar(-3) == Fraction(-3)
    with pytest.raises(TypeError):
        scalar(0.5)


def test_format_scalar_lowest_terms():
    assert format_scalar(Fraction(6, -4)) == "-3/2"
    assert format_scalar(Fraction(4, 2)) == "2"


@given(small, small, small)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1
    assert a.denominator > 0


# span


def test_span_of_repeated_vector_is_a_line():
    assert span([(1, 0), (1, 0)]).dim == 1


def test_empty_span_is_zero():
    assert span([], 3) == zero_subspace(3)
    assert span([], 3).dim == 0


def test_span_of_independent_pair_is_full():
    # determinant 1*4 - 2*3 = -2
    assert span([(1, 2), (3, 4)]) == full_subspace(2)


def test_span_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        span([(1, 2), (1, 2, 3)])


def test_stored_basis_is_rref():
    u = span([(2, 4, 6), (1, 1, 1)])
    assert u.dense_basis() == [[1, 0, -1], [0, 1, 2]]


@given(vectors(4))
def test_span_matches_dense_oracle(rows):
    assert span(rows, 4).dense_basis() == oracles.rref(rows, 4)


@given(vectors(4))
def test_span_idempotent(rows):
    u = span(rows, 4)
    assert span(u.basis(), 4) == u


# solve


def test_solve_identity():
    b = [Fraction(1, 2), 3, -1]
    sol = solve([[1, 0, 0], [0, 1, 0], [0, 0, 1]], b)
    assert dense(sol.particular, 3) == b
    assert sol.nullspace.dim == 0


def test_solve_zero_matrix_nonzero_rhs():
    with pytest.raises(Unsolvable):
        solve([[0, 0], [0, 0]], [1, 0])


def test_solve_rank_two_system_has_line_of_solutions():
    sol = solve([[1, 2, 3], [0, 1, 1]], [1, 1])
    assert sol.nullspace.dim == 1


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4), st.lists(small, min_size=3, max_size=3))
def test_solve_is_exact(rows, x0):
    b = matvec(rows, dict(enumerate(x0)), 3)
    sol = solve(rows, b)
    assert matvec(rows, sol.particular, 3) == b
    for v in sol.nullspace.basis():
        assert all(x == 0 for x in matvec(rows, v, 3))
    assert sol.nullspace.dim == 3 - oracles.rank(rows, 3)


# sums and intersections


def test_sum_with_zero():
    u = span([(1, 2, 0)])
    assert u + zero_subspace(3) == u


def test_equal_bases_of_plane():
    assert equal(span([(1, 0), (0, 1)]), span([(1, 1), (1, -1)]))


def test_contains():
    u = span([(1, 1, 0)])
    assert contains(u, (2, 2, 0))
    assert not contains(u, (1, 0, 0))


@given(vectors(6, 4), vectors(6, 4))
def test_modular_law(a, b):
    u, v = span(a, 6), span(b, 6)
    assert (u + v).dim + subspace_intersect(u, v).dim == u.dim + v.dim


@given(vectors(4, 4), vectors(4, 4))
def test_intersection_contained_in_both(a, b):
    u, v = span(a, 4), span(b, 4)
    w = u & v
    assert w <= u and w <= v


def test_mismatched_ambients():
    with pytest.raises(DimensionMismatch):
        subspace_sum(span([(1, 0)]), span([(1, 0, 0)]))


def test_nullspace_dimension():
    assert nullspace([[1, 1, 1]], 3).dim == 2


def test_vector_drops_zeros_and_checks_range():
    assert vector([0, 2, 0]) == {1: Fraction(2)}
    with pytest.raises(DimensionMismatch):
        vector({5: 1}, 3)


# maps and matrices


def test_invert_square():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert invert_square(m) == [[1, -1], [-1, 2]]
    assert invert_square([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) is None


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_invert_square_against_rank(m):
    inv = invert_square(m)
    assert (inv is not None) == (oracles.rank(m, 3) == 3)
    if inv is not None:
        prod = oracles.mat_mul(m, inv)
        assert prod == [[int(i == j) for j in range(3)] for i in range(3)]


def test_rank_matches_oracle():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 0]]
    assert rank(rows, 3) == oracles.rank(rows, 3) == 2


def test_linear_map_compose_and_add():
    plane = span([(1, 0, 0), (0, 1, 0)])
    swap = LinearMap.from_function(plane, lambda v: {1 - k: x for k, x in v.items()})
    assert swap.compose(swap) == LinearMap.identity(plane)
    assert (swap + swap) == swap.scaled(2)
    assert swap + LinearMap.zero(plane) == swap


def test_subspace_coordinates_round_trip():
    u = span([(1, 1, 0), (0, 1, 1)])
    v = {0: Fraction(2), 1: Fraction(5), 2: Fraction(3)}
    assert u.element(u.coordinates(v)) == v
    with pytest.raises(ValueError):
        u.coordinates({0: Fraction(1)})


def test_subspace_hash_agrees_with_equality():
    a = span([(1, 2), (3, 4)])
    b = Subspace(2, [{0: Fraction(1)}, {1: Fraction(1)}])
    assert a == b and hash(a) == hash(b)
