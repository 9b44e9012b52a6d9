import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folideg.algebra import (ANY_DEGREE, ExactMatrix, MultiPoly, matrix_rank, matrix_rank_kernel,
                             monomial_exponents, poly_arith, poly_is_homogeneous, random_homogeneous,
                             rational, solve_linear, sparse_rank_kernel)

coeffs = st.integers(-5, 5)


@st.composite
def polys(draw, nvars=3, max_deg=3, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        terms[exp] = draw(coeffs)
    return MultiPoly(nvars, terms)


def x(i, n=3):
    return MultiPoly.variable(i, n)


def test_rational_normalizes_integral_fractions():
    assert rational(Fraction(4, 2)) == 2 and type(rational(Fraction(4, 2))) is int
    assert rational(Fraction(1, 3)) == Fraction(1, 3)


def test_zero_polynomial_has_any_degree():
    z = MultiPoly.zero(3)
    assert not z
    assert z.homogeneous_degree() is ANY_DEGREE


def test_mixed_degree_is_not_homogeneous():
    assert (x(0) + x(1) * x(2)).homogeneous_degree() is None
    assert poly_is_homogeneous(x(0) * x(1) - x(2) ** 2)


def test_diff_and_evaluate():
    f = x(0) ** 2 * x(1) + x(2).scale(3)
    assert f.diff(0) == (x(0) * x(1)).scale(2)
    assert f.evaluate([1, 2, 3]) == 11


def test_substitute_composes():
    f = x(0) * x(1)
    g = f.substitute([x(0) + x(1), x(2), x(2)])
    assert g == x(0) * x(2) + x(1) * x(2)


def test_poly_arith_dispatch():
    a, b = x(0), x(1)
    assert poly_arith(a, b, "add") == a + b
    assert poly_arith(a, b, "sub") == a - b
    assert poly_arith(a, b, "mul") == a * b
    with pytest.raises(ValueError):
        poly_arith(a, b, "div")


def test_monomial_exponents_count():
    # C(n + d - 1, d) monomials of degree d in n variables
    assert len(monomial_exponents(4, 3)) == 20
    assert len(set(monomial_exponents(3, 5))) == 21


def test_random_homogeneous_is_reproducible():
    a = random_homogeneous(4, 3, random.Random(5))
    b = random_homogeneous(4, 3, random.Random(5))
    assert a == b and a.homogeneous_degree() == 3
    assert all(-3 <= c <= 3 for c in a.terms.values())


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero(3)


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_leibniz_for_partial_derivatives(a, b):
    for i in range(3):
        assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


def test_bareiss_small_example():
    m = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    rank, kernel = matrix_rank_kernel(m)
    assert rank == 2
    assert len(kernel) == 1
    assert m.apply(kernel[0]) == (0, 0, 0)


def test_solve_linear_consistent_and_inconsistent():
    m = ExactMatrix.from_rows([[2, 1], [4, 2]])
    sol = solve_linear(m, [3, 6])
    assert m.apply(sol) == (3, 6)
    assert solve_linear(m, [3, 7]) is None


def test_solve_linear_rational_solution():
    m = ExactMatrix.from_rows([[3, 0], [0, 7]])
    assert solve_linear(m, [1, 2]) == (Fraction(1, 3), Fraction(2, 7))


@st.composite
def low_rank_matrices(draw):
    rows = draw(st.integers(1, 7))
    cols = draw(st.integers(1, 7))
    k = draw(st.integers(1, min(rows, cols)))
    left = [[draw(st.integers(-4, 4)) for _ in range(k)] for _ in range(rows)]
    right = [[draw(st.integers(-4, 4)) for _ in range(cols)] for _ in range(k)]
    return [[sum(left[i][t] * right[t][j] for t in range(k)) for j in range(cols)]
            for i in range(rows)]


@given(low_rank_matrices())
@settings(max_examples=80, deadline=None)
def test_rank_nullity_and_kernel(grid):
    m = ExactMatrix.from_rows(grid)
    rank, kernel = matrix_rank_kernel(m)
    assert rank + len(kernel) == m.cols
    assert rank == matrix_rank(m) == matrix_rank(m.transpose())
    for v in kernel:
        assert all(c == 0 for c in m.apply(v))


@given(low_rank_matrices(), st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_multimodular_kernel_agrees_with_bareiss(grid, seed):
    m = ExactMatrix.from_rows(grid)
    rank, _ = matrix_rank_kernel(m)
    rows = [{j: v for j, v in enumerate(r) if v} for r in grid]
    srank, skernel = sparse_rank_kernel(rows, m.cols, seed=seed)
    assert srank == rank
    assert len(skernel) == m.cols - rank
    for v in skernel:
        assert all(c == 0 for c in m.apply(v))
    if skernel:
        stacked = ExactMatrix.from_rows([list(v) for v in skernel])
        assert matrix_rank(stacked) == len(skernel)


def test_multimodular_kernel_tall_sparse_system():
    rng = random.Random(11)
    ncols, k = 40, 31
    basis = [[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(k)]
    rows = []
    for _ in range(300):
        coef = [rng.randint(-2, 2) for _ in range(k)]
        row = [sum(c * b[j] for c, b in zip(coef, basis)) for j in range(ncols)]
        rows.append({j: v for j, v in enumerate(row) if v})
    rank, kernel = sparse_rank_kernel(rows, ncols)
    dense = ExactMatrix.from_rows([[r.get(j, 0) for j in range(ncols)] for r in rows], ncols)
    assert rank == matrix_rank(dense) == k
    assert len(kernel) == ncols - k
    for v in kernel:
        assert all(c == 0 for c in dense.apply(v))


def test_sparse_kernel_degenerate_inputs():
    assert sparse_rank_kernel([], 3)[0] == 0
    assert len(sparse_rank_kernel([{}], 3)[1]) == 3
    assert sparse_rank_kernel([{0: 1}], 0) == (0, [])


def test_from_rows_rejects_ragged():
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [3]])
