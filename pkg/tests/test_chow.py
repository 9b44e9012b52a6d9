import itertools
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from folideg.chow import (AmbientMismatchError, BundleClass, ChowClass, Grassmannian, Partition,
                          ProjectiveBundle, ProjectiveSpace, UnsupportedRankError, blowup_excep_push,
                          box_partitions, chern_dual, chern_sym, chern_tensor, chern_tensor_line,
                          grassmannian_plucker_degree, integrate, pieri, proj_bundle_push,
                          schubert_mul, segre)


def split_bundle(P, slopes):
    """Direct sum of O(a) over P^r."""
    total = P.one()
    for a in slopes:
        total = total * (P.one() + P.h().scale(a))
    return BundleClass(len(slopes), total)


def from_roots(P, roots):
    total = P.one()
    for a in roots:
        total = total * (P.one() + P.h().scale(a))
    return total


def roots_to_class(G, poly):
    """Convert a symmetric root polynomial on G(2, n) into the Schubert basis by pairing."""
    n = G.n
    out = G.zero()
    for lam in G.basis():
        dual = lam.complement(2, n)
        a, b = dual.padded(2)
        coeff = oracles.integrate(oracles.mul(oracles.part(poly, lam.size), oracles.schur(a, b), 10 ** 9), n)
        if coeff:
            out = out + G.sigma(lam).scale(coeff)
    return out


# -- Schubert calculus ------------------------------------------------------------

def test_pieri_examples():
    G = Grassmannian(2, 4)
    assert pieri((1,), 1, 2, 4) == G.sigma(2) + G.sigma(1, 1)
    assert not pieri((2, 2), 1, 2, 4)
    assert pieri((), 2, 2, 4) == G.sigma(2)


def test_pieri_rejects_partition_outside_box():
    with pytest.raises(ValueError):
        pieri((3,), 1, 2, 4)


def test_schubert_mul_examples():
    G = Grassmannian(2, 4)
    assert G.sigma1() ** 4 == G.sigma(2, 2).scale(2)
    G5 = Grassmannian(2, 5)
    assert schubert_mul(G5.sigma(2, 1), G5.sigma1()) == G5.sigma(3, 1) + G5.sigma(2, 2)
    a = G5.sigma(2) + G5.sigma(1, 1).scale(3)
    assert G5.one() * a == a


def test_schubert_mul_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        Grassmannian(2, 4).sigma1() * Grassmannian(2, 5).sigma1()
    P = ProjectiveSpace(3)
    with pytest.raises(AmbientMismatchError):
        schubert_mul(P.h(), P.h())


def test_partition_basics():
    lam = Partition((3, 1, 0))
    assert lam == (3, 1) and lam.size == 4
    assert lam.transpose() == (2, 1, 1)
    assert lam.complement(2, 5) == (2,)
    with pytest.raises(ValueError):
        Partition((1, 2))
    assert len(box_partitions(2, 5)) == comb(5, 2)


@pytest.mark.parametrize("k,n", [(2, 5), (2, 6), (3, 6), (3, 7)])
def test_transpose_duality_of_structure_constants(k, n):
    G, Gt = Grassmannian(k, n), Grassmannian(n - k, n)
    for lam, mu in itertools.combinations_with_replacement(G.basis(), 2):
        prod = G.sigma(lam) * G.sigma(mu)
        dual = Gt.sigma(lam.transpose()) * Gt.sigma(mu.transpose())
        assert {p.transpose(): c for p, c in prod.terms.items()} == dual.terms


@pytest.mark.parametrize("k,n", [(2, 5), (3, 6), (3, 7), (4, 8)])
def test_duality_pairing(k, n):
    G = Grassmannian(k, n)
    for lam in G.basis():
        for mu in G.basis():
            if lam.size + mu.size != G.dim:
                continue
            expected = 1 if mu == lam.complement(k, n) else 0
            assert integrate(G.sigma(lam) * G.sigma(mu)) == expected


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_triple_intersections_match_root_oracle(n):
    G = Grassmannian(2, n)
    basis = G.basis()
    for lam, mu in itertools.combinations_with_replacement(basis, 2):
        for nu in basis:
            if lam.size + mu.size + nu.size != G.dim:
                continue
            ours = integrate(G.sigma(lam) * G.sigma(mu) * G.sigma(nu))
            poly = oracles.mul(oracles.mul(oracles.schur(*lam.padded(2)), oracles.schur(*mu.padded(2)), 10 ** 9),
                               oracles.schur(*nu.padded(2)), 10 ** 9)
            assert ours == oracles.integrate(poly, n)


@st.composite
def schubert_triples(draw):
    k, n = draw(st.sampled_from([(2, 6), (3, 6), (3, 7), (2, 7)]))
    G = Grassmannian(k, n)
    basis = G.basis()

    def rand_class():
        out = G.zero()
        for _ in range(draw(st.integers(1, 3))):
            out = out + G.sigma(draw(st.sampled_from(basis))).scale(draw(st.integers(-3, 3)))
        return out

    return rand_class(), rand_class(), rand_class()


@given(schubert_triples())
@settings(max_examples=40, deadline=None)
def test_schubert_ring_axioms(triple):
    a, b, c = triple
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_integrate_examples():
    G = Grassmannian(2, 4)
    assert integrate(G.sigma(2, 2)) == 1
    assert integrate(G.sigma1() ** 4) == 2
    assert integrate(G.sigma1()) == 0
    for r in range(1, 6):
        P = ProjectiveSpace(r)
        assert integrate(P.h() ** r) == 1
        assert not P.h() ** (r + 1)


def test_plucker_examples():
    assert grassmannian_plucker_degree(2, 4) == 2
    assert grassmannian_plucker_degree(2, 5) == 5
    assert integrate(Grassmannian(2, 10).sigma1() ** 16) == 1430
    # pencils of quadrics in P^3: C(2N-2, N)/(N-1) with N = 9
    assert Fraction(comb(16, 9), 8) == 1430


@pytest.mark.parametrize("k", [2, 3])
def test_plucker_formula_equals_schubert_integral(k):
    for n in range(k + 1, 13):
        G = Grassmannian(k, n)
        assert grassmannian_plucker_degree(k, n) == integrate(G.sigma1() ** G.dim)


def test_plucker_formula_matches_root_oracle():
    for n in range(3, 12):
        assert grassmannian_plucker_degree(2, n) == oracles.integrate(
            oracles.power(oracles.linear(1, 1), 2 * (n - 2), 2 * (n - 2)), n)


# -- bundles ------------------------------------------------------------------------

def test_tautological_bundles():
    G = Grassmannian(2, 5)
    R, Q = G.tautological_sub(), G.tautological_quotient()
    assert (R + Q).total == G.one()
    assert Q.c(1) == G.sigma1()
    assert R.c(2) == G.sigma(1, 1)
    assert G.tangent_bundle().rank == G.dim
    # c_top(T) is the Euler characteristic C(5, 2)
    assert integrate(G.tangent_bundle().c(G.dim)) == comb(5, 2)


def test_sym_examples():
    P = ProjectiveSpace(4)
    t = P.h().scale(3)
    L = BundleClass.line(t)
    for d in range(1, 6):
        S = chern_sym(L, d)
        assert S.rank == 1 and S.c(1) == t.scale(d)
    G = Grassmannian(2, 6)
    E = chern_dual(G.tautological_sub())
    S2 = chern_sym(E, 2)
    assert S2.rank == 3 and S2.c(1) == E.c(1).scale(3)
    assert chern_sym(E, 5).rank == 6
    E3 = split_bundle(P, (1, 2, 3))
    assert chern_sym(E3, 4).rank == comb(6, 2)


def test_tensor_line_example():
    P = ProjectiveSpace(3)
    E = split_bundle(P, (1, -2))
    L = BundleClass.line(P.h().scale(5))
    assert chern_tensor_line(E, L).c(1) == E.c(1) + L.c(1).scale(2)
    assert chern_tensor_line(E, L) == chern_tensor(E, L)


def test_tensor_and_sym_identities():
    G = Grassmannian(3, 7)
    E = G.tautological_quotient()
    assert chern_tensor(E, BundleClass.trivial(G)) == E
    assert chern_sym(G.tautological_sub(), 1) == G.tautological_sub()
    assert chern_tensor(E, BundleClass.trivial(G, 3)) == 3 * E


def test_sym_rejects_large_rank():
    P = ProjectiveSpace(3)
    with pytest.raises(UnsupportedRankError):
        chern_sym(split_bundle(P, (1, 1, 1, 1, 1)), 2)


slopes = st.lists(st.integers(-3, 3), min_size=1, max_size=4)


@given(slopes, slopes)
@settings(max_examples=40, deadline=None)
def test_tensor_matches_split_roots(a, b):
    P = ProjectiveSpace(5)
    E, F = split_bundle(P, a), split_bundle(P, b)
    T = chern_tensor(E, F)
    assert T.rank == len(a) * len(b)
    assert T.total == from_roots(P, [x + y for x in a for y in b])


@given(slopes, st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_sym_matches_split_roots(a, d):
    P = ProjectiveSpace(5)
    E = split_bundle(P, a)
    roots = [sum(c) for c in itertools.combinations_with_replacement(a, d)]
    S = chern_sym(E, d)
    assert S.rank == len(roots)
    assert S.total == from_roots(P, roots)


@given(slopes, slopes)
@settings(max_examples=30, deadline=None)
def test_virtual_tensor_is_bilinear(a, b):
    P = ProjectiveSpace(4)
    E, F = split_bundle(P, a), split_bundle(P, b)
    C = split_bundle(P, (2,))
    lhs = chern_tensor(E - F, C)
    assert lhs == chern_tensor(E, C) - chern_tensor(F, C)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_sym_of_dual_sub_matches_roots_on_grassmannian(d):
    G = Grassmannian(2, 6)
    top = G.dim
    poly = {(0, 0): Fraction(1)}
    for i in range(d + 1):
        poly = oracles.mul(poly, oracles.linear(i, d - i), top)
    ours = chern_sym(chern_dual(G.tautological_sub()), d).total
    assert ours == roots_to_class(G, poly)


@pytest.mark.parametrize("r", [3, 4, 5])
def test_whitney_check_on_veronese_normal_bundle(r):
    Y = Grassmannian(2, r + 1)
    m = comb(r + 2, 2)
    sym2_dual = chern_sym(chern_dual(Y.tautological_sub()), 2)
    tx = chern_tensor(sym2_dual, BundleClass.trivial(Y, m) - chern_dual(sym2_dual))
    ty = Y.tangent_bundle()
    assert ty.total == roots_to_class(Y, oracles.ty_total(r))
    assert tx.total == roots_to_class(Y, oracles.tx_restricted_total(r))
    normal = tx - ty
    assert normal.rank == 3 * (m - 3) - Y.dim
    assert (normal + ty).total == tx.total


# -- Segre classes and pushforwards ----------------------------------------------------

def test_segre_examples():
    P = ProjectiveSpace(4)
    assert segre(BundleClass.trivial(P, 3)) == P.one()
    k = 3
    L = BundleClass.line(P.h().scale(k))
    expected = sum((P.h() ** i).scale((-k) ** i) for i in range(5))
    assert segre(L) == expected
    assert segre(L).part(1) == P.h().scale(-k)


@given(slopes)
@settings(max_examples=30, deadline=None)
def test_segre_inverts_chern(a):
    P = ProjectiveSpace(5)
    E = split_bundle(P, a)
    assert segre(E) * E.total == P.one()


def test_projective_bundle_basic_pushes():
    P = ProjectiveSpace(3)
    E = split_bundle(P, (0, 1, -2))
    B = ProjectiveBundle(P, E)
    z = B.zeta()
    assert B.push(z ** 2) == P.one()
    assert not B.push(z)
    assert proj_bundle_push(z ** 2, E) == P.one()


@given(slopes, st.integers(0, 4))
@settings(max_examples=30, deadline=None)
def test_push_of_zeta_powers_is_segre(a, j):
    P = ProjectiveSpace(4)
    E = split_bundle(P, a)
    B = ProjectiveBundle(P, E)
    zp = B.zeta() ** (E.rank - 1 + j)
    assert B.push(zp) == segre(E).part(j)
    assert proj_bundle_push(zp, E) == segre(E).part(j)


def test_projective_bundle_over_point_is_projective_space():
    P0 = ProjectiveSpace(0)
    B = ProjectiveBundle(P0, BundleClass.trivial(P0, 5))
    assert B.dim == 4
    assert integrate(B.zeta() ** 4) == 1
    assert not B.zeta() ** 5


def test_projective_bundle_hirzebruch_surface():
    # P(O + O(-a)) over P^1: self-intersection of zeta is a
    P1 = ProjectiveSpace(1)
    for a in range(4):
        B = ProjectiveBundle(P1, split_bundle(P1, (0, -a)))
        assert integrate(B.zeta() ** 2) == a
        assert integrate(B.zeta() * B.pullback(P1.h())) == 1


def test_blowup_excep_push_examples():
    P = ProjectiveSpace(4)
    N = split_bundle(P, (1, 2, 2))
    delta = 3
    assert blowup_excep_push(delta, N, delta) == P.one().scale((-1) ** (delta - 1))
    assert not blowup_excep_push(delta - 1, N, delta)
    assert blowup_excep_push(delta + 1, N, delta) == N.c(1).scale((-1) ** (delta + 1))
    with pytest.raises(ValueError):
        blowup_excep_push(0, N, delta)


def test_bundles_on_different_rings_rejected():
    with pytest.raises(AmbientMismatchError):
        split_bundle(ProjectiveSpace(2), (1,)) + split_bundle(ProjectiveSpace(3), (1,))


def test_chow_class_inverse_requires_unit():
    P = ProjectiveSpace(3)
    c = P.one() + P.h().scale(2)
    assert c * c.inverse() == P.one()
    with pytest.raises((ValueError, ZeroDivisionError)):
        P.h().inverse()


def test_random_bundle_sum_is_multiplicative():
    rng = random.Random(4)
    P = ProjectiveSpace(6)
    for _ in range(10):
        a = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        b = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        assert (split_bundle(P, a) + split_bundle(P, b)) == split_bundle(P, a + b)
    assert isinstance(P.h(), ChowClass)
