"""Degrees of the irreducible components R(r, d) of the space of foliations.

Each supported family of degree vectors has its own computation; all of them
reduce to exact intersection numbers on a Grassmannian, a projective space or
a projective bundle over one.  :func:`degree_dispatch` picks the family.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from .chow import (BundleClass, Grassmannian, ProjectiveBundle, ProjectiveSpace,
                   blowup_excep_push, chern_dual, chern_sym, chern_tensor,
                   plucker_degree_formula)
from .chow.rings import ChowClass
from .weighted import DegreeVector, component_dim

GRASS = "equal-degrees"
EQUAL_PENCIL = "equal-degrees-pencil"
DIVISIBLE = "divisible-pencil"
LINEAR_PLUS_ONE = "linear-plus-one"
TWO_TWO_TWO = "two-two-two"
TWO_ODD = "two-odd"
UNSUPPORTED = "unsupported"

EXACT = "exact"
CONJECTURAL = "unvalidated-conjectural"

# the resolution used for (2, 2m+1) is proved only up to this r
TWO_ODD_PROVED_RMAX = 5


class NonIntegralDegreeError(ArithmeticError):
    """An intersection number that should be an integer is not."""


@dataclass(frozen=True)
class DegreeSpec:
    r: int
    dbar: DegreeVector

    def __post_init__(self):
        object.__setattr__(self, "dbar", DegreeVector.of(self.dbar))
        if self.r < 1:
            raise ValueError(f"r must be at least 1, got {self.r}")

    @property
    def q(self) -> int:
        return self.dbar.q

    @property
    def family(self) -> str:
        return infer_family(self.dbar)


@dataclass(frozen=True)
class DegreeResult:
    r: int
    degrees: tuple[int, ...]
    degree: int
    dimension: int
    method: str
    status: str = EXACT
    millis: int = 0
    notes: str = ""


@dataclass(frozen=True)
class NoMethod:
    """Typed outcome for degree vectors no implemented family covers."""

    r: int
    degrees: tuple[int, ...]
    nearest: str
    message: str
    method: str = field(default=UNSUPPORTED)
    status: str = field(default=UNSUPPORTED)


def infer_family(dbar) -> str:
    d = DegreeVector.of(dbar).degrees
    q = len(d) - 1
    if all(x == 1 for x in d):
        return GRASS
    if q == 1:
        d0, d1 = d
        if d0 == d1:
            return EQUAL_PENCIL
        if d1 % d0 == 0:
            return DIVISIBLE
        if d0 == 2 and d1 % 2 == 1:
            return TWO_ODD
        return UNSUPPORTED
    if all(x == 1 for x in d[:-1]):
        return LINEAR_PLUS_ONE
    if d == (2, 2, 2):
        return TWO_TWO_TWO
    return UNSUPPORTED


def nearest_family(dbar) -> tuple[str, tuple[int, ...]]:
    """Closest supported degree vector of the same length, by L1 distance."""
    d = DegreeVector.of(dbar).degrees
    q = len(d) - 1
    candidates = [(GRASS, (1,) * (q + 1))]
    if q == 1:
        d0, d1 = d
        candidates.append((EQUAL_PENCIL, (d0, d0)))
        candidates.append((DIVISIBLE, (d0, max(2, round(d1 / d0)) * d0)))
        odd = d1 if d1 % 2 else d1 + 1
        candidates.append((TWO_ODD, (2, max(3, odd))))
    else:
        candidates.append((LINEAR_PLUS_ONE, (1,) * q + (max(2, d[-1]),)))
        if q == 2:
            candidates.append((TWO_TWO_TWO, (2, 2, 2)))
    return min(candidates, key=lambda fc: sum(abs(a - b) for a, b in zip(d, fc[1])))


def as_integer(value) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise NonIntegralDegreeError(f"intersection number {value} is not an integer")
    return value.numerator


def _timed(fn: Callable[[], tuple[int, str, str]], r: int, dbar, method: str) -> DegreeResult:
    dbar = DegreeVector.of(dbar)
    t0 = time.perf_counter()
    degree, status, notes = fn()
    millis = int((time.perf_counter() - t0) * 1000)
    degree = as_integer(degree)
    if degree <= 0:
        raise ArithmeticError(f"computed degree {degree} is not positive")
    return DegreeResult(r, dbar.degrees, degree, component_dim(r, dbar), method, status,
                        millis, notes)


def _n(r: int, d: int) -> int:
    """N_d = dim P(S_d) = C(r + d, r) - 1."""
    return comb(r + d, r) - 1


def blowup_correction(H: ChowClass, normal: BundleClass, total_exp: int, codim: int):
    """sum_{j>=1} C(n, j) (-1)^j ∫_center H^{n-j} pi_*(E^j), the E-terms of ∫(H - E)^n."""
    ring = H.ring
    hp = [ring.one()]
    for _ in range(ring.dim):
        hp.append(hp[-1] * H)
    acc = Fraction(0)
    for j in range(max(1, codim), total_exp + 1):
        a = total_exp - j
        if a > ring.dim:
            continue
        push = blowup_excep_push(j, normal, codim)
        if not push:
            continue
        acc += comb(total_exp, j) * (-1) ** j * ring.integrate(hp[a] * push)
    return acc


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def degree_grass_family(r: int, q: int) -> DegreeResult:
    """All degrees 1: the Pluecker degree of G(q+1, r+1)."""
    if not 1 <= q <= r - 2:
        raise ValueError(f"need 1 <= q <= r-2, got q={q}, r={r}")

    def run():
        return plucker_degree_formula(q + 1, r + 1), EXACT, ""

    return _timed(run, r, (1,) * (q + 1), GRASS)


def equal_pencil_formula(r: int, d: int) -> Fraction:
    nd = _n(r, d)
    return Fraction(comb(2 * nd - 2, nd), nd - 1)


def degree_equal_pencil(r: int, d: int) -> DegreeResult:
    """d = (d, d): the Pluecker degree of G(2, S_d)."""
    if d < 2:
        raise ValueError("equal pencils need d >= 2; d = 1 is the Grassmannian family")

    def run():
        return equal_pencil_formula(r, d), EXACT, ""

    return _timed(run, r, (d, d), EQUAL_PENCIL)


def divisible_pencil_formula(r: int, d0: int, d1: int) -> Fraction:
    n0, n1 = _n(r, d0), _n(r, d1)
    kappa = Fraction(d1, d0)
    return comb(n1 + n0 - 1, n0) - kappa * comb(n1 + n0 - 1, n0 - 1)


def degree_divisible_pencil(r: int, d0: int, d1: int) -> DegreeResult:
    if not (d0 < d1 and d1 % d0 == 0):
        raise ValueError(f"need d0 | d1 with d0 < d1, got ({d0}, {d1})")

    def run():
        return divisible_pencil_formula(r, d0, d1), EXACT, ""

    return _timed(run, r, (d0, d1), DIVISIBLE)


def divisible_pencil_integral(r: int, d0: int, d1: int):
    """∫ (h + h')^{N0+N1-1} over P(S_{d1} / O(-kappa)) on P(S_{d0}), kappa = d1/d0."""
    n0, n1 = _n(r, d0), _n(r, d1)
    kappa = d1 // d0
    base = ProjectiveSpace(n0)
    h = base.h()
    sbar = BundleClass.trivial(base, n1 + 1) - BundleClass.line(h.scale(-kappa))
    X = ProjectiveBundle(base, sbar)
    H = X.pullback(h) + X.zeta()
    return X.integrate(H ** (n0 + n1 - 1))


def linear_plus_one_sum(q: int, r: int, d: int):
    """sum_{i=0}^{g} C(delta, i) ∫_G c_{g-i}(Sym_d R) sigma_1^i on G = G(q, r+1)."""
    G = Grassmannian(q, r + 1)
    g = G.dim
    n = comb(r + d, r) - comb(q - 1 + d, q - 1) - 1
    delta = n + g
    sym = chern_sym(G.tautological_sub(), d)
    s1 = G.sigma1()
    total = Fraction(0)
    power = G.one()
    for i in range(g + 1):
        total += comb(delta, i) * G.integrate(sym.c(g - i) * power)
        power = power * s1
    return total, delta


def degree_linear_plus_one(r: int, q: int, d: int) -> DegreeResult:
    """d = (1, ..., 1, d) with q ones."""
    if q < 1 or d < 2:
        raise ValueError(f"need q >= 1 and d >= 2, got q={q}, d={d}")
    if q > r - 1:
        raise ValueError(f"need q <= r-1, got q={q}, r={r}")
    dbar = (1,) * q + (d,)

    def run():
        total, delta = linear_plus_one_sum(q, r, d)
        if delta != component_dim(r, dbar):
            raise ArithmeticError("family dimension disagrees with the component dimension")
        return total, EXACT, ""

    return _timed(run, r, dbar, LINEAR_PLUS_ONE)


def linear_plus_one_poly_q2r3(d: int) -> Fraction:
    """Closed polynomial of degree 12 in d for (q, r) = (2, 3)."""
    num = (d ** 2 * (d - 1) * (d + 3) * (d ** 2 + 2) * (d ** 2 + 4 * d + 6)
           * (d + 2) ** 2 * (d + 1) ** 2)
    return Fraction(num, 2 ** 6 * 3 ** 5)


def degree_222_value(r: int):
    if r < 3:
        raise ValueError("the (2,2,2) computation needs r >= 3")
    m = comb(r + 2, 2)
    n = 3 * (m - 3)
    Y = Grassmannian(2, r + 1)
    codim = n - Y.dim
    sym2_dual = chern_sym(chern_dual(Y.tautological_sub()), 2)
    # tautological sub of G(3, S_2) restricts to Sym_2 R_Y
    quotient_x = BundleClass.trivial(Y, m) - chern_dual(sym2_dual)
    tx = chern_tensor(sym2_dual, quotient_x)
    normal = tx - Y.tangent_bundle()
    if normal.rank != codim:
        raise ArithmeticError("normal bundle rank does not match the codimension")
    H = sym2_dual.c(1)
    return plucker_degree_formula(3, m) + blowup_correction(H, normal, n, codim)


def degree_222(r: int) -> DegreeResult:
    def run():
        return degree_222_value(r), EXACT, ""

    return _timed(run, r, (2, 2, 2), TWO_TWO_TWO)


def degree_2odd_value(r: int, m: int):
    if r < 2:
        raise ValueError("the (2, 2m+1) computation needs r >= 2")
    if m < 1:
        raise ValueError("m must be positive")
    t = 2 * m + 1
    n2, n3 = _n(r, 2), _n(r, t)
    n = n2 + n3
    V = ProjectiveSpace(r)
    h = V.h()

    def line(c):
        return BundleClass.line(c)

    H = h.scale(2 + t)
    # first center: the Veronese-type curve of pairs (L^2, L^t)
    n_vx = (n2 + 1) * line(h.scale(2)) + (n3 + 1) * line(h.scale(t)) - (r + 1) * line(h)
    total = Fraction(comb(n, n2))
    total += blowup_correction(H, n_vx, n, n - r)
    # second center: B' = P(N_{V/B}) inside the first exceptional divisor
    n_vb = (n2 + 1) * line(h.scale(2)) - (r + 1) * line(h)
    B = ProjectiveBundle(V, n_vb)
    zeta = B.zeta()
    hb = B.pullback(h)
    A = hb.scale(2 + t) + zeta
    codim_b = n3 + 1
    n_bx = ((n3 + 1) * line(hb.scale(t) + zeta) - line(zeta) + line(-zeta))
    if B.dim + codim_b != n:
        raise ArithmeticError("second center has the wrong dimension")
    # the second center is counted with multiplicity m
    total += m * blowup_correction(A, n_bx, n, codim_b)
    return total


def degree_2odd(r: int, m: int) -> DegreeResult:
    def run():
        status = EXACT if r <= TWO_ODD_PROVED_RMAX else CONJECTURAL
        notes = "" if status == EXACT else (
            f"resolution of indeterminacy proved only for r <= {TWO_ODD_PROVED_RMAX}")
        return degree_2odd_value(r, m), status, notes

    return _timed(run, r, (2, 2 * m + 1), TWO_ODD)


def degree_dispatch(spec: DegreeSpec) -> DegreeResult | NoMethod:
    r, d = spec.r, spec.dbar.degrees
    q = spec.q
    family = spec.family
    if family == GRASS:
        return degree_grass_family(r, q)
    if family == EQUAL_PENCIL:
        return degree_equal_pencil(r, d[0])
    if family == DIVISIBLE:
        return degree_divisible_pencil(r, d[0], d[1])
    if family == LINEAR_PLUS_ONE:
        return degree_linear_plus_one(r, q, d[-1])
    if family == TWO_TWO_TWO:
        return degree_222(r)
    if family == TWO_ODD:
        return degree_2odd(r, (d[1] - 1) // 2)
    near, example = nearest_family(d)
    return NoMethod(r, d, near,
                    f"no degree method for d={d}; nearest supported family is {near} "
                    f"(e.g. d={example})")


# degree-27 interpolation for (2, t) on P^3, t = 2m + 1
_INTERP_23_COEFFS = (
    1, 55, 1450, 24616, 305020, 2961172, 23561656, 158392960, 918866662, 4670514826,
    21033417148, 84615935632, 305921226844, 998318576836, 2949392111320, 7903552056256,
    19229223618721, 41774679574903, 72390849730794, 15945324910344, -541088235621216,
    -2539188961011216, -315410776482528, 14933666207688192, 85822791395378688,
    -247712474710388736, 162893498195312640,
)
_INTERP_23_DENOM = 3656994324480


def interpolation_poly_23(t: int) -> Fraction:
    inner = 0
    for c in _INTERP_23_COEFFS:
        inner = inner * t + c
    return Fraction((t - 1) * inner, _INTERP_23_DENOM)


@dataclass(frozen=True)
class InterpolationRow:
    m: int
    t: int
    polynomial: Fraction
    degree: int
    match: bool


def interpolation_check_23(r: int = 3, m_max: int = 5) -> list[InterpolationRow]:
    if r != 3:
        raise ValueError("the interpolation polynomial is only available for r = 3")
    if m_max < 1:
        raise ValueError("m_max must be positive")
    rows = []
    for m in range(1, m_max + 1):
        t = 2 * m + 1
        poly = interpolation_poly_23(t)
        deg = degree_2odd(r, m).degree
        rows.append(InterpolationRow(m, t, poly, deg, poly == deg))
    return rows
