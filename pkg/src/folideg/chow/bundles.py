"""Chern-class calculus for (virtual) bundles on a Chow ring.

A :class:`BundleClass` is a rank together with a total Chern class.  The
rank may be negative and the total class need not stop at the rank: formal
differences of bundles are allowed throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .rings import AmbientMismatchError, ChowClass, ChowRing, ProjectiveBundle, sum_classes

MAX_SYM_RANK = 4


class UnsupportedRankError(ValueError):
    """No universal identity is available for this rank."""


@dataclass(frozen=True, eq=False)
class BundleClass:
    rank: int
    total: ChowClass
    _segre: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if self.total.constant_term() != 1:
            raise ValueError("total Chern class must have constant term 1")

    @property
    def ring(self) -> ChowRing:
        return self.total.ring

    @classmethod
    def trivial(cls, ring: ChowRing, rank: int = 1) -> "BundleClass":
        return cls(rank, ring.one())

    @classmethod
    def line(cls, c1: ChowClass) -> "BundleClass":
        return cls(1, c1.ring.one() + c1)

    def c(self, i: int) -> ChowClass:
        if i < 0:
            return self.ring.zero()
        return self.total.part(i)

    def chern_classes(self) -> list[ChowClass]:
        return self.total.parts()

    def __add__(self, other: "BundleClass") -> "BundleClass":
        _same_ring(self, other)
        return BundleClass(self.rank + other.rank, self.total * other.total)

    def __neg__(self) -> "BundleClass":
        return BundleClass(-self.rank, self.total.inverse())

    def __sub__(self, other: "BundleClass") -> "BundleClass":
        _same_ring(self, other)
        return BundleClass(self.rank - other.rank, self.total * other.total.inverse())

    def __rmul__(self, n: int) -> "BundleClass":
        if not isinstance(n, int):
            return NotImplemented
        return BundleClass(n * self.rank, self.total ** n)

    def __eq__(self, other):
        if not isinstance(other, BundleClass):
            return NotImplemented
        return self.rank == other.rank and self.total == other.total

    __hash__ = object.__hash__

    def segre_class(self) -> ChowClass:
        if not self._segre:
            self._segre.append(segre(self))
        return self._segre[0]


def _same_ring(a: BundleClass, b: BundleClass):
    if a.ring is not b.ring:
        raise AmbientMismatchError("bundles live on different rings")


def segre(E: BundleClass) -> ChowClass:
    """s(E) = 1 / c(E), graded: s_k = -sum_{i=1..k} c_i(E) s_{k-i}."""
    return E.total.inverse()


def chern_dual(E: BundleClass) -> BundleClass:
    return BundleClass(E.rank, sum_classes(E.ring, (ci.scale((-1) ** i)
                                                     for i, ci in enumerate(E.chern_classes()))))


def _binom(n: int, k: int) -> int:
    """Binomial coefficient valid for negative n."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


def chern_tensor_line(E: BundleClass, L: BundleClass) -> BundleClass:
    """c_k(E (x) L) = sum_i binom(rk E - i, k - i) c_i(E) t^{k-i}, t = c_1(L)."""
    if L.rank != 1:
        raise ValueError("second argument must be a line bundle")
    _same_ring(E, L)
    ring = E.ring
    t = L.c(1)
    cs = E.chern_classes()
    tp = [ring.one()]
    for _ in range(ring.dim):
        tp.append(tp[-1] * t)
    out = []
    for k in range(ring.dim + 1):
        for i in range(k + 1):
            b = _binom(E.rank - i, k - i)
            if b and cs[i] and tp[k - i]:
                out.append((cs[i] * tp[k - i]).scale(b))
    return BundleClass(E.rank, sum_classes(ring, out))


def power_sums(E: BundleClass) -> list[ChowClass]:
    """p_0..p_dim of the Chern roots (Newton's identities); p_0 = rank."""
    ring = E.ring
    c = E.chern_classes()
    p = [ring.scalar(E.rank)]
    for k in range(1, ring.dim + 1):
        acc = c[k].scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            if c[i] and p[k - i]:
                acc = acc + (c[i] * p[k - i]).scale((-1) ** (i - 1))
        p.append(acc)
    return p


def from_power_sums(rank: int, p: list[ChowClass]) -> BundleClass:
    """Inverse of :func:`power_sums`: k c_k = sum_{i=1..k} (-1)^{i-1} c_{k-i} p_i."""
    ring = p[0].ring
    c = [ring.one()]
    for k in range(1, ring.dim + 1):
        acc = ring.zero()
        for i in range(1, k + 1):
            if c[k - i] and p[i]:
                acc = acc + (c[k - i] * p[i]).scale((-1) ** (i - 1))
        c.append(acc.scale(Fraction(1, k)))
    return BundleClass(rank, sum_classes(ring, c).normalized())


def chern_tensor(E: BundleClass, F: BundleClass) -> BundleClass:
    """c(E (x) F) through power sums: p_k(E (x) F) = sum_m C(k, m) p_m(E) p_{k-m}(F)."""
    _same_ring(E, F)
    ring = E.ring
    if F.rank == 1 and not any(F.c(i) for i in range(2, ring.dim + 1)):
        return chern_tensor_line(E, F)
    if E.rank == 1 and not any(E.c(i) for i in range(2, ring.dim + 1)):
        return chern_tensor_line(F, E)
    pe, pf = power_sums(E), power_sums(F)
    p = [ring.scalar(E.rank * F.rank)]
    for k in range(1, ring.dim + 1):
        acc = ring.zero()
        for m in range(k + 1):
            if pe[m] and pf[k - m]:
                acc = acc + (pe[m] * pf[k - m]).scale(comb(k, m))
        p.append(acc)
    return from_power_sums(E.rank * F.rank, p)


# ---------------------------------------------------------------------------
# universal identities for symmetric powers
# ---------------------------------------------------------------------------

def _truncated_mul(a: dict, b: dict, top: int) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        d1 = sum(e1)
        for e2, c2 in b.items():
            if d1 + sum(e2) > top:
                continue
            key = tuple(x + y for x, y in zip(e1, e2))
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for a in range(total, -1, -1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def _elementary(k: int, i: int) -> dict:
    """e_i(x_1..x_k) as an exponent dict."""
    out = {}
    for idx in itertools.combinations(range(k), i):
        out[tuple(1 if j in idx else 0 for j in range(k))] = 1
    return out


def to_elementary(poly: dict, k: int) -> dict:
    """Rewrite a symmetric polynomial in x_1..x_k as a polynomial in e_1..e_k.

    Keys of the result are exponent vectors (a_1..a_k) of e_1^{a_1}...e_k^{a_k}.
    """
    es = [_elementary(k, i) for i in range(1, k + 1)]
    cache: dict = {}

    def e_mono(alpha):
        val = cache.get(alpha)
        if val is None:
            val = {(0,) * k: 1}
            for i, a in enumerate(alpha):
                for _ in range(a):
                    val = _truncated_mul(val, es[i], 10 ** 9)
            cache[alpha] = val
        return val

    f = dict(poly)
    out: dict = {}
    while f:
        lead = max(f)
        c = f[lead]
        if any(lead[i] < lead[i + 1] for i in range(k - 1)):
            raise ValueError("polynomial is not symmetric")
        alpha = tuple(lead[i] - (lead[i + 1] if i + 1 < k else 0) for i in range(k))
        out[alpha] = out.get(alpha, 0) + c
        for exp, v in e_mono(alpha).items():
            nv = f.get(exp, 0) - c * v
            if nv:
                f[exp] = nv
            else:
                f.pop(exp, None)
    return out


@lru_cache(maxsize=None)
def sym_universal(k: int, d: int, top: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """c(Sym^d E) for rank k as a polynomial in c_1..c_k, up to degree ``top``."""
    prod = {(0,) * k: 1}
    for a in _compositions(d, k):
        lin = {(0,) * k: 1}
        for i, ai in enumerate(a):
            if ai:
                lin[tuple(1 if j == i else 0 for j in range(k))] = ai
        prod = _truncated_mul(prod, lin, top)
    return tuple(sorted(to_elementary(prod, k).items()))


def evaluate_universal(poly, cs: list[ChowClass], ring: ChowRing) -> ChowClass:
    """Substitute classes c_1..c_k into a polynomial in e_1..e_k."""
    k = len(cs)
    powers = [[ring.one()] for _ in range(k)]

    def pw(i, a):
        lst = powers[i]
        while len(lst) <= a:
            lst.append(lst[-1] * cs[i])
        return lst[a]

    out = []
    for alpha, coeff in poly:
        term = ring.scalar(coeff)
        for i, a in enumerate(alpha):
            if a:
                term = term * pw(i, a)
                if not term:
                    break
        if term:
            out.append(term)
    return sum_classes(ring, out)


def chern_sym(E: BundleClass, d: int) -> BundleClass:
    """Chern class of Sym^d E by the splitting principle."""
    if d < 0:
        raise ValueError("symmetric power must be nonnegative")
    k = E.rank
    if not 0 <= k <= MAX_SYM_RANK:
        raise UnsupportedRankError(f"symmetric powers need 0 <= rank <= {MAX_SYM_RANK}, got {k}")
    ring = E.ring
    if k == 0 or d == 0:
        return BundleClass(1 if d == 0 else 0, ring.one())
    if any(E.c(i) for i in range(k + 1, ring.dim + 1)):
        raise UnsupportedRankError("symmetric powers of virtual bundles are not supported")
    top = ring.dim
    poly = sym_universal(k, d, top)
    cs = [E.c(i) for i in range(1, k + 1)]
    return BundleClass(comb(k + d - 1, d), evaluate_universal(poly, cs, ring).normalized())


# ---------------------------------------------------------------------------
# pushforwards
# ---------------------------------------------------------------------------

def proj_bundle_push(a: ChowClass, E: BundleClass) -> ChowClass:
    """pi_* from P(E) to the base: pi_*(b zeta^j) = b s_{j-e+1}(E)."""
    ring = a.ring
    if not isinstance(ring, ProjectiveBundle) or ring.bundle is not E:
        raise AmbientMismatchError("class does not live on P(E)")
    s = E.segre_class()
    base = ring.base
    out = []
    by_j: dict = {}
    for (b, j), c in a.terms.items():
        by_j.setdefault(j, {})[b] = c
    for j, terms in by_j.items():
        sj = s.part(j - E.rank + 1)
        if sj:
            out.append(ChowClass(base, terms) * sj)
    return sum_classes(base, out)


def blowup_excep_push(j: int, N: BundleClass, delta: int) -> ChowClass:
    """Contribution of E^j pushed to the center: (-1)^{j-1} s_{j-delta}(N)."""
    if j < 1:
        raise ValueError("exponent must be positive")
    if j < delta:
        return N.ring.zero()
    return N.segre_class().part(j - delta).scale((-1) ** (j - 1))


def plucker_degree_formula(k: int, n: int) -> int:
    """(k(n-k))! prod_{i<k} i! / prod_{i<k} (n-k+i)!."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    num = factorial(k * (n - k))
    den = 1
    for i in range(k):
        num *= factorial(i)
        den *= factorial(n - k + i)
    value = Fraction(num, den)
    if value.denominator != 1:
        raise ArithmeticError("non-integral Pluecker degree")
    return value.numerator
