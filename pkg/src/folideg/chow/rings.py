"""Graded Chow rings with a finite basis and exact coefficients.

Every ring truncates at its dimension: basis elements above the top degree
do not exist, so products are truncated automatically.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable

from ..algebra import rational
from .partitions import Partition, box_partitions, schubert_product


class AmbientMismatchError(ValueError):
    """Classes from different rings were combined."""


class ChowRing:
    dim: int

    def degree(self, b) -> int:
        raise NotImplementedError

    def one_basis(self):
        raise NotImplementedError

    def basis(self) -> list:
        raise NotImplementedError

    def _mul_basis(self, a, b) -> dict:
        raise NotImplementedError

    def mul_basis(self, a, b) -> dict:
        key = (a, b)
        out = self._cache.get(key)
        if out is None:
            out = self._mul_basis(a, b)
            self._cache[key] = out
        return out

    def integrate(self, cls: "ChowClass"):
        raise NotImplementedError

    def basis_name(self, b) -> str:
        return repr(b)

    def one(self) -> "ChowClass":
        return ChowClass(self, {self.one_basis(): 1})

    def zero(self) -> "ChowClass":
        return ChowClass(self, {})

    def scalar(self, c) -> "ChowClass":
        return ChowClass(self, {self.one_basis(): c})


class ProjectiveSpace(ChowRing):
    """Z[h] / h^{r+1}; basis element a stands for h^a."""

    _instances: dict = {}

    def __new__(cls, r: int):
        inst = cls._instances.get(r)
        if inst is None:
            if r < 0:
                raise ValueError("dimension must be nonnegative")
            inst = super().__new__(cls)
            inst.r = inst.dim = r
            inst._cache = {}
            inst = cls._instances.setdefault(r, inst)
        return inst

    def degree(self, a):
        return a

    def one_basis(self):
        return 0

    def basis(self):
        return list(range(self.r + 1))

    def _mul_basis(self, a, b):
        return {a + b: 1} if a + b <= self.r else {}

    def basis_name(self, a):
        return "1" if a == 0 else ("h" if a == 1 else f"h^{a}")

    def h(self) -> "ChowClass":
        return ChowClass(self, {1: 1}) if self.r >= 1 else self.zero()

    def integrate(self, cls):
        cls._check_ring(self)
        return rational(cls.terms.get(self.r, 0))

    def __repr__(self):
        return f"P^{self.r}"


class Grassmannian(ChowRing):
    """Chow ring of G(k, n), k-planes in C^n, in the Schubert basis."""

    _instances: dict = {}

    def __new__(cls, k: int, n: int):
        key = (k, n)
        inst = cls._instances.get(key)
        if inst is None:
            if not 0 <= k <= n:
                raise ValueError(f"invalid Grassmannian G({k},{n})")
            inst = super().__new__(cls)
            inst.k, inst.n = k, n
            inst.dim = k * (n - k)
            inst._cache = {}
            inst._top = Partition((n - k,) * k) if n > k else Partition()
            inst = cls._instances.setdefault(key, inst)
        return inst

    def degree(self, lam):
        return lam.size

    def one_basis(self):
        return Partition()

    def basis(self):
        return box_partitions(self.k, self.n)

    def _mul_basis(self, a, b):
        return schubert_product(a, b, self.k, self.n)

    def basis_name(self, lam):
        return "1" if not lam else "s" + ",".join(map(str, lam))

    def sigma(self, *parts) -> "ChowClass":
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        lam = Partition(sorted(parts, reverse=True))
        if not lam.fits(self.k, self.n):
            return self.zero()
        return ChowClass(self, {lam: 1})

    def sigma1(self) -> "ChowClass":
        return self.sigma(1)

    def integrate(self, cls):
        cls._check_ring(self)
        return rational(cls.terms.get(self._top, 0))

    def tautological_sub(self):
        """R, with c_i(R) = (-1)^i sigma_{1^i}."""
        from .bundles import BundleClass
        total = self.zero()
        for i in range(self.k + 1):
            total = total + self.sigma((1,) * i).scale((-1) ** i)
        return BundleClass(self.k, total)

    def tautological_quotient(self):
        """Q = C^n / R, with c_i(Q) = sigma_i."""
        from .bundles import BundleClass
        total = self.zero()
        for i in range(self.n - self.k + 1):
            total = total + self.sigma(i)
        return BundleClass(self.n - self.k, total)

    def tangent_bundle(self):
        from .bundles import chern_dual, chern_tensor
        return chern_tensor(chern_dual(self.tautological_sub()), self.tautological_quotient())

    def __repr__(self):
        return f"G({self.k},{self.n})"


class ProjectiveBundle(ChowRing):
    """Ring of P(E) (lines in E) over a base ring.

    Basis elements are pairs (b, j) standing for pi^*(b) * zeta^j with
    0 <= j < rank E, where zeta = c_1(O(1)) and
    zeta^e + c_1(E) zeta^{e-1} + ... + c_e(E) = 0.
    """

    def __init__(self, base: ChowRing, bundle):
        if bundle.rank < 1:
            raise ValueError("projective bundle needs a bundle of positive rank")
        if bundle.total.ring is not base:
            raise AmbientMismatchError("bundle does not live on the base ring")
        self.base = base
        self.bundle = bundle
        self.rank = bundle.rank
        self.dim = base.dim + self.rank - 1
        self._cache = {}
        self._chern = [bundle.c(i) for i in range(self.rank + 1)]
        self._zeta_powers: list[dict] = []

    def degree(self, b):
        return self.base.degree(b[0]) + b[1]

    def one_basis(self):
        return (self.base.one_basis(), 0)

    def basis(self):
        return [(b, j) for b in self.base.basis() for j in range(self.rank)
                if self.base.degree(b) + j <= self.dim]

    def _times_zeta(self, terms: dict) -> dict:
        e = self.rank
        out: dict = {}
        for (b, j), c in terms.items():
            if j + 1 < e:
                if self.base.degree(b) + j + 1 <= self.dim:
                    out[(b, j + 1)] = out.get((b, j + 1), 0) + c
                continue
            # zeta^e = -sum_{i>=1} c_i(E) zeta^{e-i}
            for i in range(1, e + 1):
                for bb, cc in self._chern[i].terms.items():
                    for b3, c3 in self.base.mul_basis(b, bb).items():
                        key = (b3, e - i)
                        if self.base.degree(b3) + e - i <= self.dim:
                            out[key] = out.get(key, 0) - c * cc * c3
        return {key: v for key, v in out.items() if v}

    def zeta_power(self, m: int) -> dict:
        zp = self._zeta_powers
        if not zp:
            zp.append({self.one_basis(): 1})
        while len(zp) <= m:
            zp.append(self._times_zeta(zp[-1]))
        return zp[m]

    def _mul_basis(self, x, y):
        (b1, j1), (b2, j2) = x, y
        out: dict = {}
        z = self.zeta_power(j1 + j2)
        for b, c in self.base.mul_basis(b1, b2).items():
            db = self.base.degree(b)
            for (bb, j), cc in z.items():
                if db + self.base.degree(bb) + j > self.dim:
                    continue
                for b3, c3 in self.base.mul_basis(b, bb).items():
                    key = (b3, j)
                    out[key] = out.get(key, 0) + c * cc * c3
        return {key: v for key, v in out.items() if v}

    def basis_name(self, b):
        base, j = b
        z = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
        name = self.base.basis_name(base)
        if not z:
            return name
        return z if name == "1" else f"{name}*{z}"

    def zeta(self) -> "ChowClass":
        return ChowClass(self, self.zeta_power(1))

    def pullback(self, cls: "ChowClass") -> "ChowClass":
        cls._check_ring(self.base)
        return ChowClass(self, {(b, 0): c for b, c in cls.terms.items()})

    def push(self, cls: "ChowClass") -> "ChowClass":
        """pi_*: only zeta^{e-1} survives on the reduced basis."""
        cls._check_ring(self)
        out: dict = {}
        for (b, j), c in cls.terms.items():
            if j == self.rank - 1:
                out[b] = out.get(b, 0) + c
        return ChowClass(self.base, out)

    def integrate(self, cls):
        return self.base.integrate(self.push(cls))

    def __repr__(self):
        return f"P({self.bundle!r} over {self.base!r})"


class ChowClass:
    """Finite linear combination of ring basis elements."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ChowRing, terms: dict[Hashable, object] | None = None):
        self.ring = ring
        self.terms = {b: c for b, c in (terms or {}).items() if c}

    def _check_ring(self, ring):
        if self.ring is not ring:
            raise AmbientMismatchError(f"class lives on {self.ring!r}, not {ring!r}")

    def _coerce(self, other) -> "ChowClass":
        if isinstance(other, ChowClass):
            other._check_ring(self.ring)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, 0) + c
        return ChowClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.ring, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "ChowClass":
        if not c:
            return ChowClass(self.ring)
        return ChowClass(self.ring, {b: v * c for b, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, ChowClass):
            return NotImplemented
        other._check_ring(self.ring)
        ring = self.ring
        deg = ring.degree
        top = ring.dim
        out: dict = {}
        odeg = [(b2, c2, deg(b2)) for b2, c2 in other.terms.items()]
        for b1, c1 in self.terms.items():
            d1 = deg(b1)
            for b2, c2, d2 in odeg:
                if d1 + d2 > top:
                    continue
                c12 = c1 * c2
                for b, c in ring.mul_basis(b1, b2).items():
                    out[b] = out.get(b, 0) + c12 * c
        return ChowClass(ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (self.ring.degree(kv[0]), repr(kv[0])))
        out = []
        for b, c in items:
            name = self.ring.basis_name(b)
            if name == "1":
                out.append(str(c))
            else:
                out.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(out)

    def part(self, k: int) -> "ChowClass":
        """Homogeneous component of degree k."""
        deg = self.ring.degree
        return ChowClass(self.ring, {b: c for b, c in self.terms.items() if deg(b) == k})

    def parts(self) -> list["ChowClass"]:
        """Homogeneous components of degrees 0..dim."""
        buckets: list[dict] = [dict() for _ in range(self.ring.dim + 1)]
        deg = self.ring.degree
        for b, c in self.terms.items():
            buckets[deg(b)][b] = c
        return [ChowClass(self.ring, t) for t in buckets]

    def constant_term(self):
        return self.terms.get(self.ring.one_basis(), 0)

    def inverse(self) -> "ChowClass":
        """Graded inverse: x_0 = 1/a_0, x_k = -(1/a_0) sum_{i>=1} a_i x_{k-i}."""
        a = self.parts()
        a0 = self.constant_term()
        if not a0:
            raise ZeroDivisionError("class with zero constant term is not invertible")
        inv0 = Fraction(1) / a0
        xs = [self.ring.scalar(rational(inv0))]
        for k in range(1, self.ring.dim + 1):
            acc = ChowClass(self.ring)
            for i in range(1, k + 1):
                if a[i] and xs[k - i]:
                    acc = acc + a[i] * xs[k - i]
            xs.append(acc.scale(-inv0))
        return sum_classes(self.ring, xs)

    def integrate(self):
        return self.ring.integrate(self)

    def normalized(self) -> "ChowClass":
        return ChowClass(self.ring, {b: rational(c) for b, c in self.terms.items()})


def sum_classes(ring: ChowRing, classes: Iterable[ChowClass]) -> ChowClass:
    out: dict = {}
    for cls in classes:
        cls._check_ring(ring)
        for b, c in cls.terms.items():
            out[b] = out.get(b, 0) + c
    return ChowClass(ring, out)


def integrate(cls: ChowClass):
    return cls.ring.integrate(cls)
