"""Exact arithmetic foundation: rationals, multivariate polynomials, linear algebra.

Coefficients are kept as ``int`` whenever they are integral and as
:class:`fractions.Fraction` otherwise; both are exact rationals and mix freely.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

Rational = Fraction


def rational(x) -> int | Fraction:
    """Normalize an exact scalar: integral values become ``int``."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class _AnyDegree:
    """Degree marker of the zero polynomial, homogeneous of every degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANY_DEGREE"


ANY_DEGREE = _AnyDegree()


def _grlex_key(exp: tuple[int, ...]):
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Polynomial in ``nvars`` variables with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.  Instances are
    treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        if nvars <= 0:
            raise ValueError("a polynomial needs at least one variable")
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not have length {nvars}")
                if c:
                    clean[tuple(exp)] = rational(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): coeff})

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = rational(v)
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = rational(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: rational(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: rational(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self.sorted_exponents():
            c = self.terms[e]
            mono = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- structure --------------------------------------------------------

    def sorted_exponents(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=_grlex_key)

    def homogeneous_degree(self):
        """Common total degree of all terms, ``None`` if mixed, ANY_DEGREE for 0."""
        if not self.terms:
            return ANY_DEGREE
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def diff(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return MultiPoly._raw(self.nvars, out)

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), 0)

    def substitute(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace variable ``i`` by ``values[i]`` (all in one ring)."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        target = values[0].nvars
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(1, target)} for _ in values]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * values[i]
            return cache[k]

        out = MultiPoly.zero(target)
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, target)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total += v
        return rational(total)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials."""
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_is_homogeneous(f: MultiPoly):
    return f.homogeneous_degree()


def monomial_exponents(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total ``degree``, in graded-lex (descending) order."""
    if degree < 0:
        return []
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=_grlex_key)
    return out


def random_homogeneous(nvars: int, degree: int, rng: random.Random,
                       low: int = -3, high: int = 3) -> MultiPoly:
    terms = {e: rng.randint(low, high) for e in monomial_exponents(nvars, degree)}
    return MultiPoly(nvars, terms)


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [tuple(rational(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           tuple(tuple(self.entries[i][j] for i in range(self.rows))
                                 for j in range(self.cols)))

    def apply(self, v: Sequence) -> tuple:
        return tuple(rational(sum(a * x for a, x in zip(row, v))) for row in self.entries)


def _integral_row(row: Iterable) -> list[int]:
    row = [Fraction(x) for x in row]
    den = 1
    for x in row:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def _bareiss(a: list[list[int]], ncols: int, stop_col: int | None = None):
    """Fraction-free row echelon form in place; returns the pivot columns.

    Columns ``>= stop_col`` are carried along but never used as pivots.
    """
    nrows = len(a)
    last = ncols if stop_col is None else stop_col
    prev = 1
    r = 0
    pivots = []
    for c in range(last):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def _back_substitute(a, pivots, ncols, free_values: dict[int, Fraction]) -> list[Fraction]:
    x = [Fraction(0)] * ncols
    for j, v in free_values.items():
        x[j] = Fraction(v)
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        row = a[i]
        s = sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j] and x[j]), Fraction(0))
        x[c] = -s / row[c]
    return x


def matrix_rank_kernel(m: ExactMatrix) -> tuple[int, list[tuple]]:
    """Rank and a kernel basis of ``m`` by fraction-free (Bareiss) elimination."""
    a = [_integral_row(r) for r in m.entries]
    pivots = _bareiss(a, m.cols)
    pivset = set(pivots)
    kernel = []
    for f in range(m.cols):
        if f in pivset:
            continue
        x = _back_substitute(a, pivots, m.cols, {f: 1})
        kernel.append(tuple(rational(v) for v in x))
    return len(pivots), kernel


def matrix_rank(m: ExactMatrix) -> int:
    a = [_integral_row(r) for r in m.entries]
    return len(_bareiss(a, m.cols))


def solve_linear(m: ExactMatrix, rhs: Sequence) -> tuple | None:
    """One exact solution of ``m x = rhs`` (free variables set to 0), or None."""
    if len(rhs) != m.rows:
        raise ValueError("right-hand side has the wrong length")
    aug = [_integral_row(list(row) + [b]) for row, b in zip(m.entries, rhs)]
    pivots = _bareiss(aug, m.cols + 1, stop_col=m.cols)
    r = len(pivots)
    if any(aug[i][m.cols] for i in range(r, m.rows)):
        return None
    # treat the rhs column as a free variable fixed at -1
    x = _back_substitute(aug, pivots, m.cols + 1, {m.cols: -1})
    return tuple(rational(v) for v in x[:m.cols])


# -- multimodular kernel with exact certificate --------------------------

_PRIME_CACHE: list[int] = []


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _primes() -> Iterator[int]:
    """Primes below 2**31 in descending order (cached)."""
    i = 0
    n = (1 << 31) - 1
    while True:
        if i < len(_PRIME_CACHE):
            yield _PRIME_CACHE[i]
            i += 1
            continue
        start = _PRIME_CACHE[-1] - 2 if _PRIME_CACHE else n
        while not _is_prime(start):
            start -= 2
        _PRIME_CACHE.append(start)


def _rref_mod(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = m % p
    nrows, ncols = a.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            a[nzr] = (a[nzr] - (col[nzr, None] * a[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p for residues below p, via float64 when safe."""
    inner = a.shape[1]
    if inner * (p - 1) ** 2 < (1 << 53):
        return (np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
                ).astype(np.int64) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, (1 << 53) // ((p - 1) ** 2))
    for s in range(0, inner, step):
        out = (out + (np.asarray(a[:, s:s + step], dtype=np.float64)
                      @ np.asarray(b[s:s + step], dtype=np.float64)).astype(np.int64)) % p
    return out


def _verify_kernel(a: np.ndarray, x_cols: list[list[int]]) -> bool:
    """Check exactly that integer matrix ``a`` annihilates each integer vector."""
    if not x_cols:
        return True
    max_a = int(np.abs(a).sum(axis=1).max()) if a.size else 0
    max_x = max(abs(v) for col in x_cols for v in col)
    bound = 2 * max_a * max_x + 1
    modulus = 1
    # primes small enough that the float64 products stay exact
    limit = int(((1 << 53) / max(1, a.shape[1])) ** 0.5)
    p = min(limit, 1 << 24)
    while modulus <= bound:
        p -= 1
        while not _is_prime(p):
            p -= 1
        xa = np.array([[v % p for v in col] for col in x_cols], dtype=np.int64).T
        prod = _matmul_mod(a % p, xa, p)
        if prod.any():
            return False
        modulus *= p
    return True


def sparse_rank_kernel(rows: Sequence[dict[int, int]], ncols: int,
                       seed: int = 0, max_primes: int = 400) -> tuple[int, list[tuple]]:
    """Exact rank and kernel basis of an integer matrix given by sparse rows.

    The kernel is computed modulo a sequence of primes, lifted to the
    rationals by CRT and rational reconstruction, and accepted only after an
    exact multimodular check that it annihilates every row.  The rank found
    modulo a prime never exceeds the rational rank, so a verified kernel of
    complementary dimension is the exact kernel.  Falls back to Bareiss
    elimination if the certificate cannot be produced.
    """
    rows = [r for r in rows if r]
    if ncols == 0:
        return 0, []
    if not rows:
        return 0, [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    max_entry = max(abs(v) for r in rows for v in r.values())
    if max_entry >= (1 << 31):
        return _dense_fallback(rows, ncols)
    a = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in r.items():
            a[i, j] = v
    rng = np.random.default_rng(seed)
    for _attempt in range(3):
        target = ncols + 4
        if a.shape[0] > target and a.shape[0] * max_entry < (1 << 52):
            s = rng.integers(-1, 2, size=(target, a.shape[0])).astype(np.float64)
            c = (s @ a.astype(np.float64)).astype(np.int64)
        else:
            c = a
        result = _multimodular_kernel(a, c, ncols, max_primes)
        if result is not None:
            return result
    return _dense_fallback(rows, ncols)


def _multimodular_kernel(a, c, ncols, max_primes):
    best_pivots = None
    residues: list[np.ndarray] = []
    primes_used: list[int] = []
    last = None
    for count, p in enumerate(_primes()):
        if count >= max_primes:
            return None
        r, piv = _rref_mod(c, p)
        if best_pivots is not None:
            if len(piv) < len(best_pivots):
                continue
            # mod-p pivots can only be later than the rational ones
            if len(piv) == len(best_pivots) and piv > best_pivots:
                continue
        if piv != best_pivots:
            best_pivots = piv
            residues, primes_used, last = [], [], None
        free = [j for j in range(ncols) if j not in set(best_pivots)]
        if not free:
            return len(best_pivots), []
        residues.append(r[:, free].astype(object))
        primes_used.append(p)
        # CRT combine
        combined = residues[0]
        modulus = primes_used[0]
        for res, q in zip(residues[1:], primes_used[1:]):
            inv = pow(modulus, -1, q)
            combined = combined + modulus * (((res - combined) * inv) % q)
            modulus *= q
        residues = [combined]
        primes_used = [modulus]
        recon = []
        ok = True
        for val in combined.flat:
            fr = _rational_reconstruct(int(val), modulus)
            if fr is None:
                ok = False
                break
            recon.append(fr)
        if not ok:
            continue
        if last is None or recon != last:
            last = recon
            continue
        k = len(best_pivots)
        nf = len(free)
        vectors = []
        for fi, f in enumerate(free):
            x = [Fraction(0)] * ncols
            x[f] = Fraction(1)
            for i, pc in enumerate(best_pivots):
                x[pc] = -recon[i * nf + fi]
            den = 1
            for v in x:
                den = lcm(den, v.denominator)
            vectors.append([int(v * den) for v in x])
        if _verify_kernel(a, vectors):
            kernel = []
            for vec in vectors:
                g = 0
                for v in vec:
                    g = gcd(g, v)
                kernel.append(tuple(v // g for v in vec))
            return k, kernel
        last = None
    return None


def _dense_fallback(rows, ncols):
    dense = [[r.get(j, 0) for j in range(ncols)] for r in rows]
    return matrix_rank_kernel(ExactMatrix.from_rows(dense, ncols))
