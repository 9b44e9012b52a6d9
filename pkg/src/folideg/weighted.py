"""Weighted-homogeneous polynomials and the group GL(q, d) of weighted self-maps.

Variables ``y_0..y_q`` carry weights ``d_0 <= ... <= d_q``.  A map of type d
has components ``f_i`` that are weighted homogeneous of weight ``d_i``; such
maps are block-triangular in the weight blocks, which makes composition and
inversion purely algebraic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import comb
from typing import Iterator, Sequence

from .algebra import ExactMatrix, MultiPoly, matrix_rank, rational, solve_linear
from .forms import differential, wedge


class SingularLinearPartError(ValueError):
    """A weighted map whose diagonal blocks are not invertible."""


class BaseLocusError(ValueError):
    """The tuple F lies in the base locus (its Jacobian form vanishes)."""


@dataclass(frozen=True)
class DegreeVector:
    degrees: tuple[int, ...]

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        if not degs:
            raise ValueError("degree vector must be nonempty")
        if any(d < 1 for d in degs):
            raise ValueError(f"degrees must be positive, got {degs}")
        if any(a > b for a, b in zip(degs, degs[1:])):
            raise ValueError(f"degrees must be nondecreasing, got {degs}")
        object.__setattr__(self, "degrees", degs)

    @classmethod
    def of(cls, d) -> "DegreeVector":
        """Coerce a DegreeVector or any iterable of degrees (sorted first)."""
        if isinstance(d, DegreeVector):
            return d
        return cls(tuple(sorted(int(x) for x in d)))

    @classmethod
    def from_blocks(cls, values: Sequence[int], mults: Sequence[int]) -> "DegreeVector":
        if len(values) != len(mults):
            raise ValueError("values and multiplicities differ in length")
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ValueError("block values must be strictly increasing")
        if any(n < 1 for n in mults):
            raise ValueError("multiplicities must be positive")
        return cls(tuple(v for v, n in zip(values, mults) for _ in range(n)))

    @property
    def q(self) -> int:
        return len(self.degrees) - 1

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.degrees)))

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(self.degrees.count(v) for v in self.values)

    def blocks(self) -> list[list[int]]:
        """Variable indices grouped by weight, lowest weight first."""
        return [[i for i, d in enumerate(self.degrees) if d == v] for v in self.values]

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]


def weighted_exponents(weights: Sequence[int], e: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors alpha >= 0 with sum(weights[i] * alpha[i]) == e."""
    n = len(weights)

    def rec(i, left):
        if i == n - 1:
            if left % weights[i] == 0:
                yield (left // weights[i],)
            return
        for a in range(left // weights[i] + 1):
            for rest in rec(i + 1, left - a * weights[i]):
                yield (a,) + rest

    if e < 0:
        return
    yield from rec(0, e)


def weighted_dim(q: int, dbar, e: int) -> int:
    dbar = DegreeVector.of(dbar)
    if dbar.q != q:
        raise ValueError(f"degree vector has {len(dbar)} entries, expected {q + 1}")
    if e < 0:
        raise ValueError("weight must be nonnegative")
    return sum(1 for _ in weighted_exponents(dbar.degrees, e))


def hilbert_coeffs(dbar, e_max: int) -> list[int]:
    """Coefficients 0..e_max of prod_i 1/(1 - t^{d_i})."""
    if e_max < 0:
        raise ValueError("e_max must be nonnegative")
    dbar = DegreeVector.of(dbar)
    h = [1] + [0] * e_max
    for d in dbar:
        for k in range(d, e_max + 1):
            h[k] += h[k - d]
    return h


def fiber_dim(q: int, dbar) -> int:
    dbar = DegreeVector.of(dbar)
    if dbar.q != q:
        raise ValueError(f"degree vector has {len(dbar)} entries, expected {q + 1}")
    h = hilbert_coeffs(dbar, dbar.degrees[-1])
    return sum(h[d] - 1 for d in dbar)


def component_dim(r: int, dbar) -> int:
    dbar = DegreeVector.of(dbar)
    return sum(comb(r + d, r) - 1 for d in dbar) - fiber_dim(dbar.q, dbar)


def base_locus_member(F: Sequence[MultiPoly], r: int | None = None) -> bool:
    """True iff dF_0 ^ ... ^ dF_q vanishes identically."""
    if not F:
        raise ValueError("need at least one polynomial")
    if r is not None and F[0].nvars != r + 1:
        raise ValueError(f"polynomials live in {F[0].nvars} variables, not {r + 1}")
    for f in F:
        if f.homogeneous_degree() is None:
            raise ValueError(f"polynomial {f} is not homogeneous")
    if len(F) > F[0].nvars:
        return True
    return not reduce(wedge, (differential(f) for f in F))


def _weight(exp, degrees):
    return sum(a * d for a, d in zip(exp, degrees))


@dataclass(frozen=True)
class WeightedMap:
    """y -> (f_0(y), ..., f_q(y)) with f_i weighted homogeneous of weight d_i."""

    dbar: DegreeVector
    components: tuple[MultiPoly, ...]

    def __post_init__(self):
        dbar = DegreeVector.of(self.dbar)
        object.__setattr__(self, "dbar", dbar)
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        n = len(dbar)
        if len(comps) != n:
            raise ValueError(f"expected {n} components, got {len(comps)}")
        for i, f in enumerate(comps):
            if f.nvars != n:
                raise ValueError(f"component {i} is not a polynomial in {n} variables")
            for exp in f.terms:
                if _weight(exp, dbar.degrees) != dbar[i]:
                    raise ValueError(f"component {i} has a monomial {exp} of the wrong weight")

    @classmethod
    def identity(cls, dbar) -> "WeightedMap":
        dbar = DegreeVector.of(dbar)
        n = len(dbar)
        return cls(dbar, tuple(MultiPoly.variable(i, n) for i in range(n)))

    @classmethod
    def from_coefficients(cls, dbar, coeffs: Sequence[dict]) -> "WeightedMap":
        dbar = DegreeVector.of(dbar)
        return cls(dbar, tuple(MultiPoly(len(dbar), dict(c)) for c in coeffs))

    def linear_block(self, b: int) -> list[list]:
        """Matrix A_b with f_i = sum_j A_b[i][j] y_j + (lower-weight terms), i, j in block b."""
        idx = self.dbar.blocks()[b]
        n = len(self.dbar)
        out = []
        for i in idx:
            row = []
            for j in idx:
                exp = tuple(1 if k == j else 0 for k in range(n))
                row.append(self.components[i].coefficient(exp))
            out.append(row)
        return out

    def is_invertible(self) -> bool:
        return all(_block_inverse(self.linear_block(b)) is not None
                   for b in range(len(self.dbar.values)))

    def __call__(self, values: Sequence[MultiPoly]) -> list[MultiPoly]:
        return [f.substitute(values) for f in self.components]


def _block_inverse(a: list[list]) -> list[list] | None:
    n = len(a)
    m = ExactMatrix.from_rows(a, n)
    if matrix_rank(m) < n:
        return None
    cols = [solve_linear(m, [int(i == k) for i in range(n)]) for k in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def glqd_compose(f: WeightedMap, g: WeightedMap) -> WeightedMap:
    """The map f o g (apply g first)."""
    if f.dbar != g.dbar:
        raise ValueError("maps have different degree vectors")
    return WeightedMap(f.dbar, tuple(f(g.components)))


def glqd_invert(f: WeightedMap) -> WeightedMap:
    """Two-sided inverse, solving one weight block at a time from the lowest."""
    dbar = f.dbar
    n = len(dbar)
    z = [MultiPoly.variable(i, n) for i in range(n)]
    h: list[MultiPoly | None] = [None] * n
    zero = MultiPoly.zero(n)
    for b, idx in enumerate(dbar.blocks()):
        inv = _block_inverse(f.linear_block(b))
        if inv is None:
            raise SingularLinearPartError(f"linear block for weight {dbar.values[b]} is singular")
        # f_i(y) = sum_j A[i][j] y_j + P_i(y_<b); only lower blocks of h are needed
        lower = [h[k] if h[k] is not None else zero for k in range(n)]
        resid = []
        for i in idx:
            p = f.components[i]
            lin_terms = {}
            for j in idx:
                exp = tuple(1 if k == j else 0 for k in range(n))
                c = p.coefficient(exp)
                if c:
                    lin_terms[exp] = c
            p_rest = p - MultiPoly(n, lin_terms)
            resid.append(z[i] - p_rest.substitute(lower))
        for a, i in enumerate(idx):
            acc = zero
            for c, t in zip(inv[a], resid):
                if c:
                    acc = acc + t.scale(c)
            h[i] = acc
    return WeightedMap(dbar, tuple(h))


def fiber_witness(F: Sequence[MultiPoly], G: Sequence[MultiPoly]) -> WeightedMap | None:
    """The weighted map f with G_j = f_j(F_0, ..., F_q), if one exists in GL(q, d)."""
    if len(F) != len(G):
        raise ValueError("F and G have different lengths")
    degs = []
    for f, g in zip(F, G):
        df, dg = f.homogeneous_degree(), g.homogeneous_degree()
        if df is None or dg is None or not f or not g:
            raise ValueError("inputs must be nonzero homogeneous polynomials")
        if df != dg:
            raise ValueError("F and G have different degree vectors")
        degs.append(df)
    if any(a > b for a, b in zip(degs, degs[1:])):
        raise ValueError("polynomials must be ordered by nondecreasing degree")
    if base_locus_member(F):
        raise BaseLocusError("F lies in the base locus")
    dbar = DegreeVector(tuple(degs))
    n = len(dbar)
    power_cache: dict = {}

    def fpow(exp):
        p = power_cache.get(exp)
        if p is None:
            p = MultiPoly.constant(1, F[0].nvars)
            for fi, a in zip(F, exp):
                if a:
                    p = p * fi ** a
            power_cache[exp] = p
        return p

    comps = []
    for j in range(n):
        exps = list(weighted_exponents(dbar.degrees, dbar[j]))
        polys = [fpow(e) for e in exps]
        keys = sorted({m for p in polys for m in p.terms} | set(G[j].terms))
        grid = [[p.coefficient(k) for p in polys] for k in keys]
        rhs = [G[j].coefficient(k) for k in keys]
        sol = solve_linear(ExactMatrix.from_rows(grid, len(exps)), rhs)
        if sol is None:
            return None
        comps.append(MultiPoly(n, {e: rational(c) for e, c in zip(exps, sol) if c}))
    f = WeightedMap(dbar, tuple(comps))
    return f if f.is_invertible() else None
