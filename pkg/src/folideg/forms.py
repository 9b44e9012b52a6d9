"""Polynomial differential forms on affine (r+1)-space and foliation checks.

A :class:`DiffForm` of degree p is a sum of ``f_I dx_I`` over strictly
increasing index tuples ``I``.  The radial (Euler) field ``R = sum x_i d/dx_i``
is contracted with :func:`contract_euler`; projective twisted q-forms are
exactly the q-forms annihilated by it.
"""
from __future__ import annotations

import itertools
from math import lcm
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (ANY_DEGREE, ExactMatrix, MultiPoly, matrix_rank_kernel,
                      monomial_exponents, solve_linear, sparse_rank_kernel)


class NotProjectiveFormError(ValueError):
    """The form is zero or is not annihilated by the Euler field."""


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]):
    """Sign and sorted index tuple of dx_a ^ dx_b, or (0, None) if they overlap."""
    if set(a) & set(b):
        return 0, None
    inversions = 0
    for i in a:
        for j in b:
            if i > j:
                inversions += 1
    return (-1) ** inversions, tuple(sorted(a + b))


class DiffForm:
    """Exterior p-form with polynomial coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "degree", "components")

    def __init__(self, nvars: int, degree: int, components: dict | None = None):
        if degree < 0:
            raise ValueError(f"negative form degree {degree}")
        self.nvars = nvars
        self.degree = degree
        comps = {}
        for idx, f in (components or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {degree}")
            if f.nvars != nvars:
                raise ValueError("coefficient ring mismatch")
            if f:
                comps[idx] = f
        self.components = comps

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "DiffForm":
        return cls(nvars, degree)

    @classmethod
    def function(cls, f: MultiPoly) -> "DiffForm":
        return cls(f.nvars, 0, {(): f})

    @classmethod
    def basis(cls, nvars: int, idx: Sequence[int], coeff: MultiPoly | None = None) -> "DiffForm":
        """``coeff * dx_{i1} ^ ... ^ dx_{ip}`` for an arbitrary index order."""
        idx = tuple(idx)
        c = coeff if coeff is not None else MultiPoly.constant(1, nvars)
        if len(set(idx)) != len(idx):
            return cls(nvars, len(idx))
        perm = sorted(range(len(idx)), key=lambda k: idx[k])
        sign = _perm_sign(perm)
        return cls(nvars, len(idx), {tuple(sorted(idx)): c.scale(sign)})

    def __add__(self, other: "DiffForm") -> "DiffForm":
        self._check(other)
        out = dict(self.components)
        for idx, f in other.components.items():
            g = out.get(idx)
            out[idx] = f if g is None else g + f
        return DiffForm(self.nvars, self.degree, out)

    def __neg__(self):
        return DiffForm(self.nvars, self.degree, {i: -f for i, f in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffForm":
        if isinstance(c, MultiPoly):
            return DiffForm(self.nvars, self.degree, {i: f * c for i, f in self.components.items()})
        return DiffForm(self.nvars, self.degree, {i: f.scale(c) for i, f in self.components.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return (self.nvars == other.nvars and self.degree == other.degree
                and self.components == other.components)

    def __bool__(self):
        return bool(self.components)

    def __repr__(self):
        if not self.components:
            return f"0 ({self.degree}-form)"
        parts = []
        for idx in sorted(self.components):
            d = "^".join(f"dx{i}" for i in idx)
            parts.append(f"({self.components[idx]})" + (f"*{d}" if d else ""))
        return " + ".join(parts)

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")
        if self.degree != other.degree:
            raise ValueError(f"cannot add forms of degrees {self.degree} and {other.degree}")

    def coefficient_degree(self):
        """Common degree of all coefficients (ANY_DEGREE for 0, None if mixed)."""
        degs = set()
        for f in self.components.values():
            d = f.homogeneous_degree()
            if d is None:
                return None
            degs.add(d)
        if not degs:
            return ANY_DEGREE
        return degs.pop() if len(degs) == 1 else None


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    if a.nvars != b.nvars:
        raise ValueError("variable-count mismatch")
    deg = a.degree + b.degree
    out: dict = {}
    for ia, fa in a.components.items():
        for ib, fb in b.components.items():
            sign, idx = _merge_sign(ia, ib)
            if not sign:
                continue
            prod = fa * fb
            if sign < 0:
                prod = -prod
            g = out.get(idx)
            out[idx] = prod if g is None else g + prod
    return DiffForm(a.nvars, deg, out)



def exterior_d(a: DiffForm) -> DiffForm:
    n = a.nvars
    out: dict = {}
    for idx, f in a.components.items():
        for k in range(n):
            if k in idx:
                continue
            g = f.diff(k)
            if not g:
                continue
            pos = sum(1 for i in idx if i < k)
            if pos % 2:
                g = -g
            new = tuple(sorted(idx + (k,)))
            h = out.get(new)
            out[new] = g if h is None else h + g
    return DiffForm(n, a.degree + 1, out)


def contract_basis(j: int, a: DiffForm) -> DiffForm:
    """Interior product with the coordinate vector e_j."""
    if a.degree == 0:
        return DiffForm(a.nvars, 0)
    out = {}
    for idx, f in a.components.items():
        if j in idx:
            pos = idx.index(j)
            new = idx[:pos] + idx[pos + 1:]
            out[new] = -f if pos % 2 else f
    return DiffForm(a.nvars, a.degree - 1, out)


def contract_euler(a: DiffForm) -> DiffForm:
    if a.degree == 0:
        return DiffForm(a.nvars, 0)
    n = a.nvars
    out: dict = {}
    xs = [MultiPoly.variable(i, n) for i in range(n)]
    for idx, f in a.components.items():
        for pos, j in enumerate(idx):
            new = idx[:pos] + idx[pos + 1:]
            g = f * xs[j]
            if pos % 2:
                g = -g
            h = out.get(new)
            out[new] = g if h is None else h + g
    return DiffForm(n, a.degree - 1, out)


@dataclass(frozen=True)
class Multivector:
    """Constant-coefficient multivector sum c_J e_J."""

    nvars: int
    degree: int
    components: dict = field(default_factory=dict)

    @classmethod
    def basis(cls, nvars: int, idx: Sequence[int]) -> "Multivector":
        return cls(nvars, len(idx), {tuple(idx): 1})


def contract_multivector(v: Multivector, a: DiffForm) -> DiffForm:
    """i_v a, with i_{e_j1 ^ ... ^ e_jk} applying i_{e_j1} first."""
    if v.degree > a.degree:
        raise ValueError("multivector degree exceeds form degree")
    out = DiffForm(a.nvars, a.degree - v.degree)
    for idx, c in v.components.items():
        if not c:
            continue
        term = a
        for j in idx:
            term = contract_basis(j, term)
        out = out + term.scale(c)
    return out


def differential(f: MultiPoly) -> DiffForm:
    return exterior_d(DiffForm.function(f))


def omega_from_polys(F: Sequence[MultiPoly]) -> DiffForm:
    """The q-form i_R(dF_0 ^ ... ^ dF_q) for homogeneous F_0..F_q."""
    if not F:
        raise ValueError("need at least one polynomial")
    n = F[0].nvars
    if len(F) > n:
        raise ValueError("more polynomials than variables")
    for f in F:
        d = f.homogeneous_degree()
        if d is None:
            raise ValueError(f"polynomial {f} is not homogeneous")
    theta = differential(F[0])
    for f in F[1:]:
        theta = wedge(theta, differential(f))
    return contract_euler(theta)


def omega_expanded(F: Sequence[MultiPoly]) -> DiffForm:
    """sum_j (-1)^j d_j F_j dF_0 ^ .. ^ (omit dF_j) ^ .. ^ dF_q."""
    n = F[0].nvars
    q = len(F) - 1
    out = DiffForm(n, q)
    diffs = [differential(f) for f in F]
    for j, f in enumerate(F):
        d = f.homogeneous_degree()
        if d is None:
            raise ValueError(f"polynomial {f} is not homogeneous")
        if d is ANY_DEGREE:
            continue
        term = DiffForm.function(f.scale((-1) ** j * d))
        for k in range(len(F)):
            if k != j:
                term = wedge(term, diffs[k])
        out = out + term
    return out


def euler_identity_check(eta: DiffForm, d: int | None = None) -> bool:
    """Check i_R d(eta) + d(i_R eta) == (q + d) eta for a homogeneous q-form."""
    deg = eta.coefficient_degree()
    if deg is None:
        raise ValueError("form is not homogeneous")
    if d is None:
        d = 0 if deg is ANY_DEGREE else deg
    elif deg is not ANY_DEGREE and deg != d:
        raise ValueError(f"coefficient degree is {deg}, not {d}")
    lhs = contract_euler(exterior_d(eta))
    if eta.degree > 0:  # i_R kills functions
        lhs = lhs + exterior_d(contract_euler(eta))
    return lhs == eta.scale(eta.degree + d)


def _basis_multivectors(nvars: int, k: int):
    for J in itertools.combinations(range(nvars), k):
        yield J


def _contract_indices(J: Sequence[int], a: DiffForm) -> DiffForm:
    for j in J:
        a = contract_basis(j, a)
    return a


def check_foliation_conditions(omega: DiffForm, q: int | None = None,
                               r: int | None = None) -> tuple[bool, bool]:
    """(Pluecker decomposability, integrability) of a projective q-form.

    Both conditions are tested on the standard basis of multivectors of
    degree q-1, which suffices by linearity.
    """
    n = omega.nvars
    if q is None:
        q = omega.degree
    if r is not None and r + 1 != n:
        raise ValueError(f"form lives on C^{n}, not C^{r + 1}")
    if omega.degree != q:
        raise ValueError(f"expected a {q}-form, got a {omega.degree}-form")
    if q < 1:
        raise ValueError("foliation forms have degree at least 1")
    if not omega:
        raise NotProjectiveFormError("the zero form is not a valid foliation")
    if contract_euler(omega):
        raise NotProjectiveFormError("form is not annihilated by the Euler field")
    domega = exterior_d(omega)
    plucker = True
    integrable = True
    for J in _basis_multivectors(n, q - 1):
        iv = _contract_indices(J, omega)
        if plucker and wedge(iv, omega):
            plucker = False
        if integrable and wedge(iv, domega):
            integrable = False
        if not (plucker or integrable):
            break
    return plucker, integrable


def divide_by_jacobian(eta: DiffForm, F: Sequence[MultiPoly]) -> list[MultiPoly] | None:
    """Homogeneous a_i with eta = sum a_i dF_i, or None if there are none."""
    if eta.degree != 1:
        raise ValueError("eta must be a 1-form")
    n = eta.nvars
    e = eta.coefficient_degree()
    if e is None:
        raise ValueError("eta is not homogeneous")
    degs = []
    for f in F:
        d = f.homogeneous_degree()
        if d is None or d is ANY_DEGREE:
            raise ValueError("each F_i must be a nonzero homogeneous polynomial")
        degs.append(d)
    if e is ANY_DEGREE:
        return [MultiPoly.zero(n) for _ in F]
    # a_i has degree e + 1 - d_i
    unknowns = []  # (i, exponent)
    for i, d in enumerate(degs):
        for exp in monomial_exponents(n, e + 1 - d):
            unknowns.append((i, exp))
    if not unknowns:
        return None
    dF = [differential(f) for f in F]
    row_index: dict = {}
    columns = []
    for i, exp in unknowns:
        col = {}
        form = dF[i].scale(MultiPoly.monomial(exp))
        for idx, g in form.components.items():
            for mexp, c in g.terms.items():
                key = (idx, mexp)
                row_index.setdefault(key, len(row_index))
                col[row_index[key]] = c
        columns.append(col)
    rhs_keys = []
    for idx, g in eta.components.items():
        for mexp, c in g.terms.items():
            key = (idx, mexp)
            row_index.setdefault(key, len(row_index))
            rhs_keys.append((row_index[key], c))
    nrows = len(row_index)
    grid = [[0] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, c in col.items():
            grid[i][j] = c
    rhs = [0] * nrows
    for i, c in rhs_keys:
        rhs[i] = c
    sol = solve_linear(ExactMatrix.from_rows(grid, len(columns)), rhs)
    if sol is None:
        return None
    out = [dict() for _ in F]
    for (i, exp), c in zip(unknowns, sol):
        if c:
            out[i][exp] = c
    return [MultiPoly(n, t) for t in out]


# ---------------------------------------------------------------------------
# Zariski tangent space of the space of foliations
# ---------------------------------------------------------------------------


def _form_entries(form: DiffForm, tag, index: dict, row: dict):
    for idx, g in form.components.items():
        for mexp, c in g.terms.items():
            key = (tag, idx, mexp)
            k = index.get(key)
            if k is None:
                k = index[key] = len(index)
            row[k] = row.get(k, 0) + c


def tangent_system(omega: DiffForm, d: int | None = None):
    """Linear system whose kernel is the affine Zariski tangent space at omega.

    Unknowns are the coefficients of q-forms with degree-(d+1) coefficients;
    returns (equations as sparse integer rows, number of unknowns).
    """
    n = omega.nvars
    q = omega.degree
    deg = omega.coefficient_degree()
    if deg is None or deg is ANY_DEGREE:
        raise NotProjectiveFormError("omega must be nonzero with homogeneous coefficients")
    if d is None:
        d = deg - 1
    elif d + 1 != deg:
        raise ValueError(f"omega has coefficient degree {deg}, expected {d + 1}")
    if contract_euler(omega):
        raise NotProjectiveFormError("form is not annihilated by the Euler field")
    domega = exterior_d(omega)
    Js = list(_basis_multivectors(n, q - 1))
    iv_omega = {J: _contract_indices(J, omega) for J in Js}
    monos = monomial_exponents(n, d + 1)
    qsets = list(itertools.combinations(range(n), q))
    index: dict = {}
    columns = []
    for I in qsets:
        for exp in monos:
            eta = DiffForm(n, q, {I: MultiPoly.monomial(exp)})
            col: dict = {}
            _form_entries(contract_euler(eta), "euler", index, col)
            deta = exterior_d(eta)
            for J in Js:
                iv_eta = _contract_indices(J, eta)
                e1 = wedge(iv_eta, omega) + wedge(iv_omega[J], eta)
                _form_entries(e1, ("plucker", J), index, col)
                e2 = wedge(iv_eta, domega) + wedge(iv_omega[J], deta)
                _form_entries(e2, ("integrable", J), index, col)
            columns.append(col)
    rows: list[dict] = [dict() for _ in range(len(index))]
    for j, col in enumerate(columns):
        for i, c in col.items():
            if c:
                rows[i][j] = c
    rows = _integral_rows(rows)
    return rows, len(columns)


def _integral_rows(rows):
    out = []
    for r in rows:
        if not r:
            continue
        den = 1
        for v in r.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        out.append({k: int(v * den) for k, v in r.items()})
    return out


def zariski_tangent_dim(omega: DiffForm, q: int | None = None, r: int | None = None,
                        d: int | None = None) -> int:
    """Dimension of the projective Zariski tangent space of F_q(r, d) at omega."""
    if q is not None and q != omega.degree:
        raise ValueError(f"omega is a {omega.degree}-form, not a {q}-form")
    if r is not None and r + 1 != omega.nvars:
        raise ValueError(f"omega lives on C^{omega.nvars}, not C^{r + 1}")
    rows, ncols = tangent_system(omega, d)
    rank, _kernel = sparse_rank_kernel(rows, ncols)
    return ncols - rank - 1


def zariski_tangent_dim_dense(omega: DiffForm, d: int | None = None) -> int:
    """Same as :func:`zariski_tangent_dim`, by plain Bareiss elimination."""
    rows, ncols = tangent_system(omega, d)
    grid = [[r.get(j, 0) for j in range(ncols)] for r in rows]
    rank, _ = matrix_rank_kernel(ExactMatrix.from_rows(grid, ncols))
    return ncols - rank - 1
