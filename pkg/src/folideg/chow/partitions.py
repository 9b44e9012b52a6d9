"""Partitions, the Pieri rule and Schubert products in G(k, n).

Schubert classes are indexed by partitions fitting in a k x (n-k) box.
Products are computed by expanding one factor with Jacobi-Trudi into
one-row classes and applying Pieri repeatedly.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative integers, trailing zeros dropped."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def fits(self, k: int, n: int) -> bool:
        """True iff the Young diagram fits in k rows and n - k columns."""
        return len(self) <= k and (not self or self[0] <= n - k)

    def padded(self, k: int) -> tuple[int, ...]:
        return tuple(self) + (0,) * (k - len(self))

    def complement(self, k: int, n: int) -> "Partition":
        if not self.fits(k, n):
            raise ValueError(f"{self} does not fit in the {k}x{n - k} box")
        p = self.padded(k)
        return Partition(n - k - p[k - 1 - i] for i in range(k))

    def transpose(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def __repr__(self):
        return f"Partition({tuple(self)})"


def box_partitions(k: int, n: int, size: int | None = None) -> list[Partition]:
    """All partitions in the k x (n-k) box, optionally of a fixed size."""
    out = []
    for parts in itertools.combinations_with_replacement(range(n - k, -1, -1), k):
        lam = Partition(parts)
        if size is None or lam.size == size:
            out.append(lam)
    return out


def horizontal_strips(lam: Partition, m: int, k: int, n: int) -> list[Partition]:
    """Partitions mu in the box with mu / lam a horizontal strip of size m."""
    width = n - k
    lp = lam.padded(k)
    out = []

    def rec(i, left, acc):
        if i == k:
            if left == 0:
                out.append(Partition(acc))
            return
        hi = width if i == 0 else lp[i - 1]
        hi = min(hi, lp[i] + left)
        for v in range(lp[i], hi + 1):
            rec(i + 1, left - (v - lp[i]), acc + [v])

    if m < 0:
        return []
    rec(0, m, [])
    return out


@lru_cache(maxsize=None)
def pieri_terms(lam: Partition, m: int, k: int, n: int) -> dict[Partition, int]:
    if m == 0:
        return {lam: 1}
    return {mu: 1 for mu in horizontal_strips(Partition(lam), m, k, n)}


def jacobi_trudi(mu: Partition) -> dict[tuple[int, ...], int]:
    """sigma_mu = sum of sign * h_{m_1} ... h_{m_l}; keys are sorted row tuples."""
    ell = len(mu)
    out: dict[tuple[int, ...], int] = {}
    for perm in itertools.permutations(range(ell)):
        rows = tuple(sorted((mu[i] + perm[i] - i for i in range(ell)), reverse=True))
        if rows and rows[-1] < 0:
            continue
        sign = _perm_sign(perm)
        out[rows] = out.get(rows, 0) + sign
    return {key: c for key, c in out.items() if c}


def _perm_sign(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def schubert_product(lam: Partition, mu: Partition, k: int, n: int) -> dict[Partition, int]:
    """Structure constants of sigma_lam * sigma_mu in G(k, n)."""
    if len(mu) > len(lam) or (len(mu) == len(lam) and mu > lam):
        lam, mu = mu, lam
    if lam.size + mu.size > k * (n - k):
        return {}
    out: dict[Partition, int] = {}
    for rows, sign in jacobi_trudi(mu).items():
        cur = {lam: 1}
        for m in rows:
            nxt: dict[Partition, int] = {}
            for nu, c in cur.items():
                for rho, c2 in pieri_terms(nu, m, k, n).items():
                    nxt[rho] = nxt.get(rho, 0) + c * c2
            cur = nxt
            if not cur:
                break
        for nu, c in cur.items():
            out[nu] = out.get(nu, 0) + sign * c
    return {nu: c for nu, c in out.items() if c}
