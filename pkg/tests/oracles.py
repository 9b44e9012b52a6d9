"""Independent intersection numbers on G(2, n) via Chern roots.

Classes are polynomials in the roots x1, x2 of the dual tautological
subbundle, stored as {(a, b): Fraction}.  Integration uses the residue
formula  int f = -1/2 [x1^(n-1) x2^(n-1)] f (x1 - x2)^2,  which shares no
code with the Schubert-calculus implementation.
"""
from fractions import Fraction
from math import comb, factorial


def mul(p, q, top):
    out = {}
    for (a, b), c in p.items():
        for (a2, b2), c2 in q.items():
            if a + b + a2 + b2 > top:
                continue
            k = (a + a2, b + b2)
            out[k] = out.get(k, 0) + c * c2
    return {k: v for k, v in out.items() if v}


def inverse(p, top):
    u = {k: -v for k, v in p.items() if k != (0, 0)}
    res = {(0, 0): Fraction(1)}
    term = {(0, 0): Fraction(1)}
    for _ in range(top):
        term = mul(term, u, top)
        if not term:
            break
        for k, v in term.items():
            res[k] = res.get(k, 0) + v
    return {k: v for k, v in res.items() if v}


def power(p, n, top):
    res = {(0, 0): Fraction(1)}
    base = p
    while n:
        if n & 1:
            res = mul(res, base, top)
        base = mul(base, base, top)
        n >>= 1
    return res


def linear(a, b):
    """1 + a x1 + b x2."""
    p = {(0, 0): Fraction(1)}
    if a:
        p[(1, 0)] = Fraction(a)
    if b:
        p[(0, 1)] = Fraction(b)
    return p


def part(p, k):
    return {e: v for e, v in p.items() if sum(e) == k}


def integrate(f, n):
    vandermonde = {(2, 0): 1, (1, 1): -2, (0, 2): 1}
    g = mul(f, vandermonde, 10 ** 9)
    return -g.get((n - 1, n - 1), 0) / 2


def schur(a, b):
    """s_(a,b)(x1, x2) = (x1 x2)^b h_(a-b)(x1, x2), the class sigma_(a,b)."""
    return {(b + i, b + (a - b) - i): Fraction(1) for i in range(a - b + 1)}


def plucker(k, n):
    num = factorial(k * (n - k))
    den = 1
    for i in range(k):
        num *= factorial(i)
        den *= factorial(n - k + i)
    return Fraction(num, den)


def tx_restricted_total(r):
    """c(T_X) restricted to Y = G(2, r+1), X = G(3, Sym^2), via the roots 2x1, x1+x2, 2x2."""
    m = comb(r + 2, 2)
    top = 2 * (r - 1)
    alphas = [(2, 0), (1, 1), (0, 2)]
    c = {(0, 0): Fraction(1)}
    for a in alphas:
        c = mul(c, power(linear(*a), m, top), top)
    den = {(0, 0): Fraction(1)}
    for i in range(3):
        for j in range(3):
            if i != j:
                den = mul(den, linear(alphas[i][0] - alphas[j][0], alphas[i][1] - alphas[j][1]), top)
    return mul(c, inverse(den, top), top)


def ty_total(r):
    """c(T_Y) = c(R^* (x) C^{r+1}) / c(R^* (x) R)."""
    top = 2 * (r - 1)
    num = mul(power(linear(1, 0), r + 1, top), power(linear(0, 1), r + 1, top), top)
    den = mul(linear(1, -1), linear(-1, 1), top)
    return mul(num, inverse(den, top), top)


def degree_222(r):
    """Plucker degree of G(3, Sym^2) minus the blowup correction along the Veronese locus."""
    m = comb(r + 2, 2)
    n = 3 * (m - 3)
    top = 2 * (r - 1)
    delta = n - top
    c_normal = mul(tx_restricted_total(r), inverse(ty_total(r), top), top)
    s = inverse(c_normal, top)
    total = plucker(3, m)
    h = {(1, 0): Fraction(3), (0, 1): Fraction(3)}
    for j in range(delta, n + 1):
        k = j - delta
        a = n - j
        if a + k != top:
            continue
        total -= comb(n, j) * integrate(mul(power(h, a, top), part(s, k), top), r + 1)
    return total


# -- (2, 2m+1) on P^r, with polynomials in (h, zeta) ---------------------------------

def _hz_mul(p, q, hmax, top):
    out = {}
    for (a, b), c in p.items():
        for (a2, b2), c2 in q.items():
            if a + a2 > hmax or a + b + a2 + b2 > top:
                continue
            k = (a + a2, b + b2)
            out[k] = out.get(k, 0) + c * c2
    return {k: v for k, v in out.items() if v}


def _hz_inverse(p, hmax, top):
    u = {k: -v for k, v in p.items() if k != (0, 0)}
    res = {(0, 0): Fraction(1)}
    term = {(0, 0): Fraction(1)}
    for _ in range(top):
        term = _hz_mul(term, u, hmax, top)
        if not term:
            break
        for k, v in term.items():
            res[k] = res.get(k, 0) + v
    return {k: v for k, v in res.items() if v}


def _hz_power(p, n, hmax, top):
    res = {(0, 0): Fraction(1)}
    base = p
    while n:
        if n & 1:
            res = _hz_mul(res, base, hmax, top)
        base = _hz_mul(base, base, hmax, top)
        n >>= 1
    return res


def degree_2odd(r, m):
    """Blowup of the pair-Veronese curve, then of P(N_{V/B}) counted m times."""
    t = 2 * m + 1
    n2, n3 = comb(r + 2, 2) - 1, comb(r + t, r) - 1
    n = n2 + n3
    hdeg = 2 + t
    total = Fraction(comb(n, n2))

    def lin(a, b=0):
        p = {(0, 0): Fraction(1)}
        if a:
            p[(1, 0)] = Fraction(a)
        if b:
            p[(0, 1)] = Fraction(b)
        return p

    c_vx = _hz_mul(_hz_mul(_hz_power(lin(2), n2 + 1, r, n), _hz_power(lin(t), n3 + 1, r, n), r, n),
                   _hz_inverse(_hz_power(lin(1), r + 1, r, n), r, n), r, n)
    s_vx = _hz_inverse(c_vx, r, n)
    codim = n - r
    for j in range(codim, n + 1):
        a, k = n - j, j - codim
        if a <= r and k == r - a:
            total -= comb(n, j) * Fraction(hdeg) ** a * s_vx.get((k, 0), 0)
    e = n2 - r
    c_vb = _hz_mul(_hz_power(lin(2), n2 + 1, r, n), _hz_inverse(_hz_power(lin(1), r + 1, r, n), r, n), r, n)
    s_vb = _hz_inverse(c_vb, r, n)
    dim_b = r + e - 1
    c_bx = _hz_mul(_hz_mul(_hz_power(lin(t, 1), n3 + 1, r, dim_b), _hz_inverse(lin(0, 1), r, dim_b), r, dim_b),
                   lin(0, -1), r, dim_b)
    s_bx = _hz_inverse(c_bx, r, dim_b)
    codim_b = n - dim_b

    def integrate_b(p):
        acc = Fraction(0)
        for (a, b), c in p.items():
            k = b - (e - 1)
            if a + b == dim_b and k >= 0 and k == r - a:
                acc += c * s_vb.get((k, 0), 0)
        return acc

    A = lin(hdeg, 1)
    for j in range(codim_b, n + 1):
        a, k = n - j, j - codim_b
        if a + k != dim_b:
            continue
        sk = {key: v for key, v in s_bx.items() if sum(key) == k}
        total -= comb(n, j) * m * integrate_b(_hz_mul(_hz_power(A, a, r, dim_b), sk, r, dim_b))
    return total
