"""Independent trace computations: full space, newform sieve, and inversion.

This path starts from the classical full-space trace formula and reaches
the twist-minimal trace by sieving and twist inversion, without sharing
any of the case analysis of the direct formula.  Agreement between the
two paths is the package's primary self-check.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm

from .arith import divisors, euler_phi, factorize, valuation
from .characters import mul_characters, trivial_character
from .cyclo import embed_into, rational, zeta_sum
from .decomp import beta, p_set, twist_pairs_all
from .quadratic import class_data, kronecker, split_discriminant
from .trace import SpaceSpec, _unpack, weight_factor


@lru_cache(maxsize=None)
def congruence_solutions(modulus, t, n):
    """All x mod modulus with x^2 - t*x + n = 0, by exhaustive search."""
    t %= modulus
    n %= modulus
    return tuple(x for x in range(modulus) if (x * x - t * x + n) % modulus == 0)


def congruence_solutions_factored(modulus, t, n):
    """Same solution set, assembled from prime powers via the CRT."""
    sols = [0]
    mod = 1
    for p, e in factorize(modulus):
        pe = p ** e
        local = congruence_solutions(pe, t % pe, n % pe)
        merged = []
        for x in sols:
            for y in local:
                inv = pow(mod, -1, pe)
                merged.append((x + mod * ((y - x) * inv % pe)) % (mod * pe))
        sols = merged
        mod *= pe
    return tuple(sorted(sols))


def _psi_slash(N):
    out = N
    for p, _ in factorize(N):
        out = out // p * (p + 1)
    return out


_FULL_CACHE = {}


def trace_full(N, k=None, chi=None, n=None):
    """Trace of T_n on the full space of cusp forms of weight k, level N.

    Accepts either (SpaceSpec with kind=full, n) or (N, k, chi, n).
    """
    N, k, chi, n = _unpack(N, k, chi, n, "full")
    if k < 2:
        raise ValueError("weight must be at least 2")
    assert chi.modulus == N and n >= 1
    key = (N, chi.key(), k, n)
    if key in _FULL_CACHE:
        return _FULL_CACHE[key]
    m = chi.order()
    if chi.parity() != (-1) ** k:
        out = rational(0, m)
    else:
        out = _a1(N, k, chi, n, m) - _a2(N, k, chi, n, m) \
            - _a3(N, k, chi, n, m) + _a4(N, k, chi, n, m)
    _FULL_CACHE[key] = out
    return out


def _a1(N, k, chi, n, m):
    r = isqrt(n)
    if r * r != n:
        return rational(0, m)
    j = chi.value_exponent(r, m)
    if j is None:
        return rational(0, m)
    coeff = Fraction(r ** (k - 2) * (k - 1) * _psi_slash(N), 12)
    return zeta_sum(m, {j: coeff})


def _elliptic_term(N, chi, t, n, m):
    """Weighted class number sum contribution at a fixed trace t."""
    D = t * t - 4 * n
    d, ell = split_discriminant(D)
    h, w = class_data(d)
    total = {}
    for f in divisors(ell):
        g = gcd(N, f)
        mult = Fraction(ell // f, g)
        for p, _ in factorize(ell):
            e_p = valuation(p, N)
            nf = valuation(p, f)
            gamma_p = valuation(p, D)
            mult *= Fraction(p) ** (min(e_p, nf) - 2)
            mult *= p + (1 if nf >= e_p > 0 else 0)
            mult *= p - (kronecker(d, p) if gamma_p // 2 > nf else 0)
        if not mult:
            continue
        for x in congruence_solutions(N * g, t, n):
            j = chi.value_exponent(x % N, m) if N > 1 else 0
            if j is not None:
                total[j] = total.get(j, 0) + mult
    out = zeta_sum(m, total)
    return out * Fraction(h, w)


def _a2(N, k, chi, n, m):
    total = rational(0, m)
    t = -isqrt(4 * n - 1)
    while t * t < 4 * n:
        term = _elliptic_term(N, chi, t, n, m)
        total = total + term * weight_factor(k, t, n)
        t += 1
    return total


def _a3(N, k, chi, n, m):
    cond = chi.conductor()
    total = {}
    for dd in divisors(n):
        if dd * dd > n:
            break
        coeff = Fraction(dd ** (k - 1))
        if dd * dd == n:
            coeff /= 2
        for c in divisors(N):
            g = gcd(c, N // c)
            if (N // cond) % g or (n // dd - dd) % g:
                continue
            # x1 = dd mod c and x1 = n/dd mod N/c, well defined mod N/g.
            x1 = _crt_pair(dd, c, n // dd, N // c)
            j = chi.value_exponent(x1, m)
            if j is not None:
                total[j] = total.get(j, 0) + coeff * euler_phi(g)
    return zeta_sum(m, total)


def _crt_pair(r1, m1, r2, m2):
    if m1 == 1:
        return r2 % m2 if m2 > 1 else 0
    if m2 == 1:
        return r1 % m1
    g = gcd(m1, m2)
    l = m1 // g * m2
    t = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * t) % l


def _a4(N, k, chi, n, m):
    if k != 2 or not chi.is_trivial():
        return rational(0, m)
    out = sum(t for t in divisors(n) if gcd(n // t, N) == 1)
    return rational(out, m)


def _is_squarefree(x):
    return all(e == 1 for _, e in factorize(x))


_NEW_CACHE = {}


def trace_new(N, k=None, chi=None, n=None):
    """Trace of T_n on the new subspace, via the level sieve.

    Accepts either (SpaceSpec with kind=new, n) or (N, k, chi, n).
    """
    N, k, chi, n = _unpack(N, k, chi, n, "new")
    if k < 2:
        raise ValueError("weight must be at least 2")
    assert chi.modulus == N and n >= 1
    key = (N, chi.key(), k, n)
    if key in _NEW_CACHE:
        return _NEW_CACHE[key]
    m = chi.order()
    cond = chi.conductor()
    if not _is_squarefree(gcd(gcd((N // cond) ** 2, n * n), N)):
        out = rational(0, m)
    else:
        prim = chi.primitive_inducing()
        out = rational(0, m)
        for dd in p_set(N, chi, n):
            j = prim.value_exponent(dd, m)
            assert j is not None
            scale = dd ** (k - 1)
            for M in divisors(N // dd):
                if M % cond:
                    continue
                b = beta(n // dd ** 2, N // (dd * M))
                if not b:
                    continue
                sub = trace_full(M, k, chi.induce(M), n // dd ** 2)
                out = out + zeta_sum(m, {j: Fraction(b * scale)}) * embed_into(sub, m)
        _NEW_CACHE[key] = out
    return out


def trace_min_sieved(N, k=None, chi=None, n=None):
    """Trace of T_n on the twist-minimal subspace, via twist inversion.

    Accepts either (SpaceSpec with kind=min, n) or (N, k, chi, n).  chi must
    be twist-minimal.  The ambient order of the result is the lcm of the
    orders of the characters appearing in the inversion sum.
    """
    N, k, chi, n = _unpack(N, k, chi, n, "min")
    if not chi.is_twist_minimal():
        raise ValueError("character %s is not twist-minimal" % chi.label())
    assert chi.modulus == N
    pairs = twist_pairs_all(N, chi)
    m = chi.order()
    twisted = []
    for M, psi, kp, kk in pairs:
        chi_m = mul_characters(chi, psi.pow(2)).primitive_inducing().induce(M)
        m = lcm(m, chi_m.order(), psi.order())
        twisted.append((M, psi, kp, kk, chi_m))
    out = rational(0, m)
    for M, psi, kp, kk, chi_m in twisted:
        jb = psi.value_exponent(n, psi.order()) if psi.modulus > 1 else 0
        if jb is None:
            continue
        jbar = (-jb * (m // psi.order())) % m
        sub = trace_new(M, k, chi_m, n)
        coeff = Fraction((-1) ** kp, 2 ** kk)
        out = out + zeta_sum(m, {jbar: coeff}) * embed_into(sub, m)
    return out


def trace_new_decomposed(N, k, chi, n):
    """Trace of T_n on the new subspace, via the forward twist decomposition.

    Sums 2^(-k) psi-bar(n) times the twist-minimal trace at level M and
    character chi*psi^2 over all twist pairs (each equivalence class of
    size 2^k contributes its class members with that weight).
    """
    from .trace import trace_min

    pairs = twist_pairs_all(N, chi)
    m = chi.order()
    data = []
    for M, psi, _kp, kk in pairs:
        chi_m = mul_characters(chi, psi.pow(2)).primitive_inducing().induce(M)
        m = lcm(m, chi_m.order(), psi.order())
        data.append((M, psi, kk, chi_m))
    out = rational(0, m)
    for M, psi, kk, chi_m in data:
        jb = psi.value_exponent(n, psi.order()) if psi.modulus > 1 else 0
        if jb is None:
            continue
        jbar = (-jb * (m // psi.order())) % m
        sub = trace_min(M, k, chi_m, n)
        out = out + zeta_sum(m, {jbar: Fraction(1, 2 ** kk)}) * embed_into(sub, m)
    return out
