"""Trace of Hecke operators on twist-minimal spaces, by the direct formula."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import (divisors, euler_phi, factorize, mobius, sigma, valuation)
from .cyclo import CycloNumber, rational, zeta_sum
from .quadratic import class_data, kronecker, split_discriminant, sqrt_mod_prime_power


@dataclass(frozen=True)
class SpaceSpec:
    """A space of cusp forms: level N, weight k, character chi, kind."""

    N: int
    k: int
    chi: object
    kind: str = "min"

    def __post_init__(self):
        if self.chi.modulus != self.N:
            raise ValueError("character modulus %d does not match level %d"
                             % (self.chi.modulus, self.N))
        if self.k < 2:
            raise ValueError("weight must be at least 2")
        if self.kind not in ("min", "new", "full"):
            raise ValueError("kind must be min, new or full")


@dataclass(frozen=True)
class EllipticTermContext:
    """Shared data for one t in the elliptic sum: discriminant split and valuations."""

    t: int
    n: int
    d: int
    ell: int

    def gamma(self, p):
        from .arith import valuation as _v

        return _v(p, self.t * self.t - 4 * self.n)


def elliptic_context(t, n):
    d, ell = split_discriminant(t * t - 4 * n)
    return EllipticTermContext(t, n, d, ell)


def _unpack(spec_or_N, k, chi, n, kind):
    if isinstance(spec_or_N, SpaceSpec):
        assert spec_or_N.kind == kind
        # Called as f(spec, n): the second positional argument is n.
        return spec_or_N.N, spec_or_N.k, spec_or_N.chi, k
    return spec_or_N, k, chi, n


def weight_factor(k, t, n):
    """Chebyshev-type weight (rho^(k-1) - rhobar^(k-1)) / (rho - rhobar)."""
    g0, g1 = 1, t
    if k == 2:
        return g0
    for _ in range(k - 3):
        g0, g1 = g1, t * g1 - n * g0
    return g1


def local_factor_unit(p, t, n, ctx=None):
    """Weighted solution count at a prime p dividing ell but not the level."""
    if ctx is None:
        ctx = elliptic_context(t, n)
    nu = valuation(p, ctx.ell)
    return p ** nu + (1 - kronecker(ctx.d, p)) * (p ** nu - 1) // (p - 1)


unit_local_factor = local_factor_unit


@lru_cache(maxsize=None)
def _prim(chi_p):
    return chi_p.primitive()


def _chi_terms(m, *pairs):
    """Build a CycloNumber from (coefficient, exponent-or-None) pairs."""
    weights = {}
    for coeff, j in pairs:
        if j is None or coeff == 0:
            continue
        weights[j % m] = weights.get(j % m, 0) + Fraction(coeff)
    return zeta_sum(m, weights)


def _half_arg(t, p, s):
    """The argument t/2 as an integer mod p^s (p odd), or t//2 (p = 2)."""
    if p == 2:
        if t % 2:
            return None
        return t // 2
    if s == 0:
        return 1
    ps = p ** s
    return t * pow(2, -1, ps) % ps


def local_factor_min(p, e, chi_p, t, n, ctx=None, m=None, u_sign=1):
    """Local factor at p | N in the elliptic term of the direct formula.

    Returns a CycloNumber of order m (defaults to the order of chi_p).
    """
    if m is None:
        m = chi_p.order()
    if ctx is None:
        ctx = elliptic_context(t, n)
    prim = _prim(chi_p)
    s = valuation(p, chi_p.conductor())
    D = t * t - 4 * n
    d, ell = ctx.d, ctx.ell
    gamma = valuation(p, D)
    nu_ell = valuation(p, ell)
    dp = kronecker(d, p)

    def chi_at(x):
        if x is None:
            return None
        return prim.value_exponent(x, m)

    if n % p:
        if p > 2:
            if s < e and gamma >= e - 2:
                if not (e == 1 or kronecker(n, p) == 1):
                    return rational(0, m)
                coeff = Fraction(1 - dp) * Fraction(p) ** (e - 3) / gcd(2, e)
                inner = (1 if e > 2 else 0) + p * (
                    (1 - 2 * s if e == 2 else 0)
                    + (1 if e % 2 == 0 and gamma == e - 2 else 0)
                    - (p if gamma >= e - 1 else 0))
                return _chi_terms(m, (coeff * inner, chi_at(_half_arg(t, p, s))))
            if s == e and gamma >= 2 * e - 1:
                coeff = 2 * p ** nu_ell + Fraction(
                    (1 - dp) * (2 * p ** nu_ell - p ** e - p ** (e - 1)), p - 1)
                return _chi_terms(m, (coeff, chi_at(_half_arg(t, p, s))))
            if s == e and gamma < 2 * e - 1 and dp == 1:
                r = sqrt_mod_prime_power(d, p, e)
                assert r is not None
                u = u_sign * ell * r
                pe = p ** e
                inv2 = pow(2, -1, pe)
                c = p ** nu_ell
                return _chi_terms(m, (c, chi_at((t + u) * inv2 % pe)),
                                  (c, chi_at((t - u) * inv2 % pe)))
            return rational(0, m)
        # p = 2, n odd.
        if s < e:
            pref = (1 - dp) * max(1, 2 ** (e - 3)) if e >= 3 else (1 - dp)
            half = chi_at(_half_arg(t, 2, s))
            if gamma > e and e >= 3:
                return _chi_terms(m, (-3 * pref, half))
            if gamma == e and s == e // 2 and e >= 4:
                return _chi_terms(m, (pref * ((-1) ** e + 2), half))
            if gamma == e - 1 and e % 2 == 1 and s == e // 2 and e >= 4:
                return _chi_terms(m, (pref * (1 - 2 * (-1) ** d), half))
            if gamma in (e, e - 1) and s < e // 2 and e >= 3:
                return rational(pref * (2 * (-1) ** d - 1), m)
            if e in (1, 2):
                val = (Fraction(3, 2) if (e == 2 and gamma == 0) else 0) - 1
                return rational(pref * val, m)
            return rational(0, m)
        # s = e.
        if gamma >= 2 * e:
            coeff = (1 - (2 if gamma == 2 * e else 0)) * (
                (2 ** (gamma // 2 + 1) - 3 * 2 ** (e - 1)) * (1 - dp)
                + (2 ** (nu_ell + 1) if d % 2 else 0))
            return _chi_terms(m, (coeff, chi_at(_half_arg(t, 2, s))))
        if gamma < 2 * e - 1 and dp == 1:
            mod = 2 ** (e + 2)
            r = sqrt_mod_prime_power(d % mod, 2, e + 2)
            assert r is not None
            u = u_sign * ell * r
            c = 2 ** nu_ell
            return _chi_terms(m, (c, chi_at((t + u) // 2)),
                              (c, chi_at((t - u) // 2)))
        return rational(0, m)
    # p | n.
    if gamma > 0 and s == 0:
        return rational(dp - 1, m)
    if s == e and gamma == 0:
        if p == 2:
            mod = 2 ** (e + 2)
            r = sqrt_mod_prime_power(d % mod, 2, e + 2)
            assert r is not None
            u = u_sign * ell * r
            return _chi_terms(m, (1, chi_at((t - u) // 2)),
                              (1, chi_at((t + u) // 2)))
        pe = p ** e
        r = sqrt_mod_prime_power(d % pe, p, e)
        assert r is not None
        u = u_sign * ell * r
        inv2 = pow(2, -1, pe)
        return _chi_terms(m, (1, chi_at((t - u) * inv2 % pe)),
                          (1, chi_at((t + u) * inv2 % pe)))
    return rational(0, m)


def _is_squarefree(x):
    return all(e == 1 for _, e in factorize(x))


_MIN_CACHE = {}


def trace_min(N, k=None, chi=None, n=None, u_sign=1):
    """Trace of T_n on the twist-minimal subspace of weight k, level N, character chi.

    Accepts either (SpaceSpec with kind=min, n) or (N, k, chi, n).  chi must
    be a twist-minimal character of modulus N.  The result is a CycloNumber
    whose ambient order is the order of chi.
    """
    N, k, chi, n = _unpack(N, k, chi, n, "min")
    if not chi.is_twist_minimal():
        raise ValueError("character %s is not twist-minimal" % chi.label())
    if k < 2:
        raise ValueError("weight must be at least 2")
    assert chi.modulus == N and n >= 1
    key = (N, chi.key(), k, n, u_sign)
    if key in _MIN_CACHE:
        return _MIN_CACHE[key]
    m = chi.order()
    cond = chi.conductor()
    if not _is_squarefree(gcd(gcd((N // cond) ** 2, n * n), N)):
        out = rational(0, m)
    elif chi.parity() != (-1) ** k:
        out = rational(0, m)
    else:
        out = _c1(N, k, chi, n, m) - _c2(N, k, chi, n, m, u_sign) \
            - _c3(N, k, chi, n, m) + _c4(N, k, chi, n, m)
    _MIN_CACHE[key] = out
    return out


def _c1(N, k, chi, n, m):
    r = isqrt(n)
    if r * r != n:
        return rational(0, m)
    j = chi.primitive_inducing().value_exponent(r, m)
    if j is None:
        return rational(0, m)
    cond = chi.conductor()
    prod = Fraction(1)
    for p, e in factorize(N):
        s = valuation(p, cond)
        if s == e:
            prod *= p ** e + p ** (e - 1)
        else:
            ceil_pe2 = p ** (e - 2) if e >= 2 else 1
            fac = Fraction(euler_phi(ceil_pe2) * (p - 1),
                           2 if (e % 2 == 0 and p > 2) else 1)
            fac *= 1 + (p if e > 1 else 0) + (2 * s - 2 if e == 2 else 0)
            prod *= fac
    coeff = Fraction(r ** (k - 2) * (k - 1), 12) * prod
    return zeta_sum(m, {j: coeff})


def _c2(N, k, chi, n, m, u_sign):
    total = rational(0, m)
    t = -isqrt(4 * n - 1)
    locs = {p: (e, chi.local_component(p)) for p, e in factorize(N)}
    while t * t < 4 * n:
        ctx = elliptic_context(t, n)
        h, w = class_data(ctx.d)
        coeff = Fraction(weight_factor(k, t, n) * h, w)
        for p, _ in factorize(ctx.ell):
            if p not in locs:
                coeff *= local_factor_unit(p, t, n, ctx)
        if coeff:
            prod = rational(coeff, m)
            for p, (e, chi_p) in locs.items():
                fac = local_factor_min(p, e, chi_p, t, n, ctx, m, u_sign)
                prod = prod * fac
                if all(c == 0 for c in prod.coeffs):
                    break
            total = total + prod
        t += 1
    return total


def _c3(N, k, chi, n, m):
    total = rational(0, m)
    cond = chi.conductor()
    for dd in divisors(n):
        if dd * dd > n:
            break
        coeff = Fraction(dd ** (k - 1))
        if dd * dd == n:
            coeff /= 2
        prod = rational(coeff, m)
        ok = True
        for p, e in factorize(N):
            chi_p = chi.local_component(p)
            s = valuation(p, cond)
            gamma = valuation(p, n // dd - dd)
            if (p == 2 and e % 2 == 0 and e > 2 and n % 2
                    and gamma >= e // 2 - 1 >= s):
                fac = Fraction(2 ** (e // 2), 8)
                if gamma == e // 2 - 1:
                    fac = -fac
                val = _chi_terms(m, (fac, chi_p.value_exponent(dd, m)),
                                 (fac, chi_p.value_exponent(n // dd, m)))
            elif s == e:
                val = _chi_terms(m, (1, chi_p.value_exponent(dd, m)),
                                 (1, chi_p.value_exponent(n // dd, m)))
            else:
                ok = False
                break
            prod = prod * val
            if all(c == 0 for c in prod.coeffs):
                ok = False
                break
        if ok:
            total = total + prod
    return total


def _c4(N, k, chi, n, m):
    if k != 2 or chi.conductor() != 1:
        return rational(0, m)
    out = mobius(N)
    for p, a in factorize(n):
        if N % p:
            out *= sigma(p ** a)
    return rational(out, m)
