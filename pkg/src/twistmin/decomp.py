"""Twist decomposition bookkeeping: twist pairs, sieve sets, inversion weights."""

from math import gcd

from .arith import factorize, prime_divisors, valuation
from .characters import (DirichletCharacter, LocalCharacter,
                         enumerate_characters, trivial_character)


def _local_options(p, e, chi_p):
    """Per-prime options (m, psi_p) with M_p = p^m; psi_p None means trivial."""
    s = valuation(p, chi_p.conductor())
    opts = [(e, None)]
    if p > 2 and e % 2 == 0 and e > 0 and s < e:
        half = e // 2
        excluded = chi_p.conj().primitive() if s == half else None
        for psi in enumerate_characters(p ** half, conductor=p ** half):
            psi_p = psi.local_component(p)
            if excluded is not None and psi_p == excluded:
                continue
            opts.append((half, psi_p))
    if p > 2 and e == 2 and chi_p.is_trivial():
        legendre = _legendre_local(p)
        opts.append((0, legendre))
    return opts


def _legendre_local(p):
    """The quadratic character mod an odd prime p as a LocalCharacter."""
    from .arith import euler_phi

    return LocalCharacter(p, 1, euler_phi(p) // 2)


def twist_pairs_all(N, chi):
    """All pairs (M, psi, kp, kk) in the inversion sum, without deduplication.

    kp counts the primes dividing N/M and kk counts those of them where
    psi_p is not the quadratic character mod p or p exactly divides cond(chi).
    """
    assert chi.modulus == N
    out = []
    per_prime = []
    for p, e in factorize(N):
        per_prime.append((p, e, _local_options(p, e, chi.local_component(p))))
    combos = [((), 1)]
    for p, e, opts in per_prime:
        combos = [(sel + ((p, e, m, psi_p),), M * p ** m)
                  for sel, M in combos for m, psi_p in opts]
    cond = chi.conductor()
    for sel, M in combos:
        psi_locals = [psi_p for _, _, _, psi_p in sel if psi_p is not None]
        q = 1
        for c in psi_locals:
            q *= c.modulus
        psi = DirichletCharacter(q, psi_locals)
        kp = sum(1 for p, e, m, _ in sel if m < e)
        kk = 0
        for p, e, m, psi_p in sel:
            if m == e:
                continue
            if psi_p != _legendre_local(p) or valuation(p, cond) == 1:
                kk += 1
        out.append((M, psi, kp, kk))
    return out


def _orbit_key(psi_locals_by_p):
    return tuple(sorted((c.p, c.key()) for c in psi_locals_by_p))


def twist_pairs(N, chi):
    """Deduplicated twist pairs for (N, chi): list of (M, psi, class_size).

    Pairs (M, psi1) and (M, psi2) are equivalent when, at every prime p
    dividing N/M, psi2_p is psi1_p or the conjugate of chi_p * psi1_p.
    """
    raw = twist_pairs_all(N, chi)
    orbits = {}
    for M, psi, kp, kk in raw:
        alts = []
        for c in psi.locals:
            chi_p = chi.local_component(c.p)
            other = chi_p.mul(c).conj().primitive()
            alts.append((c, other) if other != c else (c,))
        variants = [()]
        for choices in alts:
            variants = [v + (c,) for v in variants for c in choices]
        key = (M, min(_orbit_key(v) for v in variants))
        orbits.setdefault(key, []).append((M, psi))
    out = []
    for members in orbits.values():
        M, psi = min(members, key=lambda t: (t[1].modulus, t[1].conrey_index()))
        out.append((M, psi, len(members)))
    out.sort(key=lambda t: (-t[0], t[1].modulus, t[1].conrey_index()))
    return out


def kprime_count(m):
    """Number of distinct primes dividing m."""
    return len(prime_divisors(m))


def k_count(m, chi, psi):
    """Count primes p | m where psi_p is not quadratic mod p or p || cond(chi)."""
    cond = chi.conductor()
    out = 0
    for p in prime_divisors(m):
        psi_p = psi.local_component(p).primitive()
        if psi_p != _legendre_local(p) or valuation(p, cond) == 1:
            out += 1
    return out


def p_set(N, chi, n):
    """Squarefree x with p || x implying p || N, chi_p trivial and p^2 | n."""
    eligible = []
    for p, e in factorize(N):
        if e == 1 and chi.local_component(p).is_trivial() and n % (p * p) == 0:
            eligible.append(p)
    out = [1]
    for p in eligible:
        out += [x * p for x in out]
    return sorted(out)


def beta(m, q):
    """Multiplicative coefficient in the newform sieve."""
    assert m >= 1 and q >= 1
    out = 1
    for p, a in factorize(q):
        if a == 1:
            out *= (1 if m % p == 0 else 0) - 2
        elif a == 2:
            out *= 1 - (1 if m % p == 0 else 0)
        elif a >= 3:
            return 0
    return out


def sieve_levels(N, chi, n):
    """Terms (d, M) of the newform sieve: d in p_set, M | N/d, cond(chi) | M."""
    from .arith import divisors

    cond = chi.conductor()
    out = []
    for d in p_set(N, chi, n):
        for M in divisors(N // d):
            if M % cond == 0:
                out.append((d, M))
    return out
