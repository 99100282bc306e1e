"""Elementary integer arithmetic: factorization, multiplicative functions."""

from functools import lru_cache
from math import gcd, isqrt

INFINITY = float("inf")

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin primality test for 64-bit-ish integers."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def factorize(n):
    """Return the prime factorization of n >= 1 as a tuple of (p, e) pairs."""
    assert n >= 1
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 7
    inc = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += inc[i]
        i = (i + 1) % 8
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n):
    """Return the sorted tuple of primes dividing n."""
    return tuple(p for p, _ in factorize(n))


def valuation(p, x):
    """Return the p-adic valuation of x; INFINITY for x == 0."""
    assert p >= 2
    if x == 0:
        return INFINITY
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def mobius(n):
    """Return the Moebius function of n."""
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def euler_phi(n):
    """Return Euler's totient of n."""
    out = 1
    for p, e in factorize(n):
        out *= p ** (e - 1) * (p - 1)
    return out


def sigma(n, k=1):
    """Return the sum of k-th powers of the divisors of n."""
    out = 1
    for p, e in factorize(n):
        if k == 0:
            out *= e + 1
        else:
            out *= (p ** (k * (e + 1)) - 1) // (p ** k - 1)
    return out


def integer_sqrt(n):
    """Return (r, exact) with r = floor(sqrt(n)) and exact true iff r*r == n."""
    assert n >= 0
    r = isqrt(n)
    return r, r * r == n


def divisors(n):
    """Return the sorted list of divisors of n."""
    out = [1]
    for p, e in factorize(n):
        out = [d * p ** i for d in out for i in range(e + 1)]
    return sorted(out)


def squarefree_part_even_split(n):
    """Write n >= 1 as a*b^2 with a squarefree; return (a, b)."""
    a, b = 1, 1
    for p, e in factorize(n):
        if e % 2:
            a *= p
        b *= p ** (e // 2)
    return a, b


def crt(r1, m1, r2, m2):
    """Solve x = r1 (mod m1), x = r2 (mod m2); return x mod lcm, or None."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    l = m1 // g * m2
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 != g else 0
    return (r1 + m1 * t) % l
