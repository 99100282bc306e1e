"""Quadratic symbols, imaginary quadratic class numbers, square roots mod p^e."""

from math import isqrt

from .arith import factorize, squarefree_part_even_split, valuation


def kronecker(a, b):
    """Return the Kronecker symbol (a|b), defined for all integers."""
    if b == 0:
        return 1 if abs(a) == 1 else 0
    sign = 1
    if b < 0:
        b = -b
        if a < 0:
            sign = -1
    if b % 2 == 0:
        if a % 2 == 0:
            return 0
        v = 0
        while b % 2 == 0:
            b //= 2
            v += 1
        if v % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= b
    # Jacobi symbol by quadratic reciprocity.
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                sign = -sign
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            sign = -sign
        a %= b
    return sign if b == 1 else 0


def split_discriminant(D):
    """Write D < 0 as d * ell^2 with d a fundamental discriminant; return (d, ell)."""
    assert D < 0 and D % 4 in (0, 1)
    m, ell = squarefree_part_even_split(-D)
    m = -m
    if m % 4 == 1:
        return m, ell
    assert ell % 2 == 0
    return 4 * m, ell // 2


def is_fundamental_discriminant(d):
    """Whether d < 0 is a fundamental discriminant."""
    if d >= 0 or d % 4 not in (0, 1):
        return False
    return split_discriminant(d) == (d, 1)


_CLASS_CACHE = {}


def class_data(d):
    """Return (h(d), w(d)) for a fundamental discriminant d < 0.

    h is the class number of primitive binary quadratic forms of
    discriminant d, and w the number of units (6, 4 or 2).
    """
    assert d < 0 and d % 4 in (0, 1)
    if d in _CLASS_CACHE:
        return _CLASS_CACHE[d]
    h = 0
    b = d % 2
    while b * b <= -d // 3:
        ac = (b * b - d) // 4
        a = max(b, 1)
        while a * a <= ac:
            if a and ac % a == 0:
                c = ac // a
                if b == 0 or a == b or a == c:
                    h += 1
                else:
                    h += 2
            a += 1
        b += 2
    w = 6 if d == -3 else 4 if d == -4 else 2
    _CLASS_CACHE[d] = (h, w)
    return h, w


def class_number_formula(d):
    """Independent class number computation via the finite character sum."""
    assert d < 0 and d % 4 in (0, 1)
    _, w = class_data(d)
    total = sum(kronecker(d, k) * k for k in range(1, -d))
    num = -w * total
    assert num % (2 * -d) == 0
    return num // (2 * -d)


def load_class_cache(path):
    """Load a 'd,h,w' cache file into the in-memory class number cache."""
    n = 0
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            d, h, w = (int(x) for x in line.split(","))
            _CLASS_CACHE[d] = (h, w)
            n += 1
    return n


def save_class_cache(path):
    """Write the in-memory cache as 'd,h,w' lines sorted by |d|."""
    items = sorted(_CLASS_CACHE.items(), key=lambda kv: -kv[0])
    with open(path, "w") as fh:
        for d, (h, w) in items:
            fh.write("%d,%d,%d\n" % (d, h, w))
    return len(items)


def _sqrt_mod_prime(a, p):
    """Tonelli-Shanks: a square root of a mod an odd prime p, or None."""
    a %= p
    if a == 0:
        return 0
    if kronecker(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while kronecker(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


def sqrt_mod_prime_power(a, p, e):
    """Return the smallest nonnegative x with x^2 = a mod p^e.

    Raises ValueError when a is not a square in Z/p^e.
    """
    pe = p ** e
    a %= pe
    if a == 0:
        return 0
    v = valuation(p, a)
    if v % 2:
        raise ValueError("%d is not a square mod %d^%d" % (a, p, e))
    rest = e - v
    aa = a // p ** v
    if p == 2:
        if rest == 1:
            y = 1
        elif rest == 2:
            if aa % 4 != 1:
                raise ValueError("%d is not a square mod %d^%d" % (a, p, e))
            y = 1
        else:
            if aa % 8 != 1:
                raise ValueError("%d is not a square mod %d^%d" % (a, p, e))
            y, k = 1, 3
            while k < rest:
                if (y * y - aa) // 2 ** k % 2:
                    y += 2 ** (k - 1)
                k += 1
            mod = 2 ** rest
            y %= mod
            cands = {y, mod - y, (y + mod // 2) % mod, (mod - y + mod // 2) % mod}
            y = min(cands)
    else:
        y = _sqrt_mod_prime(aa, p)
        if y is None:
            raise ValueError("%d is not a square mod %d^%d" % (a, p, e))
        pk = p
        while pk < p ** rest:
            pk *= p
            # Hensel step: correct y so that y^2 = aa mod pk.
            y = (y - (y * y - aa) * pow(2 * y, -1, pk)) % pk
        y %= p ** rest
        y = min(y, p ** rest - y)
    return y * p ** (v // 2)


def hurwitz_pairs(D):
    """For D = t^2 - 4n < 0 return (d, ell, h, w) with D = d*ell^2."""
    d, ell = split_discriminant(D)
    h, w = class_data(d)
    return d, ell, h, w
