"""Exact arithmetic in cyclotomic fields Q(zeta_m), power basis over Q."""

from fractions import Fraction
from functools import lru_cache
from math import lcm

from .arith import divisors, euler_phi, mobius


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Return the coefficients (low to high) of the m-th cyclotomic polynomial."""
    # Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}; build numerator then divide.
    num = [1]
    dens = []
    for d in divisors(m):
        mu = mobius(m // d)
        if mu == 1:
            num = _poly_mul_xd_minus_1(num, d)
        elif mu == -1:
            dens.append(d)
    for d in dens:
        num = _poly_div_xd_minus_1(num, d)
    assert len(num) == euler_phi(m) + 1 and num[-1] == 1
    return tuple(num)


def _poly_mul_xd_minus_1(poly, d):
    out = [0] * (len(poly) + d)
    for i, c in enumerate(poly):
        out[i + d] += c
        out[i] -= c
    return out


def _poly_div_xd_minus_1(poly, d):
    # Exact division by x^d - 1.
    rem = list(poly)
    out = [0] * (len(poly) - d)
    for i in range(len(out) - 1, -1, -1):
        c = rem[i + d]
        out[i] = c
        rem[i + d] -= c
        rem[i] += c
    assert all(c == 0 for c in rem)
    return out


@lru_cache(maxsize=None)
def _reduction_rows(m):
    """Rows expressing zeta_m^j, 0 <= j < max(m, 2*phi(m)), in the power basis."""
    phi = euler_phi(m)
    top = max(m, 2 * phi)
    rows = []
    for j in range(phi):
        row = [Fraction(0)] * phi
        row[j] = Fraction(1)
        rows.append(tuple(row))
    poly = cyclotomic_poly(m)
    for j in range(phi, top):
        # zeta^j = zeta * zeta^(j-1), then reduce the overflow term.
        prev = rows[j - 1]
        row = [Fraction(0)] + [c for c in prev[:-1]]
        head = prev[-1]
        if head:
            for i in range(phi):
                row[i] -= head * poly[i]
        rows.append(tuple(row))
    return tuple(rows)


class CycloNumber:
    """An element of Q(zeta_m) stored as phi(m) rational coordinates."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        self.order = order
        self.coeffs = tuple(c if type(c) is Fraction else Fraction(c)
                            for c in coeffs)
        assert len(self.coeffs) == euler_phi(order)

    def __repr__(self):
        return "CycloNumber(order=%d, coeffs=%s)" % (self.order, list(self.coeffs))

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            return equals(self, other)
        if isinstance(other, (int, Fraction)):
            return equals(self, rational(other))
        return NotImplemented

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return add(self, negate(_coerce(other)))

    def __rsub__(self, other):
        return add(_coerce(other), negate(self))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale_rational(self, other)
        return mul(self, _coerce(other))

    __rmul__ = __mul__


def _coerce(x):
    if isinstance(x, CycloNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return rational(x)
    raise TypeError(x)


def rational(q, order=1):
    """Return the rational number q as a CycloNumber of the given order."""
    coeffs = [Fraction(q)] + [Fraction(0)] * (euler_phi(order) - 1)
    return CycloNumber(order, coeffs)


def zero(order=1):
    return rational(0, order)


def root_of_unity(m, j=1):
    """Return zeta_m^j as a CycloNumber of order m."""
    return zeta_sum(m, {j % m: Fraction(1)})


def zeta_sum(m, weights):
    """Return sum of weights[j] * zeta_m^j for a dict of exponent weights."""
    phi = euler_phi(m)
    rows = _reduction_rows(m)
    coeffs = [Fraction(0)] * phi
    for j, w in weights.items():
        if not w:
            continue
        row = rows[j % m]
        for i in range(phi):
            if row[i]:
                coeffs[i] += w * row[i]
    return CycloNumber(m, coeffs)


def add(x, y):
    x, y = promote_pair(x, y)
    return CycloNumber(x.order, [a + b for a, b in zip(x.coeffs, y.coeffs)])


def negate(x):
    return CycloNumber(x.order, [-a for a in x.coeffs])


def scale_rational(x, q):
    if type(q) is not Fraction:
        q = Fraction(q)
    return CycloNumber(x.order, [q * a for a in x.coeffs])


def mul(x, y):
    x, y = promote_pair(x, y)
    m = x.order
    phi = euler_phi(m)
    rows = _reduction_rows(m)
    prod = [Fraction(0)] * (2 * phi - 1)
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, b in enumerate(y.coeffs):
            if b:
                prod[i + j] += a * b
    coeffs = [Fraction(0)] * phi
    for j, c in enumerate(prod):
        if not c:
            continue
        row = rows[j]
        for i in range(phi):
            if row[i]:
                coeffs[i] += c * row[i]
    return CycloNumber(m, coeffs)


def conjugate(x):
    """Return the complex conjugate (zeta_m -> zeta_m^(-1))."""
    m = x.order
    rows = _reduction_rows(m)
    phi = euler_phi(m)
    coeffs = [Fraction(0)] * phi
    for j, a in enumerate(x.coeffs):
        if not a:
            continue
        row = rows[(m - j) % m]
        for i in range(phi):
            if row[i]:
                coeffs[i] += a * row[i]
    return CycloNumber(m, coeffs)


def is_zero(x):
    return all(c == 0 for c in x.coeffs)


def equals(x, y):
    x, y = promote_pair(x, y)
    return x.coeffs == y.coeffs


def is_rational(x):
    return all(c == 0 for c in x.coeffs[1:])


def as_rational(x):
    """Return x as a Fraction; x must lie in Q."""
    assert is_rational(x), x
    return x.coeffs[0]


def embed_into(x, m):
    """Embed x into Q(zeta_m); x.order must divide m."""
    assert m % x.order == 0
    if m == x.order:
        return x
    d = m // x.order
    weights = {}
    # Rewrite each basis monomial zeta_{m/d}^j = zeta_m^(d*j), then re-reduce.
    phi_old = euler_phi(x.order)
    for j in range(phi_old):
        if x.coeffs[j]:
            weights[d * j] = weights.get(d * j, Fraction(0)) + x.coeffs[j]
    return zeta_sum(m, weights)


def promote_pair(x, y):
    if x.order == y.order:
        return x, y
    m = lcm(x.order, y.order)
    return embed_into(x, m), embed_into(y, m)


def inverse(x):
    """Return the multiplicative inverse of a nonzero CycloNumber."""
    assert not is_zero(x)
    m = x.order
    phi = euler_phi(m)
    if phi == 1:
        return rational(Fraction(1) / x.coeffs[0], m)
    # Solve x * y = 1 as a linear system in the coordinates of y.
    cols = []
    for j in range(phi):
        basis = CycloNumber(m, [Fraction(int(i == j)) for i in range(phi)])
        cols.append(mul(x, basis).coeffs)
    aug = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))]
           for i in range(phi)]
    sol = _solve_linear(aug, phi)
    return CycloNumber(m, sol)


def _solve_linear(aug, n):
    # Gaussian elimination over Q on an n x (n+1) augmented matrix.
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def to_complex(x):
    """Return a floating-point complex approximation of x."""
    import cmath

    m = x.order
    z = cmath.exp(2j * cmath.pi / m)
    out = 0j
    pw = 1 + 0j
    for c in x.coeffs:
        out += float(c) * pw
        pw *= z
    return out
