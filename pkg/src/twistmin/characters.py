"""Dirichlet characters, stored locally as discrete-log exponent data.

A character mod N is a product of components at the prime powers p^e || N.
For odd p the component is an exponent a on a fixed primitive root g of
p^e, so chi(g) = zeta_phi^a.  For p = 2 and e >= 3 the component is a pair
(a, b) on the generators (-1, 5); for e = 2 it is an exponent on -1; the
modulus-2 and modulus-1 groups are trivial.
"""

from functools import lru_cache
from itertools import product as iter_product
from math import gcd, lcm

from .arith import crt, euler_phi, factorize, valuation
from .cyclo import CycloNumber, rational, zeta_sum


@lru_cache(maxsize=None)
def primitive_root(p, e):
    """Return the smallest primitive root modulo p^e (p an odd prime)."""
    assert p % 2 == 1
    pe = p ** e
    phi = euler_phi(pe)
    targets = [phi // q for q, _ in factorize(phi)]
    g = 2
    while True:
        if gcd(g, p) == 1 and all(pow(g, t, pe) != 1 for t in targets):
            return g
        g += 1


@lru_cache(maxsize=None)
def _dlog_table(p, e):
    """Map x -> k with g^k = x mod p^e for the fixed primitive root g."""
    pe = p ** e
    g = primitive_root(p, e)
    table = {}
    x = 1
    for k in range(euler_phi(pe)):
        table[x] = k
        x = x * g % pe
    return table


@lru_cache(maxsize=None)
def _dlog2_table(e):
    """Map odd x -> (alpha, beta) with x = (-1)^alpha * 5^beta mod 2^e."""
    assert e >= 3
    mod = 2 ** e
    table = {}
    half = 2 ** (e - 2)
    x = 1
    for beta in range(half):
        table[x] = (0, beta)
        table[mod - x] = (1, beta)
        x = x * 5 % mod
    return table


class LocalCharacter:
    """A character of (Z/p^e)^*; e = 0 means the trivial group."""

    __slots__ = ("p", "e", "data")

    def __init__(self, p, e, data):
        self.p = p
        self.e = e
        if p == 2 and e >= 3:
            a, b = data
            self.data = (a % 2, b % 2 ** (e - 2))
        elif p == 2 and e == 2:
            self.data = data % 2
        elif p == 2 or e == 0:
            self.data = 0
        else:
            self.data = data % euler_phi(p ** e)

    def key(self):
        return (self.p, self.e, self.data)

    def __eq__(self, other):
        return isinstance(other, LocalCharacter) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "LocalCharacter(p=%d, e=%d, data=%r)" % (self.p, self.e, self.data)

    @property
    def modulus(self):
        return self.p ** self.e

    def is_trivial(self):
        if self.p == 2 and self.e >= 3:
            return self.data == (0, 0)
        return self.data == 0

    def order(self):
        p, e = self.p, self.e
        if e == 0:
            return 1
        if p == 2:
            if e == 1:
                return 1
            if e == 2:
                return 2 if self.data else 1
            a, b = self.data
            half = 2 ** (e - 2)
            return lcm(2 if a else 1, half // gcd(b, half))
        phi = euler_phi(p ** e)
        return phi // gcd(self.data, phi)

    def conductor(self):
        p, e = self.p, self.e
        if e == 0:
            return 1
        if p == 2:
            if e == 1:
                return 1
            if e == 2:
                return 4 if self.data else 1
            a, b = self.data
            if b == 0:
                return 4 if a else 1
            return 2 ** (e - valuation(2, b))
        a = self.data
        if a == 0:
            return 1
        return p ** max(1, e - valuation(p, a))

    def parity(self):
        """Return the value of the character at -1, as +1 or -1."""
        p, e = self.p, self.e
        if e == 0 or (p == 2 and e == 1):
            return 1
        if p == 2:
            a = self.data if e == 2 else self.data[0]
            return -1 if a else 1
        return -1 if self.data % 2 else 1

    def value_exponent(self, x, m):
        """Exponent j with chi(x) = zeta_m^j, or None when gcd(x, p^e) > 1.

        The ambient order m must be a multiple of the character's order.
        """
        p, e = self.p, self.e
        if e == 0:
            return 0
        if x % p == 0:
            return None
        if p == 2:
            if e == 1:
                return 0
            if e == 2:
                alpha = 0 if x % 4 == 1 else 1
                return self.data * alpha * (m // 2) % m
            a, b = self.data
            alpha, beta = _dlog2_table(e)[x % 2 ** e]
            half = 2 ** (e - 2)
            out = (a * alpha % 2) * (m // 2)
            out += (b * beta % half) * m // half
            return out % m
        phi = euler_phi(p ** e)
        k = _dlog_table(p, e)[x % p ** e]
        return (self.data * k % phi) * m // phi % m

    def primitive(self):
        """Return the primitive character inducing this one."""
        p, e = self.p, self.e
        cond = self.conductor()
        if cond == self.modulus:
            return self
        if cond == 1:
            return LocalCharacter(p, 0, 0)
        if p == 2:
            if cond == 4:
                a = self.data if e == 2 else self.data[0]
                return LocalCharacter(2, 2, a)
            a, b = self.data
            s = valuation(2, cond)
            return LocalCharacter(2, s, (a, b >> (e - s)))
        s = valuation(p, cond)
        phi_e, phi_s = euler_phi(p ** e), euler_phi(p ** s)
        k = _dlog_table(p, e)[primitive_root(p, s) % p ** e]
        return LocalCharacter(p, s, self.data * k * phi_s // phi_e)

    def induce(self, e_new):
        """Extend to modulus p^e_new (a multiple of the conductor)."""
        p, e = self.p, self.e
        assert e_new >= valuation(p, self.conductor())
        if e_new == e:
            return self
        if e_new < e:
            return self.primitive().induce(e_new)
        if p == 2:
            if e <= 1:
                return LocalCharacter(2, e_new, (0, 0) if e_new >= 3 else 0)
            if e == 2:
                return LocalCharacter(2, e_new, (self.data, 0))
            a, b = self.data
            return LocalCharacter(2, e_new, (a, b << (e_new - e)))
        if e == 0:
            return LocalCharacter(p, e_new, 0)
        phi_old, phi_new = euler_phi(p ** e), euler_phi(p ** e_new)
        c = _dlog_table(p, e)[primitive_root(p, e_new) % p ** e]
        return LocalCharacter(p, e_new, self.data * c * (phi_new // phi_old))

    def mul(self, other):
        assert self.p == other.p
        e = max(self.e, other.e)
        a, b = self.induce(e), other.induce(e)
        if self.p == 2 and e >= 3:
            return LocalCharacter(2, e, (a.data[0] + b.data[0], a.data[1] + b.data[1]))
        return LocalCharacter(self.p, e, a.data + b.data)

    def conj(self):
        if self.p == 2 and self.e >= 3:
            return LocalCharacter(2, self.e, (-self.data[0], -self.data[1]))
        return LocalCharacter(self.p, self.e, -self.data)

    def is_twist_minimal(self):
        """Twist-minimality of the component at p, for modulus p^e."""
        p, e = self.p, self.e
        s = valuation(p, self.conductor())
        if s == e:
            return True
        if p > 2:
            if self.is_trivial():
                return True
            two_part = 2 ** valuation(2, p - 1)
            return self.order() == two_part
        if self.is_trivial():
            return e % 2 == 1 or e == 2
        if s == e // 2:
            return True
        return s == 2 and e > 3 and e % 2 == 1


def _trivial_local(p, e):
    return LocalCharacter(p, e, (0, 0) if p == 2 and e >= 3 else 0)


class DirichletCharacter:
    """A Dirichlet character, as a tuple of local components."""

    __slots__ = ("modulus", "locals", "_cache")

    def __init__(self, modulus, locals_):
        locals_ = tuple(sorted(locals_, key=lambda c: c.p))
        assert all(c.e >= 1 for c in locals_)
        prod = 1
        for c in locals_:
            prod *= c.modulus
        assert prod == modulus, (modulus, locals_)
        self.modulus = modulus
        self.locals = locals_
        self._cache = {}

    def key(self):
        return (self.modulus,) + tuple(c.key() for c in self.locals)

    def __eq__(self, other):
        return isinstance(other, DirichletCharacter) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "DirichletCharacter(%s)" % self.label()

    def is_trivial(self):
        return all(c.is_trivial() for c in self.locals)

    def conductor(self):
        if "cond" not in self._cache:
            out = 1
            for c in self.locals:
                out *= c.conductor()
            self._cache["cond"] = out
        return self._cache["cond"]

    def order(self):
        if "order" not in self._cache:
            self._cache["order"] = lcm(1, *(c.order() for c in self.locals))
        return self._cache["order"]

    def parity(self):
        out = 1
        for c in self.locals:
            out *= c.parity()
        return out

    def value_exponent(self, x, m=None):
        """Exponent j with chi(x) = zeta_m^j, or None when gcd(x, N) > 1."""
        if m is None:
            m = self.order()
        out = 0
        for c in self.locals:
            j = c.value_exponent(x, m)
            if j is None:
                return None
            out += j
        return out % m

    def eval(self, x):
        """Return chi(x) as a CycloNumber of order order(chi)."""
        m = self.order()
        j = self.value_exponent(x, m)
        if j is None:
            return rational(0, m)
        return zeta_sum(m, {j: 1})

    def eval_inv(self, x):
        """Return chi(1/x), the value at the modular inverse of x."""
        from math import gcd as _gcd

        if _gcd(x, self.modulus) != 1:
            raise ValueError("eval_inv requires gcd(%d, %d) = 1" % (x, self.modulus))
        m = self.order()
        j = self.value_exponent(x, m)
        return zeta_sum(m, {(-j) % m: 1})

    def local_component(self, p):
        """Return the component at p (trivial modulus-1 character if p | N fails)."""
        for c in self.locals:
            if c.p == p:
                return c
        return LocalCharacter(p, 0, 0)

    def mul(self, other):
        assert self.modulus == other.modulus
        merged = [a.mul(b) for a, b in zip(self.locals, other.locals)]
        return DirichletCharacter(self.modulus, merged)

    def conj(self):
        return DirichletCharacter(self.modulus, [c.conj() for c in self.locals])

    def pow(self, j):
        out = trivial_character(self.modulus)
        base = self
        j %= self.order()
        while j:
            if j % 2:
                out = out.mul(base)
            base = base.mul(base)
            j //= 2
        return out

    def primitive_inducing(self):
        """Return the primitive character of modulus cond(chi) inducing chi."""
        prims = [c.primitive() for c in self.locals]
        return DirichletCharacter(self.conductor(), [c for c in prims if c.e > 0])

    def induce(self, M):
        """Extend by zero to modulus M; cond(chi) must divide M."""
        assert M % self.conductor() == 0
        prim = {c.p: c for c in self.primitive_inducing().locals}
        out = []
        for p, e in factorize(M):
            out.append(prim.pop(p).induce(e) if p in prim else _trivial_local(p, e))
        assert not prim
        return DirichletCharacter(M, out)

    def is_twist_minimal(self):
        return all(c.is_twist_minimal() for c in self.locals)

    def conrey_index(self):
        """Return the label index q with this character in Conrey's numbering."""
        if self.modulus == 1:
            return 1
        r, mod = 0, 1
        for c in self.locals:
            p, e = c.p, c.e
            pe = p ** e
            if p == 2:
                if e == 1:
                    qp = 1
                elif e == 2:
                    qp = 3 if c.data else 1
                else:
                    a, b = c.data
                    qp = (-1) ** a * pow(5, b, pe) % pe
            else:
                qp = pow(primitive_root(p, e), c.data, pe)
            r = crt(r, mod, qp, pe)
            mod *= pe
        return r

    def label(self):
        return "%d.%d" % (self.modulus, self.conrey_index())


def trivial_character(N):
    return DirichletCharacter(N, [_trivial_local(p, e) for p, e in factorize(N)])


def from_conrey(N, q):
    """Return the Dirichlet character mod N with Conrey index q."""
    assert N >= 1 and gcd(q, N) == 1
    out = []
    for p, e in factorize(N):
        pe = p ** e
        qp = q % pe
        if p == 2:
            if e == 1:
                out.append(LocalCharacter(2, 1, 0))
            elif e == 2:
                out.append(LocalCharacter(2, 2, 0 if qp == 1 else 1))
            else:
                out.append(LocalCharacter(2, e, _dlog2_table(e)[qp]))
        else:
            out.append(LocalCharacter(p, e, _dlog_table(p, e)[qp]))
    return DirichletCharacter(N, out)


def from_label(label):
    """Parse a character label of the form 'N.q'."""
    n, q = label.split(".")
    return from_conrey(int(n), int(q))


def _local_group(p, e):
    """All characters of (Z/p^e)^*."""
    pe = p ** e
    if p == 2:
        if e == 1:
            return [LocalCharacter(2, 1, 0)]
        if e == 2:
            return [LocalCharacter(2, 2, a) for a in range(2)]
        return [LocalCharacter(2, e, (a, b))
                for a in range(2) for b in range(2 ** (e - 2))]
    return [LocalCharacter(p, e, a) for a in range(euler_phi(pe))]


def enumerate_characters(N, conductor=None, order=None, parity=None):
    """List all Dirichlet characters mod N matching the given filters."""
    groups = [_local_group(p, e) for p, e in factorize(N)]
    out = []
    for combo in iter_product(*groups):
        chi = DirichletCharacter(N, combo)
        if conductor is not None and chi.conductor() != conductor:
            continue
        if order is not None and chi.order() != order:
            continue
        if parity is not None and chi.parity() != parity:
            continue
        out.append(chi)
    out.sort(key=lambda c: c.conrey_index())
    return out


def mul_characters(chi, psi):
    """Multiply characters of possibly different moduli, at the lcm modulus."""
    M = lcm(chi.modulus, psi.modulus)
    return chi.induce(M).mul(psi.induce(M))
