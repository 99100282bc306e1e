"""Bases of q-expansions for cusp form spaces, built from trace forms."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd, lcm

from .arith import divisors, factorize
from .characters import mul_characters, trivial_character
from .cyclo import (CycloNumber, as_rational, conjugate, embed_into, inverse,
                    is_zero, mul, rational, zeta_sum)
from .decomp import twist_pairs
from .trace import SpaceSpec, trace_min
from . import oracle


@dataclass
class QExpansion:
    """A truncated q-series: coefficients a_1..a_B as CycloNumbers."""

    spec: SpaceSpec
    truncation: int
    coeffs: dict = field(default_factory=dict)

    def coeff(self, n):
        assert 1 <= n <= self.truncation
        return self.coeffs.get(n)


@dataclass
class BasisMatrix:
    """Rows of q-expansion coefficients with an exactly certified rank."""

    spec: SpaceSpec
    truncation: int
    labels: list
    entries: list
    certified_rank: int


def trace_form(spec, B):
    """The q-series whose n-th coefficient is the trace of T_n on the space."""
    assert spec.kind == "min"
    coeffs = {n: trace_min(spec, n) for n in range(1, B + 1)}
    return QExpansion(spec, B, coeffs)


def hecke_apply(n, f):
    """Apply T_n to a q-expansion; the truncation shrinks to B // n."""
    B = f.truncation // n
    if B < 1:
        raise ValueError("truncation %d too small for T_%d" % (f.truncation, n))
    spec = f.spec
    k = spec.k
    chi = spec.chi
    out = {}
    for i in range(1, B + 1):
        acc = None
        for d in divisors(gcd(i, n)):
            j = chi.value_exponent(d)
            if j is None:
                continue
            a = f.coeff(i * n // d ** 2)
            term = zeta_sum(chi.order(), {j: Fraction(d ** (k - 1))}) * a
            acc = term if acc is None else acc + term
        out[i] = acc if acc is not None else rational(0, 1)
    return QExpansion(spec, B, out)


def twist_qexp(f, psi):
    """Multiply each coefficient a_n by psi(n)."""
    out = {}
    for n, a in f.coeffs.items():
        j = psi.value_exponent(n, psi.order())
        if j is None:
            out[n] = rational(0, 1)
        else:
            out[n] = zeta_sum(psi.order(), {j: 1}) * a
    return QExpansion(f.spec, f.truncation, out)


def lift(f, d):
    """The q-expansion of f(d z): coefficient a_n moves to index d*n."""
    out = {}
    for n, a in f.coeffs.items():
        if d * n <= f.truncation:
            out[d * n] = a
    return QExpansion(f.spec, f.truncation, out)


def sturm_bound(spec):
    """Truncation after which vanishing coefficients force the zero form."""
    num = spec.k * oracle._psi_slash(spec.N)
    return -(-num // 12)


def dimension(spec):
    """The dimension of the space, as the trace of T_1."""
    if spec.kind == "min":
        val = trace_min(spec, 1)
    elif spec.kind == "new":
        val = oracle.trace_new(spec, 1)
    else:
        val = oracle.trace_full(spec, 1)
    out = as_rational(val)
    assert out.denominator == 1 and out >= 0
    return int(out)


def nonminimal_bridge(spec):
    """Find psi with chi*psi^2 twist-minimal; return (psi, bridged spec).

    psi is searched in Conrey order among characters of modulus N.  The
    bridged character chi*psi^2 is twist-minimal at some level M dividing N
    (the largest such M is chosen); the returned SpaceSpec lives there.
    """
    from .characters import enumerate_characters

    chi = spec.chi
    if chi.is_twist_minimal():
        raise ValueError("character %s is already twist-minimal" % chi.label())
    for psi in enumerate_characters(spec.N):
        cand = chi.mul(psi.pow(2)).primitive_inducing()
        for M in sorted(divisors(spec.N), reverse=True):
            if M % cand.conductor():
                continue
            lifted = cand.induce(M)
            if lifted.is_twist_minimal():
                return psi, SpaceSpec(M, spec.k, lifted, spec.kind)
    raise AssertionError("no bridging twist found for %s" % chi.label())


class _Echelon:
    """Incremental exact row reduction over a cyclotomic field."""

    def __init__(self, ncols, order):
        self.ncols = ncols
        self.order = order
        self.pivots = []  # (column, normalized row)

    def add(self, row):
        """Reduce row against the pivots; return True if it increased the rank."""
        row = list(row)
        for col, prow in self.pivots:
            c = row[col]
            if not is_zero(c):
                for i in range(col, self.ncols):
                    row[i] = row[i] - c * prow[i]
        for col in range(self.ncols):
            if not is_zero(row[col]):
                inv = inverse(row[col])
                norm = [mul(inv, x) for x in row]
                self.pivots.append((col, norm))
                self.pivots.sort(key=lambda t: t[0])
                return True
        return False

    @property
    def rank(self):
        return len(self.pivots)


def _row_sources(spec):
    """The (level, min-space character, twist, lift) combinations for rows.

    Yields tuples (M, chi_min, psi, d): the trace form of the twist-minimal
    space (M, chi_min = chi*psi^2) is twisted by conj(psi) and lifted by d.
    Enumerates all primitive psi and levels M for which chi*psi^2 is a
    twist-minimal character modulo M and the twisted form's level
    lcm(M, cond(psi)*cond(chi*psi)) divides N (equals N for the new
    subspace); rows come out sorted by (M, cond(psi), psi, d).
    """
    from .characters import enumerate_characters

    N, chi, kind = spec.N, spec.chi, spec.kind
    if kind == "min":
        if not chi.is_twist_minimal():
            raise ValueError("kind=min requires a twist-minimal character")
        yield N, chi, trivial_character(1), 1
        return
    out = []
    seen = set()
    for f in divisors(N):
        for psi in enumerate_characters(f, conductor=f):
            cxp = mul_characters(chi, psi).conductor()
            if N % (f * cxp):
                continue
            chi_sq = mul_characters(chi, psi.pow(2)).primitive_inducing()
            for M in divisors(N):
                if M % chi_sq.conductor():
                    continue
                chi_min = chi_sq.induce(M)
                if not chi_min.is_twist_minimal():
                    continue
                level = lcm(M, f * cxp)
                if N % level:
                    continue
                if kind == "new" and level != N:
                    continue
                key = (M, chi_min.key(), psi.key())
                if key in seen:
                    continue
                seen.add(key)
                for d in ([1] if kind == "new" else divisors(N // level)):
                    out.append((M, chi_min, psi, d))
    out.sort(key=lambda t: (t[0], t[2].modulus, t[2].conrey_index(), t[3]))
    yield from out


def basis_for(spec, B):
    """A rank-certified basis of q-expansions for the space, truncated at B."""
    assert B >= sturm_bound(spec)
    dim = dimension(spec)
    sources = list(_row_sources(spec)) if dim else []
    sources = [s for s in sources
               if dimension(SpaceSpec(s[0], spec.k, s[1], "min")) > 0]
    order = spec.chi.order()
    for M, chi_min, eff, d in sources:
        order = lcm(order, chi_min.order(), eff.order())
    ech = _Echelon(B, order)
    labels, entries = [], []
    forms = {}
    for M, chi_min, eff, d in sources:
        key = (M, chi_min.key())
        if key not in forms:
            sub = SpaceSpec(M, spec.k, chi_min, "min")
            forms[key] = trace_form(sub, B)
    m_val = 1
    while ech.rank < dim:
        if m_val > B:
            raise AssertionError("rank %d not reached by m <= %d" % (dim, B))
        for M, chi_min, eff, d in sources:
            key = (M, chi_min.key())
            base = forms[key]
            if base.truncation < m_val * B:
                sub = SpaceSpec(M, spec.k, chi_min, "min")
                forms[key] = base = trace_form(sub, m_val * B)
            tm = hecke_apply(m_val, QExpansion(base.spec, m_val * B,
                                               dict(base.coeffs)))
            row_q = lift(_retruncate(twist_qexp(tm, eff.conj()), B), d)
            row = [embed_into(row_q.coeffs.get(i + 1, rational(0, 1)), order)
                   for i in range(B)]
            if ech.add(row):
                labels.append("T%d|M=%d,chi=%s,psi=%s,d=%d"
                              % (m_val, M, chi_min.label(), eff.label(), d))
                entries.append(row)
                if ech.rank == dim:
                    break
        m_val += 1
    return BasisMatrix(spec, B, labels, entries, ech.rank)


def _retruncate(f, B):
    coeffs = {n: a for n, a in f.coeffs.items() if n <= B}
    return QExpansion(f.spec, B, coeffs)


def newform_coeffs_from_min(f, psi):
    """Transfer coefficients of a twist-minimal eigenform to its psi-twist.

    f is a normalized eigenform q-expansion on a twist-minimal space; psi
    is a primitive character.  Returns (level M, character chi*psi^2 mod M,
    QExpansion of the twisted newform's coefficients up to f.truncation).
    """
    one = f.coeff(1)
    if not (len(one.coeffs) >= 1 and as_rational_safe(one) == 1):
        raise ValueError("expansion is not normalized (a_1 != 1)")
    assert psi.modulus == psi.conductor()
    spec = f.spec
    N, k, chi = spec.N, spec.k, spec.chi
    psi_prime = mul_characters(chi, psi).primitive_inducing()
    M = lcm(N, psi.conductor() * psi_prime.conductor())
    chi_new = mul_characters(chi, psi.pow(2)).primitive_inducing().induce(M)
    B = f.truncation
    order = lcm(f.coeff(1).order, chi.order(), psi.order(),
                psi_prime.order(), chi_new.order())
    bp = {}
    for p in _primes_upto(B):
        a = embed_into(f.coeff(p), order)
        psi_p = psi.local_component(p).primitive()
        case_two = psi.conductor() % p == 0 and \
            psi_p == chi.local_component(p).conj().primitive()
        if case_two:
            jp = psi_prime.value_exponent(p, order)
            val = conjugate(a)
        else:
            jp = psi.value_exponent(p, order)
            val = a
        if jp is None:
            bp[p] = rational(0, order)
        else:
            bp[p] = val * zeta_sum(order, {jp: 1})
    coeffs = {1: rational(1, order)}
    for n in range(2, B + 1):
        fac = factorize(n)
        if len(fac) == 1:
            p, e = fac[0]
            if e == 1:
                coeffs[n] = bp[p]
            else:
                jc = chi_new.value_exponent(p, order)
                prev2 = coeffs[p ** (e - 2)]
                sub = rational(0, order) if jc is None else \
                    zeta_sum(order, {jc: Fraction(p ** (k - 1))}) * prev2
                coeffs[n] = bp[p] * coeffs[p ** (e - 1)] - sub
        else:
            p, e = fac[0]
            coeffs[n] = coeffs[p ** e] * coeffs[n // p ** e]
    new_spec = SpaceSpec(M, k, chi_new, "new")
    return M, chi_new, QExpansion(new_spec, B, coeffs)


def as_rational_safe(x):
    from .cyclo import is_rational

    return as_rational(x) if is_rational(x) else None


def _primes_upto(B):
    out = []
    sieve = [True] * (B + 1)
    for p in range(2, B + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, B + 1, p):
                sieve[q] = False
    return out
