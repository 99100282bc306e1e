"""Built-in consistency checks runnable at configurable bounds."""

from math import gcd

from .arith import divisors, euler_phi, factorize
from .characters import enumerate_characters, trivial_character
from .cyclo import as_rational, embed_into, equals, is_rational, is_zero
from .oracle import trace_full, trace_min_sieved
from .quadratic import kronecker
from .trace import trace_min


def genus_x0(N):
    """Genus of the modular curve X_0(N), by the classical formula."""
    mu = N
    for p, _ in factorize(N):
        mu = mu // p * (p + 1)
    if N % 4 == 0:
        nu2 = 0
    else:
        nu2 = 1
        for p, _ in factorize(N):
            nu2 *= 1 + kronecker(-4, p)
    if N % 9 == 0:
        nu3 = 0
    else:
        nu3 = 1
        for p, _ in factorize(N):
            nu3 *= 1 + kronecker(-3, p)
    nuinf = sum(euler_phi(gcd(d, N // d)) for d in divisors(N))
    g12 = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * nuinf
    assert g12 % 12 == 0
    return g12 // 12


def run_selftest(max_level=20, weights=(2, 3, 4), nmax=10):
    """Run the built-in check battery; return (checks, failures)."""
    checks = 0
    failures = []

    def record(ok, msg):
        nonlocal checks
        checks += 1
        if not ok:
            failures.append(msg)

    # Dual-path agreement, integrality, and rationality for real characters.
    for N in range(1, max_level + 1):
        for chi in enumerate_characters(N):
            if not chi.is_twist_minimal():
                continue
            for k in weights:
                if chi.parity() != (-1) ** k:
                    continue
                for n in range(1, nmax + 1):
                    a = trace_min(N, k, chi, n)
                    b = trace_min_sieved(N, k, chi, n)
                    record(equals(a, b),
                           "path mismatch N=%d k=%d chi=%s n=%d"
                           % (N, k, chi.label(), n))
                    denom_one = all(c.denominator == 1 for c in a.coeffs)
                    record(denom_one,
                           "non-integral trace N=%d k=%d chi=%s n=%d"
                           % (N, k, chi.label(), n))
                    if chi.order() <= 2:
                        record(is_rational(embed_into(a, a.order)),
                               "irrational trace for real character "
                               "N=%d k=%d chi=%s n=%d"
                               % (N, k, chi.label(), n))

    # Full-space dimension against the genus of X_0(N).
    for N in range(1, max_level + 1):
        t1 = trace_full(N, 2, trivial_character(N), 1)
        record(is_rational(t1) and as_rational(t1) == genus_x0(N),
               "genus mismatch at N=%d" % N)

    # Parity-gate vanishing.
    for N in range(1, max_level + 1):
        for chi in enumerate_characters(N):
            for k in weights:
                if chi.parity() == (-1) ** k:
                    continue
                v = trace_full(N, k, chi, 1)
                record(is_zero(v), "parity gate failed N=%d k=%d chi=%s"
                       % (N, k, chi.label()))
                if chi.is_twist_minimal():
                    v = trace_min(N, k, chi, 1)
                    record(is_zero(v),
                           "parity gate (min) failed N=%d k=%d chi=%s"
                           % (N, k, chi.label()))

    return checks, failures
