import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twistmin.arith import euler_phi
from twistmin.cyclo import (CycloNumber, add, as_rational, conjugate,
                            embed_into, equals, inverse, is_rational, is_zero,
                            mul, negate, rational, root_of_unity,
                            scale_rational, to_complex, zeta_sum)


def test_root_of_unity_examples():
    assert equals(root_of_unity(4, 2), rational(-1))
    assert equals(add(root_of_unity(3, 1), root_of_unity(3, 2)), rational(-1))
    assert equals(root_of_unity(1, 0), rational(1))


def test_field_op_examples():
    z8 = root_of_unity(8, 1)
    assert equals(mul(z8, root_of_unity(8, -1)), rational(1))
    assert equals(conjugate(root_of_unity(5, 1)), root_of_unity(5, 4))
    assert equals(scale_rational(rational(1), Fraction(1, 12)),
                  rational(Fraction(1, 12)))


def test_embed_examples():
    assert equals(embed_into(root_of_unity(3, 1), 6), root_of_unity(6, 2))
    assert equals(embed_into(rational(1), 12), rational(1, 12))
    assert equals(embed_into(root_of_unity(4, 1), 12), root_of_unity(12, 3))


def test_to_complex_examples():
    assert abs(to_complex(root_of_unity(4, 1)) - 1j) < 1e-12
    assert abs(to_complex(rational(-1)) - (-1)) < 1e-12
    s = math.sqrt(2) / 2
    assert abs(to_complex(root_of_unity(8, 1)) - complex(s, s)) < 1e-12


def _random_element(rng, m):
    phi = euler_phi(m)
    coeffs = [Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
              for _ in range(phi)]
    return CycloNumber(m, coeffs)


@given(st.integers(min_value=1, max_value=24), st.integers(min_value=0, max_value=2 ** 32))
@settings(max_examples=60, deadline=None)
def test_ring_axioms(m, seed):
    import random

    rng = random.Random(seed)
    x, y, z = (_random_element(rng, m) for _ in range(3))
    assert equals(mul(mul(x, y), z), mul(x, mul(y, z)))
    assert equals(mul(x, add(y, z)), add(mul(x, y), mul(x, z)))
    assert equals(add(x, y), add(y, x))
    assert equals(mul(x, y), mul(y, x))


@given(st.integers(min_value=1, max_value=24), st.integers(min_value=0, max_value=2 ** 32))
@settings(max_examples=60, deadline=None)
def test_conjugation(m, seed):
    import random

    rng = random.Random(seed)
    x, y = (_random_element(rng, m) for _ in range(2))
    assert equals(conjugate(conjugate(x)), x)
    assert equals(conjugate(mul(x, y)), mul(conjugate(x), conjugate(y)))
    assert equals(conjugate(add(x, y)), add(conjugate(x), conjugate(y)))


@given(st.integers(min_value=1, max_value=24), st.integers(min_value=0, max_value=2 ** 32))
@settings(max_examples=200, deadline=None)
def test_is_zero_matches_float(m, seed):
    import random

    rng = random.Random(seed)
    x = _random_element(rng, m)
    assert is_zero(x) == (abs(to_complex(x)) < 1e-9)


def test_canonical_negation():
    x = zeta_sum(12, {1: Fraction(3, 2), 7: -2})
    s = add(x, negate(x))
    assert all(c == 0 for c in s.coeffs)


def test_inverse():
    import random

    rng = random.Random(7)
    for m in (1, 3, 4, 5, 8, 12):
        for _ in range(5):
            x = _random_element(rng, m)
            if is_zero(x):
                continue
            assert equals(mul(x, inverse(x)), rational(1, m))


def test_rationality_detection():
    assert is_rational(rational(Fraction(7, 3), 12))
    assert as_rational(rational(Fraction(7, 3), 12)) == Fraction(7, 3)
    assert not is_rational(root_of_unity(5, 1))
