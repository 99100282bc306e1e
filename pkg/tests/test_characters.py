import math
from fractions import Fraction

import pytest

from twistmin.cyclo import (add, as_rational, embed_into, equals, is_rational,
                            is_zero, mul, rational, root_of_unity)
from twistmin.characters import (DirichletCharacter, enumerate_characters,
                                 from_conrey, from_label, mul_characters,
                                 trivial_character)


def test_from_conrey_examples():
    chi = from_conrey(8, 1)
    assert chi.is_trivial() and chi.conductor() == 1
    chi = from_conrey(4, 3)
    assert equals(chi.eval(3), rational(-1, chi.order()))
    chi = from_conrey(5, 2)
    assert chi.order() == 4
    v = chi.eval(2)
    assert equals(v, root_of_unity(4, 1)) or equals(v, root_of_unity(4, 3))


def test_eval_examples():
    assert equals(trivial_character(6).eval(35), rational(1))
    for N in (6, 11, 12):
        for chi in enumerate_characters(N):
            assert is_zero(chi.eval(N))
    assert equals(from_conrey(4, 3).eval(-1), rational(-1, 2))


def test_conductor_order_parity_examples():
    assert trivial_character(12).conductor() == 1
    sextic = [chi for chi in enumerate_characters(9) if chi.order() == 6]
    assert sextic and all(chi.conductor() == 9 for chi in sextic)
    assert from_conrey(4, 3).parity() == -1


def test_algebra_examples():
    for N in (5, 12):
        for chi in enumerate_characters(N):
            assert chi.mul(chi.conj()).is_trivial()
    assert trivial_character(12).primitive_inducing().modulus == 1
    chi = from_conrey(12, 7)
    assert chi.primitive_inducing().modulus == chi.conductor()
    assert chi.conductor() in (3, 4)


def test_twist_minimal_examples():
    for p in (3, 5, 7, 11, 13):
        assert trivial_character(p).is_twist_minimal()
    assert not trivial_character(16).is_twist_minimal()
    for pe in (9, 25, 8, 16):
        for chi in enumerate_characters(pe, conductor=pe):
            assert chi.is_twist_minimal()


def test_enumerate_examples():
    assert len(enumerate_characters(1)) == 1
    assert len(enumerate_characters(9, conductor=9)) == 4
    assert len(enumerate_characters(8, parity=1)) == 2


def test_enumeration_complete_and_ordered():
    for N in (1, 2, 7, 8, 9, 12, 24):
        chars = enumerate_characters(N)
        from twistmin.arith import euler_phi

        assert len(chars) == euler_phi(N)
        idx = [chi.conrey_index() for chi in chars]
        assert idx == sorted(idx)
        assert len(set(idx)) == len(idx)


def test_homomorphism_and_factorization():
    for N in (12, 35, 45, 100):
        for chi in enumerate_characters(N):
            m = chi.order()
            for x in range(1, N + 1):
                if math.gcd(x, N) != 1:
                    continue
                for y in (2, 7, 11):
                    if math.gcd(y, N) != 1:
                        continue
                    lhs = chi.eval(x * y)
                    rhs = mul(chi.eval(x), chi.eval(y))
                    assert equals(lhs, rhs)
                prod = rational(1, m)
                for p, _ in __import__("twistmin.arith", fromlist=["factorize"]).factorize(N):
                    j = chi.local_component(p).value_exponent(x, m)
                    assert j is not None
                    prod = mul(prod, root_of_unity(m, j))
                assert equals(chi.eval(x), prod)


def test_parity_multiplicative():
    for N in (8, 12, 15):
        chars = enumerate_characters(N)
        for a in chars:
            for b in chars:
                assert a.mul(b).parity() == a.parity() * b.parity()


def _conductor_sum(p, a, x):
    """Sum of chi(x) over characters of conductor exactly p^a."""
    total = rational(0)
    for chi in enumerate_characters(p ** a, conductor=p ** a):
        total = add(embed_into(total, chi.order() * total.order),
                    embed_into(chi.eval(x), chi.order() * total.order))
        total = embed_into(total, total.order)
    return total


def test_character_sum_identity():
    assert as_rational(_conductor_sum(3, 2, 4)) == -2
    assert as_rational(_conductor_sum(3, 2, 10)) == 4
    for p, a in ((2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (3, 4)):
        count = len(enumerate_characters(p ** a, conductor=p ** a))
        assert as_rational(_conductor_sum(p, a, 1)) == count


def test_labels_roundtrip():
    for N in (1, 4, 9, 12, 40):
        for chi in enumerate_characters(N):
            lab = chi.label()
            mod, q = lab.split(".")
            assert int(mod) == N
            back = from_label(lab)
            assert back.key() == chi.key()


def test_eval_inv():
    chi = from_conrey(9, 2)
    x = 5
    xin = pow(x, -1, 9)
    assert equals(chi.eval_inv(x), chi.eval(xin))
    with pytest.raises(ValueError):
        chi.eval_inv(3)
