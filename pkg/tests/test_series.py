import random
from fractions import Fraction
from math import inf, isinf

import pytest
from hypothesis import given, strategies as st

from tropquartic.series import (
    ONE,
    ZERO,
    NotASquare,
    PrecisionExhausted,
    PuiseuxSeries,
    rational,
    t_power,
)


def S(*pairs, trunc=inf):
    return PuiseuxSeries(pairs, trunc)


def test_val_basic():
    assert S((2, 1), (3, 1)).val() == 2
    # (1 + t) - 1 = t
    assert (S((0, 1), (1, 1)) - 1).val() == 1
    assert S((-3, 1), (0, 1)).val() == -3


def test_val_exact_zero_is_infinite():
    assert isinf(ZERO.val())


def test_val_precision_exhausted():
    s = S((0, 1), trunc=5) - S((0, 1), trunc=7)
    with pytest.raises(PrecisionExhausted):
        s.val()
    assert s.trunc == 5


def test_add_cancellation():
    assert S((0, 1), (2, -1)) + S((2, 1)) == ONE


def test_mul_monomials():
    a = Fraction(3, 2)
    b = Fraction(-1, 3)
    assert t_power(a) * t_power(b) == t_power(a + b)


def test_pow_binomial():
    assert (ONE + t_power(1)) ** 2 == S((0, 1), (1, 2), (2, 1))


def test_mul_trunc_propagation():
    s1 = S((1, 1), trunc=4)  # t + O(t^4)
    s2 = S((2, 1), trunc=3)  # t^2 + O(t^3)
    p = s1 * s2
    assert p.terms == ((Fraction(3), Fraction(1)),)
    # min(val1 + trunc2, val2 + trunc1) = min(1+3, 2+4) = 4
    assert p.trunc == 4


def test_inverse():
    s = ONE - t_power(1)
    inv = s.inverse(5)
    assert (s * inv).truncate(5) == ONE.truncate(5)
    assert t_power(Fraction(-3)).inverse() == t_power(3)


def test_sqrt_rational():
    assert rational(4).sqrt() == rational(2)


def test_sqrt_series():
    s = ONE + t_power(1, 2)  # 1 + 2t
    r = s.sqrt(2)
    # spec example: sqrt(1 + 2t) = 1 + t through order t^1
    assert r.below(2) == S((0, 1), (1, 1))
    assert (r * r).truncate(2) == s.truncate(2)


def test_sqrt_not_a_square():
    with pytest.raises(NotASquare):
        rational(2).sqrt()


def test_json_roundtrip():
    s = S((Fraction(-1, 2), Fraction(2, 3)), (1, 5), trunc=Fraction(7, 2))
    assert PuiseuxSeries.from_json(s.to_json()) == s
    assert PuiseuxSeries.from_json(ZERO.to_json()) == ZERO


def _random_series(rng, nterms=8):
    pairs = []
    for _ in range(nterms):
        e = Fraction(rng.randint(-6, 12), rng.choice([1, 2, 3]))
        c = Fraction(rng.randint(-9, 9), rng.choice([1, 2]))
        pairs.append((e, c))
    return PuiseuxSeries(pairs)


def test_ring_axioms_random():
    rng = random.Random(7)
    for _ in range(25):
        a, b, c = (_random_series(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_val_multiplicative_random():
    rng = random.Random(11)
    for _ in range(25):
        a, b = _random_series(rng), _random_series(rng)
        if a.terms and b.terms:
            assert (a * b).val() == a.val() + b.val()


def test_self_cancellation_never_fakes_valuation():
    rng = random.Random(13)
    for _ in range(10):
        a = _random_series(rng).truncate(20)
        z = a - a
        with pytest.raises(PrecisionExhausted):
            z.val()


@given(
    st.lists(
        st.tuples(st.integers(-8, 8), st.integers(-9, 9)), min_size=0, max_size=6
    )
)
def test_neg_is_additive_inverse(pairs):
    s = PuiseuxSeries(pairs)
    assert (s + (-s)) == ZERO
