from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsu3.qnum import (
    DomainError, HalfInt, QValue, Radical, format_exact, half, q_factorial, q_int, q_pow,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicands = st.integers(min_value=1, max_value=40)
q_values = st.sampled_from(["1/2", "7/10", "1", "2", "3/5", "5/3"])


def radical(terms):
    out = Radical(0)
    for c, r in terms:
        out = out + Radical.sqrt_of(r) * c
    return out


radicals = st.lists(st.tuples(rationals, radicands), max_size=3).map(radical)


def test_q_int_examples():
    assert q_int(0, QValue(0.7)) == 0
    for q in (QValue(0.7), QValue(2.0), QValue("3/5", "exact")):
        assert q_int(1, q) == 1
    assert q_int(2, QValue(2.0)) == pytest.approx(2.5)
    assert q_int(2, QValue(2, "exact")) == Radical(Fraction(5, 2))


def test_q_int_half_integer_argument():
    q = QValue(4.0)
    assert q_int(Fraction(1, 2), q) == pytest.approx((2 - 0.5) / (4 - 0.25))


def test_q_factorial_examples():
    assert q_factorial(0, QValue(0.7)) == 1
    assert q_factorial(3, QValue(1.0)) == 6
    assert q_factorial(3, QValue(2.0)) == pytest.approx(13.125)
    assert q_factorial(3, QValue(2, "exact")) == Radical(Fraction(105, 8))


def test_q_pow_examples():
    assert q_pow(QValue(0.7), 0) == 1
    assert q_pow(QValue(4, "exact"), Fraction(1, 2)) == Radical(2)
    assert q_pow(QValue(2.0), -2) == pytest.approx(0.25)


def test_exact_backend_rejects_irrational_q():
    with pytest.raises(DomainError):
        QValue(0.1234567891234, "exact")
    with pytest.raises(DomainError):
        QValue("pi", "exact")
    with pytest.raises(DomainError):
        QValue(-1.0)


def test_half_parsing():
    assert half("3/2") == Fraction(3, 2)
    assert half(2) == 2
    assert str(HalfInt("-5/2")) == "-5/2"
    for bad in ("1/3", "x", 0.25):
        with pytest.raises(DomainError):
            half(bad)


def test_radical_canonical_string():
    x = Radical.parse("-3/7*sqrt(2/5)")
    assert str(x) == "-3/35*sqrt(10)"
    assert Radical.parse(str(x)) == x
    assert format_exact(Radical(0)) == "0"


def test_sqrt_leaves_field():
    with pytest.raises(DomainError):
        (Radical(1) + Radical.sqrt_of(2)).sqrt()
    assert Radical(Fraction(9, 4)).sqrt() == Radical(Fraction(3, 2))


@given(radicals)
def test_radical_round_trip(x):
    assert Radical.parse(str(x)) == x


@given(radicals, radicals, radicals)
@settings(max_examples=60)
def test_radical_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - a == Radical(0)
    if b:
        assert (a / b) * b == a


@given(radicals)
def test_radical_float_and_sign(x):
    f = float(x)
    assert x.sign() == (f > 0) - (f < 0) or abs(f) < 1e-12


@given(st.integers(min_value=-12, max_value=12), q_values)
def test_q_int_recursion_and_symmetry(n, qs):
    q = QValue(qs, "exact")
    assert q_int(n, q) == -q_int(-n, q)
    assert q_int(n, q) == q_int(n, q.inverse())
    s = q_int(2, q)
    assert q_int(n + 1, q) == s * q_int(n, q) - q_int(n - 1, q)


@given(st.integers(min_value=0, max_value=10), q_values)
def test_float_and_exact_agree(n, qs):
    qe, qf = QValue(qs, "exact"), QValue(float(Fraction(qs)))
    assert float(q_factorial(n, qe)) == pytest.approx(q_factorial(n, qf), rel=1e-12)
    assert float(q_pow(qe, Fraction(n, 2))) == pytest.approx(q_pow(qf, Fraction(n, 2)), rel=1e-12)
