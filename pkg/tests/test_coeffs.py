import random

import pytest

from qorbit.coeffs import (CoeffError, ParameterCollisionError, PoleError,
                           QCoeff, arith, c, d, one, q, qpow, zero)


def test_multiplication_example():
    assert q * q == qpow(2)


def test_inverse_cancellation():
    a = one / (qpow(-1) - q)
    assert a * (qpow(-1) - q) == one


def test_gcd_reduction_to_zero():
    # (q - q^3)/(1 - q^2) reduces to q, checked by brute polynomial division
    x = (q - q ** 3) / (one - q ** 2)
    assert (x - q).is_zero()


def test_arith_dispatch():
    assert arith(q, q, "mul") == q ** 2
    assert arith(q, q, "sub").is_zero()
    assert arith(one, q, "div") == qpow(-1)
    with pytest.raises(ValueError):
        arith(q, q, "pow")


def test_division_by_zero_signals_collision():
    with pytest.raises(ParameterCollisionError):
        one / (q - q)
    with pytest.raises(ParameterCollisionError):
        arith(one, zero, "div")


def test_evaluate_basics():
    assert (q ** 2).evaluate(0.5) == pytest.approx(0.25)
    v = (c / d).evaluate(0.5, c0=0.5 ** 0.5, d0=0.5 ** -0.5)
    assert v == pytest.approx(0.5)


def test_evaluate_requires_q_in_unit_interval():
    with pytest.raises(ValueError):
        (q ** 2).evaluate(1.5)


def test_pole_error_names_denominator():
    bad = one / (c - q * d)
    with pytest.raises(PoleError) as err:
        bad.evaluate(0.5, c0=1.0, d0=2.0)
    assert "q*d-c" in str(err.value) or "c" in str(err.value)


def test_numeric_kind_and_mixing():
    z = QCoeff.numeric(1 + 2j)
    assert (z * z).value == pytest.approx((1 + 2j) ** 2)
    # rational constants demote to numeric transparently
    assert (QCoeff.rational(1, 2) + z).value == pytest.approx(1.5 + 2j)
    with pytest.raises(CoeffError):
        q + z


def _random_coeff(rng):
    t = zero
    for _ in range(rng.randint(1, 3)):
        t = t + (QCoeff.rational(rng.randint(-4, 4))
                 * q ** rng.randint(0, 3)
                 * c ** rng.randint(0, 1)
                 * d ** rng.randint(0, 1))
    return t


def test_field_axioms_exact_1000_triples():
    rng = random.Random(20260809)
    for _ in range(1000):
        a, b, e = _random_coeff(rng), _random_coeff(rng), _random_coeff(rng)
        assert ((a + b) + e) == (a + (b + e))
        assert a + b == b + a
        assert a * b == b * a
        assert (a * (b + e)) == (a * b + a * e)
        assert (a + (-a)).is_zero()
        if not b.is_zero():
            assert (a / b) * b == a
            assert (b / b) == one


def test_evaluate_is_field_homomorphism():
    rng = random.Random(7)
    pt = dict(q0=0.37, c0=0.8 + 0.1j, d0=1.25 - 0.15625j)
    for _ in range(60):
        a, b = _random_coeff(rng), _random_coeff(rng)
        va, vb = a.evaluate(**pt), b.evaluate(**pt)
        assert (a * b).evaluate(**pt) == pytest.approx(va * vb, rel=1e-12, abs=1e-12)
        assert (a + b).evaluate(**pt) == pytest.approx(va + vb, rel=1e-12, abs=1e-12)


def test_serialization_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        a = _random_coeff(rng)
        b = _random_coeff(rng)
        if b.is_zero():
            continue
        x = a / b
        assert QCoeff.parse(str(x)) == x
    assert str((one - q ** 2) / q) == "(-q^2+1)/(q)"
    assert QCoeff.parse("(1-q^2)/(q)") == (one - q ** 2) / q


def test_swap_cd():
    x = (c ** 2 + q * d) / (c - d)
    y = x.swap_cd()
    assert y == (d ** 2 + q * c) / (d - c)
    assert y.swap_cd() == x


def test_powers():
    assert (q ** -3) * q ** 3 == one
    assert ((one - q) ** 0) == one
