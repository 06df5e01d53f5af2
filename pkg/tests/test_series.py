"""Exact arithmetic kernel tests: ring laws, series calculus, truncation."""

import random
from fractions import Fraction

import pytest

from bzk.series import (BadConstantTerm, OperatorPoly, OperatorSeries,
                        OrderMismatch, TPoly, USeries, binomial_power,
                        evaluate, series_exp, series_log, termwise_integrate)

T = TPoly((0, 1))
ONE = TPoly((1,))


def rand_fraction(rng, span=6):
    return Fraction(rng.randint(-span, span), rng.randint(1, 4))


def rand_tpoly(rng, degree=4):
    return TPoly([rand_fraction(rng) for _ in range(rng.randint(0, degree + 1))])


def rand_useries(rng, order, degree=2):
    return USeries(order, [rand_tpoly(rng, degree) for _ in range(order + 1)])


def test_tpoly_basics():
    p = TPoly((1, 2, 3))
    assert p.degree == 2
    assert p + TPoly((0, -2)) == TPoly((1, 0, 3))
    assert p * TPoly() == TPoly()
    assert TPoly((Fraction(4, 2),)) == TPoly((2,))
    assert (T - 1) * (T + 1) == TPoly((-1, 0, 1))
    assert str(TPoly((2, -1))) == "-t + 2"
    assert str(TPoly()) == "0"


def test_series_mul_examples():
    # (1 + u)(1 - u) at order 3 -> 1 - u^2
    a = USeries(3, [ONE, ONE])
    b = USeries(3, [ONE, -ONE])
    assert a * b == USeries(3, [ONE, TPoly(), -ONE])
    # identity matrix series times S
    rng = random.Random(7)
    mats = [OperatorPoly([[rand_tpoly(rng, 2) for _ in range(2)] for _ in range(2)]) for _ in range(4)]
    s = OperatorSeries(2, 3, mats)
    assert OperatorSeries.identity(2, 3) * s == s
    # ((1-t)u)^2 = (1 - 2t + t^2) u^2
    lin = USeries(3, [TPoly(), TPoly((1, -1))])
    assert lin * lin == USeries(3, [TPoly(), TPoly(), TPoly((1, -2, 1))])


def test_series_log_examples():
    # log(1 - u) at order 3
    s = USeries(3, [ONE, -ONE])
    assert series_log(s) == USeries(
        3, [TPoly(), -ONE, TPoly((Fraction(-1, 2),)), TPoly((Fraction(-1, 3),))]
    )
    assert series_log(OperatorSeries.identity(3, 4)).is_zero()
    with pytest.raises(BadConstantTerm):
        series_log(USeries(3, [TPoly((2,))]))


def test_exp_log_roundtrip_operator_series():
    rng = random.Random(11)
    for _ in range(5):
        mats = [OperatorPoly.identity(3)] + [
            OperatorPoly([[rand_tpoly(rng, 2) for _ in range(3)] for _ in range(3)])
            for _ in range(6)
        ]
        s = OperatorSeries(3, 6, mats)
        assert series_exp(series_log(s)) == s


def test_series_exp_examples():
    assert series_exp(USeries(2, [TPoly(), ONE])) == USeries(
        2, [ONE, ONE, TPoly((Fraction(1, 2),))]
    )
    assert series_exp(USeries(4)) == USeries.one(4)
    s = USeries(5, [ONE, -ONE])
    assert series_exp(series_log(s) * 2) == s * s
    with pytest.raises(BadConstantTerm):
        series_exp(USeries.one(3))


def test_exp_log_roundtrip_scalar_series():
    rng = random.Random(19)
    for _ in range(20):
        s = USeries(6, [ONE] + [rand_tpoly(rng, 2) for _ in range(6)])
        assert series_exp(series_log(s)) == s
        z = USeries(6, [TPoly()] + [rand_tpoly(rng, 2) for _ in range(6)])
        assert series_log(series_exp(z)) == z


def test_binomial_power_examples():
    # (1 - u^2)^(-1/2) at order 4 -> 1 + u^2/2 + 3 u^4 / 8
    s = USeries(4, [ONE, TPoly(), -ONE])
    assert binomial_power(s, Fraction(-1, 2)) == USeries(
        4, [ONE, TPoly(), TPoly((Fraction(1, 2),)), TPoly(), TPoly((Fraction(3, 8),))]
    )
    rng = random.Random(3)
    for _ in range(5):
        r = USeries(5, [ONE] + [rand_tpoly(rng, 2) for _ in range(5)])
        assert binomial_power(r, 0) == USeries.one(5)
        assert binomial_power(r, 2) == r * r


def test_binomial_power_additivity():
    rng = random.Random(17)
    exponents = [Fraction(1, 2), Fraction(-1, 2), Fraction(2, 3), Fraction(-3, 2), 2]
    for _ in range(10):
        s = USeries(5, [ONE] + [rand_tpoly(rng, 2) for _ in range(5)])
        a, b = rng.choice(exponents), rng.choice(exponents)
        lhs = binomial_power(s, Fraction(a) + Fraction(b))
        rhs = binomial_power(s, a) * binomial_power(s, b)
        assert lhs == rhs


def test_integration_examples():
    assert termwise_integrate(USeries.one(3)) == USeries(3, [TPoly(), ONE])
    cubic = termwise_integrate(USeries(3, [TPoly(), TPoly(), TPoly((3,))]))
    assert cubic == USeries(3, [TPoly(), TPoly(), TPoly(), ONE])
    rng = random.Random(23)
    s = rand_useries(rng, 6)
    back = termwise_integrate(s).derivative()
    for m in range(6):
        assert back.coefficient(m) == s.coefficient(m)


def test_evaluate_examples():
    assert evaluate(TPoly((0, 0, 2)), 0.5) == 0.5
    assert evaluate(USeries(2, [ONE, TPoly(), -ONE]), 0.0, 0.25) == 0.9375
    rng = random.Random(5)
    for _ in range(20):
        a = rand_useries(rng, 5)
        b = rand_useries(rng, 5)
        t, u = rng.uniform(-1, 1), rng.uniform(-0.5, 0.5)
        lhs = evaluate(a * b, t, u)
        rhs = evaluate(a, t, u) * evaluate(b, t, u)
        # truncation: subtract the exact contribution of dropped cross terms
        full = 0.0
        for i in range(6):
            for j in range(6):
                if i + j <= 5:
                    continue
                full += evaluate(a.coefficient(i), t) * evaluate(b.coefficient(j), t) * u ** (i + j)
        assert abs(lhs - (rhs - full)) <= 1e-12 * max(1.0, abs(lhs))


def test_ring_laws_tpoly():
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (rand_tpoly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_ring_laws_useries():
    rng = random.Random(2)
    for _ in range(200):
        a, b, c = (rand_useries(rng, 4, 2) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_truncation_coherence():
    rng = random.Random(13)
    for _ in range(30):
        a8 = rand_useries(rng, 8)
        b8 = rand_useries(rng, 8)
        direct = (a8.truncate(5)) * (b8.truncate(5))
        assert (a8 * b8).truncate(5) == direct
    assert series_log(USeries(8, [ONE, ONE])).truncate(4) == series_log(USeries(4, [ONE, ONE]))


def test_order_and_shape_errors():
    with pytest.raises(OrderMismatch):
        USeries.one(3) * USeries.one(4)
    with pytest.raises(OrderMismatch):
        USeries.one(3) + USeries.one(4)
    with pytest.raises(Exception):
        OperatorPoly([[ONE, ONE]])
    with pytest.raises(BadConstantTerm):
        USeries(3, [ONE, ONE]).exp()


def test_inverse():
    rng = random.Random(29)
    for _ in range(20):
        s = USeries(6, [ONE] + [rand_tpoly(rng, 2) for _ in range(6)])
        assert s * s.inverse() == USeries.one(6)


def test_json_roundtrip():
    rng = random.Random(31)
    s = rand_useries(rng, 5)
    data = s.to_json()
    assert all(isinstance(cell, str) and "/" in cell for row in data for cell in row)
    assert USeries.from_json(data) == s
