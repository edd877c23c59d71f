"""Number theory primitives against brute-force oracles."""

from math import gcd

import pytest

from congnorm.numtheory import (
    ExactDivisor,
    carmichael_lambda,
    divisors,
    euler_phi,
    exact_divisor_product,
    exact_divisor_project,
    exact_divisors,
    square_part,
    valuation,
)


def brute_square_part(m):
    # largest square divisor by trial division
    best = 1
    s = 1
    while s * s <= m:
        if m % (s * s) == 0:
            best = s
        s += 1
    return best, m // (best * best)


def test_valuation_examples():
    assert valuation(2, 12) == 2
    assert valuation(3, 12) == 1
    assert valuation(5, 12) == 0
    with pytest.raises(ValueError):
        valuation(4, 12)
    with pytest.raises(ValueError):
        valuation(2, 0)


def test_square_part_examples():
    assert (square_part(12).s, square_part(12).t) == (2, 3)
    assert (square_part(1).s, square_part(1).t) == (1, 1)
    assert (square_part(720).s, square_part(720).t) == brute_square_part(720) == (12, 5)
    with pytest.raises(ValueError):
        square_part(0)


def test_square_part_sweep():
    for m in range(1, 10_001):
        sp = square_part(m)
        assert sp.s * sp.s * sp.t == m
        for p in range(2, 40):
            if p * p > sp.t:
                break
            assert sp.t % (p * p) != 0


def test_exact_divisors_examples():
    assert [d.mu for d in exact_divisors(12)] == [1, 3, 4, 12]
    assert [d.mu for d in exact_divisors(1)] == [1]
    assert [d.mu for d in exact_divisors(30)] == [1, 2, 3, 5, 6, 10, 15, 30]
    for n in range(1, 200):
        brute = [m for m in divisors(n) if gcd(m, n // m) == 1]
        assert [d.mu for d in exact_divisors(n)] == brute


def test_exact_divisor_product_examples():
    assert exact_divisor_product(ExactDivisor(12, 4), ExactDivisor(12, 3)).mu == 12
    assert exact_divisor_product(ExactDivisor(12, 4), ExactDivisor(12, 4)).mu == 1
    assert exact_divisor_product(ExactDivisor(12, 4), ExactDivisor(12, 12)).mu == 3
    with pytest.raises(ValueError):
        exact_divisor_product(ExactDivisor(12, 4), ExactDivisor(24, 3))


def test_exact_divisor_group_axioms():
    for n in range(1, 1001):
        divs = exact_divisors(n)
        for x in divs:
            assert exact_divisor_product(x, x).mu == 1
            for y in divs:
                xy = exact_divisor_product(x, y)
                assert xy.mu == exact_divisor_product(y, x).mu
                for z in divs:
                    left = exact_divisor_product(xy, z)
                    right = exact_divisor_product(x, exact_divisor_product(y, z))
                    assert left.mu == right.mu


def test_exact_divisor_project():
    assert exact_divisor_project(ExactDivisor(12, 12), 4) == {2}
    assert exact_divisor_project(ExactDivisor(12, 3), 4) == frozenset()
    assert exact_divisor_project(ExactDivisor(30, 15), 6) == {3}
    with pytest.raises(ValueError):
        exact_divisor_project(ExactDivisor(12, 3), 5)


def test_exact_divisor_project_homomorphism():
    for n in range(1, 1001):
        divs = exact_divisors(n)
        for d in divisors(n):
            for x in divs:
                for y in divs:
                    xy = exact_divisor_product(x, y)
                    assert exact_divisor_project(xy, d) == exact_divisor_project(
                        x, d
                    ) ^ exact_divisor_project(y, d)
            kernel = {x.mu for x in divs if not exact_divisor_project(x, d)}
            assert kernel == {x.mu for x in divs if gcd(x.mu, d) == 1}


def test_phi_lambda_examples():
    assert euler_phi(1) == 1 and carmichael_lambda(1) == 1
    assert carmichael_lambda(8) == 2
    assert carmichael_lambda(68) == 16


def test_phi_lambda_brute_sweep():
    for n in range(1, 2001):
        unit_list = [x for x in range(1, n + 1) if gcd(x, n) == 1]
        assert euler_phi(n) == len(unit_list)
        lam = carmichael_lambda(n)
        # exponent divides the group order, so scan divisors of the brute phi
        exponent = next(
            e for e in divisors(len(unit_list)) if all(pow(x, e, n) == 1 % n for x in unit_list)
        )
        assert lam == exponent
