import random
from fractions import Fraction

import pytest

from dwork_padic.field import build_field
from dwork_padic.gauss import PiGraded, gauss_fractions, gauss_sum, pi_mul
from dwork_padic.padic import PrecisionError, ZqApprox, gamma_p


def test_trivial_character():
    F = build_field(5)
    g = gauss_sum(F, 0, 4)
    assert g.grade == 0
    assert g.unit == -1


def test_quadratic_character_q5():
    F = build_field(5)
    g = gauss_sum(F, 2, 4)
    assert g.grade == 2
    assert g.unit == ZqApprox.scalar(F, 4, -gamma_p(Fraction(1, 2), 5, 4).residue)


def test_product_q5_k1():
    F = build_field(5)
    prod = gauss_sum(F, 1, 4) * gauss_sum(F, 3, 4)
    assert prod.grade == 0
    assert prod.unit == -5


def test_fold_rule():
    F = build_field(7)
    u = ZqApprox.scalar(F, 3, 10)
    out = pi_mul(PiGraded(1, u), PiGraded(F.p - 2, ZqApprox.scalar(F, 3, 1)))
    assert out == PiGraded(0, u * (-7))
    one = PiGraded.one(F, 3)
    x = PiGraded(4, u)
    assert x * one == x and one * x == x


def test_normalization_range():
    F = build_field(5)
    g = PiGraded(9, ZqApprox.scalar(F, 5, 1))
    assert g.grade == 1
    assert g.unit == 25
    with pytest.raises(ValueError):
        PiGraded(-1, ZqApprox.scalar(F, 5, 1))


def test_associativity_random():
    F = build_field(3, 2)
    rng = random.Random(3)
    for _ in range(30):
        a, b, c = (PiGraded(rng.randrange(6), ZqApprox(F, 4, [rng.randrange(81), rng.randrange(81)]))
                   for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_precision_mismatch():
    F = build_field(5)
    with pytest.raises(PrecisionError):
        PiGraded.one(F, 3) * PiGraded.one(F, 4)


@pytest.mark.parametrize("p,r", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (5, 3)])
def test_grade_integrality(p, r):
    F = build_field(p, r)
    for a in range(F.q - 1):
        total = (p - 1) * sum(gauss_fractions(F, a))
        assert total.denominator == 1


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (3, 2)])
def test_conjugate_products(p, r):
    F = build_field(p, r)
    M = 4
    for k in range(1, F.q - 1):
        prod = gauss_sum(F, k, M) * gauss_sum(F, -k, M)
        assert prod == PiGraded(0, ZqApprox.scalar(F, M, F.q * (-1) ** k))


def test_serialization():
    F = build_field(5)
    assert gauss_sum(F, 0, 2).to_json() == {"grade": 0, "unit_coeffs": ["24"]}
