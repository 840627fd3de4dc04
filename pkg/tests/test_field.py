import math

import pytest
from hypothesis import given, settings, strategies as st

from dwork_padic.field import (
    FieldError,
    build_field,
    enumerate_field,
    find_generator,
    fq_op,
    is_irreducible,
    poly_mulmod,
)

SMALL = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (5, 3)]


def test_prime_field_modulus():
    F = build_field(5, 1)
    assert F.q == 5
    assert F.f == (0, 1)
    assert [F.mul(a, b) for a, b in [(2, 3), (4, 4)]] == [1, 1]


def test_f9_modulus_is_x2_plus_1():
    # exhaustive scan: x^2, x^2+1 in (c1, c0) order; x^2 has the root 0
    assert build_field(3, 2).f == (1, 0, 1)


def test_f125_modulus():
    # x^3 + c always has a root mod 5 (cubing is bijective), x^3 + x = x(x^2+1)
    F = build_field(5, 3)
    assert F.f == (1, 1, 0, 1)
    for c in range(5):
        assert not is_irreducible((c, 0, 0, 1), 5)
    assert not is_irreducible((0, 1, 0, 1), 5)


@pytest.mark.parametrize("p,r", SMALL)
def test_modulus_irreducible_by_root_and_factor_scan(p, r):
    F = build_field(p, r)
    f = F.f
    assert len(f) == r + 1 and f[-1] == 1
    if r in (2, 3):
        # degree <= 3: irreducible iff no root
        assert all(sum(c * x ** i for i, c in enumerate(f)) % p for x in range(p))


def test_mul_x_by_x_in_f9():
    F = build_field(3, 2)
    x = F.encode([0, 1])
    assert x == 3
    assert F.mul(x, x) == 2
    assert poly_mulmod(x, x, 3, 2, F.f) == 2


@pytest.mark.parametrize("p,r,g", [(5, 1, 2), (7, 1, 3), (3, 2, 4)])
def test_generator(p, r, g):
    F = build_field(p, r)
    assert F.generator == g
    assert F.order(g) == F.q - 1


def test_f9_small_orders():
    F = build_field(3, 2)
    assert F.order(2) == 2
    assert F.order(3) == 4


@pytest.mark.parametrize("p,r", SMALL)
def test_generator_order_and_log_bijection(p, r):
    F = build_field(p, r)
    q = F.q
    assert F.pow(F.generator, q - 1) == 1
    assert sorted(F.log_table[1:]) == list(range(q - 1))
    for k in range(q - 1):
        assert F.dlog(F.pow(F.generator, k)) == k


def test_dlog_examples():
    F = build_field(5)
    assert F.dlog(1) == 0
    assert F.dlog(F.generator) == 1
    assert F.dlog(4) == 2
    with pytest.raises(FieldError):
        F.dlog(0)


def test_fq_op():
    F = build_field(3, 2)
    assert fq_op("mul", [3, 3], F) == 2
    assert fq_op("inv", [1], F) == 1
    assert fq_op("pow", [F.generator, F.q - 1], F) == 1
    assert fq_op("add", [1, 2], F) == 0
    assert fq_op("neg", [4], F) == F.encode([2, 2])
    with pytest.raises(ZeroDivisionError):
        fq_op("inv", [0], F)
    with pytest.raises(FieldError):
        fq_op("div", [1, 1], F)


def test_enumerate():
    assert [e.encoding for e in enumerate_field(build_field(5))] == [0, 1, 2, 3, 4]
    F9 = build_field(3, 2)
    assert [e.encoding for e in enumerate_field(F9)] == list(range(9))
    assert len(enumerate_field(build_field(5, 2))) == 25


def test_bad_parameters():
    with pytest.raises(FieldError):
        build_field(2, 1)
    with pytest.raises(FieldError):
        build_field(9, 1)
    with pytest.raises(FieldError):
        build_field(3, 30)
    with pytest.raises(FieldError):
        build_field(5, 1, generator=4)


def test_alternative_generator():
    F = build_field(7)
    second = find_generator(7, 1, F.f, skip=1)
    assert second == 5
    G = build_field(7, generator=second)
    assert G.generator == 5 and G.f == F.f
    assert list(F.generators()) == [3, 5]


def test_log_table_multiplication_matches_schoolbook():
    for p, r in SMALL:
        F = build_field(p, r)
        for a in range(F.q):
            for b in range(0, F.q, max(1, F.q // 17)):
                assert F.mul(a, b) == poly_mulmod(a, b, p, r, F.f)


def test_fqelem_operators():
    F = build_field(3, 2)
    x = F.elem(3)
    assert (x * x).encoding == 2
    assert (x + x + x).encoding == 0
    assert (x / x).encoding == 1
    assert (-x + x).encoding == 0
    assert (x ** 4).encoding == 1
    assert x.coeffs == (0, 1)
    assert (1 - x).encoding == F.encode([1, 2])


field_and_pair = st.sampled_from(SMALL).flatmap(
    lambda pr: st.tuples(st.just(pr), st.integers(1, pr[0] ** pr[1] - 1),
                         st.integers(1, pr[0] ** pr[1] - 1)))


@settings(max_examples=200, deadline=None)
@given(field_and_pair)
def test_dlog_is_a_homomorphism(case):
    (p, r), x, y = case
    F = build_field(p, r)
    assert F.dlog(F.mul(x, y)) == (F.dlog(x) + F.dlog(y)) % (F.q - 1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL).flatmap(
    lambda pr: st.tuples(st.just(pr), st.integers(0, pr[0] ** pr[1] - 1),
                         st.integers(0, pr[0] ** pr[1] - 1))))
def test_frobenius_is_additive(case):
    (p, r), x, y = case
    F = build_field(p, r)
    assert F.pow(F.add(x, y), p) == F.add(F.pow(x, p), F.pow(y, p))


@pytest.mark.parametrize("p,r,d", [(5, 1, 3), (7, 1, 5), (3, 1, 7), (3, 2, 5), (5, 3, 3)])
def test_dth_power_bijective_when_coprime(p, r, d):
    F = build_field(p, r)
    assert math.gcd(d, F.q - 1) == 1
    assert sorted(F.pow(x, d) for x in range(1, F.q)) == list(range(1, F.q))


def test_serialization():
    assert build_field(3, 2).to_json() == {"p": 3, "r": 2, "f": [1, 0, 1], "generator": 4}
