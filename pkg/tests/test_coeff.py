import random

import pytest

from tdga.coeff import (ABSENT, LAURENT, POLYNOMIAL, CoeffPoly,
                        RingDescriptor, coeff_from_text)

R1 = RingDescriptor(r=1)
R2 = RingDescriptor(r=2, uv_mode=LAURENT)


def rand_poly(ring, rng, nterms=4, span=3):
    out = CoeffPoly.zero(ring)
    for _ in range(nterms):
        exps = {}
        for name in ring.var_names:
            e = rng.randint(-span, span)
            if name in ("U", "V") and ring.uv_mode == POLYNOMIAL:
                e = abs(e)
            if e:
                exps[name] = e
        out = out + CoeffPoly.monomial(ring, rng.randint(-5, 5), exps)
    return out


def test_ring_axioms_random():
    rng = random.Random(1)
    for ring in (R1, R2):
        for _ in range(40):
            a, b, c = (rand_poly(ring, rng) for _ in range(3))
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a  # coefficients commute
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a - a == CoeffPoly.zero(ring)
            assert a * CoeffPoly.one(ring) == a


def test_canonical_idempotent():
    a = CoeffPoly.var(R1, "l1") - CoeffPoly.var(R1, "l1")
    assert a.is_zero() and a.terms == {}
    b = CoeffPoly(R1, {(0, 1, 0, 0): 1})  # exponent order l1, m1, U, V
    assert b == CoeffPoly.var(R1, "m1")


def test_polynomial_mode_rejects_negative_uv():
    with pytest.raises(ValueError):
        CoeffPoly.var(R1, "U", -1)
    CoeffPoly.var(R1, "l1", -1)  # lambda is Laurent everywhere
    CoeffPoly.var(R2, "U", -1)   # infinity ring allows it


def test_unit_monomial_and_inverse():
    m = CoeffPoly.monomial(R1, -1, {"l1": 2, "m1": -1})
    assert m.is_unit_monomial()
    assert m * m.inverse_monomial() == CoeffPoly.one(R1)
    assert not (CoeffPoly.one(R1) + m).is_monomial()
    with pytest.raises(ValueError):
        CoeffPoly.integer(R1, 2).inverse_monomial()


def test_text_round_trip():
    rng = random.Random(2)
    for ring in (R1, R2):
        for _ in range(30):
            a = rand_poly(ring, rng)
            assert coeff_from_text(ring, a.to_text()) == a
    assert coeff_from_text(R1, "0").is_zero()
    assert coeff_from_text(R1, "-1*l1^-1*m1^2*U").to_text() == "-1*l1^-1*m1^2*U"


def test_evaluate_mod():
    a = coeff_from_text(R1, "1*U+1*m1+1*l1+1*l1*m1*V")
    assert a.evaluate_mod(3, {"l1": -1, "m1": 1, "U": 0, "V": 0}) == 0
    assert a.evaluate_mod(3, {"l1": 1, "m1": 1, "U": 1, "V": 1}) == 1
    inv = CoeffPoly.var(R1, "l1", -1)
    assert inv.evaluate_mod(5, {"l1": 2, "m1": 1, "U": 0, "V": 0}) == 3  # 2^-1 mod 5


def test_substitute():
    target = RingDescriptor(r=1, uv_mode=ABSENT)
    a = coeff_from_text(R1, "1*U+1*m1+1*l1+1*l1*m1*V")
    assert a.substitute(target, {"U": 0, "V": 1}).to_text() == "1*m1+1*l1+1*l1*m1"


def test_sorted_term_order_is_stable():
    a = coeff_from_text(R1, "1*l1+1*m1+1*U")
    assert [t for t, _ in a.sorted_terms()] == sorted(t for t, _ in a.sorted_terms())
