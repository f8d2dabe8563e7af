from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enda.errors import (
    DivisionByZero,
    LiteralSyntaxError,
    NonCanonicalCoefficient,
    NotAUnit,
    NotIrreducible,
    UnsupportedDomain,
    WrongRing,
)
from enda.ring import (
    QQ,
    ZW,
    GaloisField,
    PrimeField,
    RingAutomorphism,
    Z,
    exact_div,
    gcd,
    norm,
    parse_ring,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
F9 = parse_ring("F9=F3[t]/(t^2+1)")
F8 = parse_ring("F8=F2[t]/(t^3+t+1)")

FINITE = [F2, F3, F5, F9, F8]
ALL = [Z, QQ, ZW, *FINITE]


def element(R):
    if R is Z:
        return st.integers(-50, 50)
    if R is QQ:
        return st.fractions(max_denominator=20).filter(lambda q: abs(q) < 100)
    if R is ZW:
        return st.tuples(st.integers(-20, 20), st.integers(-20, 20))
    return st.sampled_from(list(R.elements()))


@st.composite
def ring_and_triple(draw, rings=tuple(ALL)):
    R = draw(st.sampled_from(rings))
    e = element(R)
    return R, draw(e), draw(e), draw(e)


@given(ring_and_triple())
def test_commutative_ring_axioms(data):
    R, a, b, c = data
    assert R.add(a, b) == R.add(b, a)
    assert R.mul(a, b) == R.mul(b, a)
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.neg(a)) == R.zero
    assert R.mul(a, R.one) == a


@given(ring_and_triple())
def test_no_zero_divisors(data):
    R, a, b, _ = data
    if not R.is_zero(a) and not R.is_zero(b):
        assert not R.is_zero(R.mul(a, b))


@given(ring_and_triple())
def test_automorphisms_respect_operations(data):
    R, a, b, _ = data
    for phi in R.automorphisms():
        assert phi.apply(R.add(a, b)) == R.add(phi.apply(a), phi.apply(b))
        assert phi.apply(R.mul(a, b)) == R.mul(phi.apply(a), phi.apply(b))
        assert phi.inverse().apply(phi.apply(a)) == a


@given(st.tuples(st.integers(-30, 30), st.integers(-30, 30)), st.tuples(st.integers(-30, 30), st.integers(-30, 30)))
def test_norm_is_multiplicative(a, b):
    assert ZW.norm(ZW.mul(a, b)) == ZW.norm(a) * ZW.norm(b)
    assert ZW.norm(a) == a[0] ** 2 + 5 * a[1] ** 2


@given(st.sampled_from(FINITE), st.data())
def test_field_inverse(R, data):
    a = data.draw(st.sampled_from([x for x in R.elements() if not R.is_zero(x)]))
    assert R.mul(a, R.inv(a)) == R.one


def test_finite_field_sizes_and_units():
    assert len(list(F9.elements())) == 9
    assert len(F9.units()) == 8
    assert len(list(F8.elements())) == 8
    assert F9.characteristic == 3


def test_frobenius_on_f9():
    t = F9.parse_element("t")
    frob = RingAutomorphism.from_label(F9, "frobenius^1")
    assert frob.apply(t) == F9.pow(t, 3)
    assert frob.apply(t) == F9.neg(t)
    assert frob.order == 2
    assert frob.compose(frob).label == "identity"


def test_conjugation_on_quadratic_ring():
    conj = [a for a in ZW.automorphisms() if a.kind == "conjugation"][0]
    assert conj.apply((1, 1)) == (1, -1)
    assert [a.label for a in Z.automorphisms()] == ["identity"]


def test_units():
    assert Z.units() == [1, -1]
    assert ZW.is_unit((-1, 0)) and not ZW.is_unit((1, 1))
    assert not Z.is_unit(2)
    with pytest.raises(NotAUnit):
        Z.inv(2)
    with pytest.raises(DivisionByZero):
        QQ.inv(Fraction(0))


def test_exact_division_and_gcd():
    assert exact_div(Z(6), Z(4)) is None
    assert exact_div(Z(6), Z(3)) == Z(2)
    assert gcd(Z(6), Z(4)) == Z(2)
    assert ZW.exact_div((6, 0), (1, 1)) == (1, -1)
    assert ZW.exact_div((2, 0), (1, 1)) is None
    with pytest.raises(UnsupportedDomain):
        ZW.gcd((1, 0), (2, 0))


def test_norm_wrapper():
    assert norm(ZW((1, 1))) == Z(6)
    with pytest.raises(WrongRing):
        norm(Z(3))


def test_elements_with_norm_dividing():
    found = set(ZW.elements_with_norm_dividing(6))
    assert (1, 1) in found and (1, -1) in found and (1, 0) in found
    assert all(6 % ZW.norm(x) == 0 for x in found)
    # nothing has norm 2 or 3
    assert not any(ZW.norm(x) in (2, 3) for x in found)


@pytest.mark.parametrize(
    "spec",
    ["Z", "Q", "F2", "F3", "F7", "Z[sqrt(-5)]", "F9=F3[t]/(t^2+1)", "F8=F2[t]/(t^3+t+1)"],
)
def test_ring_literal_round_trip(spec):
    R = parse_ring(spec)
    assert parse_ring(R.spec) == R


@pytest.mark.parametrize("spec", ["F4", "F1", "Zx", "F9=F3[t]/(t^3+1)", "F8=F4[t]/(t^2+1)"])
def test_bad_ring_literals(spec):
    with pytest.raises(LiteralSyntaxError):
        parse_ring(spec)


def test_reducible_modulus_rejected():
    with pytest.raises(NotIrreducible):
        parse_ring("F9=F3[t]/(t^2+2)")
    with pytest.raises(NotIrreducible):
        GaloisField(2, (1, 0, 1))


@given(ring_and_triple(rings=tuple(ALL)))
def test_element_literal_round_trip(data):
    R, a, _, _ = data
    assert R.parse_element(R.format(a), strict=True) == a


def test_non_canonical_element_literals():
    assert QQ.parse_element("2/4") == Fraction(1, 2)
    with pytest.raises(NonCanonicalCoefficient):
        QQ.parse_element("2/4", strict=True)
    with pytest.raises(NonCanonicalCoefficient):
        F3.parse_element("5", strict=True)
    assert ZW.format((1, -1)) == "1-1*w"


def test_ring_element_operators():
    a = ZW((1, 1))
    b = ZW((1, -1))
    assert a * b == ZW(6)
    assert a + b == ZW(2)
    assert a - 1 == ZW((0, 1))
    with pytest.raises(WrongRing):
        Z(1) + QQ(1)


@settings(max_examples=50)
@given(st.integers(0, 8), st.sampled_from(FINITE), st.data())
def test_pow_matches_repeated_mul(e, R, data):
    a = data.draw(st.sampled_from(list(R.elements())))
    acc = R.one
    for _ in range(e):
        acc = R.mul(acc, a)
    assert R.pow(a, e) == acc
