from __future__ import annotations

from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enda.errors import (
    AlgebraMismatch,
    GeneratorOutOfRange,
    LiteralSyntaxError,
    NonCanonicalCoefficient,
)
from enda.ncpoly import (
    AlgebraDescriptor,
    classify_distributive,
    commutator,
    distributive_space,
    is_distributive,
    mirror,
    parse_poly,
    print_poly,
    random_poly,
    substitute,
    support_after_shift,
)
from enda.ring import QQ, ZW, PrimeField, Z, parse_ring

F2 = PrimeField(2)
F3 = PrimeField(3)
F9 = parse_ring("F9=F3[t]/(t^2+1)")
RINGS = [Z, QQ, F2, F3, F9, ZW]


@st.composite
def polys(draw, count=3, n=3, m=5):
    R = draw(st.sampled_from(RINGS))
    alg = AlgebraDescriptor.nilpotent(R, n, m)
    rng = Random(draw(st.integers(0, 2**32)))
    return alg, [random_poly(alg, rng, 5) for _ in range(count)]


def test_truncation_in_nilpotent_algebra():
    A = AlgebraDescriptor.nilpotent(Z, 2, 3)
    x1, x2 = A.gens()
    assert print_poly((x1 + x2) ** 2) == "x1*x1 + x1*x2 + x2*x1 + x2*x2"
    assert ((x1 + x2) ** 3).is_zero()
    assert print_poly(commutator(x1, x2)) == "x1*x2 - x2*x1"


def test_canonical_printing():
    A = AlgebraDescriptor.nilpotent(Z, 2, 3)
    assert print_poly(parse_poly("3*x2*x1 - x1 + (-2)*x2", A)) == "-x1 - 2*x2 + 3*x2*x1"
    B = AlgebraDescriptor.free(ZW, 2)
    assert print_poly(parse_poly("(1+1*w)*x1 + (-1*w)*x2*x1", B)) == "(1+1*w)*x1 - (1*w)*x2*x1"
    assert print_poly(A.zero()) == "0"


@pytest.mark.parametrize(
    "ring, text",
    [(F3, "5*x1"), (QQ, "(2/4)*x1"), (F9, "(t^2)*x1")],
)
def test_non_canonical_coefficients_rejected(ring, text):
    with pytest.raises(NonCanonicalCoefficient):
        parse_poly(text, AlgebraDescriptor.free(ring, 2))


def test_malformed_literals():
    A = AlgebraDescriptor.nilpotent(Z, 2, 3)
    with pytest.raises(LiteralSyntaxError):
        parse_poly("1 + x1", A)
    with pytest.raises(LiteralSyntaxError):
        parse_poly("x1*", A)
    with pytest.raises(GeneratorOutOfRange):
        parse_poly("x3", A)


@given(polys(count=1))
def test_print_parse_round_trip(data):
    alg, (f,) = data
    assert parse_poly(print_poly(f), alg) == f


@given(polys())
def test_associativity_and_distributivity(data):
    _, (a, b, c) = data
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(polys(count=2))
def test_product_is_graded(data):
    alg, (a, b) = data
    for i in range(1, alg.m):
        for j in range(1, alg.m - i):
            lhs = (a.homogeneous_component(i) * b.homogeneous_component(j)).homogeneous_component(i + j)
            assert lhs == a.homogeneous_component(i) * b.homogeneous_component(j)
    assert (a * b).linear_part().is_zero()


@given(polys(count=2))
def test_mirror_is_an_involutive_anti_automorphism(data):
    _, (a, b) = data
    assert mirror(mirror(a)) == a
    assert mirror(a * b) == mirror(b) * mirror(a)
    assert mirror(a + b) == mirror(a) + mirror(b)


@settings(max_examples=50)
@given(polys(count=3, n=2))
def test_substitution_is_a_homomorphism(data):
    alg, (a, b, c) = data
    images = [b, c]
    assert substitute(a * b, images) == substitute(a, images) * substitute(b, images)
    assert substitute(a + c, images) == substitute(a, images) + substitute(c, images)


def test_substitution_needs_every_image():
    F = AlgebraDescriptor.free(Z, 3)
    y1, y2, y3 = F.gens()
    assert print_poly(substitute(y1 * y2, [y1 + y3, y2, y3])) == "x1*x2 + x3*x2"
    with pytest.raises(AlgebraMismatch):
        substitute(y1 * y2, [y1, y2])


def test_shifted_supports():
    A = AlgebraDescriptor.free(Z, 2)
    x1, x2 = A.gens()
    assert support_after_shift(x1 * x2) == frozenset({(1, 2), (3, 2)})
    assert support_after_shift(x1 * x2, 2) == frozenset({(1, 2), (1, 3)})


def test_distributive_polynomials():
    for R in (F2, Z, F3):
        assert [print_poly(p) for p in distributive_space(R, 3)] == ["x1*x2", "x2*x1"]
    A = AlgebraDescriptor.free(Z, 2)
    x1, x2 = A.gens()
    P = x1 * x2 + (x2 * x1).scale(3)
    assert is_distributive(P)
    assert classify_distributive(P) == (Z(1), Z(3))
    assert not is_distributive(x1 * x1 * x2)
    assert classify_distributive(x1 * x1) is None


def test_algebra_descriptor_json_round_trip():
    A = AlgebraDescriptor.nilpotent(F9, 3, 4)
    assert AlgebraDescriptor.from_json(A.to_json()) == A
    assert A.is_nilpotent and A.bound == 4
    assert all(1 <= len(w) < 4 for w in A.words())
