from __future__ import annotations

from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enda.bijection import random_recipe
from enda.endo import (
    Endo,
    EndoFamily,
    conjugated_family,
    find_standard_base,
    glue_endomorphism,
    random_automorphism,
    random_endo,
    satisfies_gluing,
    standard_endo,
    standard_endos,
    theta,
)
from enda.errors import NotAnAutomorphism, NotFromRecipe, NotMatrixUnits, UnsupportedVariety
from enda.ncpoly import AlgebraDescriptor, random_poly
from enda.ring import QQ, PrimeField, Z, parse_ring

F2 = PrimeField(2)
F3 = PrimeField(3)
F9 = parse_ring("F9=F3[t]/(t^2+1)")
RINGS = [Z, QQ, F2, F3, F9]


@st.composite
def nilpotent_algebra(draw, max_n=3):
    R = draw(st.sampled_from(RINGS))
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(2, 4))
    return AlgebraDescriptor.nilpotent(R, n, m), Random(draw(st.integers(0, 2**32)))


def test_inverse_of_a_nonlinear_automorphism():
    A = AlgebraDescriptor.nilpotent(Z, 2, 3)
    f = Endo.parse(A, ["x1 + x2*x1", "x2"])
    g = f.inverse()
    assert g.to_json() == ["x1 - x2*x1", "x2"]
    assert f @ g == Endo.identity(A)
    assert g @ f == Endo.identity(A)


def test_non_automorphisms():
    A = AlgebraDescriptor.nilpotent(Z, 2, 3)
    f = Endo.parse(A, ["2*x1", "x2"])
    assert not f.is_automorphism()
    with pytest.raises(NotAnAutomorphism):
        f.inverse()
    with pytest.raises(UnsupportedVariety):
        Endo.parse(AlgebraDescriptor.free(Z, 2), ["x1 + x2*x2", "x2"]).is_automorphism()


@settings(max_examples=40)
@given(nilpotent_algebra())
def test_composition_applies_right_factor_first(data):
    alg, rng = data
    f, g = random_endo(alg, rng), random_endo(alg, rng)
    a = random_poly(alg, rng, 4)
    assert (f @ g).apply(a) == f.apply(g.apply(a))


@settings(max_examples=40)
@given(nilpotent_algebra())
def test_endomorphisms_respect_products(data):
    alg, rng = data
    f = random_endo(alg, rng)
    a, b = random_poly(alg, rng, 4), random_poly(alg, rng, 4)
    assert f.apply(a * b) == f.apply(a) * f.apply(b)
    assert f.apply(a + b) == f.apply(a) + f.apply(b)


@settings(max_examples=40)
@given(nilpotent_algebra())
def test_linear_part_is_multiplicative(data):
    alg, rng = data
    f, g = random_endo(alg, rng), random_endo(alg, rng)
    assert (f @ g).linear_part_matrix() == f.linear_part_matrix() @ g.linear_part_matrix()


@settings(max_examples=40)
@given(nilpotent_algebra())
def test_random_automorphisms_invert(data):
    alg, rng = data
    f = random_automorphism(alg, rng)
    assert f.is_automorphism()
    g = f.inverse()
    assert f @ g == Endo.identity(alg)
    assert g @ f == Endo.identity(alg)


def test_standard_endos_are_matrix_units():
    A = AlgebraDescriptor.nilpotent(F3, 3, 3)
    fam = standard_endos(A)
    assert fam.is_matrix_unit_family()
    e12 = standard_endo(A, 1, 2)
    x1, x2, x3 = A.gens()
    assert e12.apply(x2) == x1 and e12.apply(x1).is_zero() and e12.apply(x3).is_zero()
    assert theta(A, [x2]).to_json() == ["x2", "x2", "x3"]


def test_broken_family_is_reported():
    A = AlgebraDescriptor.nilpotent(Z, 2, 3)
    fam = standard_endos(A)
    members = dict(fam.members)
    members[1, 2] = Endo.parse(A, ["0", "2*x1"])
    bad = EndoFamily(A, members)
    assert not bad.is_matrix_unit_family()
    with pytest.raises(NotMatrixUnits):
        find_standard_base(bad)


@pytest.mark.parametrize("kind", ["inner", "semi-inner", "mirror"])
@pytest.mark.parametrize("ring", [Z, F3, F9])
def test_standard_base_recovered_for_conjugated_families(kind, ring):
    rng = Random(7)
    A = AlgebraDescriptor.nilpotent(ring, 2, 4)
    s = random_recipe(A, rng, kind)
    fam = conjugated_family(s, A)
    assert fam.is_matrix_unit_family()
    base = find_standard_base(fam)
    assert base is not None
    for (i, j) in fam.keys():
        for k in range(1, 3):
            expected = base.base[i - 1] if j == k else A.zero()
            assert fam[i, j].apply(base.base[k - 1]) == expected


def test_family_json_round_trip():
    rng = Random(1)
    A = AlgebraDescriptor.nilpotent(F3, 2, 3)
    fam = conjugated_family(random_recipe(A, rng, "mirror"), A)
    again = EndoFamily.from_json(fam.to_json())
    assert all(again[k] == fam[k] for k in fam.keys())


def test_gluing_identity():
    rng = Random(5)
    A = AlgebraDescriptor.nilpotent(F3, 2, 3)
    s = random_recipe(A, rng, "semi-inner")
    fam = conjugated_family(s, A)
    alphas = [s.conjugate(random_endo(A, rng)) for _ in range(2)]
    alpha = glue_endomorphism(fam, alphas, (2, 1))
    assert satisfies_gluing(fam, alpha, alphas, (1, 2))
    with pytest.raises(NotFromRecipe):
        glue_endomorphism(EndoFamily(A, dict(fam.members)), alphas, (1, 2))
