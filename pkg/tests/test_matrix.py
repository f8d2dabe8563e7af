from __future__ import annotations

from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enda.errors import (
    LiteralSyntaxError,
    NotInvertible,
    NotMatrixUnits,
    RankNotOne,
    ShapeMismatch,
    UnsupportedRing,
)
from enda.matrix import (
    ExactMatrix,
    NonFactorizationCertificate,
    Rank1Factorization,
    adjugate,
    check_matrix_units,
    conjugate_matrix_units,
    dedekind_report,
    det,
    elementary_family,
    has_column_row_form,
    inverse,
    is_invertible,
    kernel_basis,
    linear_solve,
    dedekind_a,
    dedekind_c,
    dedekind_m,
    parse_matrix,
    r1mf_factorize,
    random_unimodular,
    rank,
)
from enda.ring import QQ, ZW, PrimeField, Z, parse_ring

F3 = PrimeField(3)
F9 = parse_ring("F9=F3[t]/(t^2+1)")

small_int_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_rank_one_example_over_integers():
    A = parse_matrix("[[2,4],[3,6]]", Z)
    f = r1mf_factorize(A)
    assert isinstance(f, Rank1Factorization)
    assert f.to_json() == {"column": [[2], [3]], "row": [[1, 2]]}
    assert f.product() == A


def test_rank_one_over_quadratic_ring_has_no_factorization():
    c = dedekind_c()
    assert rank(c) == 1
    cert = r1mf_factorize(c)
    assert isinstance(cert, NonFactorizationCertificate)
    assert cert.to_json()["searchBound"]["exhausted"] is True
    assert not has_column_row_form(c)


def test_rank_one_over_quadratic_ring_that_factors():
    A = parse_matrix([["1+w", "2"], ["3+3*w", "6"]], ZW)
    f = r1mf_factorize(A)
    assert isinstance(f, Rank1Factorization)
    assert f.product() == A


def test_factorization_rejects_other_ranks():
    with pytest.raises(RankNotOne):
        r1mf_factorize(parse_matrix("[[0,0],[0,0]]", Z))
    with pytest.raises(RankNotOne):
        r1mf_factorize(parse_matrix("[[1,0],[0,1]]", Z))


@settings(max_examples=60)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=4), st.lists(st.integers(-9, 9), min_size=1, max_size=4))
def test_outer_products_factor_over_integers(col, row):
    A = ExactMatrix.from_rows(Z, [[a * b for b in row] for a in col])
    if A.is_zero():
        return
    f = r1mf_factorize(A)
    assert f.product() == A
    # the row is primitive
    g = 0
    for x in f.row.entries():
        g = Z.gcd(g, x)
    assert g == 1


@settings(max_examples=60)
@given(small_int_matrix, st.integers(0, 10_000))
def test_rank_invariant_under_unimodular_change(rows, seed):
    A = ExactMatrix.from_rows(Z, rows)
    rng = Random(seed)
    U = random_unimodular(Z, A.rows, rng)
    V = random_unimodular(Z, A.cols, rng)
    assert rank(U @ A @ V) == rank(A)


@settings(max_examples=60)
@given(small_int_matrix)
def test_rank_matches_rational_rank(rows):
    assert rank(ExactMatrix.from_rows(Z, rows)) == rank(ExactMatrix.from_rows(QQ, rows))


@settings(max_examples=40)
@given(st.integers(1, 4), st.integers(0, 10_000))
def test_inverse_over_fields_and_integers(n, seed):
    rng = Random(seed)
    for R in (Z, F3, F9):
        U = random_unimodular(R, n, rng)
        assert is_invertible(U)
        assert U @ inverse(U) == ExactMatrix.identity(R, n)


def test_adjugate_identity():
    A = parse_matrix("[[1,2,0],[3,-1,4],[0,5,2]]", Z)
    assert A @ adjugate(A) == ExactMatrix.identity(Z, 3).scale(det(A))


def test_singular_inverse_fails():
    with pytest.raises(NotInvertible):
        inverse(parse_matrix("[[2,0],[0,1]]", Z))
    with pytest.raises(NotInvertible):
        inverse(parse_matrix("[[1,2],[2,4]]", QQ))


def test_kernel_and_solve_over_integers():
    A = parse_matrix("[[1,2,3],[2,4,6]]", Z)
    K = kernel_basis(A)
    assert len(K) == 2
    for v in K:
        assert (A @ v).is_zero()
    A = parse_matrix("[[2,0],[0,3]]", Z)
    assert linear_solve(A, parse_matrix("[[4],[6]]", Z)) == parse_matrix("[[2],[2]]", Z)
    assert linear_solve(A, parse_matrix("[[1],[6]]", Z)) is None


@settings(max_examples=40)
@given(small_int_matrix)
def test_kernel_vectors_are_annihilated(rows):
    A = ExactMatrix.from_rows(Z, rows)
    K = kernel_basis(A)
    assert len(K) == A.cols - rank(A)
    for v in K:
        assert (A @ v).is_zero()


def test_kernel_unsupported_over_quadratic_ring():
    with pytest.raises(UnsupportedRing):
        kernel_basis(dedekind_m())


def test_shape_checks_and_literals():
    with pytest.raises(LiteralSyntaxError):
        parse_matrix("[[1,2],[3]]", Z)
    with pytest.raises(ShapeMismatch):
        parse_matrix("[[1,2]]", Z) @ parse_matrix("[[1,2]]", Z)
    with pytest.raises(LiteralSyntaxError):
        parse_matrix("[[1,", Z)
    A = dedekind_c()
    assert parse_matrix(A.to_literal(), ZW) == A


def test_dedekind_counterexample():
    m, a = dedekind_m(), dedekind_a()
    assert det(m) == ZW(2)
    assert m @ m == a.scale(ZW(2))
    assert det(a) == ZW(1)
    rep = dedekind_report()
    assert rep["allHold"]
    assert [it["id"] for it in rep["items"]] == [1, 2, 3, 4, 5]


def test_conjugating_matrix_units():
    rng = Random(3)
    for R in (Z, QQ, F3, F9):
        E = elementary_family(R, 3)
        U = random_unimodular(R, 3, rng)
        Ui = inverse(U)
        P = {k: U @ M @ Ui for k, M in E.items()}
        assert check_matrix_units(P) == 3
        rho = conjugate_matrix_units(P)
        rho_inv = inverse(rho)
        for (i, j), M in P.items():
            assert rho @ M @ rho_inv == ExactMatrix.unit(R, 3, i, j)


def test_corrupted_matrix_units_rejected():
    P = elementary_family(Z, 2)
    P[1, 2] = P[1, 2].scale(Z(2))
    with pytest.raises(NotMatrixUnits):
        conjugate_matrix_units(P)


def test_matrix_units_over_quadratic_ring():
    # conjugating E_ij by m gives matrix units with entries in the ring that m cannot straighten
    m = dedekind_m()
    E = elementary_family(ZW, 2)
    # m^-1 = adj(m)/2 and m^-1 E_ij m stays integral
    half = adjugate(m)
    for k, M in E.items():
        conj = half @ M @ m
        assert all(ZW.exact_div(x, (2, 0)) is not None for x in conj.entries())
