from __future__ import annotations

import pytest

from enda.errors import PrerequisiteFailed, UnsupportedRing, WrongDegree
from enda.gsolve import (
    REFLECTION,
    brute_force_solutions,
    free2,
    power_solution,
    reflect,
    reflection_check,
    solve_g_system,
    unknown_basis,
    verify_candidate,
)
from enda.ncpoly import parse_poly, print_poly
from enda.ring import QQ, ZW, PrimeField, Z

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def test_solution_over_f2_with_m_3():
    S = solve_g_system(F2, 3)
    assert S.to_json() == {"ring": "F2", "m": 3, "dimension": 1, "basis": ["x1*x2 + x2*x1"]}


@pytest.mark.parametrize("ring", [F2, F3, F5, Z, QQ])
@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_dimension_pattern(ring, m):
    expected = 1 if (m % 2 == 0 or ring.characteristic == 2) else 0
    assert solve_g_system(ring, m).dimension == expected


@pytest.mark.parametrize("ring, m", [(F2, 3), (F2, 4), (F3, 3), (F3, 4)])
def test_solver_agrees_with_brute_force(ring, m):
    assert solve_g_system(ring, m).span() == brute_force_solutions(ring, m)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_power_solution_spans_when_nonzero(m):
    for ring in (F2, F3, F5):
        g = power_solution(ring, m)
        S = solve_g_system(ring, m)
        if S.dimension:
            assert verify_candidate(g, ring, m).ok
            assert g in S.span()


def test_candidate_checks():
    A = free2(Z)
    check = verify_candidate(parse_poly("x1*x2", A), Z, 3)
    assert not check.ok
    assert check.witness == "x2*x1"
    assert not verify_candidate(parse_poly("x1*x2 + x2*x1", A), Z, 3).ok
    with pytest.raises(WrongDegree):
        verify_candidate(parse_poly("x1*x2", A), Z, 4)


def test_reflection_cubes_to_minus_identity():
    def mul(A, B):
        return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2))

    sq = mul(REFLECTION, REFLECTION)
    assert sq != ((1, 0), (0, 1))
    assert mul(sq, REFLECTION) == ((-1, 0), (0, -1))


@pytest.mark.parametrize("ring, m", [(F2, 3), (F2, 4), (F2, 5), (F3, 4), (F5, 4), (Z, 4), (QQ, 6)])
def test_solutions_are_reflection_invariant(ring, m):
    for g in solve_g_system(ring, m).basis:
        rep = reflection_check(g, m)
        assert rep.holds
        assert reflect(g) == g


def test_reflection_check_needs_a_solution():
    with pytest.raises(PrerequisiteFailed):
        reflection_check(parse_poly("x1*x2", free2(F2)), 3)


def test_unknowns_and_unsupported_rings():
    basis = unknown_basis(F2, 4)
    assert len(basis) == 4
    assert print_poly(basis[0]) == "x1*x1*x1 + x2*x2*x2"
    with pytest.raises(UnsupportedRing):
        solve_g_system(ZW, 3)
