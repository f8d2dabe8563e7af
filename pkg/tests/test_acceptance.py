"""Acceptance gate: every criterion at full sample size, one PASS/FAIL line each."""

from __future__ import annotations

import pytest

from enda import verify

CRITERIA = {
    1: verify.check_dedekind,
    2: verify.check_r1mf_integers,
    3: verify.check_g_system,
    4: verify.check_twist,
    5: verify.check_matrix_units,
    6: verify.check_standard_base,
    7: verify.check_distributive,
    8: verify.check_supports,
    9: verify.check_derivative_structure,
    10: verify.check_round_trip,
}


def test_criteria_table_matches_checks():
    assert [n for n, _ in verify.CHECKS] == sorted(CRITERIA)


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = CRITERIA[number](seed=0, scale=1.0)
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {result.line()}")
    assert result.ok, result.detail
