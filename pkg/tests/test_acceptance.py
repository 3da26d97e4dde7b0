"""One test per acceptance criterion, each printing its pass/fail line.

The suite runs once per session; every test reports and asserts its own
criterion.  Two criteria fail by design of double-precision arithmetic
and are left failing rather than weakened; their detail strings say
exactly why.  See the README for the full discussion.
"""

import pytest

from qcstar import acceptance

CRITERION_IDS = [ident for ident, _, _, _ in acceptance.CRITERIA]


@pytest.fixture(scope="module")
def results():
    found = acceptance.run_all()
    return {r.ident: r for r in found}


def report(results, ident):
    r = results[ident]
    print(r.line())
    assert r.passed, r.detail
    assert r.seconds <= r.budget_seconds


def test_criteria_cover_the_whole_list():
    assert CRITERION_IDS == ["1", "2", "3a", "3b", "4", "5", "6", "7",
                             "8", "9"]
    assert set(acceptance.EXPECTED_FAILURES) == {"3b", "7"}


def test_criterion_1_k_groups(results):
    report(results, "1")


def test_criterion_2_morphisms(results):
    report(results, "2")


def test_criterion_3a_relation_residuals(results):
    report(results, "3a")


def test_criterion_3b_residual_decay(results):
    report(results, "3b")


def test_criterion_4_spectrum(results):
    report(results, "4")


def test_criterion_5_independence_and_recovery(results):
    report(results, "5")


def test_criterion_6_smith_normal_form_suite(results):
    report(results, "6")


def test_criterion_7_rewriting_soundness(results):
    report(results, "7")


def test_criterion_8_ideal_lattices(results):
    report(results, "8")


def test_criterion_9_fixed_points(results):
    report(results, "9")
