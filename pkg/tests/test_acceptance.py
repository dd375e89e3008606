"""End-to-end acceptance: one test per numbered check in
``affinequant.acceptance``, each printing its pass/fail line.

Run with ``pytest -v -s tests/test_acceptance.py`` to watch the lines as
they appear; the full suite captures them into the report instead.
"""

import pytest

from affinequant import acceptance


def _run(number):
    result = acceptance.run_check(number)
    print(result.line())
    assert result.passed, result.line()


def test_criterion_01_unitarity_and_homomorphism():
    _run(1)


def test_criterion_02_trace_formula():
    _run(2)


def test_criterion_03_thermal_resolution_constant():
    _run(3)


def test_criterion_04_weight_trace_normalization():
    _run(4)


def test_criterion_05_canonical_limit():
    _run(5)


def test_criterion_06_coherent_state_constants():
    _run(6)


def test_criterion_07_wigner_marginals():
    _run(7)


def test_criterion_08_lower_symbols():
    _run(8)


def test_criterion_09_half_oscillator():
    _run(9)


def test_criterion_10_covariance():
    _run(10)


def test_run_all_aggregates():
    # spot check the aggregate runner on two cheap criteria
    results, ok = acceptance.run_all(numbers=(5, 6))
    assert ok
    assert [r.number for r in results] == [5, 6]
    for r in results:
        assert r.line().startswith("PASS")
