"""Acceptance gate: every numbered self-check must pass.

Each test prints its criterion's one-line verdict so a plain pytest
run shows the full scoreboard, then asserts the criterion passed.
"""

from __future__ import annotations

import pytest

from polpath import protocol, verify


@pytest.fixture(scope="module")
def report(tmp_path_factory):
    out = tmp_path_factory.mktemp("verify_out")
    return verify.run_all(str(out), seed=protocol.DEFAULT_SEED)


def _check(report, capsys, number):
    res = next(r for r in report.results if r.number == number)
    with capsys.disabled():
        print(res.line)
    assert res.passed, res.line


def test_criterion_01_constant_detection_ratio(report, capsys):
    _check(report, capsys, 1)


def test_criterion_02_far_measurement_subcase_curves(report, capsys):
    _check(report, capsys, 2)


def test_criterion_03_scaled_gate_average_identity(report, capsys):
    _check(report, capsys, 3)


def test_criterion_04_shifter_two_setting_ratio(report, capsys):
    _check(report, capsys, 4)


def test_criterion_05_order_independence(report, capsys):
    _check(report, capsys, 5)


def test_criterion_06_averaged_curve_separation(report, capsys):
    _check(report, capsys, 6)


def test_criterion_07_pulsed_interference_statistics(report, capsys):
    _check(report, capsys, 7)


def test_criterion_08_arm_interference_gate_yields(report, capsys):
    _check(report, capsys, 8)


def test_criterion_09_link_layer_bit_error_rates(report, capsys):
    _check(report, capsys, 9)


def test_criterion_10_repeat_run_byte_identity(report, capsys):
    _check(report, capsys, 10)


def test_all_criteria_present(report):
    assert [r.number for r in report.results] == list(range(1, 11))
