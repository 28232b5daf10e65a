import io
import json
from fractions import Fraction

import pytest

from flintlab import (
    DegenerateInputError,
    DomainError,
    MpReal,
    compute_pi,
    seeded_thetas,
    verify_angle_difference,
    verify_iteration_ratio,
    verify_multiple_angle,
    verify_multiple_angle_sweep,
    verify_sinc_limit,
    write_reports_jsonl,
)


def test_multiple_angle_passes_at_assorted_orders():
    thetas = seeded_thetas(4, 99, 192)
    for n in (1, 2, 5, 17, 41, 60):
        for theta in thetas:
            report = verify_multiple_angle(n, theta, 192)
            assert report.passed
            assert report.residual.upper() <= Fraction(1, 1 << 160)


def test_multiple_angle_at_zero_angle():
    report = verify_multiple_angle(9, MpReal.from_int(0, 128), 128)
    assert report.passed
    assert report.residual.center() == 0


def test_multiple_angle_ignores_input_ball_radius():
    # verification happens at the exact center; a wide ball with the
    # same center must give the same residual
    tight = MpReal(355, -8, 0, 128)
    wide = MpReal(355, -8, Fraction(1, 1000), 128)
    a = verify_multiple_angle(12, tight, 128)
    b = verify_multiple_angle(12, wide, 128)
    assert a.residual.center() == b.residual.center()
    assert b.passed


def test_multiple_angle_records_parameters():
    report = verify_multiple_angle(5, seeded_thetas(1, 7, 160)[0], 160)
    assert report.parameters["n"] == 5
    assert report.parameters["bits"] == 160
    assert report.parameters["guard_bits"] == 32
    assert report.parameters["work_bits"] > 160


def test_multiple_angle_rejects_bad_order():
    with pytest.raises(DomainError):
        verify_multiple_angle(0, MpReal.from_int(1, 64), 64)


def test_sweep_shape_and_seed_recording():
    reports = verify_multiple_angle_sweep(6, 3, 128, seed=11)
    assert len(reports) == 18
    assert all(r.passed for r in reports)
    assert {r.parameters["seed"] for r in reports} == {11}
    assert {r.parameters["theta_index"] for r in reports} == {0, 1, 2}


def test_seeded_thetas_deterministic_and_in_range():
    pi_upper = compute_pi(96).upper()
    a = seeded_thetas(10, 42, 128)
    b = seeded_thetas(10, 42, 128)
    c = seeded_thetas(10, 43, 128)
    assert [t.man for t in a] == [t.man for t in b]
    assert [t.man for t in a] != [t.man for t in c]
    for t in a:
        assert abs(t.center()) < pi_upper


def test_sinc_ratio_bound_and_monotonicity():
    ms = [Fraction(1, 10**j) for j in range(1, 9)]
    rows = verify_sinc_limit(ms, 128)
    gaps = []
    for m, ratio in rows:
        gap = abs(ratio.center() - 1)
        assert gap <= m.center() ** 2 / 5
        gaps.append(gap)
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_sinc_sequence_validation():
    with pytest.raises(DomainError):
        verify_sinc_limit([])
    with pytest.raises(DomainError):
        verify_sinc_limit([Fraction(1, 10), Fraction(1, 5)])
    with pytest.raises(DomainError):
        verify_sinc_limit([Fraction(1, 10), Fraction(-1, 100)])


def test_angle_difference_passes():
    n = MpReal.from_int(7, 160)
    a = MpReal.from_fraction(Fraction(5, 7), 160)
    report = verify_angle_difference(n, a, 128)
    assert report.passed
    assert report.tolerance.center() == Fraction(4, 1 << 128)
    assert report.residual.upper() <= Fraction(4, 1 << 128)


def test_angle_difference_degenerate_near_sine_zero():
    # sin(pi) is zero to working precision: the decomposition must refuse
    with pytest.raises(DegenerateInputError):
        verify_angle_difference(compute_pi(128), MpReal.from_int(1, 128), 96)


def test_iteration_ratio_is_exactly_flat():
    report = verify_iteration_ratio(300, 2, 128)
    assert report.passed
    assert report.residual.center() == 0
    assert report.parameters["g_ratio_max"] == "0"


def test_iteration_ratio_validation():
    with pytest.raises(DomainError):
        verify_iteration_ratio(0, 1)
    with pytest.raises(DomainError):
        verify_iteration_ratio(10, 0)


def test_report_json_layout():
    report = verify_iteration_ratio(50, 1, 96)
    doc = report.to_json()
    assert set(doc) == {"description", "parameters", "residual", "tolerance", "pass"}
    assert doc["pass"] is True


def test_reports_jsonl_round_trip():
    reports = verify_multiple_angle_sweep(3, 2, 96, seed=5)
    buf = io.StringIO()
    write_reports_jsonl(reports, buf)
    lines = buf.getvalue().strip().splitlines()
    assert len(lines) == 6
    for line in lines:
        doc = json.loads(line)
        assert doc["pass"] is True
