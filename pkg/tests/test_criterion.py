import io
import json
import math
from fractions import Fraction

import pytest

from flintlab import (
    DomainError,
    check_criterion,
    exponent_profile,
    local_exponent,
    scan_criterion,
    write_scan_csv,
    write_scan_summary,
)


def test_check_satisfied_case():
    report = check_criterion(2, 1, "0.1")
    assert report.satisfied
    assert report.rhs.decimal(6).startswith("12.3432")
    assert abs(report.ln_lhs - math.log(4)) < 1e-12
    assert report.margin > 1.12


def test_check_violated_cases():
    r3 = check_criterion(3, 1, "0.1")
    assert not r3.satisfied
    assert r3.rhs.decimal(6).startswith("1.44527")

    r1 = check_criterion(1, 1, "0.1")
    assert not r1.satisfied
    # at n=1 the right side degenerates to sin^2(1)
    assert r1.rhs.decimal(6).startswith("0.70807")


def test_margin_sign_matches_verdict():
    for n in (1, 2, 3, 5, 22, 355, 356):
        report = check_criterion(n, 1, "0.1")
        assert report.satisfied == (report.margin > 0)


def test_log_sides_match_float_reference():
    for n in (2, 5, 17, 1000):
        report = check_criterion(n, 1, "0.1")
        want_lhs = 2 * math.log(n)
        want_rhs = 2 * math.log(abs(math.sin(n))) + (4 - 0.1) * math.log(n)
        assert abs(report.ln_lhs - want_lhs) < 1e-9
        assert abs(report.ln_rhs - want_rhs) < 1e-9


def test_epsilon_validation():
    for bad in ("0", "2", "-0.5", "2.5"):
        with pytest.raises(DomainError):
            check_criterion(5, 1, bad)


def test_epsilon_accepts_string_fraction_float():
    a = check_criterion(7, 1, "0.1")
    b = check_criterion(7, 1, Fraction(1, 10))
    assert a.satisfied == b.satisfied
    assert a.margin == b.margin


def test_scan_first_thirty():
    result = scan_criterion((1, 30), 1, "0.1")
    assert [r.n for r in result.violations] == [1, 3, 22]
    assert result.summary["checked"] == 30
    assert result.summary["violations"] == 3


def test_scan_finds_spike_at_355():
    result = scan_criterion((300, 400), 1, "0.1")
    assert [r.n for r in result.violations] == [355]


def test_scan_clean_stretch():
    result = scan_criterion((4, 6), 1, "0.1")
    assert result.violations == []
    assert result.summary["violations"] == 0
    assert result.summary["worst_margin_n"] in (4, 5, 6)


def test_scan_threads_do_not_change_output():
    single = scan_criterion((1, 9000), 1, "0.1", threads=1)
    multi = scan_criterion((1, 9000), 1, "0.1", threads=4)
    assert [r.n for r in single.violations] == [r.n for r in multi.violations]
    assert single.summary == multi.summary
    for a, b in zip(single.violations, multi.violations):
        assert (a.margin, a.ln_lhs, a.ln_rhs) == (b.margin, b.ln_lhs, b.ln_rhs)


def test_scan_verdicts_invariant_in_s():
    low = scan_criterion((1, 2000), 1, "0.1")
    high = scan_criterion((1, 2000), 5, "0.1")
    assert [r.n for r in low.violations] == [r.n for r in high.violations]


def test_scan_range_validation():
    with pytest.raises(DomainError):
        scan_criterion((0, 10), 1, "0.1")
    with pytest.raises(DomainError):
        scan_criterion((10, 5), 1, "0.1")
    with pytest.raises(DomainError):
        scan_criterion((1, 10), 0, "0.1")


def test_exponent_profile_running_max():
    rows = exponent_profile(30)
    assert rows[0][0] == 2
    for n, lam, running in rows:
        assert lam == local_exponent(n)
    maxes = [running for _, _, running in rows]
    assert maxes == sorted(maxes) or all(
        m2 >= m1 for m1, m2 in zip(maxes, maxes[1:]))
    # the record at n=3 persists until n=355
    assert rows[-1][2] == local_exponent(3)


def test_exponent_profile_validation():
    with pytest.raises(DomainError):
        exponent_profile(1)


def test_scan_csv_layout():
    result = scan_criterion((1, 30), 1, "0.1")
    buf = io.StringIO()
    write_scan_csv(result.violations, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "n,s,epsilon,ln_lhs,ln_rhs,margin"
    assert [line.split(",")[0] for line in lines[1:]] == ["1", "3", "22"]


def test_scan_summary_json():
    result = scan_criterion((1, 30), 1, "0.1")
    buf = io.StringIO()
    write_scan_summary(result, buf)
    doc = json.loads(buf.getvalue())
    assert set(doc) == {"checked", "violations", "worst_margin_n", "worst_margin"}
    assert doc["worst_margin_n"] == 22
