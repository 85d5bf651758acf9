import pytest

from unitri.selftest import CHECKS, CheckResult, results_frame, run_selftest

QUICK = ["sharpness", "boolean_length3", "torus", "prime_search", "shears", "zp_length5"]


def test_quick_checks_pass():
    results = run_selftest(trials=2, seed=7, only=QUICK)
    assert [r.name for r in results] == QUICK
    for r in results:
        assert r.ok, f"{r.name}: {r.detail}"
        assert r.seconds >= 0


def test_only_filters_and_keeps_order():
    results = run_selftest(trials=1, only=["prime_search", "sharpness"])
    assert [r.name for r in results] == ["sharpness", "prime_search"]


def test_results_frame():
    frame = results_frame([CheckResult("a", True, "fine", 0.123), CheckResult("b", False, "bad")])
    assert list(frame.columns) == ['Check', 'OK', 'Detail', 'Seconds']
    assert list(frame['OK']) == [True, False]
    assert frame['Seconds'].iloc[0] == 0.12


def test_check_result_json():
    assert CheckResult("torus", True, "ok", 1.23456).to_json() == {
        "name": "torus", "ok": True, "detail": "ok", "seconds": 1.235,
    }


def test_check_names_are_unique():
    names = [name for name, _ in CHECKS]
    assert len(names) == len(set(names))


@pytest.mark.slow
def test_full_suite():
    results = run_selftest(trials=2, seed=1)
    assert len(results) == len(CHECKS)
    failed = [f"{r.name}: {r.detail}" for r in results if not r.ok]
    assert not failed
