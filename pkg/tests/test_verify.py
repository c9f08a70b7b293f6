import time

from luesff import verify


def test_full_suite_passes():
    t0 = time.perf_counter()
    results = verify.run_checks(quick=False)
    assert [r.name for r in results] == [name for name, _ in verify.CHECKS]
    failed = [r for r in results if not r.passed]
    assert not failed, failed
    assert time.perf_counter() - t0 < 300


def test_quick_suite_is_fast():
    t0 = time.perf_counter()
    results = verify.run_checks(quick=True)
    assert all(r.passed for r in results)
    assert time.perf_counter() - t0 < 30


def test_crash_is_reported_as_failure(monkeypatch):
    def boom(quick):
        raise RuntimeError("broken")
    monkeypatch.setattr(verify, "CHECKS", [("boom", boom)])
    (r,) = verify.run_checks()
    assert not r.passed and "RuntimeError" in r.detail
