"""
Run the numeric self-test suite and print a pass/fail report.
Pass --record to store the run in the history database.
"""

import sys

from unitri import config
from unitri.database import init_db, record_selftest
from unitri.selftest import results_frame, run_selftest


def verify_theorems(record=False):
    print("=" * 60)
    print("UNITRIANGULAR FACTORISATION SELF-TEST")
    print("=" * 60)
    print(f"trials per check: {config.SELFTEST_TRIALS}, seed: {config.SEED}")
    print()

    results = run_selftest()
    for r in results:
        mark = "✓" if r.ok else "❌"
        print(f"{mark} {r.name:22} {r.seconds:7.2f}s  {r.detail}")
    print()

    print("SUMMARY:")
    print("-" * 60)
    frame = results_frame(results)
    passed = int(frame['OK'].sum())
    print(f"  passed: {passed}")
    print(f"  failed: {len(frame) - passed}")
    print(f"  total time: {frame['Seconds'].sum():.2f}s")
    print()

    if record:
        init_db()
        run_id = record_selftest(results)
        print(f"✓ recorded as selftest run {run_id} in {config.DB_PATH}")
        print()

    if passed == len(frame):
        print("✅ All checks passed")
        return True
    print("❌ Some checks failed")
    return False


if __name__ == "__main__":
    ok = verify_theorems(record="--record" in sys.argv[1:])
    sys.exit(0 if ok else 1)
