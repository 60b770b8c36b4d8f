"""Run the full counterexample pipeline and write the report as JSON."""
import argparse
import sys
from pathlib import Path

from capax.pipeline import CounterexampleError, run_counterexample


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("counterexample_report.json"))
    ap.add_argument("--tol", type=float, default=1e-7)
    args = ap.parse_args()
    try:
        report = run_counterexample(tol=args.tol)
    except CounterexampleError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    args.out.write_text(report.dumps() + "\n", encoding="utf-8")
    print(report.summary())
    print(f"report written to {args.out}")
    return 0 if report.verdict else 1


if __name__ == "__main__":
    sys.exit(main())
