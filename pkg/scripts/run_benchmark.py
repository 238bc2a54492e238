#!/usr/bin/env python3
"""Run the full microbenchmark and write reports.

Produces a JMH-style summary on stdout plus ``bench.md``, ``bench.csv``
and ``bench.png`` in the output directory, followed by the size-overhead
table for the same fixture.
"""
from __future__ import annotations

import argparse
import pathlib
import sys

from pdflwc.bench import (BenchConfig, build_size_report, emit_report,
                          ordering_verdict, render_size_report, run_benchmark)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixture", default="small",
                        choices=["small", "medium", "large"])
    parser.add_argument("--forks", type=int, default=2)
    parser.add_argument("--warmup-iterations", type=int, default=5)
    parser.add_argument("--measurement-iterations", type=int, default=10)
    parser.add_argument("--iteration-time", type=float, default=1.0)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    config = BenchConfig(
        fixture=args.fixture, forks=args.forks,
        warmup_iterations=args.warmup_iterations,
        measurement_iterations=args.measurement_iterations,
        iteration_time_s=args.iteration_time, seed=args.seed)
    results = run_benchmark(
        config, progress=lambda line: print(line, file=sys.stderr))

    markdown = emit_report(results, "md", str(out_dir / "bench.md"))
    emit_report(results, "csv", str(out_dir / "bench.csv"))
    emit_report(results, "png", str(out_dir / "bench.png"))
    print(markdown, end="")
    print(ordering_verdict(results))

    rows = build_size_report(fixture=args.fixture)
    table = render_size_report(rows)
    (out_dir / "sizes.md").write_text(table, encoding="utf-8")
    print()
    print(table, end="")
    print(f"# reports written to {out_dir}/", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
