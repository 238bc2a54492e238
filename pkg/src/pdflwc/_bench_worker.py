"""Forked benchmark worker.

Reads one JSON config object from stdin, runs warmup then measurement
iterations of the document-encryption workload, and writes CSV lines to
stdout: one ``sample,<mode>,<iteration>,<ops>,<elapsed_s>`` line per
measurement iteration, then a single
``counters,warmup_ops=..,measurement_ops=..,blackhole=..`` line. Exit
codes: 0 on success, 2 on a bad config, 3 when the workload itself raises.
"""
from __future__ import annotations

import json
import random
import sys
import time

from .bench import Blackhole, prepare_workload, run_workload_op


def _run_iteration(suite, file_key, payloads, rng, blackhole,
                   mode: str, budget_s: float) -> tuple[int, float]:
    """Run one iteration; returns (ops, elapsed seconds)."""
    ops = 0
    start = time.perf_counter()
    if mode == "ss":
        run_workload_op(suite, file_key, payloads, rng, blackhole)
        ops = 1
    else:  # avgt: at least one op, then fill the time budget
        while True:
            run_workload_op(suite, file_key, payloads, rng, blackhole)
            ops += 1
            if time.perf_counter() - start >= budget_s:
                break
    return ops, time.perf_counter() - start


def main() -> int:
    try:
        config = json.load(sys.stdin)
        suite_name = config["suite"]
        fixture = config["fixture"]
        mode = config["mode"]
        warmup = int(config["warmup_iterations"])
        measurement = int(config["measurement_iterations"])
        budget_s = float(config["iteration_time_s"])
        seed = int(config["seed"])
        if mode not in ("avgt", "ss"):
            raise ValueError(f"unknown mode {mode!r}")
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"bad worker config: {exc}", file=sys.stderr)
        return 2

    try:
        suite, file_key, payloads = prepare_workload(suite_name, fixture)
        rng = random.Random(seed)
        blackhole = Blackhole()

        warmup_ops = 0
        for _ in range(warmup):
            ops, _elapsed = _run_iteration(suite, file_key, payloads, rng,
                                           blackhole, mode, budget_s)
            warmup_ops += ops

        measurement_ops = 0
        for iteration in range(measurement):
            ops, elapsed = _run_iteration(suite, file_key, payloads, rng,
                                          blackhole, mode, budget_s)
            measurement_ops += ops
            print(f"sample,{mode},{iteration},{ops},{elapsed:.9f}")
    except Exception as exc:  # surfaced to the parent as WorkloadError
        print(f"workload error: {exc}", file=sys.stderr)
        return 3

    print(f"counters,warmup_ops={warmup_ops},"
          f"measurement_ops={measurement_ops},blackhole={blackhole.value}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
