"""Microbenchmark harness for the cipher suites.

Runs the document-encryption workload — per-object key derivation plus
payload encryption over a fixed fixture — in freshly forked interpreter
processes, JMH-style: a configurable number of forks, warmup iterations
(executed, counted, discarded) and measurement iterations per fork, in two
modes. ``avgt`` (average time) packs as many operations as fit into an
iteration time budget and reports mean time per operation; ``ss`` (single
shot) times one operation per iteration. Results carry 99.9% confidence
half-widths from the Student t distribution. Encrypted frames are fed to a
constant-size blackhole so the work cannot be optimized away and the
accumulated value can be asserted on.

Forked workers are real subprocesses (``python -m pdflwc._bench_worker``)
fed a JSON config on stdin; they emit one CSV ``sample`` line per
measurement iteration plus a final ``counters`` line, which the parent
validates strictly. The ``BENCH_SEED`` environment variable (or the config
seed) makes nonce streams reproducible.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import statistics
import subprocess
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional

from .ciphers import CipherSuite, suite_from_name
from .engine import encrypt_document, EncryptionConfig, encrypt_payload
from .errors import ForkFailure, UnsupportedFormat, WorkloadError
from .fixtures import FIXTURE_SPECS, suite_fixture
from .handler import Credentials, derive_object_key
from .targets import collect_encryption_targets, get_payload
from .writer import serialize_document

__all__ = [
    "BenchConfig", "BenchSample", "BenchResult", "Blackhole",
    "prepare_workload", "run_workload_op", "run_benchmark",
    "ordering_verdict", "emit_report", "build_size_report",
    "render_size_report", "DEFAULT_SEED",
]

DEFAULT_SEED = 20240822
_MODES = ("avgt", "ss")
_MODE_NAMES = {"avgt": "AverageTime", "ss": "SingleShotTime"}


@dataclass(frozen=True)
class BenchConfig:
    """Harness parameters; defaults mirror a short but honest JMH run."""
    suites: tuple[str, ...] = ("aes128", "ascon128", "xoodyak")
    fixture: str = "small"
    modes: tuple[str, ...] = _MODES
    forks: int = 2
    warmup_iterations: int = 5
    measurement_iterations: int = 10
    iteration_time_s: float = 1.0   # avgt budget per iteration
    seed: Optional[int] = None      # None: BENCH_SEED env, then DEFAULT_SEED

    def resolved_seed(self) -> int:
        if self.seed is not None:
            return self.seed
        env = os.environ.get("BENCH_SEED")
        return int(env) if env else DEFAULT_SEED

    def validate(self) -> None:
        for name in self.suites:
            suite_from_name(name)  # raises KeyError on unknown names
        if self.fixture not in FIXTURE_SPECS:
            raise KeyError(f"unknown fixture {self.fixture!r}; "
                           f"choose from {sorted(FIXTURE_SPECS)}")
        for mode in self.modes:
            if mode not in _MODES:
                raise UnsupportedFormat(f"unknown bench mode {mode!r}")
        if self.forks < 1 or self.measurement_iterations < 1 or \
                self.warmup_iterations < 0:
            raise WorkloadError("forks and iteration counts must be positive")


@dataclass(frozen=True)
class BenchSample:
    """One measurement iteration inside one fork."""
    suite: str
    mode: str
    fork: int
    iteration: int
    ops: int
    elapsed_s: float

    @property
    def us_per_op(self) -> float:
        return self.elapsed_s / self.ops * 1e6


@dataclass
class BenchResult:
    """All samples for one (cipher suite, mode) cell."""
    suite: str
    mode: str
    samples: list[BenchSample] = field(default_factory=list)
    warmup_ops: int = 0
    measurement_ops: int = 0
    blackhole: int = 0

    @property
    def mode_name(self) -> str:
        return _MODE_NAMES[self.mode]

    @property
    def count(self) -> int:
        return len(self.samples)

    @property
    def score(self) -> float:
        """Mean microseconds per operation."""
        return statistics.fmean(s.us_per_op for s in self.samples)

    @property
    def error(self) -> float:
        """99.9% confidence half-width in microseconds per operation."""
        values = [s.us_per_op for s in self.samples]
        if len(values) < 2:
            return float("nan")
        from scipy import stats  # heavy import, deferred to report time
        quantile = stats.t.ppf(1 - (1 - 0.999) / 2, len(values) - 1)
        return quantile * statistics.stdev(values) / math.sqrt(len(values))


class Blackhole:
    """Constant-size sink that folds consumed bytes into one word."""

    def __init__(self) -> None:
        self.value = 0

    def consume(self, data: bytes) -> None:
        if data:
            self.value = (self.value * 31 + data[0] + data[-1] + len(data)) \
                & 0xFFFFFFFF
        else:
            self.value = (self.value * 31 + 1) & 0xFFFFFFFF


def prepare_workload(suite_name: str, fixture: str):
    """Everything the timed op needs, computed outside the timed region.

    Returns (suite, file_key, payloads) where payloads is a list of
    (obj_num, gen_num, plaintext) triples for every encryptable target of
    the fixture document.
    """
    from .handler import compute_encryption_key, compute_o_value

    suite = suite_from_name(suite_name)
    doc = suite_fixture(fixture, seed=0)
    id_pair = doc.file_id()
    id0 = id_pair[0] if id_pair else b""
    o_value = compute_o_value(b"", b"")
    file_key = compute_encryption_key(b"", o_value, -4, id0)
    payloads = [(t.obj_num, t.gen_num, get_payload(doc, t))
                for t in collect_encryption_targets(doc)]
    return suite, file_key, payloads


def run_workload_op(suite: CipherSuite, file_key: bytes, payloads: list,
                    rng, blackhole: Blackhole) -> None:
    """One benchmark operation: encrypt every payload of the document.

    Per-object key derivation is deliberately inside the timed region —
    it is part of the cost a document encryptor pays per object.
    """
    for obj_num, gen_num, plaintext in payloads:
        object_key = derive_object_key(file_key, obj_num, gen_num, suite)
        frame = encrypt_payload(suite, object_key, plaintext,
                                rng.randbytes(suite.nonce_len))
        blackhole.consume(frame)


def _fork_seed(base_seed: int, suite_name: str, mode: str, fork: int) -> int:
    import zlib
    tag = zlib.crc32(f"{suite_name}/{mode}".encode("ascii"))
    return (base_seed * 1_000_003 + tag + fork) & 0x7FFFFFFF


def _run_fork(config: BenchConfig, suite_name: str, mode: str,
              fork: int) -> tuple[list[BenchSample], dict]:
    """Spawn one worker process and parse its sample/counter output."""
    worker_config = {
        "suite": suite_name,
        "fixture": config.fixture,
        "mode": mode,
        "warmup_iterations": config.warmup_iterations,
        "measurement_iterations": config.measurement_iterations,
        "iteration_time_s": config.iteration_time_s,
        "seed": _fork_seed(config.resolved_seed(), suite_name, mode, fork),
    }
    proc = subprocess.run(
        [sys.executable, "-m", "pdflwc._bench_worker"],
        input=json.dumps(worker_config).encode("ascii"),
        capture_output=True)
    stderr = proc.stderr.decode("utf-8", "replace").strip()
    if proc.returncode != 0:
        detail = stderr or f"exit code {proc.returncode}"
        if proc.returncode == 3:
            raise WorkloadError(
                f"workload failed in fork {fork} of {suite_name}/{mode}: {detail}")
        raise ForkFailure(
            f"fork {fork} of {suite_name}/{mode} failed: {detail}")

    samples: list[BenchSample] = []
    counters: dict = {}
    for line in proc.stdout.decode("ascii", "replace").splitlines():
        parts = line.strip().split(",")
        if parts[0] == "sample":
            _, line_mode, iteration, ops, elapsed = parts
            samples.append(BenchSample(
                suite=suite_name, mode=line_mode, fork=fork,
                iteration=int(iteration), ops=int(ops),
                elapsed_s=float(elapsed)))
        elif parts[0] == "counters":
            counters = dict(item.split("=") for item in parts[1:])
    if len(samples) != config.measurement_iterations or not counters:
        raise ForkFailure(
            f"fork {fork} of {suite_name}/{mode} produced "
            f"{len(samples)}/{config.measurement_iterations} samples "
            f"(counters: {counters or 'missing'})")
    return samples, counters


def run_benchmark(config: BenchConfig,
                  progress: Optional[Callable[[str], None]] = None
                  ) -> list[BenchResult]:
    """Run every (suite, mode) cell across all forks."""
    config.validate()
    results: list[BenchResult] = []
    for suite_name in config.suites:
        for mode in config.modes:
            result = BenchResult(suite=suite_name, mode=mode)
            for fork in range(config.forks):
                if progress:
                    progress(f"# fork {fork + 1}/{config.forks} "
                             f"{suite_name} mode={mode}")
                samples, counters = _run_fork(config, suite_name, mode, fork)
                result.samples.extend(samples)
                result.warmup_ops += int(counters.get("warmup_ops", 0))
                result.measurement_ops += int(counters.get("measurement_ops", 0))
                result.blackhole ^= int(counters.get("blackhole", 0))
            results.append(result)
    return results


def ordering_verdict(results: list[BenchResult],
                     faster: str = "ascon128",
                     baseline: str = "aes128") -> str:
    """Human-readable comparison of two suites' mean scores per mode."""
    lines = []
    for mode in dict.fromkeys(r.mode for r in results):
        by_suite = {r.suite: r for r in results if r.mode == mode}
        if faster not in by_suite or baseline not in by_suite:
            continue
        a, b = by_suite[faster], by_suite[baseline]
        relation = "<=" if a.score <= b.score else ">"
        lines.append(
            f"verdict[{mode}]: {faster} {a.score:.2f} us/op {relation} "
            f"{baseline} {b.score:.2f} us/op -> "
            f"{'ordered as expected' if relation == '<=' else 'ordering reversed'}")
    if not lines:
        lines.append(f"verdict: suites {faster!r}/{baseline!r} not both present")
    return "\n".join(lines)


def _format_markdown(results: list[BenchResult]) -> str:
    header = ("| Benchmark | Mode | Cnt | Score | Error | Units |\n"
              "|---|---|---:|---:|---:|---|\n")
    rows = []
    for r in results:
        error = r.error
        rows.append(f"| encrypt[{r.suite}] | {r.mode} | {r.count} "
                    f"| {r.score:.3f} | ± {error:.3f} | us/op |")
    return header + "\n".join(rows) + "\n"


def _format_csv(results: list[BenchResult]) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["suite", "mode", "fork", "iteration", "ops",
                     "elapsed_s", "us_per_op"])
    for r in results:
        for s in r.samples:
            writer.writerow([s.suite, s.mode, s.fork, s.iteration, s.ops,
                             f"{s.elapsed_s:.9f}", f"{s.us_per_op:.3f}"])
    return out.getvalue()


def _plot(results: list[BenchResult], path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    modes = list(dict.fromkeys(r.mode for r in results))
    fig, axes = plt.subplots(1, len(modes), figsize=(6 * len(modes), 4),
                             squeeze=False)
    for ax, mode in zip(axes[0], modes):
        cells = [r for r in results if r.mode == mode]
        labels = [r.suite for r in cells]
        scores = [r.score for r in cells]
        errors = [r.error for r in cells]
        ax.bar(labels, scores, yerr=errors, capsize=4)
        ax.set_title(f"document encryption ({_MODE_NAMES[mode]})")
        ax.set_ylabel("us/op")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def emit_report(results: list[BenchResult], fmt: str,
                path: Optional[str] = None) -> Optional[str]:
    """Render results as ``csv``, ``md``, or ``png`` (plot, needs a path)."""
    if fmt == "md":
        text = _format_markdown(results)
    elif fmt == "csv":
        text = _format_csv(results)
    elif fmt == "png":
        if not path:
            raise UnsupportedFormat("png output needs a file path")
        _plot(results, path)
        return None
    else:
        raise UnsupportedFormat(f"unknown report format {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    return text


def build_size_report(fixture: str = "small", rng_seed: int = 0,
                      suites: tuple[str, ...] = ("aes128", "ascon128",
                                                 "xoodyak")) -> list[dict]:
    """Per-suite file growth, split into exact framing vs structure overhead.

    ``framing_bytes`` is pure arithmetic over the payload lengths (IV/nonce,
    padding, tag). ``structure_bytes`` is the measured remainder: the
    encryption dictionary, trailer changes, hex re-encoding of encrypted
    strings, and stream Length digit growth.
    """
    if fixture not in FIXTURE_SPECS:
        raise KeyError(f"unknown fixture {fixture!r}")
    base = suite_fixture(fixture, seed=0)
    plain_bytes = len(serialize_document(base))
    payload_lens = [len(get_payload(base, t))
                    for t in collect_encryption_targets(base)]
    rows = []
    for suite_name in suites:
        suite = suite_from_name(suite_name)
        encrypted = encrypt_document(base, EncryptionConfig(
            suite=suite, credentials=Credentials(), rng_seed=rng_seed))
        encrypted_bytes = len(serialize_document(encrypted.document))
        framing = sum(suite.framed_len(n) - n for n in payload_lens)
        rows.append({
            "suite": suite.kind,
            "fixture": fixture,
            "targets": len(payload_lens),
            "payload_bytes": sum(payload_lens),
            "plain_bytes": plain_bytes,
            "encrypted_bytes": encrypted_bytes,
            "framing_bytes": framing,
            "structure_bytes": encrypted_bytes - plain_bytes - framing,
            "expansion_pct": (encrypted_bytes / plain_bytes - 1) * 100,
        })
    return rows


def render_size_report(rows: list[dict]) -> str:
    columns = ["suite", "fixture", "targets", "payload_bytes", "plain_bytes",
               "encrypted_bytes", "framing_bytes", "structure_bytes",
               "expansion_pct"]
    lines = ["| " + " | ".join(columns) + " |",
             "|" + "|".join("---:" if c != "suite" else "---"
                            for c in columns) + "|"]
    for row in rows:
        cells = [f"{row[c]:.2f}" if c == "expansion_pct" else str(row[c])
                 for c in columns]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
