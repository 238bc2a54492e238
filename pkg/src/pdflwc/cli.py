"""Command-line interface.

Subcommands: ``encrypt`` / ``decrypt`` a document, ``inspect`` a file's
encryption state, ``kat`` to run a known-answer-test file, ``bench`` for
the forked microbenchmark harness, and ``size-report`` for the framing
arithmetic table.

Exit codes: 0 success; 1 usage, I/O and document-structure errors; 2
cryptographic failures (wrong password, tag mismatch, failed known-answer
records); 3 benchmark harness failures.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional

from .bench import (BenchConfig, build_size_report, emit_report,
                    ordering_verdict, render_size_report, run_benchmark)
from .ciphers import run_kat_file, suite_from_name
from .engine import (DEFAULT_PERMISSIONS, EncryptionConfig, decrypt_document,
                     encrypt_document, read_security_params)
from .errors import (BenchError, CryptoError, MalformedKatFile,
                     PdfStructureError, PdflwcError)
from .fixtures import FIXTURE_SPECS
from .handler import Credentials
from .parser import parse_document
from .writer import serialize_document

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 (not 2) on usage errors."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"error: UsageError: {message}", file=sys.stderr)
        raise SystemExit(1)


def _password(text: str) -> bytes:
    return text.encode("latin-1")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pdflwc",
                     description="Partial document encryption with "
                                 "interchangeable cipher suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encrypt", help="encrypt a document")
    enc.add_argument("input")
    enc.add_argument("output")
    enc.add_argument("--cipher", default="aes128",
                     choices=["aes128", "ascon128", "xoodyak"])
    enc.add_argument("--user-password", default="")
    enc.add_argument("--owner-password", default="")
    enc.add_argument("--permissions", type=int, default=DEFAULT_PERMISSIONS)
    enc.add_argument("--seed", type=int, default=None,
                     help="fix the nonce/ID random stream (testing)")
    enc.add_argument("--no-encrypt-metadata", action="store_true")

    dec = sub.add_parser("decrypt", help="decrypt a document")
    dec.add_argument("input")
    dec.add_argument("output")
    dec.add_argument("--password", default="")
    dec.add_argument("--no-verify-tags", action="store_true",
                     help="skip AEAD tag verification")

    ins = sub.add_parser("inspect", help="print a document's encryption state")
    ins.add_argument("input")

    kat = sub.add_parser("kat", help="run a known-answer-test file")
    kat.add_argument("--cipher", required=True,
                     choices=["ascon128", "xoodyak"])
    kat.add_argument("--file", required=True)

    bench = sub.add_parser("bench", help="run the forked microbenchmark")
    bench.add_argument("--suites", nargs="+",
                       default=["aes128", "ascon128", "xoodyak"])
    bench.add_argument("--fixture", default="small",
                       choices=sorted(FIXTURE_SPECS))
    bench.add_argument("--modes", nargs="+", default=["avgt", "ss"],
                       choices=["avgt", "ss"])
    bench.add_argument("--forks", type=int, default=2)
    bench.add_argument("--warmup-iterations", type=int, default=5)
    bench.add_argument("--measurement-iterations", type=int, default=10)
    bench.add_argument("--iteration-time", type=float, default=1.0,
                       metavar="SECONDS")
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--report", choices=["md", "csv", "png"], default="md")
    bench.add_argument("--out", default=None,
                       help="write the report to a file as well")

    size = sub.add_parser("size-report",
                          help="framing vs structure overhead per suite")
    size.add_argument("--fixture", default="small",
                      choices=sorted(FIXTURE_SPECS))
    size.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_encrypt(args) -> int:
    with open(args.input, "rb") as handle:
        doc = parse_document(handle.read())
    config = EncryptionConfig(
        suite=suite_from_name(args.cipher),
        credentials=Credentials(
            user_password=_password(args.user_password),
            owner_password=_password(args.owner_password)),
        permissions=args.permissions,
        encrypt_metadata=not args.no_encrypt_metadata,
        rng_seed=args.seed)
    result = encrypt_document(doc, config)
    blob = serialize_document(result.document)
    with open(args.output, "wb") as handle:
        handle.write(blob)
    print(f"encrypted {args.input} -> {args.output} "
          f"cipher={config.suite.kind} targets={len(result.targets)} "
          f"bytes={len(blob)}")
    return 0


def _cmd_decrypt(args) -> int:
    with open(args.input, "rb") as handle:
        doc = parse_document(handle.read())
    result = decrypt_document(doc, _password(args.password),
                              verify_tags=not args.no_verify_tags)
    blob = serialize_document(result.document)
    with open(args.output, "wb") as handle:
        handle.write(blob)
    print(f"decrypted {args.input} -> {args.output} "
          f"cipher={result.suite.kind} auth={result.auth.status.value} "
          f"targets={len(result.targets)} bytes={len(blob)}")
    return 0


def _cmd_inspect(args) -> int:
    with open(args.input, "rb") as handle:
        doc = parse_document(handle.read())
    print(f"header_version={doc.header_version}")
    print(f"objects={len(doc.objects)}")
    id_pair = doc.file_id()
    print(f"file_id={'present' if id_pair else 'absent'}")
    print(f"encrypted={'yes' if doc.is_encrypted else 'no'}")
    if doc.is_encrypted:
        params, suite = read_security_params(doc)
        print(f"handler={params.filter_name}")
        print(f"version={params.version}")
        print(f"revision={params.revision}")
        print(f"key_bits={params.length_bits}")
        print(f"cipher={suite.kind}")
        print(f"crypt_filter_method={params.cfm_name}")
        print(f"permissions={params.permissions}")
        print(f"permissions_hex=0x{params.permissions & 0xFFFFFFFF:08X}")
        print(f"encrypt_metadata={'true' if params.encrypt_metadata else 'false'}")
    return 0


def _cmd_kat(args) -> int:
    with open(args.file, "r", encoding="utf-8") as handle:
        text = handle.read()
    report = run_kat_file(suite_from_name(args.cipher), text)
    failed = report.total - report.passed
    first = report.first_failure if report.first_failure is not None else "-"
    print(f"cipher={args.cipher} records={report.total} "
          f"passed={report.passed} failed={failed} first_failure={first}")
    return 0 if report.all_passed else 2


def _cmd_bench(args) -> int:
    config = BenchConfig(
        suites=tuple(args.suites), fixture=args.fixture,
        modes=tuple(args.modes), forks=args.forks,
        warmup_iterations=args.warmup_iterations,
        measurement_iterations=args.measurement_iterations,
        iteration_time_s=args.iteration_time, seed=args.seed)
    results = run_benchmark(
        config, progress=lambda line: print(line, file=sys.stderr))
    text = emit_report(results, "md", None)
    print(text, end="")
    if args.report == "png":
        if not args.out:
            print("error: UsageError: --report png needs --out",
                  file=sys.stderr)
            return 1
        emit_report(results, "png", args.out)
        print(f"# plot written to {args.out}")
    elif args.out:
        emit_report(results, args.report, args.out)
        print(f"# {args.report} report written to {args.out}")
    print(ordering_verdict(results))
    return 0


def _cmd_size_report(args) -> int:
    rows = build_size_report(fixture=args.fixture, rng_seed=args.seed)
    print(render_size_report(rows), end="")
    return 0


_COMMANDS = {
    "encrypt": _cmd_encrypt,
    "decrypt": _cmd_decrypt,
    "inspect": _cmd_inspect,
    "kat": _cmd_kat,
    "bench": _cmd_bench,
    "size-report": _cmd_size_report,
}


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BenchError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except CryptoError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (PdfStructureError, MalformedKatFile) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except PdflwcError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
