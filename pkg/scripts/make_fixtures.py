#!/usr/bin/env python3
"""Write the benchmark fixture documents to disk.

For each fixture size this emits the plaintext file plus one encrypted
variant per cipher suite (empty user password, fixed nonce seed), so the
corpus can be inspected with external tools.
"""
from __future__ import annotations

import argparse
import pathlib
import sys

from pdflwc import EncryptionConfig, encrypt_document, serialize_document
from pdflwc.ciphers import AES128, ASCON128, XOODYAK
from pdflwc.fixtures import FIXTURE_SPECS, suite_fixture


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="fixtures")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    for name in FIXTURE_SPECS:
        doc = suite_fixture(name, seed=args.seed)
        plain_path = out_dir / f"{name}.pdf"
        plain_path.write_bytes(serialize_document(doc))
        print(f"wrote {plain_path}")
        for suite in (AES128, ASCON128, XOODYAK):
            enc = encrypt_document(doc, EncryptionConfig(
                suite=suite, rng_seed=args.seed))
            enc_path = out_dir / f"{name}.{suite.kind.lower()}.pdf"
            enc_path.write_bytes(serialize_document(enc.document))
            print(f"wrote {enc_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
