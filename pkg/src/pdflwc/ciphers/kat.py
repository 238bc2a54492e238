"""Known-answer-test runner for the AEAD suites.

Reads the standard lightweight-crypto KAT file format: records of
``Count``, ``Key``, ``Nonce``, ``PT``, ``AD`` and ``CT`` lines separated by
blank lines, with ``CT`` holding ciphertext followed by the 16-byte tag.
Every record is checked in both directions: encryption must reproduce the
recorded ciphertext and tag, and decryption of the recorded ciphertext must
authenticate and reproduce the plaintext.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import CryptoError, MalformedKatFile
from . import CipherSuite
from .ascon import ascon_aead_decrypt, ascon_aead_encrypt
from .xoodyak import xoodyak_aead_decrypt, xoodyak_aead_encrypt

__all__ = ["KatRecord", "KatReport", "parse_kat_text", "run_kat_file"]

_FIELDS = ("Count", "Key", "Nonce", "PT", "AD", "CT")


@dataclass(frozen=True)
class KatRecord:
    count: int
    key: bytes
    nonce: bytes
    plaintext: bytes
    associated_data: bytes
    ciphertext_with_tag: bytes


@dataclass
class KatReport:
    total: int
    passed: int
    first_failure: Optional[int] = None  # Count of the first failing record

    @property
    def all_passed(self) -> bool:
        return self.total > 0 and self.passed == self.total


def parse_kat_text(text: str) -> list[KatRecord]:
    records = []
    for chunk_no, chunk in enumerate(text.replace("\r\n", "\n").split("\n\n")):
        if not chunk.strip():
            continue
        fields: dict[str, str] = {}
        for line in chunk.strip().split("\n"):
            name, sep, value = line.partition("=")
            if not sep:
                raise MalformedKatFile(
                    f"record {chunk_no + 1}: line without '=': {line!r}")
            fields[name.strip()] = value.strip()
        missing = [f for f in _FIELDS if f not in fields]
        if missing:
            raise MalformedKatFile(
                f"record {chunk_no + 1}: missing fields {missing}")
        try:
            records.append(KatRecord(
                count=int(fields["Count"]),
                key=bytes.fromhex(fields["Key"]),
                nonce=bytes.fromhex(fields["Nonce"]),
                plaintext=bytes.fromhex(fields["PT"]),
                associated_data=bytes.fromhex(fields["AD"]),
                ciphertext_with_tag=bytes.fromhex(fields["CT"]),
            ))
        except ValueError as exc:
            raise MalformedKatFile(f"record {chunk_no + 1}: {exc}") from exc
    if not records:
        raise MalformedKatFile("no records found")
    return records


def run_kat_file(suite: CipherSuite, text: str) -> KatReport:
    """Check every record in both directions; returns a pass/fail tally."""
    if suite.kind == "ASCON128":
        encrypt, decrypt = ascon_aead_encrypt, ascon_aead_decrypt
    elif suite.kind == "XOODYAK":
        encrypt, decrypt = xoodyak_aead_encrypt, xoodyak_aead_decrypt
    else:
        raise ValueError(f"known-answer files cover the AEAD suites only, "
                         f"not {suite.kind}")
    report = KatReport(total=0, passed=0)
    for record in parse_kat_text(text):
        report.total += 1
        ok = _check_record(record, suite, encrypt, decrypt)
        if ok:
            report.passed += 1
        elif report.first_failure is None:
            report.first_failure = record.count
    return report


def _check_record(record, suite, encrypt, decrypt) -> bool:
    if len(record.ciphertext_with_tag) != len(record.plaintext) + suite.tag_len:
        return False
    ciphertext = record.ciphertext_with_tag[:-suite.tag_len]
    tag = record.ciphertext_with_tag[-suite.tag_len:]
    try:
        got_ct, got_tag = encrypt(record.key, record.nonce,
                                  record.associated_data, record.plaintext)
        if got_ct + got_tag != record.ciphertext_with_tag:
            return False
        got_pt = decrypt(record.key, record.nonce, record.associated_data,
                         ciphertext, tag, verify_tag=True)
    except CryptoError:
        return False
    return got_pt == record.plaintext
