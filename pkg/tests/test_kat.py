"""Known-answer-test file parsing and verification reporting."""
from __future__ import annotations

import pytest

from pdflwc.ciphers import AES128, ASCON128, parse_kat_text, run_kat_file
from pdflwc.errors import MalformedKatFile

_GOOD = """\
Count = 1
Key = 000102030405060708090A0B0C0D0E0F
Nonce = 000102030405060708090A0B0C0D0E0F
PT =
AD =
CT = E355159F292911F794CB1432A0103A8A

Count = 2
Key = 000102030405060708090A0B0C0D0E0F
Nonce = 000102030405060708090A0B0C0D0E0F
PT =
AD = 00
CT = 944DF887CD4901614C5DEDBC42FC0DA0
"""


def test_parse_well_formed_records():
    records = parse_kat_text(_GOOD)
    assert [r.count for r in records] == [1, 2]
    assert records[0].plaintext == b""
    assert records[1].associated_data == b"\x00"
    assert len(records[0].ciphertext_with_tag) == 16


def test_run_passes_on_correct_records():
    report = run_kat_file(ASCON128, _GOOD)
    assert report.total == 2
    assert report.passed == 2
    assert report.all_passed
    assert report.first_failure is None


def test_run_reports_first_failure_on_doctored_record():
    doctored = _GOOD.replace("944DF887", "944DF888")
    report = run_kat_file(ASCON128, doctored)
    assert report.total == 2
    assert report.passed == 1
    assert not report.all_passed
    assert report.first_failure == 2


def test_missing_field_rejected():
    with pytest.raises(MalformedKatFile):
        parse_kat_text("Count = 1\nKey = 00\nNonce = 00\nPT =\nAD =\n")


def test_bad_hex_rejected():
    bad = _GOOD.replace("E355159F", "XX55159F")
    with pytest.raises(MalformedKatFile):
        parse_kat_text(bad)


def test_empty_input_rejected():
    with pytest.raises(MalformedKatFile):
        parse_kat_text("")
    with pytest.raises(MalformedKatFile):
        parse_kat_text("\n\n\n")


def test_short_ciphertext_counts_as_failure():
    # Parsing is suite-agnostic, so a CT too short to hold the tag is a
    # failing record (reported by Count), not a parse error.
    bad = _GOOD.replace("CT = E355159F292911F794CB1432A0103A8A", "CT = E355")
    report = run_kat_file(ASCON128, bad)
    assert report.passed == 1
    assert report.first_failure == 1


def test_non_aead_suite_rejected():
    with pytest.raises(ValueError):
        run_kat_file(AES128, _GOOD)
