"""Cross-implementation checks against the bundled Rust interop tool.

The tool (``tools/pdf_interop``) wraps an independent PDF library and
speaks the same revision-4 AES crypt filter, so agreement in both
directions checks the O/U derivations, the file and per-object keys, and
the IV‖ciphertext framing against a second implementation. The tool only
implements the user-password path for decryption, so owner-password
checks run through this package's authenticator on tool-produced files.
"""
from __future__ import annotations

import subprocess

import pytest

from pdflwc.ciphers import AES128
from pdflwc.engine import EncryptionConfig, decrypt_document, encrypt_document
from pdflwc.fixtures import FIXTURE_SPECS, random_document
from pdflwc.handler import AuthStatus, Credentials
from pdflwc.parser import parse_document
from pdflwc.targets import collect_encryption_targets, get_payload
from pdflwc.writer import serialize_document


def _payloads(doc) -> list:
    return sorted(get_payload(doc, t)
                  for t in collect_encryption_targets(doc))


def _run_tool(interop_tool, *args) -> None:
    subprocess.run([str(interop_tool), *args], check=True,
                   capture_output=True, timeout=60)


@pytest.fixture
def plain(tmp_path):
    doc = random_document(FIXTURE_SPECS["small"], seed=8)
    path = tmp_path / "plain.pdf"
    path.write_bytes(serialize_document(doc))
    return doc, path


def test_tool_decrypts_my_output(interop_tool, tmp_path, plain):
    doc, _path = plain
    result = encrypt_document(doc, EncryptionConfig(
        suite=AES128, credentials=Credentials(b"upw", b"opw"), rng_seed=1))
    enc_path = tmp_path / "mine.pdf"
    enc_path.write_bytes(serialize_document(result.document))
    dec_path = tmp_path / "tool_dec.pdf"
    _run_tool(interop_tool, "decrypt", str(enc_path), str(dec_path), "upw")
    restored = parse_document(dec_path.read_bytes())
    assert _payloads(restored) == _payloads(doc)


def test_my_decrypt_of_tool_output_user_and_owner(interop_tool, tmp_path,
                                                  plain):
    doc, plain_path = plain
    enc_path = tmp_path / "tool_enc.pdf"
    _run_tool(interop_tool, "encrypt", str(plain_path), str(enc_path),
              "upw", "opw")
    tool_doc = parse_document(enc_path.read_bytes())
    assert tool_doc.is_encrypted

    for password, status in ((b"upw", AuthStatus.USER_PASSWORD),
                             (b"opw", AuthStatus.OWNER_PASSWORD)):
        result = decrypt_document(tool_doc, password)
        assert result.auth.status is status
        assert _payloads(result.document) == _payloads(doc)


def test_tool_round_trip_through_both_sides(interop_tool, tmp_path, plain):
    # tool encrypt -> my decrypt -> my encrypt -> tool decrypt
    doc, plain_path = plain
    step1 = tmp_path / "s1.pdf"
    _run_tool(interop_tool, "encrypt", str(plain_path), str(step1), "pw", "pw2")
    mine = decrypt_document(parse_document(step1.read_bytes()), b"pw")
    re_enc = encrypt_document(mine.document, EncryptionConfig(
        suite=AES128, credentials=Credentials(b"pw3", b""), rng_seed=2))
    step2 = tmp_path / "s2.pdf"
    step2.write_bytes(serialize_document(re_enc.document))
    step3 = tmp_path / "s3.pdf"
    _run_tool(interop_tool, "decrypt", str(step2), str(step3), "pw3")
    assert _payloads(parse_document(step3.read_bytes())) == _payloads(doc)
