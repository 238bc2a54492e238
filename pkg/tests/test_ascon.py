"""Sponge AEAD #1: pinned permutation vector, full KAT file, tag handling."""
from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import VECTOR_DIR
from pdflwc.ciphers import (ASCON128, ascon_aead_decrypt, ascon_aead_encrypt,
                            run_kat_file)
from pdflwc.ciphers.ascon import AsconState, ascon_permutation
from pdflwc.errors import BadLength, TagMismatch

_KAT_PATH = VECTOR_DIR / "ascon128" / "LWC_AEAD_KAT_128_128.txt"
_IV_WORD = 0x80400C0600000000


def _pinned_permutation_words() -> list[int]:
    text = (VECTOR_DIR / "permutation_vectors.txt").read_text()
    for line in text.splitlines():
        if line.startswith("ascon_p12_iv_zero_key_zero_nonce"):
            return [int(w, 16) for w in line.split("=")[1].split()]
    raise AssertionError("pinned vector missing")


def test_permutation_pinned_vector():
    state = AsconState([_IV_WORD, 0, 0, 0, 0])
    ascon_permutation(state, 12)
    assert state.words == _pinned_permutation_words()


def test_permutation_round_count_validation():
    state = AsconState()
    with pytest.raises(BadLength):
        ascon_permutation(state, 0)
    with pytest.raises(BadLength):
        ascon_permutation(state, 13)


def test_state_width_validation():
    with pytest.raises(BadLength):
        AsconState([0, 0, 0])


def test_full_kat_file_both_directions():
    report = run_kat_file(ASCON128, _KAT_PATH.read_text())
    assert report.total == 1089
    assert report.passed == 1089
    assert report.first_failure is None
    assert report.all_passed


def test_empty_message_tag():
    key = nonce = bytes(range(16))
    ciphertext, tag = ascon_aead_encrypt(key, nonce, b"", b"")
    assert ciphertext == b""
    assert tag.hex().upper() == "E355159F292911F794CB1432A0103A8A"


def test_tag_mismatch_on_tamper():
    key = nonce = bytes(range(16))
    ciphertext, tag = ascon_aead_encrypt(key, nonce, b"ad", b"payload")
    bad_tag = bytes([tag[0] ^ 1]) + tag[1:]
    with pytest.raises(TagMismatch):
        ascon_aead_decrypt(key, nonce, b"ad", ciphertext, bad_tag)
    bad_ct = bytes([ciphertext[0] ^ 1]) + ciphertext[1:]
    with pytest.raises(TagMismatch):
        ascon_aead_decrypt(key, nonce, b"ad", bad_ct, tag)
    with pytest.raises(TagMismatch):
        ascon_aead_decrypt(key, nonce, b"AD", ciphertext, tag)


def test_verify_disabled_returns_without_raising():
    key = nonce = bytes(range(16))
    ciphertext, tag = ascon_aead_encrypt(key, nonce, b"", b"payload")
    bad_tag = bytes(16)
    out = ascon_aead_decrypt(key, nonce, b"", ciphertext, bad_tag,
                             verify_tag=False)
    assert out == b"payload"  # keystream is tag-independent


def test_input_length_validation():
    with pytest.raises(BadLength):
        ascon_aead_encrypt(b"short", bytes(16), b"", b"")
    with pytest.raises(BadLength):
        ascon_aead_encrypt(bytes(16), b"short", b"", b"")
    with pytest.raises(BadLength):
        ascon_aead_decrypt(bytes(16), bytes(16), b"", b"", b"tag")


@settings(max_examples=60, deadline=None)
@given(key=st.binary(min_size=16, max_size=16),
       nonce=st.binary(min_size=16, max_size=16),
       ad=st.binary(min_size=0, max_size=40),
       plaintext=st.binary(min_size=0, max_size=80))
def test_round_trip_property(key, nonce, ad, plaintext):
    ciphertext, tag = ascon_aead_encrypt(key, nonce, ad, plaintext)
    assert len(ciphertext) == len(plaintext)
    assert len(tag) == 16
    assert ascon_aead_decrypt(key, nonce, ad, ciphertext, tag) == plaintext


@settings(max_examples=30, deadline=None)
@given(key=st.binary(min_size=16, max_size=16),
       nonce=st.binary(min_size=16, max_size=16),
       plaintext=st.binary(min_size=0, max_size=40))
def test_ciphertext_differs_from_plaintext_statistically(key, nonce, plaintext):
    ciphertext, _tag = ascon_aead_encrypt(key, nonce, b"", plaintext)
    if len(plaintext) >= 8:
        assert ciphertext != plaintext
