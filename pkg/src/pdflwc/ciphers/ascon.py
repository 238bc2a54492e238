"""ASCON-128 authenticated encryption.

The 320-bit state is five 64-bit words loaded big-endian. Initialization
and finalization run 12 permutation rounds, data processing runs 6, with an
8-byte rate. Associated data and plaintext are padded with a single 0x80
byte then zeros to a rate boundary; the final ciphertext block is truncated
back to the message length. A one-bit domain separator is folded into the
capacity between the associated-data and message phases.
"""
from __future__ import annotations

import hmac
from dataclasses import dataclass, field

from ..errors import BadLength, TagMismatch

__all__ = ["AsconState", "ascon_permutation",
           "ascon_aead_encrypt", "ascon_aead_decrypt"]

_MASK64 = (1 << 64) - 1
_IV = 0x80400C0600000000  # key 128, rate 64, 12 init/final rounds, 6 data rounds
_RATE = 8


def _rotr(value: int, amount: int) -> int:
    return ((value >> amount) | (value << (64 - amount))) & _MASK64


@dataclass
class AsconState:
    """Five 64-bit words; ``words[0]`` is the rate word."""
    words: list[int] = field(default_factory=lambda: [0] * 5)

    def __post_init__(self) -> None:
        if len(self.words) != 5:
            raise BadLength(f"state needs 5 words, got {len(self.words)}")
        self.words = [w & _MASK64 for w in self.words]


def ascon_permutation(state: AsconState, rounds: int) -> None:
    """Apply the last ``rounds`` rounds of the 12-round permutation in place."""
    if not 1 <= rounds <= 12:
        raise BadLength(f"round count must be in 1..12, got {rounds}")
    s = state.words
    for r in range(12 - rounds, 12):
        # round constant
        s[2] ^= 0xF0 - r * 0x10 + r * 0x1
        # substitution layer
        s[0] ^= s[4]
        s[4] ^= s[3]
        s[2] ^= s[1]
        t = [(~s[i] & _MASK64) & s[(i + 1) % 5] for i in range(5)]
        for i in range(5):
            s[i] ^= t[(i + 1) % 5]
        s[1] ^= s[0]
        s[0] ^= s[4]
        s[3] ^= s[2]
        s[2] = ~s[2] & _MASK64
        # linear diffusion layer
        s[0] ^= _rotr(s[0], 19) ^ _rotr(s[0], 28)
        s[1] ^= _rotr(s[1], 61) ^ _rotr(s[1], 39)
        s[2] ^= _rotr(s[2], 1) ^ _rotr(s[2], 6)
        s[3] ^= _rotr(s[3], 10) ^ _rotr(s[3], 17)
        s[4] ^= _rotr(s[4], 7) ^ _rotr(s[4], 41)
        s[0] &= _MASK64
        s[1] &= _MASK64
        s[2] &= _MASK64
        s[3] &= _MASK64
        s[4] &= _MASK64


def _initialize(key: bytes, nonce: bytes) -> AsconState:
    if len(key) != 16:
        raise BadLength(f"key must be 16 bytes, got {len(key)}")
    if len(nonce) != 16:
        raise BadLength(f"nonce must be 16 bytes, got {len(nonce)}")
    k0 = int.from_bytes(key[:8], "big")
    k1 = int.from_bytes(key[8:], "big")
    n0 = int.from_bytes(nonce[:8], "big")
    n1 = int.from_bytes(nonce[8:], "big")
    state = AsconState([_IV, k0, k1, n0, n1])
    ascon_permutation(state, 12)
    state.words[3] ^= k0
    state.words[4] ^= k1
    return state


def _pad(data: bytes) -> bytes:
    """Append 0x80 then zeros up to the next rate boundary (always grows)."""
    return data + b"\x80" + b"\x00" * (_RATE - 1 - len(data) % _RATE)


def _absorb_associated_data(state: AsconState, associated_data: bytes) -> None:
    if associated_data:
        padded = _pad(associated_data)
        for offset in range(0, len(padded), _RATE):
            state.words[0] ^= int.from_bytes(padded[offset:offset + _RATE], "big")
            ascon_permutation(state, 6)
    state.words[4] ^= 1  # domain separation, applied even with no data


def _finalize(state: AsconState, key: bytes) -> bytes:
    k0 = int.from_bytes(key[:8], "big")
    k1 = int.from_bytes(key[8:], "big")
    state.words[1] ^= k0
    state.words[2] ^= k1
    ascon_permutation(state, 12)
    tag0 = (state.words[3] ^ k0).to_bytes(8, "big")
    tag1 = (state.words[4] ^ k1).to_bytes(8, "big")
    return tag0 + tag1


def ascon_aead_encrypt(key: bytes, nonce: bytes, associated_data: bytes,
                       plaintext: bytes) -> tuple[bytes, bytes]:
    """Encrypt; returns (ciphertext, 16-byte tag)."""
    state = _initialize(key, nonce)
    _absorb_associated_data(state, associated_data)
    padded = _pad(plaintext)
    ciphertext = bytearray()
    for offset in range(0, len(padded), _RATE):
        state.words[0] ^= int.from_bytes(padded[offset:offset + _RATE], "big")
        ciphertext += state.words[0].to_bytes(8, "big")
        if offset + _RATE < len(padded):
            ascon_permutation(state, 6)
    return bytes(ciphertext[:len(plaintext)]), _finalize(state, key)


def ascon_aead_decrypt(key: bytes, nonce: bytes, associated_data: bytes,
                       ciphertext: bytes, tag: bytes,
                       verify_tag: bool = True) -> bytes:
    """Decrypt; raises TagMismatch unless verification is disabled."""
    if len(tag) != 16:
        raise BadLength(f"tag must be 16 bytes, got {len(tag)}")
    state = _initialize(key, nonce)
    _absorb_associated_data(state, associated_data)
    plaintext = bytearray()
    full_blocks, last_len = divmod(len(ciphertext), _RATE)
    for block_no in range(full_blocks):
        block = int.from_bytes(
            ciphertext[block_no * _RATE:(block_no + 1) * _RATE], "big")
        plaintext += (state.words[0] ^ block).to_bytes(8, "big")
        state.words[0] = block
        ascon_permutation(state, 6)
    last = ciphertext[full_blocks * _RATE:]
    keystream = state.words[0].to_bytes(8, "big")
    plaintext += bytes(a ^ b for a, b in zip(last, keystream))
    # Replace the consumed rate bytes with the ciphertext and flip the pad bit.
    replaced = last + keystream[last_len:]
    state.words[0] = int.from_bytes(replaced, "big") ^ (0x80 << (56 - 8 * last_len))
    expected = _finalize(state, key)
    if verify_tag and not hmac.compare_digest(expected, tag):
        raise TagMismatch("authentication tag does not match")
    return bytes(plaintext)
