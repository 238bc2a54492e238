"""AES-128 block cipher and CBC mode, implemented from first principles.

The state is kept as a flat 16-byte list in input order (``s[4*c + r]`` is
row ``r`` of column ``c``), with the usual byte-substitution, row-shift,
column-mix and round-key steps. Lookup tables for the GF(2^8)
multiplications are precomputed at import time.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BadLength, BadPadding

__all__ = [
    "AesContext",
    "aes128_block_encrypt", "aes128_block_decrypt",
    "aes128_cbc_encrypt", "aes128_cbc_decrypt",
]


def _gmul(a: int, b: int) -> int:
    """Multiply two elements of GF(2^8) modulo x^8 + x^4 + x^3 + x + 1."""
    product = 0
    for _ in range(8):
        if b & 1:
            product ^= a
        b >>= 1
        a <<= 1
        if a & 0x100:
            a ^= 0x11B
    return product


def _build_sbox() -> tuple[list[int], list[int]]:
    # Multiplicative inverses via exponentiation by the group order.
    inverse = [0] * 256
    for value in range(1, 256):
        acc = 1
        for _ in range(254):
            acc = _gmul(acc, value)
        inverse[value] = acc
    sbox = [0] * 256
    for value in range(256):
        x = inverse[value]
        affine = 0x63
        for shift in (0, 1, 2, 3, 4):
            affine ^= ((x << shift) | (x >> (8 - shift))) & 0xFF
        sbox[value] = affine
    inv_sbox = [0] * 256
    for value, substituted in enumerate(sbox):
        inv_sbox[substituted] = value
    return sbox, inv_sbox


_SBOX, _INV_SBOX = _build_sbox()
_MUL2 = [_gmul(x, 2) for x in range(256)]
_MUL3 = [_gmul(x, 3) for x in range(256)]
_MUL9 = [_gmul(x, 9) for x in range(256)]
_MUL11 = [_gmul(x, 11) for x in range(256)]
_MUL13 = [_gmul(x, 13) for x in range(256)]
_MUL14 = [_gmul(x, 14) for x in range(256)]


def _expand_key(key: bytes) -> list[bytes]:
    """Derive the 11 round keys of AES-128 from a 16-byte key."""
    words = [list(key[i:i + 4]) for i in range(0, 16, 4)]
    rcon = 1
    for i in range(4, 44):
        word = list(words[i - 1])
        if i % 4 == 0:
            word = word[1:] + word[:1]
            word = [_SBOX[b] for b in word]
            word[0] ^= rcon
            rcon = _gmul(rcon, 2)
        words.append([a ^ b for a, b in zip(word, words[i - 4])])
    return [bytes(sum(words[4 * r:4 * r + 4], [])) for r in range(11)]


@dataclass
class AesContext:
    """A 16-byte key with its expanded round-key schedule."""
    key: bytes
    round_keys: list[bytes] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.key) != 16:
            raise BadLength(f"AES-128 key must be 16 bytes, got {len(self.key)}")
        self.round_keys = _expand_key(self.key)


def _add_round_key(state: list[int], round_key: bytes) -> None:
    for i in range(16):
        state[i] ^= round_key[i]


def _shift_rows(state: list[int]) -> list[int]:
    return [state[(4 * (c + r) + r) % 16] for c in range(4) for r in range(4)]


def _inv_shift_rows(state: list[int]) -> list[int]:
    return [state[(4 * (c - r) + r) % 16] for c in range(4) for r in range(4)]


def _mix_columns(state: list[int]) -> list[int]:
    out = [0] * 16
    for c in range(0, 16, 4):
        a0, a1, a2, a3 = state[c:c + 4]
        out[c] = _MUL2[a0] ^ _MUL3[a1] ^ a2 ^ a3
        out[c + 1] = a0 ^ _MUL2[a1] ^ _MUL3[a2] ^ a3
        out[c + 2] = a0 ^ a1 ^ _MUL2[a2] ^ _MUL3[a3]
        out[c + 3] = _MUL3[a0] ^ a1 ^ a2 ^ _MUL2[a3]
    return out


def _inv_mix_columns(state: list[int]) -> list[int]:
    out = [0] * 16
    for c in range(0, 16, 4):
        a0, a1, a2, a3 = state[c:c + 4]
        out[c] = _MUL14[a0] ^ _MUL11[a1] ^ _MUL13[a2] ^ _MUL9[a3]
        out[c + 1] = _MUL9[a0] ^ _MUL14[a1] ^ _MUL11[a2] ^ _MUL13[a3]
        out[c + 2] = _MUL13[a0] ^ _MUL9[a1] ^ _MUL14[a2] ^ _MUL11[a3]
        out[c + 3] = _MUL11[a0] ^ _MUL13[a1] ^ _MUL9[a2] ^ _MUL14[a3]
    return out


def aes128_block_encrypt(ctx: AesContext, block: bytes) -> bytes:
    if len(block) != 16:
        raise BadLength(f"AES block must be 16 bytes, got {len(block)}")
    state = list(block)
    _add_round_key(state, ctx.round_keys[0])
    for round_no in range(1, 10):
        state = [_SBOX[b] for b in state]
        state = _shift_rows(state)
        state = _mix_columns(state)
        _add_round_key(state, ctx.round_keys[round_no])
    state = [_SBOX[b] for b in state]
    state = _shift_rows(state)
    _add_round_key(state, ctx.round_keys[10])
    return bytes(state)


def aes128_block_decrypt(ctx: AesContext, block: bytes) -> bytes:
    if len(block) != 16:
        raise BadLength(f"AES block must be 16 bytes, got {len(block)}")
    state = list(block)
    _add_round_key(state, ctx.round_keys[10])
    state = _inv_shift_rows(state)
    state = [_INV_SBOX[b] for b in state]
    for round_no in range(9, 0, -1):
        _add_round_key(state, ctx.round_keys[round_no])
        state = _inv_mix_columns(state)
        state = _inv_shift_rows(state)
        state = [_INV_SBOX[b] for b in state]
    _add_round_key(state, ctx.round_keys[0])
    return bytes(state)


def aes128_cbc_encrypt(key: bytes, iv: bytes, plaintext: bytes) -> bytes:
    """CBC-encrypt with block padding (pad value = pad length, 1..16)."""
    if len(iv) != 16:
        raise BadLength(f"CBC IV must be 16 bytes, got {len(iv)}")
    ctx = AesContext(key)
    pad_len = 16 - len(plaintext) % 16
    padded = plaintext + bytes([pad_len]) * pad_len
    out = bytearray()
    previous = iv
    for offset in range(0, len(padded), 16):
        block = bytes(a ^ b for a, b in zip(padded[offset:offset + 16], previous))
        previous = aes128_block_encrypt(ctx, block)
        out += previous
    return bytes(out)


def aes128_cbc_decrypt(key: bytes, iv: bytes, ciphertext: bytes) -> bytes:
    """CBC-decrypt and strip block padding, validating the pad bytes."""
    if len(iv) != 16:
        raise BadLength(f"CBC IV must be 16 bytes, got {len(iv)}")
    if len(ciphertext) == 0 or len(ciphertext) % 16 != 0:
        raise BadLength(
            f"CBC ciphertext length must be a positive multiple of 16, "
            f"got {len(ciphertext)}")
    ctx = AesContext(key)
    out = bytearray()
    previous = iv
    for offset in range(0, len(ciphertext), 16):
        block = ciphertext[offset:offset + 16]
        out += bytes(a ^ b for a, b in zip(aes128_block_decrypt(ctx, block), previous))
        previous = block
    pad_len = out[-1]
    if pad_len < 1 or pad_len > 16:
        raise BadPadding(f"invalid pad length byte {pad_len}")
    if any(b != pad_len for b in out[-pad_len:]):
        raise BadPadding("pad bytes disagree with pad length")
    return bytes(out[:-pad_len])
