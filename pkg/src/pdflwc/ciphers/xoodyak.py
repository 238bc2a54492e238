"""Xoodyak authenticated encryption (keyed mode over the Xoodoo permutation).

The 384-bit state is 12 lanes of 32 bits (three planes of four lanes),
little-endian within each lane. Keyed mode absorbs at 44 bytes and squeezes
keystream at 24 bytes per permutation call. Every absorbed block is
injected with a trailing 0x01 padding byte and a domain byte folded into
the last state byte; encryption interleaves keystream extraction with
re-absorption of the plaintext so the tag authenticates the message.
"""
from __future__ import annotations

import hmac
from dataclasses import dataclass, field

from ..errors import BadLength, TagMismatch

__all__ = ["XoodooState", "xoodoo_permutation",
           "xoodyak_aead_encrypt", "xoodyak_aead_decrypt"]

_MASK32 = (1 << 32) - 1
_ROUND_CONSTANTS = (0x058, 0x038, 0x3C0, 0x0D0, 0x120, 0x014,
                    0x060, 0x02C, 0x380, 0x0F0, 0x1A0, 0x012)
_ABSORB_RATE = 44    # keyed absorb rate, bytes
_SQUEEZE_RATE = 24   # keyed squeeze/crypt rate, bytes
_TAG_LEN = 16


def _rotl32(value: int, amount: int) -> int:
    amount %= 32
    return ((value << amount) | (value >> (32 - amount))) & _MASK32


@dataclass
class XoodooState:
    """Twelve 32-bit lanes; plane ``y`` holds lanes ``4*y .. 4*y+3``."""
    lanes: list[int] = field(default_factory=lambda: [0] * 12)

    def __post_init__(self) -> None:
        if len(self.lanes) != 12:
            raise BadLength(f"state needs 12 lanes, got {len(self.lanes)}")
        self.lanes = [lane & _MASK32 for lane in self.lanes]

    def to_bytes(self) -> bytes:
        return b"".join(lane.to_bytes(4, "little") for lane in self.lanes)

    @classmethod
    def from_bytes(cls, data: bytes) -> "XoodooState":
        if len(data) != 48:
            raise BadLength(f"state needs 48 bytes, got {len(data)}")
        return cls([int.from_bytes(data[4 * i:4 * i + 4], "little")
                    for i in range(12)])


def _cyclic(plane: list[int], dx: int, dz: int) -> list[int]:
    """Shift a plane by ``dx`` lanes and rotate each lane left by ``dz``."""
    return [_rotl32(plane[(x - dx) % 4], dz) for x in range(4)]


def xoodoo_permutation(state: XoodooState) -> None:
    """Apply all 12 rounds in place."""
    a0 = state.lanes[0:4]
    a1 = state.lanes[4:8]
    a2 = state.lanes[8:12]
    for constant in _ROUND_CONSTANTS:
        # theta: column parity mixing
        parity = [a0[x] ^ a1[x] ^ a2[x] for x in range(4)]
        effect = [p5 ^ p14 for p5, p14 in
                  zip(_cyclic(parity, 1, 5), _cyclic(parity, 1, 14))]
        a0 = [a0[x] ^ effect[x] for x in range(4)]
        a1 = [a1[x] ^ effect[x] for x in range(4)]
        a2 = [a2[x] ^ effect[x] for x in range(4)]
        # rho west
        a1 = _cyclic(a1, 1, 0)
        a2 = _cyclic(a2, 0, 11)
        # iota
        a0[0] ^= constant
        # chi: nonlinear layer
        b0 = [(~a1[x] & _MASK32) & a2[x] for x in range(4)]
        b1 = [(~a2[x] & _MASK32) & a0[x] for x in range(4)]
        b2 = [(~a0[x] & _MASK32) & a1[x] for x in range(4)]
        a0 = [a0[x] ^ b0[x] for x in range(4)]
        a1 = [a1[x] ^ b1[x] for x in range(4)]
        a2 = [a2[x] ^ b2[x] for x in range(4)]
        # rho east
        a1 = _cyclic(a1, 0, 1)
        a2 = _cyclic(a2, 2, 8)
    state.lanes = a0 + a1 + a2


def _split_blocks(data: bytes, rate: int) -> list[bytes]:
    """Split into rate-sized blocks, always yielding at least one block."""
    blocks = [data[i:i + rate] for i in range(0, len(data), rate)]
    return blocks or [b""]


class _KeyedDuplex:
    """Keyed duplex construction driving the Xoodoo permutation."""

    def __init__(self, key: bytes) -> None:
        if len(key) != 16:
            raise BadLength(f"key must be 16 bytes, got {len(key)}")
        self._state = bytearray(48)
        self._up_phase = True
        # Absorb the key with an empty key-id whose length byte is appended.
        self._absorb_any(key + b"\x00", _ABSORB_RATE, 0x02)

    def _permute(self) -> None:
        lanes = XoodooState.from_bytes(bytes(self._state))
        xoodoo_permutation(lanes)
        self._state[:] = lanes.to_bytes()

    def _down(self, block: bytes, domain: int) -> None:
        for i, byte in enumerate(block):
            self._state[i] ^= byte
        self._state[len(block)] ^= 0x01
        self._state[47] ^= domain
        self._up_phase = False

    def _up(self, out_len: int, domain: int) -> bytes:
        self._state[47] ^= domain
        self._permute()
        self._up_phase = True
        return bytes(self._state[:out_len])

    def _absorb_any(self, data: bytes, rate: int, domain: int) -> None:
        for index, block in enumerate(_split_blocks(data, rate)):
            if not self._up_phase:
                self._up(0, 0x00)
            self._down(block, domain if index == 0 else 0x00)

    def absorb(self, data: bytes) -> None:
        self._absorb_any(data, _ABSORB_RATE, 0x03)

    def crypt(self, data: bytes, decrypt: bool) -> bytes:
        out = bytearray()
        domain = 0x80
        for block in _split_blocks(data, _SQUEEZE_RATE):
            keystream = self._up(len(block), domain)
            processed = bytes(a ^ b for a, b in zip(block, keystream))
            out += processed
            self._down(processed if decrypt else block, 0x00)
            domain = 0x00
        return bytes(out)

    def squeeze_tag(self) -> bytes:
        return self._up(_TAG_LEN, 0x40)


def xoodyak_aead_encrypt(key: bytes, nonce: bytes, associated_data: bytes,
                         plaintext: bytes) -> tuple[bytes, bytes]:
    """Encrypt; returns (ciphertext, 16-byte tag)."""
    if len(nonce) != 16:
        raise BadLength(f"nonce must be 16 bytes, got {len(nonce)}")
    duplex = _KeyedDuplex(key)
    duplex.absorb(nonce)
    duplex.absorb(associated_data)
    ciphertext = duplex.crypt(plaintext, decrypt=False)
    return ciphertext, duplex.squeeze_tag()


def xoodyak_aead_decrypt(key: bytes, nonce: bytes, associated_data: bytes,
                         ciphertext: bytes, tag: bytes,
                         verify_tag: bool = True) -> bytes:
    """Decrypt; raises TagMismatch unless verification is disabled."""
    if len(nonce) != 16:
        raise BadLength(f"nonce must be 16 bytes, got {len(nonce)}")
    if len(tag) != _TAG_LEN:
        raise BadLength(f"tag must be 16 bytes, got {len(tag)}")
    duplex = _KeyedDuplex(key)
    duplex.absorb(nonce)
    duplex.absorb(associated_data)
    plaintext = duplex.crypt(ciphertext, decrypt=True)
    expected = duplex.squeeze_tag()
    if verify_tag and not hmac.compare_digest(expected, tag):
        raise TagMismatch("authentication tag does not match")
    return plaintext
