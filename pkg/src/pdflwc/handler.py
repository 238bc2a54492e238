"""Standard security handler computations (revision 4, 128-bit file keys).

Implements the password padding, owner-entry and user-entry derivations,
file-key computation, password authentication (user and owner), and the
per-object key derivation that mixes object and generation numbers into the
file key. The legacy stream cipher used by the O/U derivations is a plain
key-scheduled byte-stream generator implemented locally.
"""
from __future__ import annotations

import enum
import hashlib
import struct
from dataclasses import dataclass
from typing import Optional

from .ciphers import CipherSuite
from .errors import BadLength, UnsupportedRevision

__all__ = [
    "PASSWORD_PAD", "SecurityParams", "Credentials", "AuthStatus", "AuthResult",
    "pad_password", "compute_o_value", "compute_encryption_key",
    "compute_u_value", "authenticate", "derive_object_key",
]

# 32-byte padding string applied to every password.
PASSWORD_PAD = bytes([
    0x28, 0xBF, 0x4E, 0x5E, 0x4E, 0x75, 0x8A, 0x41,
    0x64, 0x00, 0x4E, 0x56, 0xFF, 0xFA, 0x01, 0x08,
    0x2E, 0x2E, 0x00, 0xB6, 0xD0, 0x68, 0x3E, 0x80,
    0x2F, 0x0C, 0xA9, 0xFE, 0x64, 0x53, 0x69, 0x7A,
])

# Salt mixed into per-object keys for block/AEAD crypt filters.
_OBJECT_KEY_SALT = b"\x73\x41\x6c\x54"


@dataclass(frozen=True)
class SecurityParams:
    """Contents of a revision-4 encryption dictionary."""
    o_value: bytes
    u_value: bytes
    permissions: int
    cfm_name: str = "AESV2"
    revision: int = 4
    version: int = 4
    length_bits: int = 128
    encrypt_metadata: bool = True
    filter_name: str = "Standard"

    @property
    def key_len(self) -> int:
        return self.length_bits // 8

    def require_supported(self) -> None:
        if self.revision != 4 or self.version != 4:
            raise UnsupportedRevision(
                f"only revision 4 / version 4 is supported, "
                f"got R={self.revision} V={self.version}")
        if self.length_bits != 128:
            raise UnsupportedRevision(
                f"only 128-bit keys are supported, got {self.length_bits}")


@dataclass(frozen=True)
class Credentials:
    user_password: bytes = b""
    owner_password: bytes = b""


class AuthStatus(enum.Enum):
    USER_PASSWORD = "user_password"
    OWNER_PASSWORD = "owner_password"
    REJECTED = "rejected"


@dataclass(frozen=True)
class AuthResult:
    status: AuthStatus
    file_key: Optional[bytes] = None


def _rc4(key: bytes, data: bytes) -> bytes:
    state = list(range(256))
    j = 0
    for i in range(256):
        j = (j + state[i] + key[i % len(key)]) & 0xFF
        state[i], state[j] = state[j], state[i]
    out = bytearray(len(data))
    i = j = 0
    for n, byte in enumerate(data):
        i = (i + 1) & 0xFF
        j = (j + state[i]) & 0xFF
        state[i], state[j] = state[j], state[i]
        out[n] = byte ^ state[(state[i] + state[j]) & 0xFF]
    return bytes(out)


def pad_password(password: bytes) -> bytes:
    """Truncate to 32 bytes, then fill up to 32 with the padding string."""
    return (password + PASSWORD_PAD)[:32]


def _pack_permissions(permissions: int) -> bytes:
    """Permissions as 4 little-endian bytes of the 32-bit two's complement."""
    return struct.pack("<I", permissions & 0xFFFFFFFF)


def compute_o_value(owner_password: bytes, user_password: bytes,
                    key_len: int = 16) -> bytes:
    """Owner entry: the padded user password encrypted under an owner key."""
    digest = hashlib.md5(pad_password(owner_password or user_password)).digest()
    for _ in range(50):
        digest = hashlib.md5(digest).digest()
    rc4_key = digest[:key_len]
    out = _rc4(rc4_key, pad_password(user_password))
    for i in range(1, 20):
        out = _rc4(bytes(b ^ i for b in rc4_key), out)
    return out


def compute_encryption_key(user_password: bytes, o_value: bytes,
                           permissions: int, id0: bytes,
                           key_len: int = 16,
                           encrypt_metadata: bool = True) -> bytes:
    """Derive the file encryption key from the user password."""
    if len(o_value) != 32:
        raise BadLength(f"owner entry must be 32 bytes, got {len(o_value)}")
    hasher = hashlib.md5()
    hasher.update(pad_password(user_password))
    hasher.update(o_value)
    hasher.update(_pack_permissions(permissions))
    hasher.update(id0)
    if not encrypt_metadata:
        hasher.update(b"\xff\xff\xff\xff")
    digest = hasher.digest()
    for _ in range(50):
        digest = hashlib.md5(digest[:key_len]).digest()
    return digest[:key_len]


def compute_u_value(file_key: bytes, id0: bytes) -> bytes:
    """User entry: keyed digest of the padding string and file identifier."""
    digest = hashlib.md5(PASSWORD_PAD + id0).digest()
    out = _rc4(file_key, digest)
    for i in range(1, 20):
        out = _rc4(bytes(b ^ i for b in file_key), out)
    return out + b"\x00" * 16


def _user_key_matches(params: SecurityParams, user_password: bytes,
                      id0: bytes) -> Optional[bytes]:
    file_key = compute_encryption_key(
        user_password, params.o_value, params.permissions, id0,
        params.key_len, params.encrypt_metadata)
    expected = compute_u_value(file_key, id0)
    if expected[:16] == params.u_value[:16]:
        return file_key
    return None


def authenticate(params: SecurityParams, password: bytes,
                 id0: bytes) -> AuthResult:
    """Try a password first as the user password, then as the owner password."""
    params.require_supported()
    file_key = _user_key_matches(params, password, id0)
    if file_key is not None:
        return AuthResult(AuthStatus.USER_PASSWORD, file_key)
    # Owner check: undo the owner-key stream encryption of the O entry to
    # recover the padded user password, then re-run the user check with it.
    digest = hashlib.md5(pad_password(password)).digest()
    for _ in range(50):
        digest = hashlib.md5(digest).digest()
    rc4_key = digest[:params.key_len]
    recovered = params.o_value
    for i in range(19, -1, -1):
        recovered = _rc4(bytes(b ^ i for b in rc4_key), recovered)
    file_key = _user_key_matches(params, recovered, id0)
    if file_key is not None:
        return AuthResult(AuthStatus.OWNER_PASSWORD, file_key)
    return AuthResult(AuthStatus.REJECTED, None)


def derive_object_key(file_key: bytes, obj_num: int, gen_num: int,
                      suite: CipherSuite) -> bytes:
    """Per-object key: file key mixed with object and generation numbers.

    The object number contributes its 3 low bytes and the generation number
    its 2 low bytes, both little-endian; block/AEAD suites additionally mix
    in a fixed 4-byte salt. The result is truncated to
    ``min(len(file_key) + 5, 16)`` bytes.
    """
    hasher = hashlib.md5()
    hasher.update(file_key)
    hasher.update(struct.pack("<I", obj_num & 0xFFFFFFFF)[:3])
    hasher.update(struct.pack("<H", gen_num & 0xFFFF))
    if suite.cfm_name != "V2":
        hasher.update(_OBJECT_KEY_SALT)
    return hasher.digest()[:min(len(file_key) + 5, 16)]
