"""Document-level encryption and decryption.

Ties together the target walk, the security handler's key derivations, and
the cipher suites. Payloads are framed uniformly: the CBC suite stores
``iv || ciphertext`` (plaintext padded to whole blocks), the AEAD suites
store ``nonce || ciphertext || tag`` with ciphertext the exact plaintext
length. Every payload gets a fresh random nonce/IV and a per-object key.
"""
from __future__ import annotations

import random
import secrets
from dataclasses import dataclass, field
from typing import Optional

from .ciphers import (CipherSuite, SUITES_BY_CFM, aes128_cbc_decrypt,
                      aes128_cbc_encrypt, ascon_aead_decrypt,
                      ascon_aead_encrypt, xoodyak_aead_decrypt,
                      xoodyak_aead_encrypt)
from .errors import (AlreadyEncrypted, NotEncrypted, TooShort,
                     UnsupportedHandler, WrongPassword)
from .handler import (AuthResult, AuthStatus, Credentials, SecurityParams,
                      authenticate, compute_encryption_key, compute_o_value,
                      compute_u_value, derive_object_key)
from .objects import (PdfDocument, PdfName, PdfReference, PdfStream,
                      PdfString)
from .targets import TargetRef, collect_encryption_targets, get_payload, set_payload

__all__ = [
    "EncryptionConfig", "EncryptionResult", "DecryptionResult",
    "encrypt_payload", "decrypt_payload", "build_encrypt_dict",
    "encrypt_document", "decrypt_document", "read_security_params",
    "DEFAULT_PERMISSIONS",
]

# Default permission word: every permission granted, reserved high bits set,
# low two (reserved) bits clear — the 32-bit two's complement of -4.
DEFAULT_PERMISSIONS = -4


@dataclass(frozen=True)
class EncryptionConfig:
    suite: CipherSuite
    credentials: Credentials = field(default_factory=Credentials)
    permissions: int = DEFAULT_PERMISSIONS
    encrypt_metadata: bool = True
    rng_seed: Optional[int] = None  # fixed seed gives reproducible nonces/IDs


@dataclass
class EncryptionResult:
    document: PdfDocument
    params: SecurityParams
    file_key: bytes
    targets: list


@dataclass
class DecryptionResult:
    document: PdfDocument
    params: SecurityParams
    auth: AuthResult
    suite: CipherSuite
    targets: list


class _ByteSource:
    """Random bytes, reproducible when seeded."""

    def __init__(self, seed: Optional[int]) -> None:
        self._rand = random.Random(seed) if seed is not None else None

    def take(self, n: int) -> bytes:
        if self._rand is not None:
            return self._rand.randbytes(n)
        return secrets.token_bytes(n)


def encrypt_payload(suite: CipherSuite, object_key: bytes, plaintext: bytes,
                    nonce: bytes) -> bytes:
    """Frame and encrypt one payload under a per-object key."""
    if suite.kind == "AES128":
        return nonce + aes128_cbc_encrypt(object_key, nonce, plaintext)
    if suite.kind == "ASCON128":
        ciphertext, tag = ascon_aead_encrypt(object_key, nonce, b"", plaintext)
    elif suite.kind == "XOODYAK":
        ciphertext, tag = xoodyak_aead_encrypt(object_key, nonce, b"", plaintext)
    else:
        raise UnsupportedHandler(f"unknown cipher suite {suite.kind}")
    return nonce + ciphertext + tag


def decrypt_payload(suite: CipherSuite, object_key: bytes, frame: bytes,
                    verify_tag: bool = True) -> bytes:
    """Unframe and decrypt one payload under a per-object key."""
    minimum = suite.nonce_len + suite.tag_len + (16 if suite.kind == "AES128" else 0)
    if len(frame) < minimum:
        raise TooShort(f"framed payload is {len(frame)} bytes; "
                       f"{suite.kind} needs at least {minimum}")
    nonce = frame[:suite.nonce_len]
    if suite.kind == "AES128":
        return aes128_cbc_decrypt(object_key, nonce, frame[suite.nonce_len:])
    body = frame[suite.nonce_len:len(frame) - suite.tag_len]
    tag = frame[len(frame) - suite.tag_len:]
    if suite.kind == "ASCON128":
        return ascon_aead_decrypt(object_key, nonce, b"", body, tag, verify_tag)
    if suite.kind == "XOODYAK":
        return xoodyak_aead_decrypt(object_key, nonce, b"", body, tag, verify_tag)
    raise UnsupportedHandler(f"unknown cipher suite {suite.kind}")


def build_encrypt_dict(params: SecurityParams) -> dict:
    """The encryption dictionary for a revision-4 document."""
    return {
        "Filter": PdfName(params.filter_name),
        "V": params.version,
        "R": params.revision,
        "Length": params.length_bits,
        "P": params.permissions,
        "O": PdfString(params.o_value, hex=True),
        "U": PdfString(params.u_value, hex=True),
        "EncryptMetadata": params.encrypt_metadata,
        "CF": {
            "StdCF": {
                "Type": PdfName("CryptFilter"),
                "CFM": PdfName(params.cfm_name),
                "AuthEvent": PdfName("DocOpen"),
                "Length": params.length_bits // 8,
            },
        },
        "StmF": PdfName("StdCF"),
        "StrF": PdfName("StdCF"),
    }


def _is_metadata_stream(doc: PdfDocument, target: TargetRef) -> bool:
    if target.kind != "stream":
        return False
    obj = doc.get_object(target.obj_num)
    value = obj.value if obj else None
    return (isinstance(value, PdfStream)
            and value.dictionary.get("Type") == PdfName("Metadata"))


def _ensure_file_id(doc: PdfDocument, rng: _ByteSource) -> bytes:
    """Keep the first ID half, regenerate the second; create both if absent."""
    existing = doc.file_id()
    if existing is None:
        id0 = rng.take(16)
    else:
        id0 = existing[0]
    doc.trailer.dictionary["ID"] = [PdfString(id0, hex=True),
                                    PdfString(rng.take(16), hex=True)]
    return id0


def encrypt_document(doc: PdfDocument,
                     config: EncryptionConfig) -> EncryptionResult:
    """Encrypt every eligible string and stream; returns a new document."""
    if doc.is_encrypted:
        raise AlreadyEncrypted("document already has an Encrypt entry")
    work = doc.copy()
    rng = _ByteSource(config.rng_seed)
    id0 = _ensure_file_id(work, rng)

    creds = config.credentials
    o_value = compute_o_value(creds.owner_password, creds.user_password)
    file_key = compute_encryption_key(
        creds.user_password, o_value, config.permissions, id0,
        config.suite.key_len, config.encrypt_metadata)
    u_value = compute_u_value(file_key, id0)
    params = SecurityParams(
        o_value=o_value, u_value=u_value, permissions=config.permissions,
        cfm_name=config.suite.cfm_name,
        length_bits=config.suite.length_bits,
        encrypt_metadata=config.encrypt_metadata)

    targets = collect_encryption_targets(work)
    for target in targets:
        if not config.encrypt_metadata and _is_metadata_stream(work, target):
            continue
        object_key = derive_object_key(file_key, target.obj_num,
                                       target.gen_num, config.suite)
        frame = encrypt_payload(config.suite, object_key,
                                get_payload(work, target),
                                rng.take(config.suite.nonce_len))
        set_payload(work, target, frame, hex=True)

    encrypt_ref = work.add_object(build_encrypt_dict(params))
    work.trailer.dictionary["Encrypt"] = encrypt_ref
    return EncryptionResult(document=work, params=params,
                            file_key=file_key, targets=targets)


def read_security_params(doc: PdfDocument) -> tuple[SecurityParams, CipherSuite]:
    """Parse and validate the encryption dictionary of a document."""
    encrypt_ref = doc.trailer.dictionary.get("Encrypt")
    if encrypt_ref is None:
        raise NotEncrypted("document has no Encrypt entry")
    enc = doc.resolve(encrypt_ref)
    if not isinstance(enc, dict):
        raise UnsupportedHandler("Encrypt entry is not a dictionary")
    filter_name = enc.get("Filter")
    if filter_name != PdfName("Standard"):
        raise UnsupportedHandler(f"unsupported security handler {filter_name!r}")
    cf = doc.resolve(enc.get("CF", {}))
    stdcf = cf.get("StdCF") if isinstance(cf, dict) else None
    if not isinstance(stdcf, dict) or "CFM" not in stdcf:
        raise UnsupportedHandler("missing StdCF crypt filter")
    for role in ("StmF", "StrF"):
        name = enc.get(role, PdfName("Identity"))
        if name != PdfName("StdCF"):
            raise UnsupportedHandler(f"{role} must name StdCF, got {name!r}")
    cfm = stdcf["CFM"]
    suite = SUITES_BY_CFM.get(cfm.value if isinstance(cfm, PdfName) else None)
    if suite is None:
        raise UnsupportedHandler(f"unsupported crypt filter method {cfm!r}")
    try:
        params = SecurityParams(
            o_value=enc["O"].data, u_value=enc["U"].data,
            permissions=enc["P"], cfm_name=suite.cfm_name,
            revision=enc.get("R", 0), version=enc.get("V", 0),
            length_bits=enc.get("Length", 40),
            encrypt_metadata=enc.get("EncryptMetadata", True))
    except (KeyError, AttributeError) as exc:
        raise UnsupportedHandler(
            f"encryption dictionary missing or malformed entry: {exc}") from exc
    params.require_supported()
    return params, suite


def decrypt_document(doc: PdfDocument, password: bytes,
                     verify_tags: bool = True) -> DecryptionResult:
    """Authenticate and decrypt every eligible payload; returns a new document."""
    params, suite = read_security_params(doc)
    id_pair = doc.file_id()
    id0 = id_pair[0] if id_pair else b""
    auth = authenticate(params, password, id0)
    if auth.status is AuthStatus.REJECTED:
        raise WrongPassword("password does not match user or owner entry")

    work = doc.copy()
    targets = collect_encryption_targets(work)  # Encrypt object still skipped
    for target in targets:
        if not params.encrypt_metadata and _is_metadata_stream(work, target):
            continue
        object_key = derive_object_key(auth.file_key, target.obj_num,
                                       target.gen_num, suite)
        plaintext = decrypt_payload(suite, object_key,
                                    get_payload(work, target), verify_tags)
        set_payload(work, target, plaintext, hex=False)

    encrypt_ref = work.trailer.dictionary.pop("Encrypt")
    if isinstance(encrypt_ref, PdfReference):
        work.objects.pop(encrypt_ref.obj_num, None)
    return DecryptionResult(document=work, params=params, auth=auth,
                            suite=suite, targets=targets)
