"""Partial document encryption with interchangeable cipher suites.

Encrypts exactly the strings and streams of a document — structure stays
readable — under the standard revision-4 security handler, with the block
cipher swappable for two lightweight authenticated ciphers. Includes a
forked, warmup-aware microbenchmark harness for comparing the suites.
"""
from .ciphers import (AES128, ASCON128, XOODYAK, CipherSuite, SUITES,
                      SUITES_BY_CFM, suite_from_name, run_kat_file)
from .engine import (DecryptionResult, EncryptionConfig, EncryptionResult,
                     decrypt_document, encrypt_document, read_security_params)
from .errors import PdflwcError
from .handler import (AuthResult, AuthStatus, Credentials, SecurityParams,
                      authenticate, derive_object_key)
from .objects import PdfDocument
from .parser import parse_document
from .writer import serialize_document

__version__ = "0.1.0"

__all__ = [
    "CipherSuite", "AES128", "ASCON128", "XOODYAK", "SUITES", "SUITES_BY_CFM",
    "suite_from_name", "run_kat_file",
    "EncryptionConfig", "EncryptionResult", "DecryptionResult",
    "encrypt_document", "decrypt_document", "read_security_params",
    "AuthResult", "AuthStatus", "Credentials", "SecurityParams",
    "authenticate", "derive_object_key",
    "PdfDocument", "parse_document", "serialize_document",
    "PdflwcError", "__version__",
]
