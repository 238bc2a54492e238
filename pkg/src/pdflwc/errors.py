"""Exception hierarchy.

Three broad families: document structure problems (parsing/serialization),
cryptographic failures (authentication, integrity, padding), and harness
failures (benchmark forks, report formats). The CLI maps these onto exit
codes, so raising the most specific class matters.
"""


class PdflwcError(Exception):
    """Base class for every error raised by this package."""


# --- document structure -----------------------------------------------------

class PdfStructureError(PdflwcError):
    """Base class for malformed or unsupported PDF input."""


class MalformedHeader(PdfStructureError):
    """The file does not start with a %PDF- version header."""


class MissingTrailer(PdfStructureError):
    """No trailer/startxref/%%EOF tail could be located."""


class BadXrefEntry(PdfStructureError):
    """A cross-reference entry is non-numeric or has the wrong width."""


class UnterminatedObject(PdfStructureError):
    """An indirect object or stream has no matching end keyword."""


class UnsupportedStructure(PdfStructureError):
    """A valid-but-out-of-scope construct (cross-reference stream,
    object stream) was encountered."""


class MalformedKatFile(PdflwcError):
    """A known-answer-test file does not follow the Count/Key/Nonce/PT/AD/CT
    record format."""


# --- cryptography -----------------------------------------------------------

class CryptoError(PdflwcError):
    """Base class for cipher and security-handler failures."""


class TagMismatch(CryptoError):
    """AEAD authentication tag verification failed."""


class BadPadding(CryptoError):
    """Block-cipher padding bytes are invalid."""


class BadLength(CryptoError):
    """Ciphertext length is not a whole number of blocks."""


class TooShort(CryptoError):
    """A framed payload is shorter than the minimum for its cipher suite."""


class UnsupportedRevision(CryptoError):
    """The security handler revision is not the supported R=4."""


class UnsupportedHandler(CryptoError):
    """The document's encryption dictionary names a handler or filter this
    package does not implement."""


class WrongPassword(CryptoError):
    """Neither the user nor the owner password matched."""


class AlreadyEncrypted(CryptoError):
    """Refusing to encrypt a document that already has an Encrypt entry."""


class NotEncrypted(CryptoError):
    """Refusing to decrypt a document that has no Encrypt entry."""


# --- benchmark harness ------------------------------------------------------

class BenchError(PdflwcError):
    """Base class for benchmark harness failures."""


class ForkFailure(BenchError):
    """A benchmark fork process exited abnormally or produced no samples."""


class WorkloadError(BenchError):
    """The benchmark workload raised inside a fork."""


class UnsupportedFormat(BenchError):
    """Unknown report format requested."""
