"""Cipher backends behind one common contract.

Three suites: AES-128 in CBC mode with block padding (the PDF AESV2
baseline), and the two lightweight AEADs, ASCON-128 and Xoodyak. All three
use 16-byte keys and 16-byte nonces/IVs; the AEADs add a 16-byte tag.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CipherSuite:
    """Selector plus the per-suite framing facts the engine needs."""
    kind: str       # "AES128" | "ASCON128" | "XOODYAK"
    key_len: int    # bytes
    nonce_len: int  # bytes (CBC IV for AES)
    tag_len: int    # bytes (0 for AES128)
    cfm_name: str   # value written to the crypt filter's CFM entry

    @property
    def length_bits(self) -> int:
        """The Length entry value for the encryption dictionary."""
        return self.key_len * 8

    def framed_len(self, plaintext_len: int) -> int:
        """Byte length of an encrypted payload frame for this suite."""
        if self.kind == "AES128":
            padded = (plaintext_len // 16 + 1) * 16
            return self.nonce_len + padded
        return self.nonce_len + plaintext_len + self.tag_len


AES128 = CipherSuite(kind="AES128", key_len=16, nonce_len=16, tag_len=0,
                     cfm_name="AESV2")
ASCON128 = CipherSuite(kind="ASCON128", key_len=16, nonce_len=16, tag_len=16,
                       cfm_name="ASCON128")
XOODYAK = CipherSuite(kind="XOODYAK", key_len=16, nonce_len=16, tag_len=16,
                      cfm_name="XOODYAK")

SUITES = {s.kind: s for s in (AES128, ASCON128, XOODYAK)}
SUITES_BY_CFM = {s.cfm_name: s for s in (AES128, ASCON128, XOODYAK)}
# CLI spellings
SUITE_ALIASES = {
    "aes128": AES128, "aes": AES128,
    "ascon128": ASCON128, "ascon": ASCON128,
    "xoodyak": XOODYAK,
}


def suite_from_name(name: str) -> CipherSuite:
    key = name.strip().lower()
    if key not in SUITE_ALIASES:
        raise KeyError(f"unknown cipher suite {name!r}; "
                       f"choose from {sorted(set(SUITE_ALIASES))}")
    return SUITE_ALIASES[key]


from .aes import (AesContext, aes128_block_decrypt,  # noqa: E402
                  aes128_block_encrypt, aes128_cbc_decrypt, aes128_cbc_encrypt)
from .ascon import (AsconState, ascon_aead_decrypt,  # noqa: E402
                    ascon_aead_encrypt, ascon_permutation)
from .xoodyak import (XoodooState, xoodoo_permutation,  # noqa: E402
                      xoodyak_aead_decrypt, xoodyak_aead_encrypt)
from .kat import KatRecord, KatReport, parse_kat_text, run_kat_file  # noqa: E402

__all__ = [
    "CipherSuite", "AES128", "ASCON128", "XOODYAK",
    "SUITES", "SUITES_BY_CFM", "suite_from_name",
    "AesContext", "aes128_block_encrypt", "aes128_block_decrypt",
    "aes128_cbc_encrypt", "aes128_cbc_decrypt",
    "AsconState", "ascon_permutation", "ascon_aead_encrypt", "ascon_aead_decrypt",
    "XoodooState", "xoodoo_permutation", "xoodyak_aead_encrypt", "xoodyak_aead_decrypt",
    "KatReport", "run_kat_file",
]
