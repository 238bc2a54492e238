"""Password handling, O/U derivation, authentication, per-object keys.

The pinned O/U/file-key constants below were frozen from a file produced by
an independent PDF library (the interop tool under ``tools/pdf_interop``)
with owner password ``opw``, user password ``upw``, permissions -4 and the
recorded file identifier, so they check the derivations against a second
implementation rather than against this package itself.
"""
from __future__ import annotations

import hashlib
import struct

import pytest
from hypothesis import given, settings, strategies as st

from pdflwc.ciphers import AES128, ASCON128, XOODYAK
from pdflwc.errors import BadLength, UnsupportedRevision
from pdflwc.handler import (PASSWORD_PAD, AuthStatus, SecurityParams,
                            authenticate, compute_encryption_key,
                            compute_o_value, compute_u_value,
                            derive_object_key, pad_password)

_ID0 = bytes.fromhex("f652c1e5f3455433d3a39ae5f94f1129")
_O = bytes.fromhex(
    "9edeb408baf8f8eea65378b448791238a72761181a9c636b306fd3b259ebbbd6")
_U_PREFIX = bytes.fromhex("7c0d98f2a7b4649616392b3e85bdf694")
_FILE_KEY = bytes.fromhex("9d4d2f854c9b91c1b851f54a8acb612c")
_P = -4


def _params(**overrides) -> SecurityParams:
    values = dict(o_value=_O, u_value=_U_PREFIX + bytes(16), permissions=_P)
    values.update(overrides)
    return SecurityParams(**values)


def test_pad_password_forms():
    assert pad_password(b"") == PASSWORD_PAD
    assert pad_password(b"abc") == b"abc" + PASSWORD_PAD[:29]
    long = bytes(range(40))
    assert pad_password(long) == long[:32]
    assert len(PASSWORD_PAD) == 32
    assert PASSWORD_PAD[:4] == b"\x28\xbf\x4e\x5e"


def test_o_value_matches_independent_implementation():
    assert compute_o_value(b"opw", b"upw") == _O


def test_file_key_and_u_value_match_independent_implementation():
    file_key = compute_encryption_key(b"upw", _O, _P, _ID0)
    assert file_key == _FILE_KEY
    assert compute_u_value(file_key, _ID0)[:16] == _U_PREFIX


def test_empty_owner_password_falls_back_to_user_password():
    assert compute_o_value(b"", b"upw") == compute_o_value(b"upw", b"upw")


def test_authenticate_against_independent_file():
    params = _params()
    user = authenticate(params, b"upw", _ID0)
    assert user.status is AuthStatus.USER_PASSWORD
    assert user.file_key == _FILE_KEY
    owner = authenticate(params, b"opw", _ID0)
    assert owner.status is AuthStatus.OWNER_PASSWORD
    assert owner.file_key == _FILE_KEY
    rejected = authenticate(params, b"wrong", _ID0)
    assert rejected.status is AuthStatus.REJECTED
    assert rejected.file_key is None


def test_unsupported_revision_rejected():
    for overrides in ({"revision": 3}, {"version": 2}, {"length_bits": 40}):
        with pytest.raises(UnsupportedRevision):
            authenticate(_params(**overrides), b"upw", _ID0)


def test_malformed_o_entry_rejected():
    with pytest.raises(BadLength):
        compute_encryption_key(b"upw", b"short", _P, _ID0)


def test_derive_object_key_against_inline_digest():
    for obj_num, gen_num in [(1, 0), (7, 2), (0xABCDEF, 0x1234), (2**24, 0)]:
        material = (_FILE_KEY
                    + struct.pack("<I", obj_num & 0xFFFFFFFF)[:3]
                    + struct.pack("<H", gen_num & 0xFFFF))
        with_salt = hashlib.md5(material + b"sAlT").digest()[:16]
        for suite in (AES128, ASCON128, XOODYAK):
            assert derive_object_key(_FILE_KEY, obj_num, gen_num,
                                     suite) == with_salt


def test_derive_object_key_mixes_object_and_generation():
    keys = {derive_object_key(_FILE_KEY, o, g, AES128)
            for o, g in [(1, 0), (2, 0), (1, 1), (256, 0), (1, 256)]}
    assert len(keys) == 5
    assert all(len(k) == 16 for k in keys)


@settings(max_examples=40, deadline=None)
@given(user=st.binary(min_size=0, max_size=24),
       owner=st.binary(min_size=1, max_size=24),
       permissions=st.integers(min_value=-(2**31), max_value=2**31 - 1),
       id0=st.binary(min_size=16, max_size=16))
def test_authentication_round_trip_property(user, owner, permissions, id0):
    o_value = compute_o_value(owner, user)
    file_key = compute_encryption_key(user, o_value, permissions, id0)
    params = SecurityParams(o_value=o_value,
                            u_value=compute_u_value(file_key, id0),
                            permissions=permissions)
    got_user = authenticate(params, user, id0)
    assert got_user.status is AuthStatus.USER_PASSWORD
    assert got_user.file_key == file_key
    got_owner = authenticate(params, owner, id0)
    assert got_owner.status in (AuthStatus.OWNER_PASSWORD,
                                AuthStatus.USER_PASSWORD)
    assert got_owner.file_key == file_key
    if owner != user and not user.startswith(owner):
        probe = authenticate(params, owner + b"x" * 33, id0)
        assert probe.status is not AuthStatus.USER_PASSWORD


def test_passwords_beyond_32_bytes_are_equivalent():
    base = bytes(range(32))
    o1 = compute_o_value(base, base)
    o2 = compute_o_value(base + b"ignored", base + b"also ignored")
    assert o1 == o2
