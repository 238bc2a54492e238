"""Enumerate the strings and streams subject to partial encryption.

Everything that is a string or a stream gets encrypted, except:

1. the two file-ID strings in the trailer (the trailer is not an object and
   is never walked, so these are exempt by construction),
2. strings inside the encryption dictionary itself,
3. the ``Contents`` entry of a signature dictionary,
4. strings that only exist lexically inside stream data (stream bytes are
   treated as opaque, so these never surface as values).

Each target records its owning indirect object's number and generation —
the per-object key derivation needs both — plus a path that lets callers
read and replace the payload in place.
"""
from __future__ import annotations

from dataclasses import dataclass

from .objects import (PdfDocument, PdfName, PdfReference, PdfStream,
                      PdfString)


@dataclass(frozen=True)
class TargetRef:
    """Locator for one encryptable payload inside a document."""
    obj_num: int
    gen_num: int
    kind: str      # "string" or "stream"
    path: tuple    # steps: ("key", name) / ("index", i) / ("stream",)


def _is_signature_dict(d: dict) -> bool:
    """A signature dictionary: Type = Sig, or both ByteRange and Contents."""
    if d.get("Type") == PdfName("Sig"):
        return True
    return "ByteRange" in d and "Contents" in d


def _walk(value, path: tuple, out: list, obj_num: int, gen_num: int) -> None:
    if isinstance(value, PdfString):
        out.append(TargetRef(obj_num, gen_num, "string", path))
    elif isinstance(value, PdfStream):
        _walk_dict(value.dictionary, path, out, obj_num, gen_num)
        out.append(TargetRef(obj_num, gen_num, "stream", path + (("stream",),)))
    elif isinstance(value, dict):
        _walk_dict(value, path, out, obj_num, gen_num)
    elif isinstance(value, list):
        for i, item in enumerate(value):
            _walk(item, path + (("index", i),), out, obj_num, gen_num)


def _walk_dict(d: dict, path: tuple, out: list, obj_num: int, gen_num: int) -> None:
    skip_contents = _is_signature_dict(d)
    for key, item in d.items():
        if skip_contents and key == "Contents" and isinstance(item, PdfString):
            continue
        _walk(item, path + (("key", key),), out, obj_num, gen_num)


def collect_encryption_targets(doc: PdfDocument) -> list:
    """All string/stream payloads to encrypt, in document order."""
    encrypt_ref = doc.trailer.dictionary.get("Encrypt")
    encrypt_num = encrypt_ref.obj_num if isinstance(encrypt_ref, PdfReference) else None

    out: list = []
    for obj in doc.iter_objects():
        if obj.obj_num == encrypt_num:
            continue
        _walk(obj.value, (), out, obj.obj_num, obj.gen_num)
    return out


def _node_at(doc: PdfDocument, target: TargetRef):
    obj = doc.get_object(target.obj_num)
    if obj is None:
        raise KeyError(f"object {target.obj_num} not in document")
    node = obj.value
    for step in target.path:
        if step == ("stream",):
            return node
        kind, arg = step
        if kind == "key":
            node = node.dictionary[arg] if isinstance(node, PdfStream) else node[arg]
        elif kind == "index":
            node = node[arg]
        else:
            raise KeyError(f"bad path step {step!r}")
    return node


def get_payload(doc: PdfDocument, target: TargetRef) -> bytes:
    """Raw payload bytes for a target (stream bytes stay encoded)."""
    node = _node_at(doc, target)
    if target.kind == "stream":
        return node.raw
    return node.data


def set_payload(doc: PdfDocument, target: TargetRef, data: bytes,
                hex: bool | None = None) -> None:
    """Replace a target's payload in place (stream Length stays consistent).

    For string targets ``hex`` optionally switches the serialized form;
    encrypted bytes read better as hex strings.
    """
    node = _node_at(doc, target)
    if target.kind == "stream":
        node.set_raw(data)
    else:
        node.data = data
        if hex is not None:
            node.hex = hex
