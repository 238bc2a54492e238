"""Serializer: emit a :class:`PdfDocument` back to PDF 1.7 bytes.

Always writes a single flattened revision: header, body objects in
ascending object number, a freshly computed classic cross-reference table
(20-byte entries, space + LF end-of-line), trailer, ``startxref``, ``%%EOF``.
"""
from __future__ import annotations

from .objects import (PdfDocument, PdfName, PdfReference, PdfStream,
                      PdfString)

_REGULAR_NAME_CHARS = frozenset(
    b for b in range(0x21, 0x7F) if bytes([b]) not in b"()<>[]{}/%#"
)
_LITERAL_ESCAPES = {
    ord("\\"): b"\\\\", ord("("): b"\\(", ord(")"): b"\\)",
    ord("\r"): b"\\r", ord("\n"): b"\\n", ord("\t"): b"\\t",
    ord("\b"): b"\\b", 0x0C: b"\\f",
}


def _serialize_name(name: PdfName) -> bytes:
    out = bytearray(b"/")
    for b in name.value.encode("latin-1"):
        if b in _REGULAR_NAME_CHARS:
            out.append(b)
        else:
            out += b"#%02X" % b
    return bytes(out)


def _serialize_string(value: PdfString) -> bytes:
    if value.hex:
        return b"<" + value.data.hex().upper().encode("ascii") + b">"
    out = bytearray(b"(")
    for b in value.data:
        out += _LITERAL_ESCAPES.get(b, bytes([b]))
    out += b")"
    return bytes(out)


def _serialize_real(value: float) -> bytes:
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    if text in ("", "-"):
        text = "0"
    return text.encode("ascii")


def serialize_value(value) -> bytes:
    """Serialize a single PDF value (without any indirect-object wrapper)."""
    if value is None:
        return b"null"
    if value is True:
        return b"true"
    if value is False:
        return b"false"
    if isinstance(value, int):
        return b"%d" % value
    if isinstance(value, float):
        return _serialize_real(value)
    if isinstance(value, PdfName):
        return _serialize_name(value)
    if isinstance(value, PdfString):
        return _serialize_string(value)
    if isinstance(value, PdfReference):
        return b"%d %d R" % (value.obj_num, value.gen_num)
    if isinstance(value, list):
        return b"[" + b" ".join(_serialize_child(v) for v in value) + b"]"
    if isinstance(value, PdfStream):
        value.dictionary["Length"] = len(value.raw)
        return (serialize_value(value.dictionary) + b"\nstream\n"
                + value.raw + b"\nendstream")
    if isinstance(value, dict):
        parts = []
        for key, item in value.items():
            parts.append(_serialize_name(PdfName(key)) + b" " + _serialize_child(item))
        return b"<<" + b" ".join(parts) + b">>"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _serialize_child(value) -> bytes:
    """Serialize a value nested in a container; streams cannot nest."""
    if isinstance(value, PdfStream):
        raise TypeError("streams must be top-level indirect objects, "
                        "not values inside containers")
    return serialize_value(value)


def serialize_document(doc: PdfDocument) -> bytes:
    """Serialize the document as one flattened revision."""
    out = bytearray()
    out += b"%PDF-" + doc.header_version.encode("ascii") + b"\n"
    out += b"%" + doc.binary_marker + b"\n"

    offsets = {}
    for obj in doc.iter_objects():
        offsets[obj.obj_num] = len(out)
        out += b"%d %d obj\n" % (obj.obj_num, obj.gen_num)
        out += serialize_value(obj.value)
        out += b"\nendobj\n"

    max_num = doc.max_obj_num()
    xref_offset = len(out)
    out += b"xref\n"
    out += b"0 %d\n" % (max_num + 1)
    out += b"0000000000 65535 f \n"
    for num in range(1, max_num + 1):
        obj = doc.objects.get(num)
        if obj is None:
            out += b"0000000000 65535 f \n"
        else:
            out += b"%010d %05d n \n" % (offsets[num], obj.gen_num)

    trailer_dict = dict(doc.trailer.dictionary)
    trailer_dict["Size"] = max_num + 1
    trailer_dict.pop("Prev", None)
    out += b"trailer\n"
    out += serialize_value(trailer_dict)
    out += b"\nstartxref\n%d\n%%%%EOF\n" % xref_offset
    return bytes(out)
