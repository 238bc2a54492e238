"""Synthetic document builders for tests and benchmarks.

``minimal_document`` is the smallest well-formed viewable file (catalog,
page tree, one page, one content stream). ``random_document`` grows that
skeleton with a seeded RNG: extra pages, flate-compressed content streams,
an Info dictionary full of strings, annotations, string-heavy arrays, and
optionally a signature-style dictionary with a ByteRange and Contents.
Fixture sizes used by the benchmark suites are fixed here so every run
measures the same documents.
"""
from __future__ import annotations

import random
import zlib
from dataclasses import dataclass

from .objects import (IndirectObject, PdfDocument, PdfName, PdfReference,
                      PdfStream, PdfString, Trailer)

__all__ = ["FixtureSpec", "minimal_document", "random_document",
           "suite_fixture", "FIXTURE_SPECS"]


@dataclass(frozen=True)
class FixtureSpec:
    """Shape parameters for a deterministic document fixture."""
    name: str
    pages: int
    stream_bytes: int      # uncompressed content bytes per page
    strings: int           # Info/annotation string count
    string_bytes: int      # approximate length of each string
    compress: bool = True
    with_signature: bool = False
    with_id: bool = True


# The three benchmark suites measure these exact shapes.
FIXTURE_SPECS = {
    "small": FixtureSpec(name="small", pages=1, stream_bytes=640,
                         strings=4, string_bytes=24),
    "medium": FixtureSpec(name="medium", pages=4, stream_bytes=4096,
                          strings=16, string_bytes=48),
    "large": FixtureSpec(name="large", pages=12, stream_bytes=16384,
                         strings=48, string_bytes=96),
}

_WORDS = ("layout", "cipher", "stream", "page", "vector", "object",
          "margin", "glyph", "outline", "raster", "widget", "anchor")


def _content_stream(text: bytes, compress: bool) -> PdfStream:
    dictionary: dict = {}
    raw = text
    if compress:
        raw = zlib.compress(text)
        dictionary["Filter"] = PdfName("FlateDecode")
    stream = PdfStream(dictionary=dictionary, raw=b"")
    stream.set_raw(raw)
    return stream


def minimal_document() -> PdfDocument:
    """Catalog, page tree, one page, one uncompressed content stream."""
    doc = PdfDocument()
    content = _content_stream(b"BT /F1 12 Tf 72 720 Td (minimal) Tj ET",
                              compress=False)
    doc.objects[1] = IndirectObject(1, 0, {
        "Type": PdfName("Catalog"), "Pages": PdfReference(2, 0)})
    doc.objects[2] = IndirectObject(2, 0, {
        "Type": PdfName("Pages"), "Kids": [PdfReference(3, 0)], "Count": 1})
    doc.objects[3] = IndirectObject(3, 0, {
        "Type": PdfName("Page"), "Parent": PdfReference(2, 0),
        "MediaBox": [0, 0, 612, 792], "Contents": PdfReference(4, 0)})
    doc.objects[4] = IndirectObject(4, 0, content)
    doc.trailer = Trailer(dictionary={"Root": PdfReference(1, 0)}, startxref=0)
    return doc


def _random_text(rand: random.Random, size: int) -> bytes:
    parts = []
    total = 0
    while total < size:
        word = rand.choice(_WORDS)
        parts.append(word)
        total += len(word) + 1
    return " ".join(parts).encode("ascii")[:size]


def _random_string(rand: random.Random, size: int) -> PdfString:
    # Mix printable text with a few bytes that exercise string escaping.
    data = bytearray(_random_text(rand, size))
    for _ in range(max(1, size // 12)):
        data[rand.randrange(len(data))] = rand.choice(
            b"()\\\r\n\t" + bytes(range(0x80, 0x90)))
    return PdfString(bytes(data), hex=rand.random() < 0.25)


def random_document(spec: FixtureSpec, seed: int) -> PdfDocument:
    """Deterministic document with the given shape."""
    rand = random.Random(f"{spec.name}:{seed}")
    doc = PdfDocument()
    page_refs: list[PdfReference] = []
    next_num = 3  # 1 = catalog, 2 = page tree

    def add(value) -> PdfReference:
        nonlocal next_num
        doc.objects[next_num] = IndirectObject(next_num, 0, value)
        next_num += 1
        return PdfReference(next_num - 1, 0)

    for page_no in range(spec.pages):
        text = b"BT /F1 10 Tf 36 740 Td (" + _random_text(rand, 24) + b") Tj ET\n"
        body = _random_text(rand, max(0, spec.stream_bytes - len(text)))
        content_ref = add(_content_stream(text + body, spec.compress))
        annots = []
        if spec.strings >= 4 and page_no == 0:
            annots.append(add({
                "Type": PdfName("Annot"), "Subtype": PdfName("Text"),
                "Rect": [30, 30, 60, 60],
                "Contents": _random_string(rand, spec.string_bytes),
            }))
        page: dict = {
            "Type": PdfName("Page"), "Parent": PdfReference(2, 0),
            "MediaBox": [0, 0, 612, 792], "Contents": content_ref,
        }
        if annots:
            page["Annots"] = annots
        page_refs.append(add(page))

    info: dict = {"Producer": _random_string(rand, spec.string_bytes)}
    for i in range(max(0, spec.strings - 2)):
        info[f"Custom{i}"] = _random_string(rand, spec.string_bytes)
    info_ref = add(info)

    if spec.with_signature:
        add({
            "Type": PdfName("Sig"),
            "Filter": PdfName("Adobe.PPKLite"),
            "ByteRange": [0, 1024, 2048, 1024],
            "Contents": PdfString(bytes(rand.randbytes(64)), hex=True),
            "Reason": _random_string(rand, spec.string_bytes),
        })

    doc.objects[1] = IndirectObject(1, 0, {
        "Type": PdfName("Catalog"), "Pages": PdfReference(2, 0)})
    doc.objects[2] = IndirectObject(2, 0, {
        "Type": PdfName("Pages"), "Kids": page_refs, "Count": len(page_refs)})
    trailer_dict: dict = {"Root": PdfReference(1, 0), "Info": info_ref}
    if spec.with_id:
        trailer_dict["ID"] = [PdfString(rand.randbytes(16), hex=True),
                              PdfString(rand.randbytes(16), hex=True)]
    doc.trailer = Trailer(dictionary=trailer_dict, startxref=0)
    return doc


def suite_fixture(suite_name: str, seed: int = 0) -> PdfDocument:
    """The named benchmark fixture (``small`` / ``medium`` / ``large``)."""
    return random_document(FIXTURE_SPECS[suite_name], seed)
