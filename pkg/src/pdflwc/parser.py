"""Parser for the linear PDF 1.7 file structure.

Reads the header, locates the trailer via the ``startxref`` pointer at the
file tail, loads the classic cross-reference table (following ``Prev`` links
for incrementally updated files), and parses every in-use indirect object.
Stream payloads are kept as raw bytes — no filter decoding.

Cross-reference *streams* and object streams are out of scope and rejected
with :class:`~pdflwc.errors.UnsupportedStructure`. If the table's byte
offsets turn out to be wrong, parsing falls back to a linear scan for
``N G obj`` markers.
"""
from __future__ import annotations

import re
from typing import Optional

from .errors import (BadXrefEntry, MalformedHeader, MissingTrailer,
                     PdfStructureError, UnsupportedStructure,
                     UnterminatedObject)
from .objects import (IndirectObject, PdfDocument, PdfName, PdfReference,
                      PdfStream, PdfString, Trailer, XrefEntry, XrefTable)

WHITESPACE = b"\x00\t\n\x0c\r "
DELIMITERS = b"()<>[]{}/%"

_OBJ_HEADER_RE = re.compile(rb"(\d+)\s+(\d+)\s+obj\b")
_XREF_ENTRY_RE = re.compile(rb"^(\d{10}) (\d{5}) ([nf])( \r| \n|\r\n)$")


class _XrefMissing(PdfStructureError):
    """Internal: startxref (or a Prev link) points somewhere with no table.

    Distinct from :class:`BadXrefEntry` so a dangling pointer can fall back
    to the full-file scan while a syntactically corrupt table stays fatal.
    """


def _reject_container_stream(value) -> None:
    """Object and cross-reference streams hold other objects; out of scope."""
    if isinstance(value, PdfStream):
        stream_type = value.dictionary.get("Type")
        if stream_type in (PdfName("ObjStm"), PdfName("XRef")):
            raise UnsupportedStructure(
                f"{stream_type.value} streams are not supported")
_STRING_ESCAPES = {
    ord("n"): b"\n", ord("r"): b"\r", ord("t"): b"\t",
    ord("b"): b"\b", ord("f"): b"\x0c",
    ord("("): b"(", ord(")"): b")", ord("\\"): b"\\",
}


class Lexer:
    """Byte-level tokenizer over the raw file contents."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def at_end(self) -> bool:
        return self.pos >= len(self.data)

    def peek(self) -> int:
        return self.data[self.pos] if self.pos < len(self.data) else -1

    def skip_whitespace(self) -> None:
        """Advance past whitespace and % comments."""
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos]
            if c in WHITESPACE:
                self.pos += 1
            elif c == ord("%"):
                eol = data.find(b"\n", self.pos)
                eol2 = data.find(b"\r", self.pos)
                if eol == -1 or (eol2 != -1 and eol2 < eol):
                    eol = eol2
                self.pos = n if eol == -1 else eol + 1
            else:
                break

    def read_regular_run(self) -> bytes:
        """Read a run of regular characters (not whitespace, not delimiters)."""
        start = self.pos
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos]
            if c in WHITESPACE or c in DELIMITERS:
                break
            self.pos += 1
        return data[start:self.pos]

    def expect_keyword(self, word: bytes) -> bool:
        """Consume `word` if it appears at the cursor as a full token."""
        self.skip_whitespace()
        end = self.pos + len(word)
        if self.data[self.pos:end] != word:
            return False
        nxt = self.data[end] if end < len(self.data) else -1
        if nxt != -1 and nxt not in WHITESPACE and nxt not in DELIMITERS:
            return False
        self.pos = end
        return True

    # -- value parsing -------------------------------------------------------

    def parse_value(self):
        self.skip_whitespace()
        if self.at_end():
            raise UnterminatedObject("unexpected end of data while parsing a value")
        c = self.peek()
        if c == ord("("):
            return self._parse_literal_string()
        if c == ord("<"):
            if self.data[self.pos:self.pos + 2] == b"<<":
                return self._parse_dictionary()
            return self._parse_hex_string()
        if c == ord("/"):
            return self._parse_name()
        if c == ord("["):
            return self._parse_array()
        if c in b"+-.0123456789":
            return self._parse_number_or_reference()
        word = self.read_regular_run()
        if word == b"true":
            return True
        if word == b"false":
            return False
        if word == b"null":
            return None
        raise UnterminatedObject(f"unexpected token {word[:20]!r} at offset {self.pos}")

    def _parse_literal_string(self) -> PdfString:
        assert self.peek() == ord("(")
        self.pos += 1
        data, n = self.data, len(self.data)
        out = bytearray()
        depth = 1
        while self.pos < n:
            c = data[self.pos]
            if c == ord("\\"):
                self.pos += 1
                if self.pos >= n:
                    break
                e = data[self.pos]
                if e in _STRING_ESCAPES:
                    out += _STRING_ESCAPES[e]
                    self.pos += 1
                elif ord("0") <= e <= ord("7"):
                    digits = bytearray()
                    while (self.pos < n and len(digits) < 3
                           and ord("0") <= data[self.pos] <= ord("7")):
                        digits.append(data[self.pos])
                        self.pos += 1
                    out.append(int(digits, 8) & 0xFF)
                elif e in b"\r\n":
                    # line continuation: backslash-EOL is dropped
                    self.pos += 1
                    if e == ord("\r") and self.pos < n and data[self.pos] == ord("\n"):
                        self.pos += 1
                else:
                    # unknown escape: the backslash is dropped
                    out.append(e)
                    self.pos += 1
            elif c == ord("("):
                depth += 1
                out.append(c)
                self.pos += 1
            elif c == ord(")"):
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return PdfString(bytes(out), hex=False)
                out.append(c)
                self.pos += 1
            elif c == ord("\r"):
                # raw EOL inside a literal string reads as a single LF
                out.append(ord("\n"))
                self.pos += 1
                if self.pos < n and data[self.pos] == ord("\n"):
                    self.pos += 1
            else:
                out.append(c)
                self.pos += 1
        raise UnterminatedObject("literal string not closed")

    def _parse_hex_string(self) -> PdfString:
        assert self.peek() == ord("<")
        self.pos += 1
        data, n = self.data, len(self.data)
        digits = bytearray()
        while self.pos < n:
            c = data[self.pos]
            if c == ord(">"):
                self.pos += 1
                if len(digits) % 2:
                    digits.append(ord("0"))
                return PdfString(bytes.fromhex(digits.decode("ascii")), hex=True)
            if c in b"0123456789abcdefABCDEF":
                digits.append(c)
            elif c not in WHITESPACE:
                raise UnterminatedObject(
                    f"invalid character {bytes([c])!r} in hex string")
            self.pos += 1
        raise UnterminatedObject("hex string not closed")

    def _parse_name(self) -> PdfName:
        assert self.peek() == ord("/")
        self.pos += 1
        raw = self.read_regular_run()
        out = bytearray()
        i = 0
        while i < len(raw):
            c = raw[i]
            if c == ord("#") and i + 2 < len(raw) + 1:
                pair = raw[i + 1:i + 3]
                if len(pair) == 2 and all(d in b"0123456789abcdefABCDEF" for d in pair):
                    out.append(int(pair, 16))
                    i += 3
                    continue
            out.append(c)
            i += 1
        return PdfName(out.decode("latin-1"))

    def _parse_array(self) -> list:
        assert self.peek() == ord("[")
        self.pos += 1
        items = []
        while True:
            self.skip_whitespace()
            if self.at_end():
                raise UnterminatedObject("array not closed")
            if self.peek() == ord("]"):
                self.pos += 1
                return items
            items.append(self.parse_value())

    def _parse_dictionary(self) -> dict:
        assert self.data[self.pos:self.pos + 2] == b"<<"
        self.pos += 2
        result = {}
        while True:
            self.skip_whitespace()
            if self.at_end():
                raise UnterminatedObject("dictionary not closed")
            if self.data[self.pos:self.pos + 2] == b">>":
                self.pos += 2
                return result
            if self.peek() != ord("/"):
                raise UnterminatedObject(
                    f"dictionary key must be a name at offset {self.pos}")
            key = self._parse_name()
            result[key.value] = self.parse_value()

    def _parse_number_or_reference(self):
        start = self.pos
        token = self.read_regular_run()
        text = token.decode("latin-1")
        if b"." in token:
            return float(text)
        try:
            value = int(text)
        except ValueError as exc:
            raise UnterminatedObject(f"bad number {text!r}") from exc
        if value >= 0 and b"." not in token and b"e" not in token:
            # lookahead for "<gen> R"
            save = self.pos
            self.skip_whitespace()
            gen_tok = self.read_regular_run()
            if gen_tok.isdigit():
                save2 = self.pos
                self.skip_whitespace()
                if (self.data[self.pos:self.pos + 1] == b"R"
                        and (self.pos + 1 >= len(self.data)
                             or self.data[self.pos + 1] in WHITESPACE
                             or self.data[self.pos + 1] in DELIMITERS)):
                    self.pos += 1
                    return PdfReference(value, int(gen_tok))
                self.pos = save2
            self.pos = save
        return value


def _check_header(data: bytes) -> tuple:
    if not data.startswith(b"%PDF-"):
        raise MalformedHeader("input does not start with %PDF-")
    eol = data.find(b"\n")
    first_line = data[5:eol if eol != -1 else len(data)].rstrip(b"\r")
    version = first_line[:3].decode("latin-1", "replace")
    marker = b"\xe2\xe3\xcf\xd3"
    # second line: a comment of four-or-more high-bit bytes marks binary files
    if eol != -1 and data[eol + 1:eol + 2] == b"%":
        rest = data[eol + 2:eol + 64]
        line_end = len(rest)
        for i, b in enumerate(rest):
            if b in b"\r\n":
                line_end = i
                break
        candidate = rest[:line_end]
        if len(candidate) >= 4 and all(b >= 128 for b in candidate[:4]):
            marker = candidate[:4]
    return version, marker


class DocumentParser:
    def __init__(self, data: bytes):
        self.data = data
        self.doc = PdfDocument()
        self._offsets = {}      # obj_num -> (offset, generation)
        self._free = {}         # obj_num -> generation
        self._loading = set()   # guards Length-reference recursion

    # -- tail ----------------------------------------------------------------

    def _find_startxref(self) -> int:
        if not self.data.rstrip(b"\x00\t\n\x0c\r ").endswith(b"%%EOF"):
            raise MissingTrailer("file does not end with %%EOF")
        idx = self.data.rfind(b"startxref")
        if idx == -1:
            raise MissingTrailer("no startxref keyword in file tail")
        lexer = Lexer(self.data, idx + len(b"startxref"))
        lexer.skip_whitespace()
        token = lexer.read_regular_run()
        if not token.isdigit():
            raise MissingTrailer(f"startxref is not a byte offset: {token[:20]!r}")
        return int(token)

    # -- xref chain ----------------------------------------------------------

    def _parse_xref_section(self, offset: int) -> dict:
        """Parse one classic xref section + trailer dictionary at `offset`.

        Returns the trailer dictionary; records entries not seen before
        (the newest section in the chain is parsed first and wins).
        """
        lexer = Lexer(self.data, offset)
        if not lexer.expect_keyword(b"xref"):
            probe = Lexer(self.data, offset)
            probe.skip_whitespace()
            m = _OBJ_HEADER_RE.match(self.data, probe.pos)
            if m:
                raise UnsupportedStructure(
                    "cross-reference streams are not supported (classic tables only)")
            # A dangling pointer, not a corrupt table — recoverable by scan.
            raise _XrefMissing(f"no xref table at offset {offset}")
        while True:
            lexer.skip_whitespace()
            if lexer.expect_keyword(b"trailer"):
                break
            start_tok = lexer.read_regular_run()
            lexer.skip_whitespace()
            count_tok = lexer.read_regular_run()
            if not (start_tok.isdigit() and count_tok.isdigit()):
                raise BadXrefEntry(
                    f"bad xref subsection header {start_tok[:20]!r} {count_tok[:20]!r}")
            start, count = int(start_tok), int(count_tok)
            # entries begin after a single EOL following the subsection header
            while lexer.peek() in (ord("\r"), ord("\n"), ord(" ")):
                lexer.pos += 1
            for i in range(count):
                raw = self.data[lexer.pos:lexer.pos + 20]
                m = _XREF_ENTRY_RE.match(raw)
                if not m:
                    raise BadXrefEntry(
                        f"xref entry for object {start + i} malformed: {raw!r}")
                lexer.pos += 20
                num = start + i
                entry_offset, gen = int(m.group(1)), int(m.group(2))
                in_use = m.group(3) == b"n"
                if num in self._offsets or num in self._free:
                    continue  # an earlier (newer) section already defined it
                if in_use:
                    self._offsets[num] = (entry_offset, gen)
                else:
                    self._free[num] = gen
        lexer.skip_whitespace()
        trailer_dict = lexer.parse_value()
        if not isinstance(trailer_dict, dict):
            raise MissingTrailer("trailer keyword not followed by a dictionary")
        return trailer_dict

    def _load_xref_chain(self, start_offset: int) -> dict:
        seen_offsets = set()
        offset = start_offset
        newest_trailer = None
        while offset is not None and offset not in seen_offsets:
            seen_offsets.add(offset)
            trailer_dict = self._parse_xref_section(offset)
            if newest_trailer is None:
                newest_trailer = trailer_dict
            prev = trailer_dict.get("Prev")
            offset = prev if isinstance(prev, int) else None
        if newest_trailer is None:
            raise MissingTrailer("empty cross-reference chain")
        return newest_trailer

    # -- objects -------------------------------------------------------------

    def _parse_object_at(self, offset: int, expect_num: Optional[int] = None) -> IndirectObject:
        lexer = Lexer(self.data, offset)
        lexer.skip_whitespace()
        m = _OBJ_HEADER_RE.match(self.data, lexer.pos)
        if not m:
            raise UnterminatedObject(f"no object header at offset {offset}")
        obj_num, gen_num = int(m.group(1)), int(m.group(2))
        if expect_num is not None and obj_num != expect_num:
            raise UnterminatedObject(
                f"object header at offset {offset} names object {obj_num}, "
                f"xref said {expect_num}")
        lexer.pos = m.end()
        value = lexer.parse_value()
        if isinstance(value, dict) and lexer.expect_keyword(b"stream"):
            value = self._read_stream(lexer, value)
        if not lexer.expect_keyword(b"endobj"):
            # tolerate a missing endobj if the next object header follows
            probe = Lexer(self.data, lexer.pos)
            probe.skip_whitespace()
            if not (_OBJ_HEADER_RE.match(self.data, probe.pos)
                    or self.data[probe.pos:probe.pos + 4] == b"xref"
                    or self.data[probe.pos:probe.pos + 7] == b"trailer"):
                raise UnterminatedObject(
                    f"object {obj_num} {gen_num} has no endobj")
        return IndirectObject(obj_num, gen_num, value)

    def _read_stream(self, lexer: Lexer, dictionary: dict) -> PdfStream:
        data = self.data
        # the stream keyword is followed by CRLF or LF (tolerate lone CR)
        if data[lexer.pos:lexer.pos + 2] == b"\r\n":
            lexer.pos += 2
        elif data[lexer.pos:lexer.pos + 1] in (b"\n", b"\r"):
            lexer.pos += 1
        start = lexer.pos
        length = dictionary.get("Length")
        if isinstance(length, PdfReference):
            length = self._resolve_length(length)
        raw = None
        if isinstance(length, int) and length >= 0 and start + length <= len(data):
            tail = Lexer(data, start + length)
            if tail.expect_keyword(b"endstream"):
                raw = data[start:start + length]
                lexer.pos = tail.pos
        if raw is None:
            # Length missing or inconsistent: scan for the end keyword
            idx = data.find(b"endstream", start)
            if idx == -1:
                raise UnterminatedObject("stream has no endstream keyword")
            end = idx
            if data[end - 2:end] == b"\r\n":
                end -= 2
            elif data[end - 1:end] in (b"\n", b"\r"):
                end -= 1
            raw = data[start:end]
            lexer.pos = idx + len(b"endstream")
        stream = PdfStream(dictionary, raw)
        stream.dictionary["Length"] = len(raw)
        return stream

    def _resolve_length(self, ref: PdfReference) -> Optional[int]:
        if ref.obj_num in self._loading:
            return None
        loc = self._offsets.get(ref.obj_num)
        if loc is None:
            return None
        self._loading.add(ref.obj_num)
        try:
            obj = self._parse_object_at(loc[0], expect_num=ref.obj_num)
        except (UnterminatedObject, UnsupportedStructure):
            return None
        finally:
            self._loading.discard(ref.obj_num)
        return obj.value if isinstance(obj.value, int) else None

    def _load_objects_from_xref(self) -> None:
        for num in sorted(self._offsets):
            offset, _gen = self._offsets[num]
            obj = self._parse_object_at(offset, expect_num=num)
            _reject_container_stream(obj.value)
            self.doc.objects[obj.obj_num] = obj

    def _scan_all_objects(self) -> None:
        """Fallback: find every `N G obj` in the file; the last occurrence of
        an object number wins (incremental updates append replacements)."""
        self.doc.objects.clear()
        pos = 0
        while True:
            m = _OBJ_HEADER_RE.search(self.data, pos)
            if m is None:
                break
            # an object header must start at a line start / after whitespace
            if m.start() > 0 and self.data[m.start() - 1] not in WHITESPACE:
                pos = m.end()
                continue
            try:
                obj = self._parse_object_at(m.start())
            except (UnterminatedObject, UnsupportedStructure):
                pos = m.end()
                continue
            _reject_container_stream(obj.value)
            self.doc.objects[obj.obj_num] = obj
            pos = m.end()
        if not self.doc.objects:
            raise UnterminatedObject("no indirect objects found in file")

    def _scan_trailer_dict(self) -> dict:
        idx = self.data.rfind(b"trailer")
        if idx == -1:
            raise MissingTrailer("no trailer keyword in file")
        lexer = Lexer(self.data, idx + len(b"trailer"))
        value = lexer.parse_value()
        if not isinstance(value, dict):
            raise MissingTrailer("trailer keyword not followed by a dictionary")
        return value

    # -- assembly ------------------------------------------------------------

    def _rebuild_xref_table(self) -> None:
        table = XrefTable()
        max_num = self.doc.max_obj_num()
        table.entries.append(XrefEntry(0, 65535, False))
        for num in range(1, max_num + 1):
            obj = self.doc.objects.get(num)
            if obj is None:
                gen = self._free.get(num, 65535)
                table.entries.append(XrefEntry(0, gen, False))
            else:
                offset = self._offsets.get(num, (0, obj.gen_num))[0]
                table.entries.append(XrefEntry(offset, obj.gen_num, True))
        self.doc.xref = table

    def parse(self) -> PdfDocument:
        version, marker = _check_header(self.data)
        self.doc.header_version = version
        self.doc.binary_marker = marker

        startxref = self._find_startxref()
        trailer_dict = None
        try:
            trailer_dict = self._load_xref_chain(startxref)
            self._load_objects_from_xref()
        except UnsupportedStructure:
            raise
        except (_XrefMissing, UnterminatedObject, MissingTrailer):
            # dangling pointers or stale offsets: reconstruct by scanning
            self._offsets.clear()
            self._free.clear()
            self._scan_all_objects()
            if trailer_dict is None:
                trailer_dict = self._scan_trailer_dict()

        self.doc.trailer = Trailer(trailer_dict, startxref)
        self.doc.trailer.dictionary.pop("Prev", None)
        self._rebuild_xref_table()
        return self.doc


def parse_document(data: bytes) -> PdfDocument:
    """Parse raw PDF bytes into a :class:`PdfDocument`."""
    if not data:
        raise MalformedHeader("input is empty")
    return DocumentParser(data).parse()
