"""In-memory model of a PDF 1.7 document.

Values map onto Python this way:

* booleans, integers, reals  -> ``bool`` / ``int`` / ``float``
* null                       -> ``None``
* name                       -> :class:`PdfName` (dictionary keys are plain ``str``)
* literal / hex string       -> :class:`PdfString` (raw bytes, never text-decoded)
* array                      -> ``list``
* dictionary                 -> ``dict[str, value]``
* stream                     -> :class:`PdfStream` (dictionary + raw encoded bytes)
* indirect reference         -> :class:`PdfReference`

Strings and streams carry raw bytes because encryption operates on bytes;
any text or filter decoding is out of scope here.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union


@dataclass(frozen=True)
class PdfName:
    """A PDF name value (the leading slash is not stored)."""
    value: str

    def __repr__(self) -> str:
        return f"/{self.value}"


@dataclass
class PdfString:
    """A literal or hex string; ``data`` is the decoded raw byte payload.

    ``hex`` records the lexical form it was read in (and will be written
    back in) — the payload semantics are identical either way.
    """
    data: bytes
    hex: bool = False


@dataclass(frozen=True)
class PdfReference:
    obj_num: int
    gen_num: int

    def __repr__(self) -> str:
        return f"{self.obj_num} {self.gen_num} R"


@dataclass
class PdfStream:
    """A stream object: its dictionary plus the raw (still encoded) bytes."""
    dictionary: dict
    raw: bytes = field(repr=False)

    def set_raw(self, data: bytes) -> None:
        """Replace the payload and keep the Length entry consistent."""
        self.raw = data
        self.dictionary["Length"] = len(data)


PdfValue = Union[bool, int, float, None, PdfName, PdfString, list, dict,
                 PdfStream, PdfReference]


@dataclass
class IndirectObject:
    obj_num: int
    gen_num: int
    value: PdfValue


@dataclass
class XrefEntry:
    offset: int
    generation: int
    in_use: bool


@dataclass
class XrefTable:
    """Classic cross-reference table: entries indexed by object number,
    consecutive from 0; entry 0 is the free-list head (gen 65535)."""
    entries: list = field(default_factory=list)


@dataclass
class Trailer:
    dictionary: dict = field(default_factory=dict)
    startxref: int = 0


@dataclass
class PdfDocument:
    header_version: str = "1.7"
    binary_marker: bytes = b"\xe2\xe3\xcf\xd3"
    objects: dict = field(default_factory=dict)   # obj_num -> IndirectObject
    xref: XrefTable = field(default_factory=XrefTable)
    trailer: Trailer = field(default_factory=Trailer)

    # -- object access -------------------------------------------------------

    def get_object(self, obj_num: int, gen_num: Optional[int] = None) -> Optional[IndirectObject]:
        obj = self.objects.get(obj_num)
        if obj is None:
            return None
        if gen_num is not None and obj.gen_num != gen_num:
            return None
        return obj

    def resolve(self, value: PdfValue) -> PdfValue:
        """Follow an indirect reference (one hop); other values pass through."""
        if isinstance(value, PdfReference):
            obj = self.get_object(value.obj_num, value.gen_num)
            return obj.value if obj is not None else None
        return value

    def iter_objects(self) -> Iterator[IndirectObject]:
        for num in sorted(self.objects):
            yield self.objects[num]

    def max_obj_num(self) -> int:
        return max(self.objects, default=0)

    def add_object(self, value: PdfValue, gen_num: int = 0) -> PdfReference:
        num = self.max_obj_num() + 1
        self.objects[num] = IndirectObject(num, gen_num, value)
        return PdfReference(num, gen_num)

    # -- convenience ---------------------------------------------------------

    @property
    def is_encrypted(self) -> bool:
        return "Encrypt" in self.trailer.dictionary

    def file_id(self) -> Optional[tuple]:
        """The trailer ID as a (bytes, bytes) pair, if present and well-formed."""
        id_arr = self.trailer.dictionary.get("ID")
        if (isinstance(id_arr, list) and len(id_arr) == 2
                and all(isinstance(x, PdfString) for x in id_arr)):
            return (id_arr[0].data, id_arr[1].data)
        return None

    def copy(self) -> "PdfDocument":
        return copy.deepcopy(self)
