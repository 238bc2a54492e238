"""Object model behavior: access, resolution, identity, copying."""
from __future__ import annotations

import pytest

from pdflwc.fixtures import minimal_document
from pdflwc.objects import (IndirectObject, PdfDocument, PdfName,
                            PdfReference, PdfStream, PdfString, Trailer)


def test_name_repr_and_equality():
    assert PdfName("Type") == PdfName("Type")
    assert PdfName("Type") != PdfName("type")
    assert "/Type" in repr(PdfName("Type"))


def test_stream_set_raw_keeps_length_consistent():
    stream = PdfStream(dictionary={}, raw=b"")
    stream.set_raw(b"abcdef")
    assert stream.dictionary["Length"] == 6
    assert stream.raw == b"abcdef"
    stream.set_raw(b"")
    assert stream.dictionary["Length"] == 0


def test_get_object_and_generation_check():
    doc = minimal_document()
    assert doc.get_object(1).value["Type"] == PdfName("Catalog")
    assert doc.get_object(1, gen_num=0) is not None
    assert doc.get_object(1, gen_num=5) is None
    assert doc.get_object(99) is None


def test_resolve_follows_references_and_passes_values():
    doc = minimal_document()
    ref = PdfReference(1, 0)
    assert doc.resolve(ref)["Type"] == PdfName("Catalog")
    assert doc.resolve(42) == 42
    assert doc.resolve(PdfReference(99, 0)) is None


def test_add_object_allocates_next_number():
    doc = minimal_document()
    ref = doc.add_object({"A": 1})
    assert ref.obj_num == doc.max_obj_num()
    assert doc.get_object(ref.obj_num).value == {"A": 1}


def test_iter_objects_sorted():
    doc = PdfDocument()
    doc.objects[9] = IndirectObject(9, 0, 1)
    doc.objects[2] = IndirectObject(2, 0, 2)
    assert [o.obj_num for o in doc.iter_objects()] == [2, 9]


def test_is_encrypted_and_file_id():
    doc = minimal_document()
    assert not doc.is_encrypted
    assert doc.file_id() is None
    doc.trailer.dictionary["ID"] = [PdfString(b"a" * 16), PdfString(b"b" * 16)]
    assert doc.file_id() == (b"a" * 16, b"b" * 16)
    doc.trailer.dictionary["Encrypt"] = PdfReference(90, 0)
    assert doc.is_encrypted


def test_copy_is_deep():
    doc = minimal_document()
    clone = doc.copy()
    clone.objects[1].value["Type"] = PdfName("Changed")
    clone.trailer.dictionary["Extra"] = 1
    assert doc.objects[1].value["Type"] == PdfName("Catalog")
    assert "Extra" not in doc.trailer.dictionary


def test_file_id_requires_two_string_entries():
    doc = minimal_document()
    doc.trailer.dictionary["ID"] = [PdfString(b"a" * 16)]
    assert doc.file_id() is None
    doc.trailer.dictionary["ID"] = "nonsense"
    assert doc.file_id() is None
