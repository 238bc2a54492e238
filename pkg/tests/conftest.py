"""Shared fixtures: document comparison helpers and the interop tool."""
from __future__ import annotations

import os
import pathlib
import shutil
import subprocess

import pytest

from pdflwc.objects import PdfStream, PdfString

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
VECTOR_DIR = pathlib.Path(__file__).resolve().parent / "vectors"

# Trailer entries that are serialization bookkeeping, not document content.
_BOOKKEEPING_KEYS = ("ID", "Encrypt", "Size", "Prev")


def normalize_value(value):
    """Comparison form: strings by decoded bytes, streams by dict+raw."""
    if isinstance(value, PdfString):
        return ("str", value.data)
    if isinstance(value, PdfStream):
        items = tuple(sorted((k, normalize_value(v))
                             for k, v in value.dictionary.items()
                             if k != "Length"))
        return ("stream", items, value.raw)
    if isinstance(value, dict):
        return ("dict", tuple(sorted((k, normalize_value(v))
                                     for k, v in value.items())))
    if isinstance(value, list):
        return ("list", tuple(normalize_value(v) for v in value))
    return value


def document_key(doc, skip_trailer=_BOOKKEEPING_KEYS):
    """Semantic fingerprint of a document for round-trip comparisons."""
    objects = {num: normalize_value(obj.value)
               for num, obj in doc.objects.items()}
    trailer = {key: normalize_value(value)
               for key, value in doc.trailer.dictionary.items()
               if key not in skip_trailer}
    return objects, trailer


@pytest.fixture
def doc_key():
    return document_key


def find_interop_tool() -> str | None:
    """Locate (or build) the reference encryption tool."""
    env = os.environ.get("PDF_INTEROP_TOOL")
    if env and pathlib.Path(env).exists():
        return env
    on_path = shutil.which("pdf-interop")
    if on_path:
        return on_path
    candidate = REPO_ROOT / "tools" / "pdf_interop" / "target" / "release" / "pdf-interop"
    if candidate.exists():
        return str(candidate)
    cargo = shutil.which("cargo")
    if cargo:
        try:
            subprocess.run([cargo, "build", "--release"],
                           cwd=REPO_ROOT / "tools" / "pdf_interop",
                           check=True, capture_output=True, timeout=900)
        except (subprocess.SubprocessError, OSError):
            return None
        if candidate.exists():
            return str(candidate)
    return None


@pytest.fixture(scope="session")
def interop_tool():
    path = find_interop_tool()
    if path is None:
        pytest.skip("reference interop tool unavailable (no binary, no cargo)")
    return path
