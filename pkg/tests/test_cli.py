"""Command-line interface: workflows, output shape, exit codes."""
from __future__ import annotations

import pytest

from conftest import REPO_ROOT, VECTOR_DIR, document_key
from pdflwc.cli import main
from pdflwc.fixtures import FIXTURE_SPECS, random_document
from pdflwc.parser import parse_document
from pdflwc.writer import serialize_document


@pytest.fixture
def plain_pdf(tmp_path):
    path = tmp_path / "plain.pdf"
    path.write_bytes(serialize_document(
        random_document(FIXTURE_SPECS["small"], seed=8)))
    return path


def _inspect_map(capsys) -> dict:
    return dict(line.split("=", 1)
                for line in capsys.readouterr().out.splitlines())


def test_encrypt_decrypt_inspect_workflow(tmp_path, plain_pdf, capsys):
    enc = tmp_path / "enc.pdf"
    dec = tmp_path / "dec.pdf"
    assert main(["encrypt", str(plain_pdf), str(enc), "--cipher", "ascon128",
                 "--user-password", "u", "--owner-password", "o",
                 "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "cipher=ASCON128" in out and "targets=" in out

    assert main(["inspect", str(enc)]) == 0
    info = _inspect_map(capsys)
    assert info["encrypted"] == "yes"
    assert info["cipher"] == "ASCON128"
    assert info["crypt_filter_method"] == "ASCON128"
    assert info["version"] == "4" and info["revision"] == "4"
    assert info["permissions"] == "-4"
    assert info["permissions_hex"] == "0xFFFFFFFC"

    assert main(["decrypt", str(enc), str(dec), "--password", "u"]) == 0
    assert "auth=user_password" in capsys.readouterr().out
    original = parse_document(plain_pdf.read_bytes())
    restored = parse_document(dec.read_bytes())
    assert document_key(restored) == document_key(original)


def test_inspect_plain_document(plain_pdf, capsys):
    assert main(["inspect", str(plain_pdf)]) == 0
    info = _inspect_map(capsys)
    assert info["encrypted"] == "no"
    assert "cipher" not in info


def test_decrypt_wrong_password_exits_2(tmp_path, plain_pdf, capsys):
    enc = tmp_path / "enc.pdf"
    main(["encrypt", str(plain_pdf), str(enc), "--user-password", "secret"])
    capsys.readouterr()
    code = main(["decrypt", str(enc), str(tmp_path / "x.pdf"),
                 "--password", "bogus"])
    assert code == 2
    assert "WrongPassword" in capsys.readouterr().err


def test_decrypt_unencrypted_input_exits_2(tmp_path, plain_pdf, capsys):
    code = main(["decrypt", str(plain_pdf), str(tmp_path / "x.pdf")])
    assert code == 2
    assert "NotEncrypted" in capsys.readouterr().err


def test_encrypt_twice_exits_2(tmp_path, plain_pdf, capsys):
    enc = tmp_path / "enc.pdf"
    main(["encrypt", str(plain_pdf), str(enc)])
    capsys.readouterr()
    assert main(["encrypt", str(enc), str(tmp_path / "enc2.pdf")]) == 2
    assert "AlreadyEncrypted" in capsys.readouterr().err


def test_missing_input_exits_1(tmp_path, capsys):
    code = main(["inspect", str(tmp_path / "nope.pdf")])
    assert code == 1
    assert "FileNotFoundError" in capsys.readouterr().err


def test_garbage_input_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.pdf"
    bad.write_bytes(b"this is not a document at all")
    assert main(["inspect", str(bad)]) == 1
    assert "MalformedHeader" in capsys.readouterr().err


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["encrypt", "only-one-arg"])
    assert exc_info.value.code == 1
    assert "UsageError" in capsys.readouterr().err


def test_kat_success_and_failure_paths(tmp_path, capsys):
    good = VECTOR_DIR / "ascon128" / "LWC_AEAD_KAT_128_128.txt"
    assert main(["kat", "--cipher", "ascon128", "--file", str(good)]) == 0
    out = capsys.readouterr().out
    assert "records=1089 passed=1089 failed=0 first_failure=-" in out

    doctored = tmp_path / "doctored.txt"
    text = good.read_text()
    records = text.split("\n\n")
    records[0] = records[0].replace("CT = E3", "CT = E4")
    doctored.write_text("\n\n".join(records[:5]))
    assert main(["kat", "--cipher", "ascon128",
                 "--file", str(doctored)]) == 2
    assert "failed=1 first_failure=1" in capsys.readouterr().out

    malformed = tmp_path / "broken.txt"
    malformed.write_text("Count = 1\nKey = zz\n")
    assert main(["kat", "--cipher", "ascon128",
                 "--file", str(malformed)]) == 1
    assert "MalformedKatFile" in capsys.readouterr().err


def test_bench_quick_run(capsys):
    code = main(["bench", "--suites", "aes128", "ascon128",
                 "--modes", "ss", "--forks", "1",
                 "--warmup-iterations", "1", "--measurement-iterations", "3",
                 "--iteration-time", "0", "--seed", "1"])
    assert code == 0
    out = capsys.readouterr().out
    assert "| Benchmark | Mode | Cnt | Score | Error | Units |" in out
    assert "| encrypt[aes128] | ss | 3 |" in out
    assert "| encrypt[ascon128] | ss | 3 |" in out
    assert "verdict[ss]: ascon128" in out


def test_bench_unknown_suite_exits_1(capsys):
    code = main(["bench", "--suites", "des", "--forks", "1",
                 "--measurement-iterations", "1", "--iteration-time", "0"])
    assert code == 1
    assert "KeyError" in capsys.readouterr().err


def test_bench_png_without_out_exits_1(capsys):
    code = main(["bench", "--suites", "ascon128", "--modes", "ss",
                 "--forks", "1", "--warmup-iterations", "0",
                 "--measurement-iterations", "1", "--iteration-time", "0",
                 "--report", "png"])
    assert code == 1
    assert "UsageError" in capsys.readouterr().err


def test_bench_writes_report_file(tmp_path, capsys):
    out_file = tmp_path / "report.csv"
    code = main(["bench", "--suites", "ascon128", "--modes", "ss",
                 "--forks", "1", "--warmup-iterations", "0",
                 "--measurement-iterations", "2", "--iteration-time", "0",
                 "--report", "csv", "--out", str(out_file)])
    assert code == 0
    assert out_file.exists()
    assert "report written to" in capsys.readouterr().out


def test_size_report_command(capsys):
    assert main(["size-report", "--fixture", "small"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("| suite | fixture | targets |")
    assert "AES128" in out and "ASCON128" in out and "XOODYAK" in out
