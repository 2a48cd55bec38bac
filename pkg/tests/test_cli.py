import io
import json
import subprocess
import sys

import pytest

from sorani.cli import EXIT_LEXICON, EXIT_USAGE, main


def run(argv, stdin="", monkeypatch=None):
    if monkeypatch is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_generate_girtman():
    assert run(["generate", "girtin", "simple-past-tr", "agent=1PL", "patient=3SG"]) == (0, "girtman\n")


def test_generate_underlying():
    code, out = run(["generate", "--underlying", "girtin", "simple-past-tr", "agent=1PL", "patient=3PL"])
    assert out.rstrip("\n").split("\t")[1] == "girtmanin"


def test_generate_noun():
    assert run(["generate", "kitêb", "noun", "determiner=definite", "possessor=2SG"])[1] == "kitêbeket\n"


def test_generate_from_stdin(monkeypatch):
    code, out = run(["generate"], "kewtin infinitive\nkewtin present-intr mood=IMP agent=2SG negation=yes\n", monkeypatch)
    assert out.split() == ["kewtin", "mekewe"]


def test_analyze_mekewe(monkeypatch):
    code, out = run(["analyze"], "mekewe\n", monkeypatch)
    rows = [line.split("\t") for line in out.splitlines()]
    assert any(r[1] == "kewtin" and "mood=IMP agent=2SG negation=yes" in r[2] for r in rows)


def test_analyze_jsonl_one_object_per_token(monkeypatch):
    code, out = run(["analyze", "--format", "jsonl"], "mekewe qqqq\nkewtin\n", monkeypatch)
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["surface"] for r in recs] == ["mekewe", "qqqq", "kewtin"]
    assert recs[1]["analyses"] == []
    assert any(a["lemma"] == "kewtin" for a in recs[0]["analyses"])


def test_analyze_arabic_input(monkeypatch):
    code, out = run(["analyze", "--script", "arabic", "--format", "jsonl"], "کەوتن\n", monkeypatch)
    rec = json.loads(out)
    assert any(a["reading"] == "kewtin" for a in rec["analyses"])


def test_translit(monkeypatch):
    assert run(["translit", "--to", "arabic"], "b\n", monkeypatch) == (0, "ب\n")
    code, out = run(["translit", "--to", "latin"], "بردن\n", monkeypatch)
    assert "birdin" in out.strip().split("|")


def test_paradigm():
    code, out = run(["paradigm", "girtin", "--construction", "simple-past-tr"])
    lines = out.splitlines()
    assert code == 0 and len(lines) == 288
    assert all(len(line.split("\t")) == 5 for line in lines)


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "girtin", "simple-past-tr", "agent=1PL"],
        ["generate", "girtin", "simple-past-tr", "colour=red"],
        ["generate", "nosuch", "infinitive"],
        ["paradigm", "kitêb"],
        ["generate", "girtin"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv)[0] == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_1():
    with pytest.raises(SystemExit) as exc:
        main(["translit"])
    assert exc.value.code == EXIT_USAGE


def test_lexicon_check(tmp_path, capsys):
    good = tmp_path / "good.tsv"
    good.write_text("kewtin\tkew\tkewt\tkew\tintransitive\n", encoding="utf-8")
    assert run(["lexicon-check", str(good)]) == (0, "ok\t1 entries\n")
    bad = tmp_path / "bad.tsv"
    bad.write_text("kewtin\tkew\tkewt\tkew\tintransitive\nbirdin\tbi\tbird\n", encoding="utf-8")
    assert run(["lexicon-check", str(bad)])[0] == EXIT_LEXICON
    assert "2:4" in capsys.readouterr().err


def test_missing_lexicon_file():
    assert run(["--lexicon", "/nonexistent.tsv", "generate", "kewtin", "infinitive"])[0] == EXIT_LEXICON


def test_env_lexicon(tmp_path, monkeypatch):
    path = tmp_path / "lex.tsv"
    path.write_text("kewtin\tkew\tkewt\tkew\tintransitive\n", encoding="utf-8")
    monkeypatch.setenv("SORANI_LEXICON", str(path))
    assert run(["generate", "kewtin", "infinitive"]) == (0, "kewtin\n")
    assert run(["generate", "girtin", "infinitive"])[0] == EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sorani", "generate", "kewtin", "present-intr", "agent=1PL"],
        capture_output=True, text=True, encoding="utf-8", check=True,
    )
    assert proc.stdout == "dekewîn\n"
