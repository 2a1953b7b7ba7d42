"""Unit tests for the command-line entry point."""

import shutil

import pytest

from serbest.config import PACKAGE_DATA
from serbest.main import EXIT_INPUT, EXIT_OK, EXIT_REALIZATION, main


@pytest.fixture
def write(tmp_path):
    def _write(text: str, name: str = "input.fs"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


def test_morph(capsys):
    assert main(["morph", "kitap+P3SG+ACC"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "kitabını"


def test_morph_bad_tags(capsys):
    assert main(["morph", "kitap+FOO"]) == EXIT_INPUT
    assert "error[unknown-tag]" in capsys.readouterr().err


def test_realize_file(corpus_dir, capsys):
    assert main(["realize", str(corpus_dir / "default-order.fs")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "Ahmet dün kitabı masada bıraktı."


def test_realize_keeps_input_order(write, capsys):
    path = write(
        '((verb ((root gel) (tense past))) (args ((subject "Ali"))))\n'
        '((verb ((root git) (tense past))) (args ((subject "Ahmet"))))\n'
    )
    assert main(["--workers", "2", "realize", path]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["Ali geldi.", "Ahmet gitti."]


def test_realize_with_trace(corpus_dir, capsys):
    assert main(["realize", "--trace", str(corpus_dir / "topic-focus-background.fs")]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.strip() == "Dün kitabı Ahmet bıraktı masada."
    assert "sb\tlocation\tlocation" in captured.err


def test_realize_traces_simple_wrapper(write, capsys):
    path = write('((type simple) (arg ((verb ((root gel) (tense past))) (args ((subject "Ali"))))))')
    assert main(["realize", "--trace", path]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.strip() == "Ali geldi."
    assert any(line.startswith("s\t") for line in captured.err.splitlines())


def test_realize_bad_input(write, capsys):
    assert main(["realize", write("((verb ((root gel))")]) == EXIT_INPUT
    assert "error[syntax-error]" in capsys.readouterr().err


def test_realize_schema_error_continues(write, capsys):
    path = write(
        "((verb ((root gel) (tense soon))))\n"
        '((verb ((root gel) (tense past))) (args ((subject "Ali"))))\n'
    )
    assert main(["realize", path]) == EXIT_INPUT
    captured = capsys.readouterr()
    assert "error[bad-enum-value] verb.tense" in captured.err
    assert captured.out.strip() == "Ali geldi."


def test_realization_failure_exit_code(write, capsys):
    assert main(["realize", write("((s-form adverbial) (verb ((root gel))))")]) == EXIT_REALIZATION
    assert "error[unsupported-s-form]" in capsys.readouterr().err


@pytest.mark.parametrize("clause", [
    '((verb ((root gel))) (args ((subject "Ayşe"))) (control ((topic subject) (focus subject))))',
    '((verb ((root gel))) (args ((subject "Ayşe") (dir-obj ((ref ((arg kitap)))'
    ' (spec ((det ((definite -) (specific +))))))))) (control ((focus subject))))',
])
def test_input_errors_exit_alike_when_embedded(write, capsys, clause):
    assert main(["realize", write(clause)]) == EXIT_INPUT
    top_level = capsys.readouterr().err
    embedded = f'((verb ((root gör) (tense past))) (args ((subject "Ali") (dir-obj {clause}))))'
    assert main(["realize", write(embedded, "embedded.fs")]) == EXIT_INPUT
    assert "error[builtin-failure]" in capsys.readouterr().err
    assert top_level.startswith("error[")


def test_missing_file(tmp_path, capsys):
    assert main(["realize", str(tmp_path / "absent.fs")]) == EXIT_INPUT
    assert "error[missing-input]" in capsys.readouterr().err


def test_workers_must_be_positive(corpus_dir, capsys):
    assert main(["--workers", "0", "realize", str(corpus_dir / "default-order.fs")]) == EXIT_INPUT
    assert "--workers" in capsys.readouterr().err


def test_np(write, capsys):
    path = write("((ref ((arg dakika))) (modf ((quant-mod 3))))")
    assert main(["np", path, "--case", "loc"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "3 dakikada"


def test_trace(corpus_dir, capsys):
    assert main(["trace", str(corpus_dir / "dropped-subject-complement.fs")]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("s\t")


def test_variants(corpus_dir, capsys):
    assert main(["variants", str(corpus_dir / "answer-goal.fs")]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4
    assert lines[0] == "topic=- focus=- backgr=-\tAli okula gitti."


def test_corpus(corpus_dir, capsys):
    assert main(["corpus", str(corpus_dir)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS\ttopic-focus-background" in out
    assert out.strip().endswith("12/12 cases passed")


def test_corpus_failure(corpus_dir, tmp_path, capsys):
    source = (corpus_dir / "default-order.fs").read_text(encoding="utf-8")
    (tmp_path / "default-order.fs").write_text(source, encoding="utf-8")
    (tmp_path / "corpus.yaml").write_text(
        'cases:\n  - {id: default-order, input: default-order.fs, gold: "Ahmet gitti."}\n', encoding="utf-8"
    )
    assert main(["corpus", str(tmp_path)]) == EXIT_INPUT
    assert "FAIL\tdefault-order" in capsys.readouterr().out


def test_corpus_uses_grammar_orthography(tmp_path, capsys):
    grammar_dir = tmp_path / "grammar"
    shutil.copytree(PACKAGE_DATA, grammar_dir)
    (grammar_dir / "orthography.yaml").write_text("words:\n  gittii: gitti\n", encoding="utf-8")
    cases = tmp_path / "cases"
    cases.mkdir()
    (cases / "a.fs").write_text('((verb ((root git) (tense past))) (args ((subject "Ahmet"))))', encoding="utf-8")
    (cases / "corpus.yaml").write_text('cases:\n  - {id: a, input: a.fs, gold: "Ahmet gittii."}\n',
                                       encoding="utf-8")
    assert main(["--grammar", str(grammar_dir), "corpus", str(cases)]) == EXIT_OK
    assert "PASS\ta" in capsys.readouterr().out
