"""Unit tests for runtime settings."""

import pytest
from pydantic import ValidationError

from serbest.config import PACKAGE_DATA, REPO_ROOT, Settings


def test_defaults(monkeypatch):
    for name in ("SERBEST_GRAMMAR_DIR", "SERBEST_LEXICON", "SERBEST_CORPUS_DIR", "SERBEST_WORKERS"):
        monkeypatch.delenv(name, raising=False)
    s = Settings(_env_file=None)
    assert s.grammar_dir() == PACKAGE_DATA
    assert s.lexicon_path() == PACKAGE_DATA / "lexicon.tlx"
    assert s.corpus_dir() == REPO_ROOT / "corpus"
    assert s.SERBEST_WORKERS == 4


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("SERBEST_GRAMMAR_DIR", str(tmp_path))
    monkeypatch.setenv("SERBEST_WORKERS", "2")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    s = Settings(_env_file=None)
    assert s.grammar_dir() == tmp_path
    assert s.SERBEST_WORKERS == 2
    assert s.LOG_LEVEL == "DEBUG"


def test_lexicon_falls_back_to_packaged_file(tmp_path):
    s = Settings(_env_file=None, SERBEST_LEXICON=None)
    assert s.lexicon_path(grammar_dir=tmp_path) == PACKAGE_DATA / "lexicon.tlx"
    (tmp_path / "lexicon.tlx").write_text("", encoding="utf-8")
    assert s.lexicon_path(grammar_dir=tmp_path) == tmp_path / "lexicon.tlx"


def test_explicit_override_wins(tmp_path):
    s = Settings(_env_file=None)
    assert s.corpus_dir(str(tmp_path)) == tmp_path
    assert s.lexicon_path(str(tmp_path / "x.tlx")) == tmp_path / "x.tlx"


def test_workers_must_be_positive():
    with pytest.raises(ValidationError):
        Settings(_env_file=None, SERBEST_WORKERS=0)


def test_orthography_falls_back_to_packaged_file(tmp_path):
    s = Settings(_env_file=None)
    assert s.orthography_path(tmp_path) == PACKAGE_DATA / "orthography.yaml"
    (tmp_path / "orthography.yaml").write_text("words: {}\n", encoding="utf-8")
    assert s.orthography_path(tmp_path) == tmp_path / "orthography.yaml"
