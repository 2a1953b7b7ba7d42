"""Pytest configuration"""

import os
import sys
from pathlib import Path
from typing import List

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from serbest.featstruct import FeatureStructure, parse_fs  # noqa: E402
from serbest.generator import Generator  # noqa: E402
from serbest.morphology import WordForm  # noqa: E402

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def generator() -> Generator:
    """Generator over the shipped grammar and lexicon, shared by the session."""
    return Generator.load()


@pytest.fixture(scope="session")
def lexicon(generator):
    return generator.lexicon


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture
def corpus_fs():
    """Load a corpus input by case id."""

    def load(name: str) -> FeatureStructure:
        return parse_fs((CORPUS_DIR / f"{name}.fs").read_text(encoding="utf-8"))

    return load


@pytest.fixture
def recording_generator():
    """A fresh generator plus every word form it builds."""
    gen = Generator.load()
    words: List[WordForm] = []
    gen.morphology.add_observer(words.append)
    return gen, words
