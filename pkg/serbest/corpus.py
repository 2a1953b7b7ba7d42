"""Golden-corpus regression.

A corpus directory holds ``corpus.yaml``::

    cases:
      - id: topic-focus-background
        input: topic-focus-background.fs
        gold: "Dün kitabı Ahmet bıraktı masada."
        trace: [time, dir-obj, subject, verb, location]

Gold lines go through the orthography table before comparison, so source
transcriptions can be kept as published.
"""

import difflib
import logging
import re
import unicodedata
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

import yaml
from pydantic import ValidationError

from .config import settings
from .errors import SerbestError
from .generator import Generator
from .models import CorpusCase

logger = logging.getLogger(__name__)

_WORD = re.compile(r"[^\s.,?!;:]+")


def load_orthography(path: Optional[Union[str, Path]] = None) -> Dict[str, str]:
    """Spelling table for gold lines; defaults to the grammar directory's orthography.yaml."""
    path = Path(path) if path is not None else settings.orthography_path()
    if not path.exists():
        logger.warning(f"⚠️ Orthography table not found: {path}")
        return {}
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    return {str(k).lower(): str(v) for k, v in (data.get("words") or {}).items()}


def normalize(text: str, table: Dict[str, str]) -> str:
    """NFC text with every listed spelling replaced, keeping initial capitals."""

    def swap(match: re.Match) -> str:
        word = match.group()
        replacement = table.get(word.lower())
        if replacement is None:
            return word
        return replacement[0].upper() + replacement[1:] if word[0].isupper() else replacement

    return unicodedata.normalize("NFC", _WORD.sub(swap, unicodedata.normalize("NFC", text.strip())))


def load_corpus(directory: Union[str, Path]) -> List[CorpusCase]:
    """Cases in file order; a directory without corpus.yaml is an empty corpus."""
    path = Path(directory) / "corpus.yaml"
    if not path.exists():
        logger.info(f"No corpus.yaml in {directory}")
        return []
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    cases = []
    seen = set()
    for raw in data.get("cases") or []:
        try:
            case = CorpusCase(**raw)
        except (TypeError, ValidationError) as e:
            raise SerbestError(f"bad corpus case {raw!r}: {e}", code="bad-corpus-case", path=str(path)) from e
        if case.id in seen:
            raise SerbestError(f"case id {case.id!r} used twice", code="duplicate-case", path=str(path))
        seen.add(case.id)
        cases.append(case)
    logger.info(f"✓ Loaded {len(cases)} corpus cases from {path}")
    return cases


@dataclass
class CaseResult:
    case: CorpusCase
    expected: str
    output: Optional[str] = None
    emissions: Optional[List[str]] = None
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        if self.error is not None or self.output != self.expected:
            return False
        return self.case.trace is None or self.emissions == list(self.case.trace)

    def diff(self) -> str:
        if self.error is not None:
            return self.error
        lines = []
        if self.output != self.expected:
            lines.extend(difflib.unified_diff([self.expected], [self.output or ""], "gold", "output", lineterm=""))
        if self.case.trace is not None and self.emissions != list(self.case.trace):
            lines.append(f"trace gold:   {', '.join(self.case.trace)}")
            lines.append(f"trace output: {', '.join(self.emissions or [])}")
        return "\n".join(lines)


@dataclass
class CorpusReport:
    results: List[CaseResult] = field(default_factory=list)

    @property
    def failed(self) -> List[CaseResult]:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failed

    def summary(self) -> str:
        return f"{len(self.results) - len(self.failed)}/{len(self.results)} cases passed"


def run_case(generator: Generator, case: CorpusCase, directory: Path, table: Dict[str, str]) -> CaseResult:
    result = CaseResult(case, expected=normalize(case.gold, table))
    try:
        text = (directory / case.input).read_text(encoding="utf-8")
        result.output = generator.realize(text)
        if case.trace is not None:
            result.emissions = generator.emissions(text)
    except OSError as e:
        result.error = f"error[missing-input] {case.input}: {e}"
    except SerbestError as e:
        result.error = e.diagnostic()
    return result


def run_corpus(generator: Generator, directory: Union[str, Path], workers: int = 1,
               grammar_dir: Optional[str] = None) -> CorpusReport:
    """Run every case; results keep corpus order whatever the worker count."""
    directory = Path(directory)
    cases = load_corpus(directory)
    table = load_orthography(settings.orthography_path(settings.grammar_dir(grammar_dir)))
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(lambda case: run_case(generator, case, directory, table), cases))
    report = CorpusReport(results)
    if report.ok:
        logger.info(f"✓ Corpus {directory}: {report.summary()}")
    else:
        logger.warning(f"⚠️ Corpus {directory}: {report.summary()}")
    return report
