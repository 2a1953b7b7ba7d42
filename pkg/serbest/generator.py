"""Generator facade: loads the shipped grammar and lexicon and wires the engines."""

import logging
import threading
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from . import grammar
from . import lexicon as lexicon_module
from .caseframe import validate, validate_frame, validate_np
from .config import settings
from .errors import GrammarError, SchemaError, SchemaIssue
from .featstruct import FeatureStructure, parse_fs, parse_fs_many
from .grammar import RuleSet
from .lexicon import Lexicon
from .models import Case, CaseFrame, ComplexSentence, ComplexType
from .morphology import Morphology, parse_tag_string
from .noun_phrase import NP_BUILTINS, NounPhraseEngine
from .sentence import SENTENCE_BUILTINS, OrderPlan, SentenceEngine, control_assignments, remaining, with_control

logger = logging.getLogger(__name__)

Source = Union[str, FeatureStructure]


def read_rules(path: Path) -> RuleSet:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise GrammarError(f"cannot read {path}: {e}", code="syntax-error") from e
    rules = grammar.parse_rule_file(text)
    logger.info(f"✓ Loaded {len(rules)} rules from {path.name}")
    return rules


def _structure(source: Source) -> FeatureStructure:
    return source if isinstance(source, FeatureStructure) else parse_fs(source)


class Generator:
    """Sentence, noun-phrase and word generation over one grammar and lexicon."""

    def __init__(self, lexicon: Lexicon, sentence_rules: RuleSet, np_rules: RuleSet):
        self.lexicon = lexicon
        self.sentence_grammar = grammar.compile(sentence_rules, SENTENCE_BUILTINS, start="s")
        self.np_grammar = grammar.compile(np_rules, NP_BUILTINS, start="np")
        self.morphology = Morphology(lexicon)
        self.np_engine = NounPhraseEngine(lexicon, self.np_grammar, self.morphology)
        self.sentences = SentenceEngine(lexicon, self.sentence_grammar, self.np_engine, self.morphology)

    @classmethod
    def load(cls, grammar_dir: Optional[str] = None, lexicon_path: Optional[str] = None) -> "Generator":
        directory = settings.grammar_dir(grammar_dir)
        lexicon = lexicon_module.load_file(settings.lexicon_path(lexicon_path, directory))
        return cls(lexicon, read_rules(directory / "sentence.rules"), read_rules(directory / "np.rules"))

    # ── sentences ──────────────────────────────────────────────────────────

    def validate(self, source: Source) -> ComplexSentence:
        return validate(_structure(source), self.lexicon)

    def frame(self, source: Source) -> CaseFrame:
        """A simple sentence's case frame, unwrapping ``(type simple)``."""
        fs = _structure(source)
        if "type" in fs:
            cs = validate(fs, self.lexicon)
            if cs.type != ComplexType.SIMPLE:
                raise SchemaError([SchemaIssue("malformed-constituent", "type",
                                               f"expected a simple sentence, got {cs.type.value}")])
            return cs.arg
        return validate_frame(fs, self.lexicon)

    def realize(self, source: Source) -> str:
        return self.sentences.realize_complex(self.validate(source))

    def realize_all(self, text: str) -> List[str]:
        """One sentence per top-level structure in ``text``."""
        return [self.realize(fs) for fs in parse_fs_many(text)]

    def plan(self, source: Source) -> OrderPlan:
        return self.sentences.plan(self.frame(source))

    def derivation(self, source: Source) -> grammar.Derivation:
        return self.sentences.derive_sentence(self.frame(source))

    def trace(self, source: Source) -> str:
        return grammar.trace(self.derivation(source), remaining)

    def emissions(self, source: Source) -> List[str]:
        return grammar.emissions(self.derivation(source))

    def variants(self, source: Source) -> List[Tuple[str, str]]:
        """(control spec, sentence) for every accepted information structure, first spec per surface string."""
        cf = self.frame(source)
        seen: Dict[str, str] = {}
        for control in control_assignments(cf):
            sentence = self.sentences.realize_complex(
                ComplexSentence(type=ComplexType.SIMPLE, arg=with_control(cf, control))
            )
            seen.setdefault(sentence, control.spec())
        return [(spec, sentence) for sentence, spec in seen.items()]

    # ── noun phrases and words ─────────────────────────────────────────────

    def realize_np(self, source: Source, case: Union[Case, str] = Case.NOM, role: Optional[str] = None) -> str:
        np = validate_np(_structure(source), self.lexicon)
        return " ".join(self.np_engine.realize_np(np, Case(case), role))

    def morph(self, tag_string: str) -> str:
        return self.morphology.generate(parse_tag_string(tag_string))


# Generators keyed by (grammar dir, lexicon path).
_generators: Dict[Tuple[Optional[str], Optional[str]], Generator] = {}
_generators_lock = threading.Lock()


def get_generator(grammar_dir: Optional[str] = None, lexicon_path: Optional[str] = None) -> Generator:
    """Gets a generator for the given data files, loading it on first use."""
    key = (grammar_dir, lexicon_path)
    generator = _generators.get(key)
    if generator is not None:
        return generator
    with _generators_lock:
        # re-check: another thread may have loaded it while we waited
        if key not in _generators:
            _generators[key] = Generator.load(grammar_dir, lexicon_path)
        return _generators[key]
