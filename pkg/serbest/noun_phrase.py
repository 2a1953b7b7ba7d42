"""Noun-phrase linearization and realization.

The slot order lives in ``np.rules``; this module builds the slot structure
the rules read, walks the derivation and turns each slot into words.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

from . import grammar
from .caseframe import resolve
from .errors import RealizationError
from .featstruct import Atom, FeatureStructure, Text, Value, ValueList
from .grammar import CompiledGrammar
from .lexicon import Lexicon
from .models import Agr, Case, CaseFrame, Category, LexEntry, NounPhrase
from .morphology import Morphology

logger = logging.getLogger(__name__)

NP_BUILTINS = (
    "possessor", "spec-rel", "set-spec", "det", "demons", "article", "mod-rel",
    "ordinal", "quant", "qual", "classifier", "head",
)

SPECIFIER_SLOTS = ("spec-rel", "set-spec", "det", "demons")
MODIFIER_SLOTS = ("mod-rel", "ordinal", "quant", "qual")

# Realizes an embedded clause in the given case; supplied by the sentence layer.
ClauseRealizer = Callable[[CaseFrame, Case], List[str]]


@dataclass(frozen=True)
class NPSlot:
    kind: str
    value: FeatureStructure


def _payload(**entries: Value) -> FeatureStructure:
    return FeatureStructure({k.replace("_", "-"): v for k, v in entries.items()})


class NounPhraseEngine:
    """Orders and inflects noun phrases against a lexicon."""

    def __init__(self, lexicon: Lexicon, np_grammar: CompiledGrammar, morphology: Morphology,
                 clause_realizer: Optional[ClauseRealizer] = None):
        self.lexicon = lexicon
        self.grammar = np_grammar
        self.morphology = morphology
        self.clause_realizer = clause_realizer

    # ── lexical helpers ────────────────────────────────────────────────────

    def entry(self, lemma: str, path: str = "ref.arg") -> LexEntry:
        found = resolve(self.lexicon, lemma)
        if found is None:
            raise RealizationError(f"{lemma!r} is not in the lexicon", code="unknown-lexeme", path=path)
        return found

    def agreement(self, np: NounPhrase) -> Agr:
        """Person and number the phrase imposes on a verb or possessed head."""
        if np.agr is not None:
            return np.agr
        if np.arg is not None:
            found = resolve(self.lexicon, np.arg)
            if found is not None and found.agr is not None:
                return found.agr
        return Agr.A3SG

    # ── planning ───────────────────────────────────────────────────────────

    def slot_structure(self, np: NounPhrase) -> FeatureStructure:
        """The structure ``np.rules`` derives from."""
        slots = {}
        extra = {}

        if np.poss is not None and not np.poss.drop:
            slots["possessor"] = np.poss.argument.fs or FeatureStructure()
            extra["poss-position"] = Atom("post" if np.poss.move else "pre")
        if np.spec.spec_rel:
            slots["spec-rel"] = _payload(count=Atom(str(len(np.spec.spec_rel))))
        if np.spec.set_spec:
            slots["set-spec"] = _payload(count=Atom(str(len(np.spec.set_spec))))
        det = np.spec.det
        if det is not None and det.quantifier:
            position = self.entry(det.quantifier, "spec.det.quantifier").flags.det_position
            slots["det"] = _payload(lemma=Text(det.quantifier))
            extra["det-position"] = Atom(position)
        if np.spec.demons:
            slots["demons"] = _payload(lemma=Text(np.spec.demons))
        if self._takes_article(np):
            slots["article"] = _payload(lemma=Text("bir"))
            extra["article-position"] = Atom("late" if np.modf.qualy_mod else "early")
        if np.modf.mod_rel:
            slots["mod-rel"] = _payload(count=Atom(str(len(np.modf.mod_rel))))
        if np.modf.ordinal is not None:
            slots["ordinal"] = _payload(position=Atom(str(np.modf.ordinal.position)))
        if np.modf.quant_mod:
            slots["quant"] = _payload(lemma=Text(np.modf.quant_mod))
        if np.modf.qualy_mod:
            slots["qual"] = _payload(lemmas=ValueList(tuple(Text(q) for q in np.modf.qualy_mod)))
        if np.classifier:
            slots["classifier"] = _payload(lemma=Text(np.classifier))
        if np.modf.emphasis is not None:
            extra["emphasis"] = Atom(np.modf.emphasis.value)

        entries = {"has": FeatureStructure({name: Atom("+") for name in slots})}
        entries.update(slots)
        entries["head"] = _payload(lemma=Text(np.arg or ""))
        entries.update(extra)
        return FeatureStructure(entries)

    @staticmethod
    def _takes_article(np: NounPhrase) -> bool:
        det = np.spec.det
        if det is None or det.definite or det.quantifier:
            return False
        singular = np.agr is None or not np.agr.plural
        return singular and bool(det.specific or det.referential)

    def derive(self, np: NounPhrase, hooks=None) -> grammar.Derivation:
        if np.roles is not None:
            raise RealizationError(
                f"gapped modifier roles ({np.roles}) need participles, which are not generated",
                code="roles-present", path="roles",
            )
        return grammar.derive(self.grammar, "np", self.slot_structure(np), hooks)

    def plan_np(self, np: NounPhrase) -> List[NPSlot]:
        """Ordered slots of a noun phrase; a dropped head still yields its head slot."""
        d = self.derive(np)
        return [NPSlot(leaf.symbol, leaf.value) for leaf in d.leaves() if leaf.emission is not None]

    # ── realization ────────────────────────────────────────────────────────

    def realize_np(self, np: NounPhrase, case: Case = Case.NOM, role: Optional[str] = None) -> List[str]:
        """Inflected words of ``np``; empty when the phrase is dropped."""
        if np.drop:
            return []
        if role == "dir-obj" and not np.definite and case == Case.ACC:
            case = Case.NOM
        words: List[str] = []
        for slot in self.plan_np(np):
            words.extend(self._slot_words(np, slot.kind, case))
        return words

    def _slot_words(self, np: NounPhrase, kind: str, case: Case) -> List[str]:
        if kind == "possessor":
            return self.realize_np(np.poss.argument, Case.GEN, "possessor")
        if kind == "spec-rel":
            return self._phrases(np.spec.spec_rel)
        if kind == "mod-rel":
            return self._phrases(np.modf.mod_rel)
        if kind == "set-spec":
            words = []
            for member in np.spec.set_spec:
                words.extend(self.realize_np(member, Case.ABL))
            return words
        if kind == "det":
            return [np.spec.det.quantifier]
        if kind == "demons":
            return [np.spec.demons]
        if kind == "article":
            return ["bir"]
        if kind == "ordinal":
            return self._ordinal(np)
        if kind == "quant":
            return [np.modf.quant_mod]
        if kind == "qual":
            for lemma in np.modf.qualy_mod:
                self.entry(lemma, "modf.qualy-mod")
            return list(np.modf.qualy_mod)
        if kind == "classifier":
            return [self.entry(np.classifier, "class").lemma]
        if kind == "head":
            return [self.head_word(np, case)] if np.arg else []
        return []

    def _phrases(self, items) -> List[str]:
        words: List[str] = []
        for item in items:
            if isinstance(item, str):
                words.extend(item.split())
            elif isinstance(item, NounPhrase):
                words.extend(self.realize_np(item, item.case or Case.NOM))
            elif isinstance(item, CaseFrame):
                if self.clause_realizer is None:
                    raise RealizationError("clausal modifier with no clause realizer", code="unsupported-s-form")
                words.extend(self.clause_realizer(item, item.case or Case.NOM))
        return words

    def _ordinal(self, np: NounPhrase) -> List[str]:
        ordinal = np.modf.ordinal
        numeral = self.lexicon.numeral(ordinal.position)
        if numeral is not None:
            word = self.morphology.inflect(numeral.lemma, "ORD", category=numeral.category)
        else:
            word = f"{ordinal.position}."
        return ["en", word] if ordinal.intensifier else [word]

    def head_word(self, np: NounPhrase, case: Case) -> str:
        entry = self.entry(np.arg)
        if entry.category == Category.WH:
            # pro-forms are listed already inflected
            return entry.lemma
        tags = []
        agr = self.agreement(np)
        if agr.plural and entry.category != Category.PRONOUN:
            tags.append("PL")
        if np.poss is not None:
            tags.append(f"P{self.agreement(np.poss.argument).tag}")
        elif np.classifier:
            tags.append("P3SG")
        if case != Case.NOM:
            tags.append(case.value.upper())
        return self.morphology.inflect(entry.lemma, *tags, category=entry.category)
