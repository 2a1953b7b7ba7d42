"""Constituent ordering and sentence realization.

Ordering is delegated to ``sentence.rules``: the engine hands the grammar the
canonical case frame plus a ``present`` map and the subject agreement, and
reads the order back off the derivation. Realization runs the same derivation
with hooks that inflect each constituent and the verb.
"""

import itertools
import logging
import unicodedata
from dataclasses import dataclass, field
from functools import partial
from typing import Iterator, List, Optional, Tuple

from . import grammar
from .caseframe import is_indefinite_dirobj, validate_constituent, validate_frame
from .errors import LexiconError, PlanError, RealizationError
from .featstruct import Atom, FeatureStructure, Text, scalar
from .grammar import CompiledGrammar, Derivation, Leaf
from .lexicon import Lexicon
from .models import (
    DEFAULT_ORDER,
    ROLE_CASE,
    Agr,
    Case,
    CaseFrame,
    Category,
    ClauseType,
    ComplexSentence,
    ComplexType,
    Constituent,
    Control,
    Nominalizer,
    NounPhrase,
    Polarity,
    QuesType,
    SForm,
    SlotKind,
    SpeechAct,
    Tense,
    Aspect,
    Modality,
    Voice,
    role_group,
)
from .morphology import Morphology, harmonize_particle, tr_capitalize
from .noun_phrase import NounPhraseEngine

logger = logging.getLogger(__name__)

SENTENCE_BUILTINS = DEFAULT_ORDER + ("verb",)

_STATE_KIND = {"s": SlotKind.TOPIC, "sf": SlotKind.FOCUS, "sv": SlotKind.VERB, "sb": SlotKind.BACKGROUND}

_VOICE_TAGS = {
    Voice.PASSIVE: "PASS",
    Voice.CAUSATIVE: "CAUS",
    Voice.REFLEXIVE: "REFL",
    Voice.RECIPROCAL: "RECIP",
}

# tenses whose agreement belongs to the k-paradigm and stays on the verb in questions
_K_PARADIGM = ("PAST", "COND")


@dataclass(frozen=True)
class PlanSlot:
    role: str
    constituent: Optional[Constituent]
    kind: SlotKind


@dataclass(frozen=True)
class OrderPlan:
    slots: Tuple[PlanSlot, ...]
    derivation: Optional[Derivation] = field(default=None, compare=False, repr=False)

    @property
    def roles(self) -> Tuple[str, ...]:
        return tuple(slot.role for slot in self.slots)

    def index(self, role: str) -> int:
        return self.roles.index(role)

    def kind_of(self, role: str) -> SlotKind:
        return self.slots[self.index(role)].kind


def remaining(fs: FeatureStructure) -> str:
    """Trace summary: roles still waiting to be emitted."""
    present = fs.get("present")
    if not isinstance(present, FeatureStructure) or not present:
        return "-"
    return ",".join(present.keys())


# clause features <SV> copies into the verb register
_CLAUSE_KEYS = ("s-form", "clause-type", "speech-act", "voice", "ques", "case")


def verb_view(value: FeatureStructure) -> Tuple[CaseFrame, Agr]:
    """Read the verb register back as a verb-only case frame plus its agreement."""
    clause = {name: value[name] for name in _CLAUSE_KEYS if name in value}
    verb = FeatureStructure({k: v for k, v in value.items() if k not in _CLAUSE_KEYS and k != "agr"})
    cf = validate_frame(FeatureStructure({**clause, "verb": verb}))
    agr = scalar(value.get("agr"))
    return cf, Agr(agr) if agr else Agr.A3SG


def _control_fs(control: Control) -> Optional[FeatureStructure]:
    entries = {name: Atom(role) for name, role in control.model_dump().items() if role is not None}
    return FeatureStructure(entries) if entries else None


def with_control(cf: CaseFrame, control: Control) -> CaseFrame:
    """Copy of ``cf`` with its information structure replaced."""
    fs = cf.fs.remove("control")
    control_fs = _control_fs(control)
    if control_fs is not None:
        fs = fs.put("control", control_fs)
    return cf.model_copy(update={"control": control, "fs": fs})


def control_assignments(cf: CaseFrame) -> Iterator[Control]:
    """Every topic/focus/background choice the planner accepts for ``cf``."""
    choices = (None,) + tuple(role for role in DEFAULT_ORDER if cf.constituent(role) is not None)
    indefinite = is_indefinite_dirobj(cf)
    for topic, focus, backgr in itertools.product(choices, repeat=3):
        chosen = [r for r in (topic, focus, backgr) if r is not None]
        if len(set(chosen)) != len(chosen):
            continue
        if indefinite and ("dir-obj" in (topic, backgr) or focus not in (None, "dir-obj")):
            continue
        yield Control(topic=topic, focus=focus, backgr=backgr)


class SentenceEngine:
    """Plans and realizes case frames."""

    def __init__(self, lexicon: Lexicon, sentence_grammar: CompiledGrammar, np_engine: NounPhraseEngine,
                 morphology: Morphology):
        self.lexicon = lexicon
        self.grammar = sentence_grammar
        self.np_engine = np_engine
        self.morphology = morphology
        if np_engine.clause_realizer is None:
            np_engine.clause_realizer = self._clause

    # ── planning ───────────────────────────────────────────────────────────

    def prepare(self, cf: CaseFrame) -> CaseFrame:
        """Check the information structure and place wh pro-forms."""
        control = cf.control
        chosen = [r for r in (control.topic, control.focus, control.backgr) if r is not None]
        if len(set(chosen)) != len(chosen):
            raise PlanError(f"topic, focus and background must be different roles ({control.spec()})",
                            code="control-overlap", path="control")
        cf = self._place_questions(cf)
        if is_indefinite_dirobj(cf):
            control = cf.control
            if control.focus not in (None, "dir-obj"):
                raise PlanError(
                    f"an indefinite direct object must be immediately preverbal, but focus is {control.focus}",
                    code="focus-conflict", path="control.focus",
                )
            if "dir-obj" in (control.topic, control.backgr):
                raise PlanError("an indefinite direct object cannot be topic or background",
                                code="focus-conflict", path="control")
        return cf

    def _place_questions(self, cf: CaseFrame) -> CaseFrame:
        if cf.ques is None or cf.ques.type != QuesType.WH or not cf.ques.const:
            return cf
        args, adjn, fs = dict(cf.args), dict(cf.adjn), cf.fs
        for role in cf.ques.const:
            try:
                entry = self.lexicon.lookup_wh(role)
            except LexiconError as e:
                raise RealizationError(e.message, code="unknown-lexeme", path=f"ques.const.{role}") from e
            np_fs = FeatureStructure({"ref": FeatureStructure({"arg": Text(entry.lemma)})})
            np = NounPhrase(arg=entry.lemma, fs=np_fs)
            group = role_group(role)
            (args if group == "args" else adjn)[role] = np
            fs = fs.put(f"{group}.{role}", np_fs)

        # the latest wh role in default order takes the preverbal slot
        focus = max(cf.ques.const, key=DEFAULT_ORDER.index)
        if cf.control.focus not in (None, focus):
            logger.debug(f"wh role {focus} replaces focus {cf.control.focus}")
        control = Control(
            topic=None if cf.control.topic == focus else cf.control.topic,
            focus=focus,
            backgr=None if cf.control.backgr == focus else cf.control.backgr,
        )
        return with_control(cf.model_copy(update={"args": args, "adjn": adjn, "fs": fs}), control)

    def subject_agreement(self, cf: CaseFrame) -> Agr:
        subject = cf.args.get("subject")
        if isinstance(subject, NounPhrase):
            return self.np_engine.agreement(subject)
        if subject is None and cf.speech_act == SpeechAct.IMPERATIVE:
            return Agr.A2SG
        return Agr.A3SG

    def order_input(self, cf: CaseFrame) -> FeatureStructure:
        """The structure ``<S>`` derives from."""
        present = FeatureStructure({role: Atom("+") for role in cf.roles})
        fs = cf.fs.put("present", present)
        return fs.put("agr", Atom(self.subject_agreement(cf).value))

    def plan(self, cf: CaseFrame) -> OrderPlan:
        cf = self.prepare(cf)
        d = grammar.derive(self.grammar, "s", self.order_input(cf))
        return self._plan_from(cf, d)

    @staticmethod
    def _plan_from(cf: CaseFrame, d: Derivation) -> OrderPlan:
        slots = []
        for node in d.nodes():
            for child in node.children:
                if not isinstance(child, Leaf) or child.symbol == grammar.NIL:
                    continue
                kind = _STATE_KIND.get(node.symbol, SlotKind.DEFAULT)
                if kind == SlotKind.FOCUS and child.symbol != cf.control.focus:
                    kind = SlotKind.DEFAULT
                constituent = None if child.symbol == "verb" else cf.constituent(child.symbol)
                slots.append(PlanSlot(child.symbol, constituent, kind))
        return OrderPlan(tuple(slots), d)

    # ── realization ────────────────────────────────────────────────────────

    def derive_sentence(self, cf: CaseFrame, case: Optional[Case] = None) -> Derivation:
        """Realizing derivation of ``cf``; ``case`` marks a nominalized clause."""
        if cf.s_form in (SForm.ADVERBIAL, SForm.PARTICIPLE):
            raise RealizationError(f"{cf.s_form.value} clauses are not generated", code="unsupported-s-form",
                                   path="s-form")
        cf = self.prepare(cf)
        hooks = {role: partial(self._role_hook, cf, role) for role in DEFAULT_ORDER}
        hooks["verb"] = self._verb_hook
        fs = self.order_input(cf)
        if case is not None:
            fs = fs.put("case", Atom(case.value))
        return grammar.derive(self.grammar, "s", fs, hooks)

    def realize_sentence(self, cf: CaseFrame, case: Optional[Case] = None) -> List[str]:
        d = self.derive_sentence(cf, case)
        return [word for token in d.tokens() for word in token.split()]

    def _role_hook(self, cf: CaseFrame, role: str, value: FeatureStructure) -> Optional[str]:
        words = self.constituent_words(cf, role, validate_constituent(value))
        return " ".join(words) if words else None

    def constituent_words(self, cf: CaseFrame, role: str, constituent: Constituent) -> List[str]:
        """Words of a filler of ``role``, inflected for its case in ``cf``."""
        if role == "subject":
            case = Case.GEN if cf.s_form == SForm.INFINITIVE else Case.NOM
        else:
            case = constituent.case or ROLE_CASE.get(role, Case.NOM)
        if isinstance(constituent, CaseFrame):
            return self._clause(constituent, case)
        return self.np_engine.realize_np(constituent, case, role)

    def _clause(self, cf: CaseFrame, case: Case) -> List[str]:
        if cf.s_form in (SForm.ADVERBIAL, SForm.PARTICIPLE):
            raise RealizationError(f"embedded {cf.s_form.value} clauses are not generated",
                                   code="unsupported-s-form", path="s-form")
        fs = cf.fs.put("s-form", Atom(SForm.INFINITIVE.value))
        embedded = cf.model_copy(update={"s_form": SForm.INFINITIVE, "fs": fs})
        return self.realize_sentence(embedded, case)

    # ── verbs ──────────────────────────────────────────────────────────────

    def _verb_hook(self, value: FeatureStructure) -> str:
        cf, agr = verb_view(value)
        if cf.s_form == SForm.INFINITIVE:
            return self._infinitive(cf, agr, cf.case)
        if cf.clause_type == ClauseType.PREDICATIVE:
            return self._finite(cf, agr)
        return self._copular(cf, agr)

    def _verb_entry(self, root: str):
        entry = self.lexicon.find(root, (Category.VERB,))
        if entry is None:
            raise RealizationError(f"no verb {root!r} in the lexicon", code="unknown-lexeme", path="verb.root")
        return entry

    def _stem_tags(self, cf: CaseFrame) -> List[str]:
        tags = [_VOICE_TAGS[cf.voice]] if cf.voice in _VOICE_TAGS else []
        if cf.s_form == SForm.FINITE and cf.verb.modality == Modality.POTENTIALITY:
            tags.append("ABIL")
        if cf.verb.polarity == Polarity.NEGATIVE:
            tags.append("NEG")
        return tags

    def _infinitive(self, cf: CaseFrame, agr: Agr, case: Optional[Case]) -> str:
        if cf.clause_type != ClauseType.PREDICATIVE:
            raise RealizationError(f"{cf.clause_type.value} clauses cannot be nominalized",
                                   code="unsupported-s-form", path="clause-type")
        entry = self._verb_entry(cf.verb.root)
        nominalizer = cf.verb.nominalizer or entry.flags.nominalizer or Nominalizer.MA
        tags = self._stem_tags(cf) + [f"INF-{nominalizer.value.upper()}", f"P{agr.tag}"]
        if case is not None and case != Case.NOM:
            tags.append(case.value.upper())
        return self.morphology.inflect(entry.lemma, *tags, category=Category.VERB)

    @staticmethod
    def _tense_tags(cf: CaseFrame) -> List[str]:
        verb = cf.verb
        act = cf.speech_act
        if act == SpeechAct.IMPERATIVE:
            return ["IMP"]
        if act == SpeechAct.OPTATIVE:
            return ["OPT"]
        if act == SpeechAct.WISH:
            return ["COND"]
        if act == SpeechAct.NECESSITATIVE:
            return ["NEC", "PAST"] if verb.tense == Tense.PAST else ["NEC"]
        if verb.tense == Tense.PAST:
            if verb.aspect == Aspect.PROGRESSIVE:
                return ["PROG", "PAST"]
            if verb.aspect == Aspect.HABITUAL:
                return ["AOR", "PAST"]
            return ["PAST"]
        if verb.tense == Tense.FUTURE:
            return ["FUT"]
        return ["AOR"] if verb.aspect == Aspect.HABITUAL else ["PROG"]

    @staticmethod
    def _yes_no(cf: CaseFrame) -> bool:
        return cf.ques is not None and cf.ques.type == QuesType.YES_NO

    def _finite(self, cf: CaseFrame, agr: Agr) -> str:
        entry = self._verb_entry(cf.verb.root)
        tenses = self._tense_tags(cf)
        agr_tag = f"A{agr.tag}"
        yes_no = self._yes_no(cf)
        moved = yes_no and tenses[-1] not in _K_PARADIGM and agr.person != 3 and "IMP" not in tenses
        tags = self._stem_tags(cf) + tenses + ([] if moved else [agr_tag])
        word = self.morphology.inflect(entry.lemma, *tags, category=Category.VERB)
        if not yes_no:
            return word
        return f"{word} {self.morphology.particle(word, agr_tag if moved else None)}"

    def _copular(self, cf: CaseFrame, agr: Agr) -> str:
        """Attributive and existential predicates carry a copula, not verb morphology."""
        negative = cf.verb.polarity == Polarity.NEGATIVE
        if cf.clause_type == ClauseType.EXISTENTIAL:
            words, host = [], "yok" if negative else "var"
        else:
            found = self.np_engine.entry(cf.verb.root, "verb.root")
            words, host = ([found.lemma], "değil") if negative else ([], found.lemma)
        copula = (["PAST"] if cf.verb.tense == Tense.PAST else []) + [f"A{agr.tag}"]
        if self._yes_no(cf):
            particle = harmonize_particle(host)
            words += [host, self.morphology.inflect(particle, *copula)]
        else:
            words.append(self.morphology.inflect(host, *copula))
        return " ".join(words)

    # ── complex sentences ──────────────────────────────────────────────────

    def realize_complex(self, cs: ComplexSentence) -> str:
        """Capitalized, punctuated, NFC text of a complex sentence."""
        text, question = self._complex_body(cs)
        text = tr_capitalize(text) + ("?" if question else ".")
        return unicodedata.normalize("NFC", text)

    def _complex_body(self, cs: ComplexSentence) -> Tuple[str, bool]:
        if cs.type == ComplexType.SIMPLE:
            cf = cs.arg
            question = cf.speech_act == SpeechAct.INTERROGATIVE or cf.ques is not None
            return " ".join(self.realize_sentence(cf)), question

        if cs.type == ComplexType.CONJ:
            entry = self.lexicon.conjunction(cs.conj) if cs.conj else None
            if entry is None:
                raise RealizationError(f"no conjunction {cs.conj!r} in the lexicon", code="unknown-conjunction",
                                       path="conj")
            parts = [self._complex_body(element) for element in cs.elements]
            texts = [text for text, _ in parts]
            return entry.connective.format(arg1=", ".join(texts[:-1]), arg2=texts[-1]), parts[-1][1]

        entry = self.lexicon.link(cs.link_relation) if cs.link_relation else None
        if entry is None:
            raise RealizationError(f"no connective for link relation {cs.link_relation!r}",
                                   code="unknown-link-relation", path="link-relation")
        first, _ = self._complex_body(cs.arg1)
        second, question = self._complex_body(cs.arg2)
        return entry.connective.format(arg1=first, arg2=second), question
