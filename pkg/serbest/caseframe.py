"""Schema checks and typed views over input feature structures.

``canonicalize`` rewrites the accepted spellings (ARGUMENTS, ADJUNCTS, SENSE,
BACKGROUND, ``#root``, ``quant.``) and expands role shorthand such as
``(subject "Ahmet")`` into a full noun phrase. ``validate`` then builds the
pydantic views and reports every problem it finds in one SchemaError.
"""

import logging
from typing import Dict, List, Optional, Tuple

from .errors import SchemaError, SchemaIssue
from .featstruct import Atom, FeatureStructure, Text, Value, ValueList, scalar
from .lexicon import Lexicon
from .models import (
    ADJN_ROLES,
    ARG_ROLES,
    DEFAULT_ORDER,
    Agr,
    Aspect,
    Case,
    CaseFrame,
    Category,
    ClauseType,
    ComplexSentence,
    ComplexType,
    Constituent,
    Control,
    Determiner,
    Emphasis,
    Modality,
    Nominalizer,
    NounPhrase,
    NPModifiers,
    NPSpec,
    Ordinal,
    Polarity,
    Possessor,
    QuesType,
    Question,
    SForm,
    SpeechAct,
    Tense,
    VerbSpec,
    Voice,
)

logger = logging.getLogger(__name__)

_KEY_ALIASES = {
    "arguments": "args",
    "adjuncts": "adjn",
    "sense": "polarity",
    "background": "backgr",
}
_VALUE_ALIASES = {"quant.": "quant", "qual.": "qual"}

_LIST_FEATURES = ("mod-rel", "spec-rel", "set-spec", "qualy-mod", "const", "elements")


# ── canonicalization ───────────────────────────────────────────────────────

def is_sentential(value: Optional[Value]) -> bool:
    """Embedded clauses are recognized by their verb feature."""
    return isinstance(value, FeatureStructure) and "verb" in value


def canonicalize(fs: FeatureStructure) -> FeatureStructure:
    """Canonical spelling of a sentence, clause or complex-sentence structure."""
    return _canonical(fs, context="top")


def _canonical(fs: FeatureStructure, context: str) -> FeatureStructure:
    entries: Dict[str, Value] = {}
    for name, value in fs.items():
        name = _KEY_ALIASES.get(name, name)
        if name in ("args", "adjn") and isinstance(value, FeatureStructure):
            value = FeatureStructure({role: _constituent(v) for role, v in value.items()})
        elif name in ("arg", "arg1", "arg2") and isinstance(value, FeatureStructure) and context != "np":
            value = _canonical(value, "top")
        elif name == "elements" and isinstance(value, ValueList):
            value = ValueList(tuple(_canonical(v, "top") if isinstance(v, FeatureStructure) else v for v in value))
        elif name == "root" and isinstance(value, (Atom, Text)):
            text = scalar(value)
            value = Text(text[1:] if text.startswith("#") else text)
        elif name == "argument" and context == "np":
            value = _constituent(value)
        elif name == "set-spec" and isinstance(value, ValueList):
            value = ValueList(tuple(_constituent(v) for v in value))
        elif name in ("mod-rel", "spec-rel") and isinstance(value, ValueList):
            value = ValueList(tuple(_canonical(v, _kind(v)) if isinstance(v, FeatureStructure) else v for v in value))
        elif isinstance(value, Atom) and value.name in _VALUE_ALIASES:
            value = Atom(_VALUE_ALIASES[value.name])
        elif isinstance(value, FeatureStructure):
            value = _canonical(value, context)
        entries[name] = value
    return FeatureStructure(entries)


def _kind(value: FeatureStructure) -> str:
    return "top" if is_sentential(value) else "np"


def _constituent(value: Value) -> Value:
    if isinstance(value, (Atom, Text)):
        # bare lexeme shorthand
        return FeatureStructure({"ref": FeatureStructure({"arg": Text(scalar(value))})})
    if isinstance(value, FeatureStructure):
        return _canonical(value, _kind(value))
    return value


# ── issue collection ───────────────────────────────────────────────────────

class _Checker:
    def __init__(self, lexicon: Optional[Lexicon]):
        self.issues: List[SchemaIssue] = []
        self.lexicon = lexicon

    def add(self, code: str, path: str, message: str) -> None:
        self.issues.append(SchemaIssue(code, path, message))

    def enum(self, enum_cls, value: Optional[Value], path: str):
        if value is None:
            return None
        text = scalar(value)
        try:
            return enum_cls(text)
        except ValueError:
            allowed = "|".join(e.value for e in enum_cls)
            self.add("bad-enum-value", path, f"{text!r} is not one of {allowed}")
            return None

    def sign(self, value: Optional[Value], path: str) -> Optional[bool]:
        if value is None:
            return None
        text = scalar(value)
        if text not in ("+", "-"):
            self.add("bad-enum-value", path, f"expected + or -, got {text!r}")
            return None
        return text == "+"

    def word(self, value: Optional[Value], path: str) -> Optional[str]:
        if value is None:
            return None
        text = scalar(value)
        if text is None:
            self.add("malformed-constituent", path, "expected a word")
        return text

    def words(self, value: Optional[Value], path: str) -> Tuple[str, ...]:
        if value is None:
            return ()
        items = value.items if isinstance(value, ValueList) else (value,)
        found = []
        for i, item in enumerate(items):
            text = self.word(item, f"{path}[{i}]")
            if text is not None:
                found.append(text)
        return tuple(found)

    def known(self, lemma: Optional[str], path: str, categories: Optional[Tuple[Category, ...]] = None) -> None:
        if self.lexicon is None or lemma is None:
            return
        if resolve(self.lexicon, lemma, categories) is None:
            wanted = "/".join(c.value for c in categories) if categories else "any category"
            self.add("unknown-lexeme", path, f"{lemma!r} ({wanted}) is not in the lexicon")


def resolve(lexicon: Lexicon, lemma: str, categories: Optional[Tuple[Category, ...]] = None):
    """Lexicon entry for ``lemma``; proper nouns also match capitalized."""
    from .morphology import tr_capitalize

    search = categories or tuple(Category)
    return lexicon.find(lemma, search) or lexicon.find(tr_capitalize(lemma), search)


def _join(path: str, name: str) -> str:
    return f"{path}.{name}" if path else name


# ── sentences ──────────────────────────────────────────────────────────────

def _frame(fs: FeatureStructure, path: str, chk: _Checker) -> Optional[CaseFrame]:
    verb = _verb(fs.get("verb"), _join(path, "verb"), chk, fs)

    args = _roles(fs.get("args"), ARG_ROLES, _join(path, "args"), chk)
    adjn = _roles(fs.get("adjn"), ADJN_ROLES, _join(path, "adjn"), chk)
    present = set(args) | set(adjn)

    control = Control()
    raw_control = fs.get("control")
    if isinstance(raw_control, FeatureStructure):
        slots = {}
        for name in ("topic", "focus", "backgr"):
            value = raw_control.get(name)
            if value is None:
                continue
            role = scalar(value)
            where = _join(path, f"control.{name}")
            if role not in DEFAULT_ORDER:
                chk.add("unknown-role", where, f"{role!r} is not a constituent role")
            elif role not in present:
                chk.add("control-names-absent-constituent", where, f"no {role} constituent in this frame")
            else:
                slots[name] = role
        control = Control(**slots)

    ques = None
    raw_ques = fs.get("ques")
    if isinstance(raw_ques, FeatureStructure):
        qtype = chk.enum(QuesType, raw_ques.get("type"), _join(path, "ques.type"))
        const = chk.words(raw_ques.get("const"), _join(path, "ques.const"))
        for i, role in enumerate(const):
            if role not in DEFAULT_ORDER:
                chk.add("unknown-role", _join(path, f"ques.const[{i}]"), f"{role!r} is not a constituent role")
        if qtype is not None:
            ques = Question(type=qtype, const=tuple(r for r in const if r in DEFAULT_ORDER))

    fields = dict(
        s_form=chk.enum(SForm, fs.get("s-form"), _join(path, "s-form")),
        clause_type=chk.enum(ClauseType, fs.get("clause-type"), _join(path, "clause-type")),
        voice=chk.enum(Voice, fs.get("voice"), _join(path, "voice")),
        speech_act=chk.enum(SpeechAct, fs.get("speech-act"), _join(path, "speech-act")),
        case=chk.enum(Case, fs.get("case"), _join(path, "case")),
    )
    if verb is None:
        return None
    if chk.lexicon is not None:
        _subcat_gaps(verb, fields.get("clause_type"), present, path, chk)
    return CaseFrame(
        verb=verb,
        args=args,
        adjn=adjn,
        control=control,
        ques=ques,
        fs=fs,
        **{k: v for k, v in fields.items() if v is not None},
    )


def _verb(value: Optional[Value], path: str, chk: _Checker, frame: FeatureStructure) -> Optional[VerbSpec]:
    if not isinstance(value, FeatureStructure) or value.get("root") is None:
        chk.add("missing-verb", path, "a clause needs (verb ((root ...)))")
        return None
    root = chk.word(value.get("root"), _join(path, "root"))
    clause_type = scalar(frame.get("clause-type")) or ClauseType.PREDICATIVE.value
    if clause_type == ClauseType.PREDICATIVE.value:
        chk.known(root, _join(path, "root"), (Category.VERB,))
    else:
        chk.known(root, _join(path, "root"))
    fields = dict(
        polarity=chk.enum(Polarity, value.get("polarity"), _join(path, "polarity")),
        tense=chk.enum(Tense, value.get("tense"), _join(path, "tense")),
        aspect=chk.enum(Aspect, value.get("aspect"), _join(path, "aspect")),
        modality=chk.enum(Modality, value.get("modality"), _join(path, "modality")),
        nominalizer=chk.enum(Nominalizer, value.get("nominalizer"), _join(path, "nominalizer")),
    )
    if root is None:
        return None
    return VerbSpec(root=root, fs=value, **{k: v for k, v in fields.items() if v is not None})


def _roles(value: Optional[Value], allowed: Tuple[str, ...], path: str, chk: _Checker) -> Dict[str, Constituent]:
    if value is None:
        return {}
    if not isinstance(value, FeatureStructure):
        chk.add("malformed-constituent", path, "expected a role map")
        return {}
    found: Dict[str, Constituent] = {}
    for role, filler in value.items():
        where = _join(path, role)
        if role not in allowed:
            group = "argument" if allowed is ARG_ROLES else "adjunct"
            chk.add("unknown-role", where, f"{role!r} is not an {group} role")
            continue
        constituent = _constituent_view(filler, where, chk)
        if constituent is not None:
            found[role] = constituent
    return found


def _constituent_view(value: Value, path: str, chk: _Checker) -> Optional[Constituent]:
    if not isinstance(value, FeatureStructure):
        chk.add("malformed-constituent", path, "expected a noun phrase or clause")
        return None
    if is_sentential(value):
        return _frame(value, path, chk)
    return _noun_phrase(value, path, chk)


def _subcat_gaps(verb: VerbSpec, clause_type, present, path: str, chk: _Checker) -> None:
    if clause_type not in (None, ClauseType.PREDICATIVE):
        return
    entry = chk.lexicon.find(verb.root, (Category.VERB,))
    if entry is None:
        return
    missing = [r for r in entry.subcat.required if r not in present and r != "subject"]
    if missing:
        logger.warning(f"⚠️ {path or 'frame'}: {verb.root} usually takes {', '.join(missing)}")


# ── noun phrases ───────────────────────────────────────────────────────────

def _noun_phrase(fs: FeatureStructure, path: str, chk: _Checker) -> Optional[NounPhrase]:
    ref = fs.get("ref")
    arg = agr = None
    drop = False
    if isinstance(ref, FeatureStructure):
        arg = chk.word(ref.get("arg"), _join(path, "ref.arg"))
        agr = chk.enum(Agr, ref.get("agr"), _join(path, "ref.agr"))
        ref_control = ref.get("control")
        if isinstance(ref_control, FeatureStructure):
            drop = bool(chk.sign(ref_control.get("drop"), _join(path, "ref.control.drop")))
    elif ref is not None:
        chk.add("malformed-constituent", _join(path, "ref"), "expected ((arg ...))")
    chk.known(arg, _join(path, "ref.arg"))

    classifier = chk.word(fs.get("class"), _join(path, "class"))
    chk.known(classifier, _join(path, "class"))
    roles = scalar(fs.get("roles")) if fs.get("roles") is not None else None
    if isinstance(fs.get("roles"), FeatureStructure):
        roles = "gapped"

    modf = _modifiers(fs.get("modf"), _join(path, "modf"), chk)
    spec = _specifiers(fs.get("spec"), _join(path, "spec"), chk)
    poss = _possessor(fs.get("poss"), _join(path, "poss"), chk)
    case = chk.enum(Case, fs.get("case"), _join(path, "case"))

    if arg is None and not drop and poss is None:
        chk.add("malformed-constituent", _join(path, "ref.arg"), "a noun phrase needs a head")
    return NounPhrase(
        arg=arg,
        agr=agr,
        drop=drop,
        classifier=classifier,
        roles=roles,
        case=case,
        modf=modf,
        spec=spec,
        poss=poss,
        fs=fs,
    )


def _modifiers(value: Optional[Value], path: str, chk: _Checker) -> NPModifiers:
    if not isinstance(value, FeatureStructure):
        return NPModifiers()
    ordinal = None
    raw = value.get("ordinal")
    if isinstance(raw, FeatureStructure):
        position = scalar(raw.get("position"))
        if position is None or not position.isdigit() or int(position) < 1:
            chk.add("bad-ordinal", _join(path, "ordinal.position"), f"position must be a whole number ≥ 1, got {position!r}")
        else:
            intensifier = chk.sign(raw.get("intensifier"), _join(path, "ordinal.intensifier"))
            ordinal = Ordinal(position=int(position), intensifier=bool(intensifier))
    emphasis = None
    control = value.get("control")
    if isinstance(control, FeatureStructure):
        emphasis = chk.enum(Emphasis, control.get("emphasis"), _join(path, "control.emphasis"))
    qualy = chk.words(value.get("qualy-mod"), _join(path, "qualy-mod"))
    for i, lemma in enumerate(qualy):
        chk.known(lemma, _join(path, f"qualy-mod[{i}]"), (Category.ADJ,))
    mod_rel = _phrases(value.get("mod-rel"), _join(path, "mod-rel"), chk)
    return NPModifiers(
        mod_rel=mod_rel,
        ordinal=ordinal,
        quant_mod=chk.word(value.get("quant-mod"), _join(path, "quant-mod")),
        qualy_mod=qualy,
        emphasis=emphasis,
    )


def _specifiers(value: Optional[Value], path: str, chk: _Checker) -> NPSpec:
    if not isinstance(value, FeatureStructure):
        return NPSpec()
    det = None
    raw = value.get("det")
    if isinstance(raw, FeatureStructure):
        definite = chk.sign(raw.get("definite"), _join(path, "det.definite"))
        quantifier = chk.word(raw.get("quantifier"), _join(path, "det.quantifier"))
        chk.known(quantifier, _join(path, "det.quantifier"), (Category.DET,))
        det = Determiner(
            quantifier=quantifier,
            definite=True if definite is None else definite,
            referential=chk.sign(raw.get("referential"), _join(path, "det.referential")),
            specific=chk.sign(raw.get("specific"), _join(path, "det.specific")),
        )
    set_spec = []
    raw_set = value.get("set-spec")
    if raw_set is not None:
        items = raw_set.items if isinstance(raw_set, ValueList) else (raw_set,)
        for i, item in enumerate(items):
            where = _join(path, f"set-spec[{i}]")
            np = _noun_phrase(item, where, chk) if isinstance(item, FeatureStructure) else None
            if np is None:
                chk.add("malformed-constituent", where, "set-spec items are noun phrases")
            else:
                set_spec.append(np)
    demons = chk.word(value.get("demons"), _join(path, "demons"))
    chk.known(demons, _join(path, "demons"), (Category.DEMONS,))
    return NPSpec(
        det=det,
        set_spec=tuple(set_spec),
        spec_rel=_phrases(value.get("spec-rel"), _join(path, "spec-rel"), chk),
        demons=demons,
    )


def _phrases(value: Optional[Value], path: str, chk: _Checker) -> Tuple:
    """Phrasal modifiers: pre-built text, noun phrases or clauses."""
    if value is None:
        return ()
    items = value.items if isinstance(value, ValueList) else (value,)
    found = []
    for i, item in enumerate(items):
        where = f"{path}[{i}]"
        if isinstance(item, Text):
            found.append(item.value)
        elif isinstance(item, FeatureStructure):
            view = _constituent_view(item, where, chk)
            if view is not None:
                found.append(view)
        else:
            chk.add("malformed-constituent", where, "expected quoted text or a phrase")
    return tuple(found)


def _possessor(value: Optional[Value], path: str, chk: _Checker) -> Optional[Possessor]:
    if value is None:
        return None
    if not isinstance(value, FeatureStructure) or not isinstance(value.get("argument"), FeatureStructure):
        chk.add("malformed-constituent", path, "expected ((argument <noun phrase>))")
        return None
    argument = _noun_phrase(value["argument"], _join(path, "argument"), chk)
    drop = move = False
    control = value.get("control")
    if isinstance(control, FeatureStructure):
        drop = bool(chk.sign(control.get("drop"), _join(path, "control.drop")))
        move = bool(chk.sign(control.get("move"), _join(path, "control.move")))
    if drop and move:
        chk.add("drop-and-move", _join(path, "control"), "a possessor cannot be both dropped and moved")
    if argument is None:
        return None
    return Possessor(argument=argument, drop=drop, move=move)


# ── complex sentences ──────────────────────────────────────────────────────

_COMPLEX_FIELDS = {
    ComplexType.SIMPLE: {"arg"},
    ComplexType.CONJ: {"conj", "elements"},
    ComplexType.LINKED: {"link-relation", "arg1", "arg2"},
}


def _complex(fs: FeatureStructure, path: str, chk: _Checker) -> Optional[ComplexSentence]:
    if "type" not in fs:
        frame = _frame(fs, path, chk)
        return ComplexSentence(type=ComplexType.SIMPLE, arg=frame, fs=fs) if frame else None
    ctype = chk.enum(ComplexType, fs.get("type"), _join(path, "type"))
    if ctype is None:
        return None
    expected = _COMPLEX_FIELDS[ctype]
    others = set().union(*(f for t, f in _COMPLEX_FIELDS.items() if t != ctype)) - expected
    for name in fs:
        if name in others:
            chk.add("malformed-constituent", _join(path, name), f"{name} does not belong in a {ctype.value} sentence")
    for name in sorted(expected):
        if name not in fs:
            chk.add("malformed-constituent", _join(path, name), f"a {ctype.value} sentence needs {name}")

    if ctype == ComplexType.SIMPLE:
        arg = fs.get("arg")
        frame = _frame(arg, _join(path, "arg"), chk) if isinstance(arg, FeatureStructure) else None
        return ComplexSentence(type=ctype, arg=frame, fs=fs) if frame else None

    if ctype == ComplexType.CONJ:
        raw = fs.get("elements")
        items = raw.items if isinstance(raw, ValueList) else ()
        if isinstance(raw, ValueList) and len(items) < 2:
            chk.add("malformed-constituent", _join(path, "elements"), "a conjunction needs at least two elements")
        elements = []
        for i, item in enumerate(items):
            where = _join(path, f"elements[{i}]")
            if not isinstance(item, FeatureStructure):
                chk.add("malformed-constituent", where, "expected a sentence")
                continue
            element = _complex(item, where, chk)
            if element is not None:
                elements.append(element)
        return ComplexSentence(type=ctype, conj=scalar(fs.get("conj")), elements=tuple(elements), fs=fs)

    parts = {}
    for name in ("arg1", "arg2"):
        raw = fs.get(name)
        parts[name] = _complex(raw, _join(path, name), chk) if isinstance(raw, FeatureStructure) else None
    return ComplexSentence(type=ctype, link_relation=scalar(fs.get("link-relation")), fs=fs, **parts)


# ── public operations ──────────────────────────────────────────────────────

def _finish(chk: _Checker, result):
    if chk.issues:
        raise SchemaError(chk.issues)
    return result


def validate(fs: FeatureStructure, lexicon: Optional[Lexicon] = None) -> ComplexSentence:
    """Typed view of a sentence; a bare case frame reads as a simple sentence."""
    canonical = canonicalize(fs)
    chk = _Checker(lexicon)
    return _finish(chk, _complex(canonical, "", chk))


def validate_frame(fs: FeatureStructure, lexicon: Optional[Lexicon] = None) -> CaseFrame:
    canonical = canonicalize(fs)
    chk = _Checker(lexicon)
    return _finish(chk, _frame(canonical, "", chk))


def validate_np(fs: FeatureStructure, lexicon: Optional[Lexicon] = None) -> NounPhrase:
    canonical = _constituent(fs)
    chk = _Checker(lexicon)
    return _finish(chk, _noun_phrase(canonical, "", chk))


def validate_constituent(value: Value, lexicon: Optional[Lexicon] = None) -> Constituent:
    """Typed view of one role filler: a noun phrase or an embedded clause."""
    canonical = _constituent(value)
    chk = _Checker(lexicon)
    return _finish(chk, _constituent_view(canonical, "", chk))


def constituents(cf: CaseFrame) -> List[Tuple[str, Constituent]]:
    """Present constituents in default order."""
    return [(role, cf.constituent(role)) for role in DEFAULT_ORDER if cf.constituent(role) is not None]


def is_indefinite_dirobj(cf: CaseFrame) -> bool:
    obj = cf.args.get("dir-obj")
    return isinstance(obj, NounPhrase) and obj.spec.det is not None and not obj.spec.det.definite
