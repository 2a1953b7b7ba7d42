"""Pydantic models for generator inputs and lexical data"""

from enum import Enum
from typing import Any, Dict, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field


class SForm(str, Enum):
    FINITE = "finite"
    INFINITIVE = "infinitive"
    ADVERBIAL = "adverbial"
    PARTICIPLE = "participle"


class ClauseType(str, Enum):
    PREDICATIVE = "predicative"
    ATTRIBUTIVE = "attributive"
    EXISTENTIAL = "existential"


class Voice(str, Enum):
    ACTIVE = "active"
    PASSIVE = "passive"
    CAUSATIVE = "causative"
    REFLEXIVE = "reflexive"
    RECIPROCAL = "reciprocal"


class SpeechAct(str, Enum):
    DECLARATIVE = "declarative"
    INTERROGATIVE = "interrogative"
    IMPERATIVE = "imperative"
    OPTATIVE = "optative"
    NECESSITATIVE = "necessitative"
    WISH = "wish"


class QuesType(str, Enum):
    YES_NO = "yes-no"
    WH = "wh"


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Tense(str, Enum):
    PAST = "past"
    PRESENT = "present"
    FUTURE = "future"


class Aspect(str, Enum):
    PERFECT = "perfect"
    PROGRESSIVE = "progressive"
    HABITUAL = "habitual"


class Modality(str, Enum):
    POTENTIALITY = "potentiality"


class Nominalizer(str, Enum):
    MA = "ma"
    IS = "is"


class Case(str, Enum):
    NOM = "nom"
    ACC = "acc"
    DAT = "dat"
    LOC = "loc"
    ABL = "abl"
    GEN = "gen"
    INS = "ins"


class Agr(str, Enum):
    A1SG = "1sg"
    A2SG = "2sg"
    A3SG = "3sg"
    A1PL = "1pl"
    A2PL = "2pl"
    A3PL = "3pl"

    @property
    def person(self) -> int:
        return int(self.value[0])

    @property
    def plural(self) -> bool:
        return self.value.endswith("pl")

    @property
    def tag(self) -> str:
        return self.value.upper()


class Emphasis(str, Enum):
    QUANT = "quant"
    QUAL = "qual"


class Harmony(str, Enum):
    FRONT = "front"
    BACK = "back"


class Category(str, Enum):
    NOUN = "noun"
    PROPER_NOUN = "proper-noun"
    PRONOUN = "pronoun"
    VERB = "verb"
    ADJ = "adj"
    DET = "det"
    DEMONS = "demons"
    CONJ = "conj"
    WH = "wh"
    ADVERB = "adverb"


class SlotKind(str, Enum):
    TOPIC = "topic"
    DEFAULT = "default"
    FOCUS = "focus"
    VERB = "verb"
    BACKGROUND = "background"


class ComplexType(str, Enum):
    SIMPLE = "simple"
    CONJ = "conj"
    LINKED = "linked"


# ── roles ──────────────────────────────────────────────────────────────────

ARG_ROLES = ("subject", "dir-obj", "source", "goal", "location", "beneficiary", "instrument", "value")
ADJN_ROLES = ("time", "place", "manner", "path", "duration")

DEFAULT_ORDER = (
    "subject", "time", "place", "dir-obj", "beneficiary", "source", "goal",
    "location", "instrument", "value", "path", "duration", "manner",
)

# Case each role takes when the constituent does not carry its own.
ROLE_CASE: Dict[str, Case] = {
    "subject": Case.NOM,
    "dir-obj": Case.ACC,
    "source": Case.ABL,
    "goal": Case.DAT,
    "location": Case.LOC,
    "instrument": Case.INS,
    "beneficiary": Case.DAT,
    "value": Case.DAT,
    "duration": Case.LOC,
}


def role_group(role: str) -> str:
    return "args" if role in ARG_ROLES else "adjn"


# ── lexicon ────────────────────────────────────────────────────────────────

class LexFlags(BaseModel):
    model_config = ConfigDict(frozen=True)

    soften: bool = False
    harmony_override: Optional[Harmony] = None
    nominalizer: Optional[Nominalizer] = None
    det_position: str = "post-demons"
    vowel_drop: bool = False
    aorist: Optional[str] = None  # "ir" | "ar"
    pronominal_n: bool = False


class Subcat(BaseModel):
    model_config = ConfigDict(frozen=True)

    required: Tuple[str, ...] = ()
    obligatory_object: Optional[str] = None


class LexEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    lemma: str = Field(min_length=1)
    category: Category
    flags: LexFlags = LexFlags()
    irregular: Dict[Tuple[str, ...], str] = {}
    agr: Optional[Agr] = None
    subcat: Subcat = Subcat()
    wh_role: Optional[str] = None
    conj: Optional[str] = None
    link_relation: Optional[str] = None
    connective: Optional[str] = None
    numeral: Optional[int] = None
    line: int = 0

    @property
    def proper_noun(self) -> bool:
        return self.category == Category.PROPER_NOUN


# ── input views ────────────────────────────────────────────────────────────

class _View(BaseModel):
    model_config = ConfigDict(frozen=True)

    # canonical structure the view was read from
    fs: Any = Field(default=None, exclude=True, repr=False)


class Control(BaseModel):
    model_config = ConfigDict(frozen=True)

    topic: Optional[str] = None
    focus: Optional[str] = None
    backgr: Optional[str] = None

    def is_empty(self) -> bool:
        return self.topic is None and self.focus is None and self.backgr is None

    def spec(self) -> str:
        return f"topic={self.topic or '-'} focus={self.focus or '-'} backgr={self.backgr or '-'}"


class Question(BaseModel):
    model_config = ConfigDict(frozen=True)

    type: QuesType
    const: Tuple[str, ...] = ()


class VerbSpec(_View):
    root: str
    polarity: Polarity = Polarity.POSITIVE
    tense: Optional[Tense] = None
    aspect: Optional[Aspect] = None
    modality: Optional[Modality] = None
    nominalizer: Optional[Nominalizer] = None


class Ordinal(BaseModel):
    model_config = ConfigDict(frozen=True)

    position: int
    intensifier: bool = False


class Determiner(BaseModel):
    model_config = ConfigDict(frozen=True)

    quantifier: Optional[str] = None
    definite: bool = True
    referential: Optional[bool] = None
    specific: Optional[bool] = None


class NPModifiers(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mod_rel: Tuple[Any, ...] = ()
    ordinal: Optional[Ordinal] = None
    quant_mod: Optional[str] = None
    qualy_mod: Tuple[str, ...] = ()
    emphasis: Optional[Emphasis] = None


class NPSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    det: Optional[Determiner] = None
    set_spec: Tuple["NounPhrase", ...] = ()
    spec_rel: Tuple[Any, ...] = ()
    demons: Optional[str] = None


class Possessor(BaseModel):
    model_config = ConfigDict(frozen=True)

    argument: "NounPhrase"
    drop: bool = False
    move: bool = False


class NounPhrase(_View):
    arg: Optional[str] = None
    agr: Optional[Agr] = None  # None: 3sg unless the lexicon says otherwise
    drop: bool = False
    classifier: Optional[str] = None
    roles: Optional[str] = None
    case: Optional[Case] = None
    modf: NPModifiers = NPModifiers()
    spec: NPSpec = Field(default_factory=NPSpec)
    poss: Optional[Possessor] = None

    @property
    def definite(self) -> bool:
        return self.spec.det.definite if self.spec.det else True


class CaseFrame(_View):
    s_form: SForm = SForm.FINITE
    clause_type: ClauseType = ClauseType.PREDICATIVE
    voice: Voice = Voice.ACTIVE
    speech_act: SpeechAct = SpeechAct.DECLARATIVE
    ques: Optional[Question] = None
    verb: VerbSpec
    args: Dict[str, "Constituent"] = {}
    adjn: Dict[str, "Constituent"] = {}
    control: Control = Control()
    case: Optional[Case] = None

    def constituent(self, role: str) -> Optional["Constituent"]:
        return self.args.get(role) or self.adjn.get(role)

    @property
    def roles(self) -> Tuple[str, ...]:
        return tuple(self.args) + tuple(self.adjn)


Constituent = Union[CaseFrame, NounPhrase]


class ComplexSentence(_View):
    type: ComplexType
    arg: Optional[CaseFrame] = None
    conj: Optional[str] = None
    elements: Tuple["ComplexSentence", ...] = ()
    link_relation: Optional[str] = None
    arg1: Optional["ComplexSentence"] = None
    arg2: Optional["ComplexSentence"] = None


NPSpec.model_rebuild()
Possessor.model_rebuild()
NounPhrase.model_rebuild()
CaseFrame.model_rebuild()
ComplexSentence.model_rebuild()


class CorpusCase(BaseModel):
    """One golden regression case."""

    id: str
    input: str
    gold: str
    trace: Optional[Tuple[str, ...]] = None
