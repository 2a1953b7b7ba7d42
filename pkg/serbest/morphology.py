"""Turkish word-form generation.

Two steps per word: ``select_morphemes`` picks archiphonemic suffix forms
from the abstract tags, then ``build`` spells them out against the stem.

Suffix form notation:
    A      a/e by front/back harmony
    I      ı/i/u/ü by front/back and rounding harmony
    D      d, or t after a voiceless consonant
    (y) (s) (n)   buffer consonants, kept only after a vowel
    (I)    buffer vowel, kept only after a consonant
    {aor} {caus} {pass}   stem-conditioned allomorphs, resolved while spelling
"""

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import MorphologyError
from .featstruct import tr_lower
from .lexicon import Lexicon
from .models import Category, Harmony, LexEntry, LexFlags

logger = logging.getLogger(__name__)

VOWELS = "aeıioöuü"
FRONT = "eiöü"
ROUNDED = "oöuü"
VOICELESS = "çfhkpsşt"
SOFTENING = {"p": "b", "ç": "c", "t": "d", "k": "ğ"}

_TO_FRONT = str.maketrans("aıou", "eiöü")
_TO_BACK = str.maketrans("eiöü", "aıou")

# ── tag inventory ──────────────────────────────────────────────────────────

VOICE_TAGS = ("PASS", "CAUS", "REFL", "RECIP")
POSS_TAGS = ("P1SG", "P2SG", "P3SG", "P1PL", "P2PL", "P3PL")
CASE_TAGS = ("NOM", "ACC", "DAT", "LOC", "ABL", "GEN", "INS")
AGR_TAGS = ("A1SG", "A2SG", "A3SG", "A1PL", "A2PL", "A3PL")
TENSE_TAGS = ("PAST", "PROG", "FUT", "AOR", "NEC", "OPT", "COND", "IMP")
INF_TAGS = ("INF-MA", "INF-IS")
TAGS = frozenset(VOICE_TAGS + POSS_TAGS + CASE_TAGS + AGR_TAGS + TENSE_TAGS + INF_TAGS + ("PL", "NEG", "ABIL", "ORD"))

ZERO_TAGS = ("NOM", "A3SG")

_FIXED_FORMS = {
    "PL": "lAr",
    "P1SG": "(I)m", "P2SG": "(I)n", "P3SG": "(s)I",
    "P1PL": "(I)mIz", "P2PL": "(I)nIz", "P3PL": "lArI",
    "NOM": "", "ACC": "(y)I", "DAT": "(y)A", "LOC": "DA", "ABL": "DAn", "GEN": "(n)In", "INS": "(y)lA",
    "NEG": "mA",
    "PROG": "Iyor", "FUT": "(y)AcAk", "NEC": "mAlI", "OPT": "(y)A", "COND": "sA", "IMP": "",
    "PASS": "{pass}", "CAUS": "{caus}", "REFL": "(I)n", "RECIP": "(I)ş",
    "INF-MA": "mA", "INF-IS": "(y)Iş",
    "ORD": "(I)ncI",
}

# case forms after a third-person possessive or a pronominal-n stem
_N_CASE_FORMS = {"ACC": "nI", "DAT": "nA", "LOC": "nDA", "ABL": "nDAn"}
_N_STEM_FORMS = dict(_N_CASE_FORMS, PL="nlAr", INS="nInlA")

_AGREEMENT = {
    "k": {"A1SG": "m", "A2SG": "n", "A3SG": "", "A1PL": "k", "A2PL": "nIz", "A3PL": "lAr"},
    "z": {"A1SG": "(y)Im", "A2SG": "sIn", "A3SG": "", "A1PL": "(y)Iz", "A2PL": "sInIz", "A3PL": "lAr"},
    "opt": {"A1SG": "yIm", "A2SG": "sIn", "A3SG": "", "A1PL": "lIm", "A2PL": "sInIz", "A3PL": "lAr"},
    "imp": {"A2SG": "", "A2PL": "(y)In", "A3SG": "sIn", "A3PL": "sInlAr"},
}

# template slot ranks; tags must appear in increasing rank
_NOMINAL = "nominal"
_VERBAL = "verbal"
_NOMINALIZATION = "nominalization"


def _slot(tag: str, template: str, seen_tense: bool) -> Optional[int]:
    if template == _NOMINAL:
        if tag == "ORD":
            return 0
        if tag == "PL":
            return 1
        if tag in POSS_TAGS:
            return 2
        if tag in CASE_TAGS:
            return 3
        if tag == "PAST":
            return 4
        if tag in AGR_TAGS:
            return 5
        return None
    if template == _VERBAL:
        if tag in VOICE_TAGS:
            return 0
        if tag == "ABIL":
            return 1
        if tag == "NEG":
            return 2
        if tag == "PAST" and seen_tense:
            return 4
        if tag in TENSE_TAGS:
            return 3
        if tag in AGR_TAGS:
            return 5
        return None
    if tag in VOICE_TAGS:
        return 0
    if tag == "NEG":
        return 1
    if tag in INF_TAGS:
        return 2
    if tag in POSS_TAGS:
        return 3
    if tag in CASE_TAGS:
        return 4
    return None


@dataclass(frozen=True)
class MorphRequest:
    root: str
    tags: Tuple[str, ...] = ()
    category: Optional[Category] = None

    def __str__(self) -> str:
        return "+".join((self.root,) + self.tags)


@dataclass(frozen=True)
class Suffix:
    tag: str
    form: str


@dataclass
class PhonContext:
    """Harmony state carried across suffix boundaries."""

    last_vowel: str = "e"
    final_class: str = "vowel"  # vowel | voiced-consonant | voiceless-consonant
    harmony_override: Optional[Harmony] = None

    @property
    def front(self) -> bool:
        if self.harmony_override is not None:
            return self.harmony_override == Harmony.FRONT
        return self.last_vowel in FRONT

    @property
    def rounded(self) -> bool:
        return self.last_vowel in ROUNDED


@dataclass(frozen=True)
class WordForm:
    """A generated word with per-character alignment to suffix templates.

    ``alignment`` pairs every output character with its template symbol:
    ``root`` for stem characters, ``A``/``I``/``D`` for archiphonemes,
    ``(y)``/``(s)``/``(n)`` for buffer consonants and the
    literal character otherwise.
    """

    text: str
    root: str
    tags: Tuple[str, ...]
    alignment: Tuple[Tuple[str, str], ...] = ()
    harmony_override: Optional[Harmony] = None

    def __str__(self) -> str:
        return self.text


# ── casing ─────────────────────────────────────────────────────────────────

def tr_capitalize(text: str) -> str:
    """Uppercase the first character with Turkish dotted/dotless i."""
    if not text:
        return text
    first = {"i": "İ", "ı": "I"}.get(text[0], text[0].upper())
    return first + text[1:]


def _is_vowel(ch: str) -> bool:
    return tr_lower(ch) in VOWELS


def last_vowel(text: str) -> Optional[str]:
    for ch in reversed(tr_lower(text)):
        if ch in VOWELS:
            return ch
    return None


def syllables(text: str) -> int:
    return sum(1 for ch in tr_lower(text) if ch in VOWELS)


# ── morpheme selection ─────────────────────────────────────────────────────

def parse_tag_string(text: str) -> MorphRequest:
    """``root+TAG+TAG`` with case-insensitive tags."""
    parts = [p.strip() for p in text.strip().split("+")]
    if not parts or not parts[0]:
        raise MorphologyError(f"no root in {text!r}", code="unknown-tag")
    tags = tuple(p.upper() for p in parts[1:])
    for tag in tags:
        if tag not in TAGS:
            raise MorphologyError(f"unknown tag {tag!r} in {text!r}", code="unknown-tag")
    return MorphRequest(parts[0], tags)


def _template(tags: Sequence[str], entry: Optional[LexEntry]) -> str:
    if any(t in INF_TAGS for t in tags):
        return _NOMINALIZATION
    verbal = set(VOICE_TAGS) | {"ABIL", "NEG", "PROG", "FUT", "AOR", "NEC", "OPT", "COND", "IMP"}
    if any(t in verbal for t in tags):
        return _VERBAL
    if entry is not None and entry.category == Category.VERB:
        return _VERBAL
    return _NOMINAL


def _check_order(req: MorphRequest, template: str) -> None:
    previous = -1
    seen_tense = False
    for tag in req.tags:
        if tag not in TAGS:
            raise MorphologyError(f"unknown tag {tag!r}", code="unknown-tag")
        rank = _slot(tag, template, seen_tense)
        if rank is None:
            raise MorphologyError(f"{tag} cannot occur in a {template} word ({req})",
                                  code="unsupported-combination")
        repeatable = rank == 0 and tag in VOICE_TAGS
        if rank < previous or (rank == previous and not repeatable):
            raise MorphologyError(f"{tag} out of order in {req}", code="tag-order-violation")
        previous = rank
        if tag in TENSE_TAGS:
            seen_tense = True

    if template == _VERBAL:
        tenses = [t for t in req.tags if t in TENSE_TAGS]
        agreement = [t for t in req.tags if t in AGR_TAGS]
        if agreement and not tenses:
            raise MorphologyError(f"agreement without tense or mood in {req}", code="unsupported-combination")
        if "IMP" in tenses and (len(tenses) > 1 or any(a in ("A1SG", "A1PL") for a in agreement)):
            raise MorphologyError(f"imperative cannot take {req.tags}", code="unsupported-combination")
        if "ABIL" in req.tags and "NEG" not in req.tags and "IMP" in tenses:
            raise MorphologyError(f"imperative of ability in {req}", code="unsupported-combination")


def select_morphemes(req: MorphRequest, entry: Optional[LexEntry] = None) -> List[Suffix]:
    """Archiphonemic suffix forms for ``req`` in order."""
    template = _template(req.tags, entry)
    _check_order(req, template)
    flags = entry.flags if entry else LexFlags()

    suffixes: List[Suffix] = []
    realized: List[str] = []
    tenses: List[str] = []
    tags = req.tags
    for i, tag in enumerate(tags):
        following = tags[i + 1] if i + 1 < len(tags) else None
        previous = realized[-1] if realized else None

        if tag in ZERO_TAGS and tag != "A3SG":
            form = ""
        elif tag in CASE_TAGS or tag == "PL":
            if previous in ("P3SG", "P3PL") and tag in _N_CASE_FORMS:
                form = _N_CASE_FORMS[tag]
            elif previous is None and flags.pronominal_n and tag in _N_STEM_FORMS:
                form = _N_STEM_FORMS[tag]
            else:
                form = _FIXED_FORMS[tag]
        elif tag == "PAST":
            form = "(y)DI" if (tenses or template == _NOMINAL) else "DI"
        elif tag == "AOR":
            if "NEG" in realized:
                form = "" if following in ("A1SG", "A1PL") else "z"
            else:
                form = "{aor}"
        elif tag == "ABIL":
            form = "(y)A" if following == "NEG" else "(y)Abil"
        elif tag in AGR_TAGS:
            form = _agreement(tag, tenses, realized, template)
        else:
            form = _FIXED_FORMS[tag]

        if tag in TENSE_TAGS:
            tenses.append(tag)
        realized.append(tag)
        suffixes.append(Suffix(tag, form))
    return suffixes


def _agreement(tag: str, tenses: List[str], realized: List[str], template: str) -> str:
    last = tenses[-1] if tenses else None
    if last in ("PAST", "COND"):
        paradigm = "k"
    elif last == "OPT":
        paradigm = "opt"
    elif last == "IMP":
        paradigm = "imp"
    else:
        paradigm = "z"
    if last == "AOR" and "NEG" in realized and tag in ("A1SG", "A1PL"):
        return "m" if tag == "A1SG" else "yIz"
    return _AGREEMENT[paradigm][tag]


# ── spelling ───────────────────────────────────────────────────────────────

_UNIT = re.compile(r"\((?:y|s|n|I)\)|\{[a-z]+\}|.")


class _Speller:
    """Appends suffixes to a stem one boundary at a time."""

    def __init__(self, root: str, flags: LexFlags, proper_noun: bool):
        self.chars: List[List[str]] = [["root", ch] for ch in root]
        self.flags = flags
        self.proper_noun = proper_noun
        self.root = root
        self.suffixed = False
        vowel = last_vowel(root) or "e"
        if flags.harmony_override == Harmony.FRONT:
            vowel = vowel.translate(_TO_FRONT)
        elif flags.harmony_override == Harmony.BACK:
            vowel = vowel.translate(_TO_BACK)
        self.vowel = vowel
        # last realized suffix ended in a literal k
        self.suffix_k = False

    @property
    def text(self) -> str:
        return "".join(ch for _, ch in self.chars)

    def _previous(self) -> Optional[str]:
        for _, ch in reversed(self.chars):
            if ch != "'":
                return tr_lower(ch)
        return None

    def _after_vowel(self) -> bool:
        prev = self._previous()
        return prev is not None and prev in VOWELS

    def _resolve(self, form: str) -> str:
        if "{aor}" in form:
            if self._after_vowel():
                aor = "r"
            elif not self.suffixed and self.flags.aorist:
                aor = "Ir" if self.flags.aorist == "ir" else "Ar"
            else:
                aor = "Ar" if syllables(self.text) == 1 else "Ir"
            form = form.replace("{aor}", aor)
        if "{caus}" in form:
            prev = self._previous()
            if self._after_vowel() or (prev in ("r", "l") and syllables(self.text) > 1):
                caus = "t"
            else:
                caus = "DIr"
            form = form.replace("{caus}", caus)
        if "{pass}" in form:
            prev = self._previous()
            if self._after_vowel():
                passive = "n"
            elif prev == "l":
                passive = "In"
            else:
                passive = "Il"
            form = form.replace("{pass}", passive)
        return form

    def _vowel_initial(self, units: List[str]) -> bool:
        after_vowel = self._after_vowel()
        for unit in units:
            if unit in ("(y)", "(s)", "(n)"):
                if after_vowel:
                    return False
                continue
            if unit == "(I)":
                return not after_vowel
            return unit in ("A", "I") or unit in VOWELS
        return False

    def _soften(self) -> None:
        if not self.chars:
            return
        last = self.chars[-1]
        if not self.suffixed:
            if self.flags.vowel_drop:
                self._drop_stem_vowel()
            if not self.flags.soften:
                return
        elif not self.suffix_k:
            return
        ch = tr_lower(last[1])
        if ch == "k" and len(self.chars) > 1 and tr_lower(self.chars[-2][1]) == "n":
            last[1] = "g"
        elif ch in SOFTENING:
            last[1] = SOFTENING[ch]

    def _drop_stem_vowel(self) -> None:
        for i in range(len(self.chars) - 1, -1, -1):
            if _is_vowel(self.chars[i][1]):
                del self.chars[i]
                return

    def append(self, tag: str, form: str) -> None:
        form = self._resolve(form)
        if not form:
            return
        if tag == "PROG" and self._after_vowel():
            self.chars.pop()
            self.vowel = last_vowel(self.text) or self.vowel
        units = _UNIT.findall(form)
        if self._vowel_initial(units):
            self._soften()
        if self.proper_noun and not self.suffixed:
            self.chars.append(["'", "'"])

        emitted = False
        for unit in units:
            if unit in ("(y)", "(s)", "(n)"):
                if self._after_vowel():
                    self.chars.append([unit, unit[1]])
                    emitted = True
                continue
            if unit == "(I)":
                if self._after_vowel():
                    continue
                unit = "I"
            if unit == "A":
                ch = "e" if self._front() else "a"
                self.chars.append(["A", ch])
                self.vowel = ch
            elif unit == "I":
                ch = self._high_vowel()
                self.chars.append(["I", ch])
                self.vowel = ch
            elif unit == "D":
                prev = self._previous()
                self.chars.append(["D", "t" if prev is not None and prev in VOICELESS else "d"])
            else:
                self.chars.append([unit, unit])
                if unit in VOWELS:
                    self.vowel = unit
            emitted = True
        if emitted:
            self.suffixed = True
            self.suffix_k = self.chars[-1][0] == "k"
        elif self.proper_noun and not self.suffixed:
            self.chars.pop()

    def _front(self) -> bool:
        return self.vowel in FRONT

    def _high_vowel(self) -> str:
        if self.vowel in FRONT:
            return "ü" if self.vowel in ROUNDED else "i"
        return "u" if self.vowel in ROUNDED else "ı"


def build(root: str, suffixes: Sequence[Suffix], flags: Optional[LexFlags] = None,
          proper_noun: bool = False, tags: Tuple[str, ...] = ()) -> WordForm:
    """Spell ``suffixes`` onto ``root`` and keep the character alignment."""
    flags = flags or LexFlags()
    speller = _Speller(root, flags, proper_noun)
    for suffix in suffixes:
        speller.append(suffix.tag, suffix.form)
    alignment = tuple((template, ch) for template, ch in speller.chars)
    return WordForm(speller.text, root, tags or tuple(s.tag for s in suffixes), alignment, flags.harmony_override)


def surface(root_form: str, suffixes: Sequence[Suffix], ctx: Optional[PhonContext] = None,
            flags: Optional[LexFlags] = None, proper_noun: bool = False) -> str:
    """Surface text of ``root_form`` plus ``suffixes``.

    ``ctx`` seeds harmony when the root gives no usable vowel (digits,
    abbreviations); its override wins over the lexicon flag.
    """
    flags = flags or LexFlags()
    if ctx is not None and ctx.harmony_override is not None:
        flags = flags.model_copy(update={"harmony_override": ctx.harmony_override})
    speller = _Speller(root_form, flags, proper_noun)
    if ctx is not None and last_vowel(root_form) is None:
        speller.vowel = ctx.last_vowel
    for suffix in suffixes:
        speller.append(suffix.tag, suffix.form)
    return speller.text


def harmonize_particle(prev_word: str, particle: str = "mI") -> str:
    """The question particle harmonized with ``prev_word``: mı/mi/mu/mü."""
    vowel = last_vowel(prev_word) or "e"
    if vowel in FRONT:
        high = "ü" if vowel in ROUNDED else "i"
    else:
        high = "u" if vowel in ROUNDED else "ı"
    return particle.replace("I", high)


# ── generator ──────────────────────────────────────────────────────────────

_LOOKUP_ORDER = (
    Category.PROPER_NOUN, Category.PRONOUN, Category.NOUN, Category.VERB, Category.ADJ,
    Category.DEMONS, Category.DET, Category.WH, Category.ADVERB, Category.CONJ,
)


class Morphology:
    """Word-form generator bound to a lexicon."""

    def __init__(self, lexicon: Optional[Lexicon] = None):
        self.lexicon = lexicon or Lexicon()
        self._observers: List[Callable[[WordForm], None]] = []

    def add_observer(self, observer: Callable[[WordForm], None]) -> None:
        """Call ``observer`` with every word generated from now on."""
        self._observers.append(observer)

    def entry(self, root: str, category: Optional[Category] = None) -> Optional[LexEntry]:
        if category is not None:
            found = self.lexicon.find(root, (category,))
            if found is not None:
                return found
        return self.lexicon.find(root, _LOOKUP_ORDER)

    def word(self, req: MorphRequest) -> WordForm:
        entry = self.entry(req.root, req.category)
        if entry is None:
            logger.debug(f"{req.root!r} not in lexicon; spelling with default flags")
        suffixes = select_morphemes(req, entry)

        irregular = self._irregular(req, entry)
        if irregular is not None:
            form = WordForm(irregular, req.root, req.tags, tuple(("root", ch) for ch in irregular))
        else:
            form = build(
                req.root,
                suffixes,
                entry.flags if entry else None,
                proper_noun=bool(entry and entry.proper_noun),
                tags=req.tags,
            )
        for observer in self._observers:
            observer(form)
        return form

    def generate(self, req: MorphRequest) -> str:
        return self.word(req).text

    def inflect(self, root: str, *tags: str, category: Optional[Category] = None) -> str:
        return self.generate(MorphRequest(root, tuple(t for t in tags if t), category))

    def particle(self, prev_word: str, agr: Optional[str] = None) -> str:
        """Question particle after ``prev_word``, carrying z-paradigm agreement."""
        base = harmonize_particle(prev_word)
        if agr in (None, "A3SG"):
            return base
        form = build(base, [Suffix(agr, _AGREEMENT["z"][agr])], tags=(agr,))
        for observer in self._observers:
            observer(form)
        return form.text

    @staticmethod
    def _irregular(req: MorphRequest, entry: Optional[LexEntry]) -> Optional[str]:
        if entry is None or not entry.irregular:
            return None
        key = tuple(t for t in req.tags if t not in ZERO_TAGS)
        return entry.irregular.get(key)


def generate(req: MorphRequest, lexicon: Optional[Lexicon] = None) -> str:
    return Morphology(lexicon).generate(req)


# ── validators ─────────────────────────────────────────────────────────────

def _preceding_vowel(alignment: Sequence[Tuple[str, str]], index: int) -> Tuple[Optional[str], Optional[str]]:
    for template, ch in reversed(alignment[:index]):
        low = tr_lower(ch)
        if low in VOWELS:
            return low, template
    return None, None


def _preceding_char(alignment: Sequence[Tuple[str, str]], index: int) -> Optional[str]:
    for _, ch in reversed(alignment[:index]):
        if ch != "'":
            return tr_lower(ch)
    return None


def check_harmony(word: WordForm) -> List[str]:
    """Suffix vowels that disagree with the nearest preceding vowel."""
    problems = []
    for i, (template, ch) in enumerate(word.alignment):
        if template not in ("A", "I"):
            continue
        prev, source = _preceding_vowel(word.alignment, i)
        if prev is None or (source == "root" and word.harmony_override is not None):
            continue
        if (ch in FRONT) != (prev in FRONT):
            problems.append(f"{word.text}: {ch!r} at {i} breaks front/back harmony with {prev!r}")
        elif template == "I" and (ch in ROUNDED) != (prev in ROUNDED):
            problems.append(f"{word.text}: {ch!r} at {i} breaks rounding harmony with {prev!r}")
    return problems


def check_voicing(word: WordForm) -> List[str]:
    """D realized as d right after a voiceless consonant."""
    problems = []
    for i, (template, ch) in enumerate(word.alignment):
        if template != "D":
            continue
        prev = _preceding_char(word.alignment, i)
        if prev is not None and prev in VOICELESS and ch != "t":
            problems.append(f"{word.text}: d after voiceless {prev!r} at {i}")
        if ch == "t" and (prev is None or prev not in VOICELESS):
            problems.append(f"{word.text}: t after voiced {prev!r} at {i}")
    return problems


def check_buffers(word: WordForm) -> List[str]:
    """Buffer y/s that do not follow a vowel."""
    problems = []
    for i, (template, _) in enumerate(word.alignment):
        if template not in ("(y)", "(s)"):
            continue
        prev = _preceding_char(word.alignment, i)
        if prev is None or prev not in VOWELS:
            problems.append(f"{word.text}: buffer {template!r} after {prev!r} at {i}")
    return problems


def validate_word(word: WordForm) -> List[str]:
    return check_harmony(word) + check_voicing(word) + check_buffers(word)
