"""Lexicon loading and lookup.

One entry per top-level form::

    (entry "kitap" (cat noun) (flags (soften +)))
    (entry "ben" (cat pronoun) (agr 1sg) (irregular (("GEN") "benim") (("DAT") "bana")))
    (entry "nereye" (cat wh) (wh-role goal))
    (entry "ve" (cat conj) (conj and) (connective "{arg1} ve {arg2}"))
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from .errors import FeatureStructureError, LexiconError
from .featstruct import SList, Token, read_sexprs
from .models import Category, LexEntry

logger = logging.getLogger(__name__)

# Lookup preference when a caller does not know the category of a reference.
NOMINAL_CATEGORIES = (Category.PROPER_NOUN, Category.PRONOUN, Category.NOUN, Category.WH, Category.ADVERB, Category.ADJ)


def _fail(message: str, node, code: str = "syntax-error") -> LexiconError:
    return LexiconError(f"{message} (line {node.line}, column {node.column})", code=code)


def _word(node) -> str:
    if not isinstance(node, Token):
        raise _fail("expected a word", node)
    return node.value


def _sign(node) -> bool:
    value = _word(node)
    if value not in ("+", "-"):
        raise _fail(f"expected + or -, got {value!r}", node)
    return value == "+"


_FLAG_READERS = {
    "soften": _sign,
    "vowel-drop": _sign,
    "pronominal-n": _sign,
    "harmony-override": _word,
    "nominalizer": _word,
    "det-position": _word,
    "aorist": _word,
}


def _flags(node: SList) -> Dict[str, object]:
    flags: Dict[str, object] = {}
    for item in node.items[1:]:
        if not isinstance(item, SList) or len(item.items) != 2:
            raise _fail("flag must be (name value)", item)
        name = _word(item.items[0]).lower()
        reader = _FLAG_READERS.get(name)
        if reader is None:
            raise _fail(f"unknown flag {name!r}", item)
        flags[name.replace("-", "_")] = reader(item.items[1])
    return flags


def _irregular(node: SList) -> Dict[Tuple[str, ...], str]:
    forms: Dict[Tuple[str, ...], str] = {}
    for item in node.items[1:]:
        if not isinstance(item, SList) or len(item.items) != 2 or not isinstance(item.items[0], SList):
            raise _fail('irregular form must be (("TAG" ...) "surface")', item)
        tags = tuple(_word(tag).upper() for tag in item.items[0].items)
        forms[tags] = _word(item.items[1])
    return forms


def _subcat(node: SList) -> Dict[str, object]:
    subcat: Dict[str, object] = {}
    for item in node.items[1:]:
        if not isinstance(item, SList) or len(item.items) != 2:
            raise _fail("subcat item must be (name value)", item)
        name = _word(item.items[0]).lower()
        if name == "required":
            roles = item.items[1]
            if not isinstance(roles, SList):
                raise _fail("required roles must be a [list]", roles)
            subcat["required"] = tuple(_word(r).lower() for r in roles.items)
        elif name == "object":
            subcat["obligatory_object"] = _word(item.items[1])
        else:
            raise _fail(f"unknown subcat item {name!r}", item)
    return subcat


def _entry(node) -> LexEntry:
    if not isinstance(node, SList) or len(node.items) < 2 or _word(node.items[0]) != "entry":
        raise _fail('expected (entry "lemma" ...)', node)
    fields: Dict[str, object] = {"lemma": _word(node.items[1]), "line": node.line}
    for item in node.items[2:]:
        if not isinstance(item, SList) or not item.items:
            raise _fail("expected (field value)", item)
        name = _word(item.items[0]).lower()
        if name == "flags":
            fields["flags"] = _flags(item)
        elif name == "irregular":
            fields["irregular"] = _irregular(item)
        elif name == "subcat":
            fields["subcat"] = _subcat(item)
        elif name in ("cat", "agr", "wh-role", "conj", "link-relation", "connective", "numeral"):
            if len(item.items) != 2:
                raise _fail(f"{name} takes one value", item)
            value = _word(item.items[1])
            key = "category" if name == "cat" else name.replace("-", "_")
            fields[key] = value.lower() if name not in ("connective",) else value
        else:
            raise _fail(f"unknown entry field {name!r}", item)
    try:
        entry = LexEntry(**fields)
    except ValidationError as e:
        raise _fail(f"invalid entry {fields['lemma']!r}: {e.errors()[0]['msg']}", node) from e
    _check(entry, node)
    return entry


def _check(entry: LexEntry, node) -> None:
    if entry.category == Category.WH and not entry.wh_role:
        raise _fail(f"wh entry {entry.lemma!r} needs a wh-role", node)
    if entry.category == Category.CONJ:
        if not entry.connective:
            raise _fail(f"conjunction {entry.lemma!r} needs a connective pattern", node)
        if not (entry.conj or entry.link_relation):
            raise _fail(f"conjunction {entry.lemma!r} needs conj or link-relation", node)


class Lexicon:
    """Immutable index of entries by (lemma, category)."""

    def __init__(self, entries: Iterable[LexEntry] = ()):
        self._entries: Dict[Tuple[str, Category], LexEntry] = {}
        self._wh: Dict[str, LexEntry] = {}
        self._conj: Dict[str, LexEntry] = {}
        self._links: Dict[str, LexEntry] = {}
        self._numerals: Dict[int, LexEntry] = {}
        for entry in entries:
            key = (entry.lemma, entry.category)
            if key in self._entries:
                raise LexiconError(
                    f"{entry.lemma!r} ({entry.category.value}) defined twice, line {entry.line}",
                    code="duplicate-entry",
                )
            self._entries[key] = entry
            if entry.wh_role:
                self._wh.setdefault(entry.wh_role, entry)
            if entry.conj:
                self._conj.setdefault(entry.conj, entry)
            if entry.link_relation:
                self._links.setdefault(entry.link_relation, entry)
            if entry.numeral is not None:
                self._numerals.setdefault(entry.numeral, entry)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[LexEntry]:
        return iter(self._entries.values())

    def __contains__(self, lemma: str) -> bool:
        return any(lemma == key[0] for key in self._entries)

    def lookup(self, lemma: str, category: Union[Category, str]) -> LexEntry:
        category = Category(category)
        entry = self._entries.get((lemma, category))
        if entry is None:
            raise LexiconError(f"no {category.value} entry for {lemma!r}", code="missing-entry",
                               lemma=lemma, category=category.value)
        return entry

    def find(self, lemma: str, categories: Sequence[Category] = NOMINAL_CATEGORIES) -> Optional[LexEntry]:
        """First entry for ``lemma`` in the given category preference."""
        for category in categories:
            entry = self._entries.get((lemma, category))
            if entry is not None:
                return entry
        return None

    def lookup_wh(self, role: str) -> LexEntry:
        entry = self._wh.get(role)
        if entry is None:
            raise LexiconError(f"no wh pro-form for role {role!r}", code="missing-entry", lemma=role, category="wh")
        return entry

    def conjunction(self, name: str) -> Optional[LexEntry]:
        return self._conj.get(name)

    def link(self, relation: str) -> Optional[LexEntry]:
        return self._links.get(relation)

    def numeral(self, value: int) -> Optional[LexEntry]:
        return self._numerals.get(value)


def load(text: str) -> Lexicon:
    """Parse lexicon text."""
    try:
        nodes = read_sexprs(text)
    except FeatureStructureError as e:
        raise LexiconError(e.message, code="syntax-error") from e
    return Lexicon(_entry(node) for node in nodes)


def load_file(path: Union[str, Path]) -> Lexicon:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise LexiconError(f"cannot read {path}: {e}", code="missing-entry") from e
    lexicon = load(text)
    logger.info(f"✓ Loaded lexicon {path.name}: {len(lexicon)} entries")
    return lexicon
