"""Feature structures with pseudo-unification semantics.

Structures are immutable values: ``put``, ``remove_at`` and ``unify`` hand back
new structures and never touch their arguments, so a rule may copy a register
into several others without aliasing. There is no structure sharing.

Text format::

    ((s-form finite)
     (verb ((root "bırak") (tense past)))
     (ques ((type wh) (const [goal]))))

A structure is ``( pair* )``, a pair is ``( name value )`` and a value is an
atom token, a ``"quoted text"`` (``\\"`` and ``\\\\`` escapes), a nested
structure or a ``[ value* ]`` list. ``;`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import FeatureStructureError, UnificationClash

_NAME = re.compile(r"^[a-z0-9][a-z0-9_\-]*$")
_ATOM = re.compile(r'^[^\s()\[\]";]+$')


def tr_lower(text: str) -> str:
    return text.replace("I", "ı").replace("İ", "i").lower()


def fold_case(text: str) -> str:
    """Lowercase an atom name; non-ASCII names fold with Turkish dotted/dotless i."""
    return text.lower() if text.isascii() else tr_lower(text)


@dataclass(frozen=True)
class Atom:
    """A bare token. Case-insensitive; stored lowercase."""

    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _ATOM.match(self.name):
            raise FeatureStructureError(f"invalid atom {self.name!r}")
        object.__setattr__(self, "name", fold_case(self.name))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Text:
    """A quoted string. Case and UTF-8 content are preserved."""

    value: str

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ValueList:
    items: Tuple["Value", ...] = ()

    def __iter__(self) -> Iterator["Value"]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, index: int) -> "Value":
        return self.items[index]


class FeatureStructure(Mapping[str, "Value"]):
    """Ordered, immutable map from feature names to values."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Optional[Mapping[str, "Value"]] = None):
        checked: Dict[str, Value] = {}
        for name, value in (entries or {}).items():
            if not isinstance(name, str) or not _NAME.match(name):
                raise FeatureStructureError(f"invalid feature name {name!r}")
            if not isinstance(value, (Atom, Text, FeatureStructure, ValueList)):
                raise FeatureStructureError(f"invalid value for {name}: {value!r}")
            checked[name] = value
        self._entries = checked
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, entries: Dict[str, "Value"]) -> "FeatureStructure":
        fs = cls.__new__(cls)
        fs._entries = entries
        fs._hash = None
        return fs

    def __getitem__(self, name: str) -> "Value":
        return self._entries[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeatureStructure):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"FeatureStructure({print_fs(self, compact=True)})"

    # convenience wrappers around the module-level operations
    def at(self, path: "PathLike") -> Optional["Value"]:
        return get(self, path)

    def put(self, path: "PathLike", value: "Value") -> "FeatureStructure":
        return put(self, path, value)

    def remove(self, path: "PathLike") -> "FeatureStructure":
        return remove_at(self, path)

    @classmethod
    def from_python(cls, obj: Mapping[str, Any]) -> "FeatureStructure":
        """Build a structure from nested dicts; plain strings become atoms."""
        value = _from_python(obj)
        if not isinstance(value, FeatureStructure):
            raise FeatureStructureError("top level must be a mapping")
        return value

    def to_python(self) -> Dict[str, Any]:
        return _to_python(self)


Value = Union[Atom, Text, FeatureStructure, ValueList]

EMPTY = FeatureStructure()
UNDEFINED = Atom("*undefined*")
REMOVE = Atom("*remove*")


def _from_python(obj: Any) -> Value:
    if isinstance(obj, (Atom, Text, FeatureStructure, ValueList)):
        return obj
    if isinstance(obj, Mapping):
        return FeatureStructure({str(k).lower(): _from_python(v) for k, v in obj.items()})
    if isinstance(obj, bool):
        return Atom("+" if obj else "-")
    if isinstance(obj, (int, str)):
        return Atom(str(obj))
    if isinstance(obj, (list, tuple)):
        return ValueList(tuple(_from_python(item) for item in obj))
    raise FeatureStructureError(f"cannot convert {obj!r} to a feature value")


def _to_python(value: Value) -> Any:
    if isinstance(value, FeatureStructure):
        return {k: _to_python(v) for k, v in value.items()}
    if isinstance(value, ValueList):
        return [_to_python(item) for item in value]
    if isinstance(value, Atom):
        return value.name
    return value


def scalar(value: Optional[Value]) -> Optional[str]:
    """The string content of an atom or text value, else None."""
    if isinstance(value, Atom):
        return value.name
    if isinstance(value, Text):
        return value.value
    return None


# ── paths ──────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Path:
    segments: Tuple[str, ...]

    def __post_init__(self):
        if not self.segments:
            raise FeatureStructureError("a path needs at least one segment")
        for segment in self.segments:
            if not _NAME.match(segment):
                raise FeatureStructureError(f"invalid path segment {segment!r}")

    @classmethod
    def of(cls, spec: "PathLike") -> "Path":
        if isinstance(spec, Path):
            return spec
        if isinstance(spec, str):
            return cls(tuple(spec.lower().split(".")))
        return cls(tuple(s.lower() for s in spec))

    def __str__(self) -> str:
        return ".".join(self.segments)


PathLike = Union[Path, str, Sequence[str]]


# ── operations ─────────────────────────────────────────────────────────────

def get(fs: FeatureStructure, path: PathLike) -> Optional[Value]:
    """Follow ``path``; None when any segment is missing."""
    current: Optional[Value] = fs
    for segment in Path.of(path).segments:
        if not isinstance(current, FeatureStructure):
            return None
        current = current._entries.get(segment)
        if current is None:
            return None
    return current


def put(fs: FeatureStructure, path: PathLike, value: Value) -> FeatureStructure:
    """Copy of ``fs`` with ``value`` at ``path``; missing levels are created."""
    segments = Path.of(path).segments
    return _put(fs, segments, value, 0)


def _put(node: FeatureStructure, segments: Tuple[str, ...], value: Value, depth: int) -> FeatureStructure:
    entries = dict(node._entries)
    head = segments[depth]
    if depth == len(segments) - 1:
        entries[head] = value
        return FeatureStructure._wrap(entries)
    child = entries.get(head)
    if child is None:
        child = EMPTY
    elif not isinstance(child, FeatureStructure):
        raise FeatureStructureError(
            f"cannot descend through {type(child).__name__.lower()} value",
            code="path-through-atom",
            path=".".join(segments[: depth + 1]),
        )
    entries[head] = _put(child, segments, value, depth + 1)
    return FeatureStructure._wrap(entries)


def remove_at(fs: FeatureStructure, path: PathLike) -> FeatureStructure:
    """Copy of ``fs`` without the entry at ``path``; absent paths are a no-op."""
    segments = Path.of(path).segments
    if get(fs, segments) is None:
        return fs
    return _remove(fs, segments, 0)


def _remove(node: FeatureStructure, segments: Tuple[str, ...], depth: int) -> FeatureStructure:
    entries = dict(node._entries)
    head = segments[depth]
    if depth == len(segments) - 1:
        del entries[head]
    else:
        entries[head] = _remove(entries[head], segments, depth + 1)
    return FeatureStructure._wrap(entries)


def constrain_eq(fs: FeatureStructure, path: PathLike, expected: Union[Atom, str]) -> bool:
    """The ``=c`` check: equal atom present, or absent when ``*undefined*``."""
    if isinstance(expected, str):
        expected = Atom(expected)
    value = get(fs, path)
    if expected == UNDEFINED:
        return value is None
    return isinstance(value, Atom) and value == expected


def unify(a: FeatureStructure, b: FeatureStructure) -> FeatureStructure:
    """Recursive merge; raises UnificationClash at the first conflicting path."""
    return _unify(a, b, ())


def _unify(a: FeatureStructure, b: FeatureStructure, trail: Tuple[str, ...]) -> FeatureStructure:
    entries = dict(a._entries)
    for name, theirs in b._entries.items():
        ours = entries.get(name)
        if ours is None:
            entries[name] = theirs
        elif isinstance(ours, FeatureStructure) and isinstance(theirs, FeatureStructure):
            entries[name] = _unify(ours, theirs, trail + (name,))
        elif ours != theirs:
            where = ".".join(trail + (name,))
            raise UnificationClash(f"{_show(ours)} does not unify with {_show(theirs)}", path=where)
    return FeatureStructure._wrap(entries)


def _show(value: Value) -> str:
    return _print_value(value, 0, compact=True)


# ── s-expression reader ────────────────────────────────────────────────────

_TOKEN = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>;[^\n]*)
    | (?P<open>[(\[])
    | (?P<close>[)\]])
    | (?P<text>"(?:[^"\\]|\\.)*")
    | (?P<atom>[^\s()\[\]";]+)
    """,
    re.VERBOSE | re.DOTALL,
)
_ESCAPE = re.compile(r"\\(.)", re.DOTALL)
_CLOSER = {"(": ")", "[": "]"}


@dataclass(frozen=True)
class Token:
    kind: str  # "atom" or "text"
    value: str
    line: int
    column: int


@dataclass(frozen=True)
class SList:
    items: Tuple[Union["SList", Token], ...]
    bracket: str
    line: int
    column: int


Node = Union[SList, Token]


def read_sexprs(text: str) -> List[Node]:
    """Read every top-level s-expression in ``text``."""
    stack: List[Tuple[str, int, int, List[Node]]] = []
    top: List[Node] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        column = pos - line_start + 1
        if match is None:
            raise FeatureStructureError("unterminated string or stray character", line=line, column=column)
        kind = match.lastgroup
        chunk = match.group()
        if kind == "open":
            stack.append((chunk, line, column, []))
        elif kind == "close":
            if not stack:
                raise FeatureStructureError(f"unbalanced {chunk!r}", line=line, column=column)
            bracket, open_line, open_column, items = stack.pop()
            if _CLOSER[bracket] != chunk:
                raise FeatureStructureError(f"{bracket!r} closed by {chunk!r}", line=line, column=column)
            node = SList(tuple(items), bracket, open_line, open_column)
            (stack[-1][3] if stack else top).append(node)
        elif kind in ("text", "atom"):
            value = _ESCAPE.sub(r"\1", chunk[1:-1]) if kind == "text" else chunk
            node = Token(kind, value, line, column)
            (stack[-1][3] if stack else top).append(node)
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = match.end()
    if stack:
        bracket, open_line, open_column, _ = stack[-1]
        raise FeatureStructureError(f"unclosed {bracket!r}", line=open_line, column=open_column)
    return top


# ── parsing ────────────────────────────────────────────────────────────────

def parse_fs(text: str) -> FeatureStructure:
    """Parse exactly one feature structure."""
    structures = parse_fs_many(text)
    if len(structures) != 1:
        raise FeatureStructureError(f"expected one feature structure, found {len(structures)}")
    return structures[0]


def parse_fs_many(text: str) -> List[FeatureStructure]:
    """Parse a sequence of top-level feature structures (batch input files)."""
    return [fs_from_node(node) for node in read_sexprs(text)]


def fs_from_node(node: Node) -> FeatureStructure:
    if not isinstance(node, SList) or node.bracket != "(":
        raise FeatureStructureError("expected '('", line=node.line, column=node.column)
    entries: Dict[str, Value] = {}
    for pair in node.items:
        if not isinstance(pair, SList) or pair.bracket != "(" or len(pair.items) != 2:
            raise FeatureStructureError("expected a (name value) pair", line=pair.line, column=pair.column)
        name_node, value_node = pair.items
        if not isinstance(name_node, Token) or name_node.kind != "atom":
            raise FeatureStructureError("feature name must be a bare token", line=pair.line, column=pair.column)
        name = name_node.value.lower()
        if not _NAME.match(name):
            raise FeatureStructureError(f"invalid feature name {name!r}", line=name_node.line, column=name_node.column)
        if name in entries:
            raise FeatureStructureError(
                f"feature {name!r} given twice",
                code="duplicate-feature",
                line=name_node.line,
                column=name_node.column,
            )
        entries[name] = value_from_node(value_node)
    return FeatureStructure._wrap(entries)


def value_from_node(node: Node) -> Value:
    if isinstance(node, Token):
        return Atom(node.value) if node.kind == "atom" else Text(node.value)
    if node.bracket == "[":
        return ValueList(tuple(value_from_node(item) for item in node.items))
    return fs_from_node(node)


# ── printing ───────────────────────────────────────────────────────────────

def print_fs(fs: FeatureStructure, compact: bool = False) -> str:
    """Canonical text: one pair per line, two spaces of indent per depth."""
    return _print_fs(fs, 0, compact)


def _print_fs(fs: FeatureStructure, depth: int, compact: bool) -> str:
    if not fs:
        return "()"
    if compact:
        return "(" + "".join(f"({k} {_print_value(v, 0, True)})" for k, v in fs.items()) + ")"
    pad = "  " * (depth + 1)
    lines = ["("]
    for name, value in fs.items():
        lines.append(f"{pad}({name} {_print_value(value, depth + 1, False)})")
    lines.append("  " * depth + ")")
    return "\n".join(lines)


def _print_value(value: Value, depth: int, compact: bool) -> str:
    if isinstance(value, Atom):
        return value.name
    if isinstance(value, Text):
        escaped = value.value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(value, ValueList):
        return "[" + " ".join(_print_value(item, depth, compact) for item in value) + "]"
    return _print_fs(value, depth, compact)
