"""Right-linear rule formalism with pseudo-unification equations.

Rule file syntax::

    (<S> <==> (<Subject> <S1>)
      (((x0 control topic) =c subject)
       (x1 = (x0 args subject))
       (x2 = x0)
       ((x2 args subject) = *remove*)))

``x0`` is the structure handed to the left-hand side, ``x1..xn`` are the
values built for the right-hand symbols. Constraint equations (``=c``) read
``x0`` and are checked before anything else; assignments then run top to
bottom. Right-hand symbols are nonterminals of the grammar or builtins,
which are callables that turn their register into a token (None for NIL).
"""

import logging
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import FeatureStructureError, GrammarError, SerbestError
from .featstruct import (
    EMPTY,
    REMOVE,
    UNDEFINED,
    Atom,
    FeatureStructure,
    Path,
    SList,
    Text,
    Token,
    Value,
    constrain_eq,
    get,
    print_fs,
    put,
    read_sexprs,
    remove_at,
)

logger = logging.getLogger(__name__)

Hook = Callable[[FeatureStructure], Optional[str]]

NIL = "nil"

_SYMBOL = re.compile(r"^<?([A-Za-z0-9][A-Za-z0-9_\-]*)>?$")
_REGISTER = re.compile(r"^x(\d+)$", re.IGNORECASE)


@dataclass(frozen=True)
class Ref:
    """A register, optionally narrowed by a path: ``x0`` or ``(x0 args subject)``."""

    register: int
    path: Optional[Path] = None

    def __str__(self) -> str:
        if self.path is None:
            return f"x{self.register}"
        return f"(x{self.register} {' '.join(self.path.segments)})"


@dataclass(frozen=True)
class Equation:
    kind: str  # "assign" | "constrain" | "remove"
    target: Ref
    source: Union[Ref, Atom, Text, None] = None

    def __str__(self) -> str:
        if self.kind == "remove":
            return f"({self.target} = *remove*)"
        op = "=c" if self.kind == "constrain" else "="
        return f"({self.target} {op} {self.source})"


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: Tuple[str, ...]
    equations: Tuple[Equation, ...] = ()
    line: int = 0

    @property
    def constraints(self) -> Tuple[Equation, ...]:
        return tuple(e for e in self.equations if e.kind == "constrain")

    @property
    def actions(self) -> Tuple[Equation, ...]:
        return tuple(e for e in self.equations if e.kind != "constrain")

    def __str__(self) -> str:
        rhs = " ".join(f"<{s}>" for s in self.rhs)
        return f"<{self.lhs}> <==> ({rhs})"


@dataclass(frozen=True)
class RuleSet:
    rules: Tuple[Rule, ...] = ()

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __add__(self, other: "RuleSet") -> "RuleSet":
        return RuleSet(self.rules + tuple(other.rules))


@dataclass(frozen=True)
class CompiledGrammar:
    table: Mapping[str, Tuple[Rule, ...]]
    builtins: Mapping[str, Optional[Hook]]
    start: Optional[str] = None

    @property
    def rule_count(self) -> int:
        return sum(len(rules) for rules in self.table.values())


@dataclass(frozen=True)
class Leaf:
    """A builtin emission; ``emission`` is None for NIL."""

    symbol: str
    value: FeatureStructure
    emission: Optional[str]


@dataclass(frozen=True)
class Derivation:
    symbol: str
    rule: Rule
    registers: Tuple[FeatureStructure, ...]
    children: Tuple[Union["Derivation", Leaf], ...] = ()
    steps: int = 1

    def leaves(self) -> Iterator[Leaf]:
        for child in self.children:
            if isinstance(child, Leaf):
                yield child
            else:
                yield from child.leaves()

    def nodes(self) -> Iterator["Derivation"]:
        """Committed rules in pre-order."""
        yield self
        for child in self.children:
            if isinstance(child, Derivation):
                yield from child.nodes()

    def tokens(self) -> List[str]:
        return [leaf.emission for leaf in self.leaves() if leaf.emission is not None]


# ── parsing ────────────────────────────────────────────────────────────────

def _fail(message: str, node, code: str = "syntax-error") -> GrammarError:
    return GrammarError(f"{message} (line {node.line}, column {node.column})", code=code)


def _symbol(node) -> str:
    if not isinstance(node, Token) or node.kind != "atom":
        raise _fail("expected a symbol", node)
    match = _SYMBOL.match(node.value)
    if not match:
        raise _fail(f"invalid symbol {node.value!r}", node)
    return match.group(1).lower()


def _register(node) -> int:
    if not isinstance(node, Token) or node.kind != "atom":
        raise _fail("expected a register", node)
    match = _REGISTER.match(node.value)
    if not match:
        raise _fail(f"invalid register {node.value!r}", node)
    return int(match.group(1))


def _ref(node) -> Ref:
    if isinstance(node, Token):
        return Ref(_register(node))
    if node.bracket != "(" or not node.items:
        raise _fail("expected (xK path...)", node)
    register = _register(node.items[0])
    segments = []
    for seg in node.items[1:]:
        if not isinstance(seg, Token) or seg.kind != "atom":
            raise _fail("path segments must be bare tokens", seg)
        segments.append(seg.value.lower())
    try:
        path = Path(tuple(segments)) if segments else None
    except FeatureStructureError as e:
        raise _fail(e.message, node) from e
    return Ref(register, path)


def _equation(node) -> Equation:
    if not isinstance(node, SList) or len(node.items) != 3:
        raise _fail("equation must be (lhs op rhs)", node)
    left, op_node, right = node.items
    if not isinstance(op_node, Token) or op_node.value not in ("=", "=c"):
        raise _fail("equation operator must be = or =c", node)
    target = _ref(left)

    if isinstance(right, Token) and right.kind == "text":
        value: Union[Ref, Atom, Text] = Text(right.value)
    elif isinstance(right, Token) and not _REGISTER.match(right.value):
        value = Atom(right.value)
    else:
        value = _ref(right)

    if op_node.value == "=c":
        if not isinstance(value, Atom):
            raise _fail("=c needs an atom or *undefined*", node)
        if target.register != 0 or target.path is None:
            raise _fail("=c must test a path of x0", node, code="bad-register")
        return Equation("constrain", target, value)

    if value == UNDEFINED:
        raise _fail("*undefined* is only valid with =c", node)
    if target.register == 0:
        raise _fail("x0 cannot be assigned", node, code="bad-register")
    if value == REMOVE:
        if target.path is None:
            raise _fail("*remove* needs a path", node)
        return Equation("remove", target)
    if target.path is None and not isinstance(value, Ref):
        raise _fail("a whole register takes a register value", node)
    return Equation("assign", target, value)


def _rule(node) -> Rule:
    if not isinstance(node, SList) or node.bracket != "(" or len(node.items) not in (3, 4):
        raise _fail("rule must be (<Lhs> <==> (<Rhs>...) (equations))", node)
    lhs = _symbol(node.items[0])
    arrow = node.items[1]
    if not isinstance(arrow, Token) or arrow.value != "<==>":
        raise _fail("expected <==>", arrow)
    rhs_node = node.items[2]
    if not isinstance(rhs_node, SList) or not rhs_node.items:
        raise _fail("right-hand side needs at least one symbol", rhs_node)
    rhs = tuple(_symbol(item) for item in rhs_node.items)
    equations: Tuple[Equation, ...] = ()
    if len(node.items) == 4:
        eq_node = node.items[3]
        if not isinstance(eq_node, SList):
            raise _fail("expected an equation list", eq_node)
        equations = tuple(_equation(item) for item in eq_node.items)
    for eq in equations:
        refs = [eq.target] + ([eq.source] if isinstance(eq.source, Ref) else [])
        for ref in refs:
            if ref.register > len(rhs):
                raise _fail(
                    f"x{ref.register} used with {len(rhs)} right-hand symbol(s)",
                    node,
                    code="bad-register",
                )
    return Rule(lhs, rhs, equations, node.line)


def parse_rule_file(text: str) -> RuleSet:
    """Parse rules in file order."""
    try:
        nodes = read_sexprs(text)
    except FeatureStructureError as e:
        raise GrammarError(e.message) from e
    return RuleSet(tuple(_rule(node) for node in nodes))


# ── compilation ────────────────────────────────────────────────────────────

def compile(rules: Union[RuleSet, Iterable[Rule]], builtins: Union[Mapping[str, Optional[Hook]], Iterable[str]] = (),
            start: Optional[str] = None) -> CompiledGrammar:
    """Build the per-nonterminal dispatch table."""
    if isinstance(builtins, Mapping):
        hooks: Dict[str, Optional[Hook]] = {name.lower(): hook for name, hook in builtins.items()}
    else:
        hooks = {name.lower(): None for name in builtins}
    hooks.setdefault(NIL, lambda value: None)

    table: Dict[str, List[Rule]] = {}
    for rule in rules:
        table.setdefault(rule.lhs, []).append(rule)

    for rule in rules:
        for symbol in rule.rhs:
            if symbol not in table and symbol not in hooks:
                raise GrammarError(
                    f"<{symbol}> in rule for <{rule.lhs}> (line {rule.line}) is neither defined nor a builtin",
                    code="undefined-nonterminal",
                )
    if start is not None and start.lower() not in table:
        raise GrammarError(f"start symbol <{start}> has no rules", code="undefined-nonterminal")

    frozen = {name: tuple(group) for name, group in table.items()}
    return CompiledGrammar(MappingProxyType(frozen), MappingProxyType(hooks), start.lower() if start else None)


# ── derivation ─────────────────────────────────────────────────────────────

class _Counter:
    __slots__ = ("attempts",)

    def __init__(self):
        self.attempts = 0


def derive(g: CompiledGrammar, start: Optional[str], fs: FeatureStructure,
           hooks: Optional[Mapping[str, Hook]] = None) -> Derivation:
    """Derive ``fs`` from ``start`` with ordered choice and backtracking.

    ``hooks`` overrides builtin realizers for this call only; a builtin
    registered without a hook emits its own name.
    """
    symbol = (start or g.start or "").lower()
    if symbol not in g.table:
        raise GrammarError(f"start symbol <{symbol}> has no rules", code="undefined-nonterminal")
    active = dict(g.builtins)
    if hooks:
        active.update({name.lower(): hook for name, hook in hooks.items()})
    return _derive(g, active, symbol, fs, _Counter())


def _derive(g: CompiledGrammar, hooks: Mapping[str, Optional[Hook]], symbol: str,
            fs: FeatureStructure, counter: _Counter) -> Derivation:
    before = counter.attempts
    last_failure: Optional[GrammarError] = None
    for rule in g.table[symbol]:
        counter.attempts += 1
        if not all(constrain_eq(fs, eq.target.path, eq.source) for eq in rule.constraints):
            continue
        registers = _run_actions(rule, fs)
        try:
            children = tuple(
                _expand(g, hooks, child, registers[i + 1], counter)
                for i, child in enumerate(rule.rhs)
            )
        except GrammarError as e:
            if e.code != "no-applicable-rule":
                raise
            last_failure = e
            continue
        return Derivation(symbol, rule, registers, children, counter.attempts - before)

    error = GrammarError(
        f"no rule for <{symbol}> applies to {print_fs(fs, compact=True)}",
        code="no-applicable-rule",
        symbol=symbol,
        snapshot=fs,
    )
    if last_failure is not None:
        raise error from last_failure
    raise error


def _expand(g, hooks, symbol: str, value: FeatureStructure, counter: _Counter) -> Union[Derivation, Leaf]:
    if symbol in g.table:
        return _derive(g, hooks, symbol, value, counter)
    hook = hooks[symbol]
    if hook is None:
        return Leaf(symbol, value, symbol)
    try:
        emission = hook(value)
    except SerbestError as e:
        # nested clauses wrap again; keep the innermost code
        cause = e.context.get("cause_code", e.code) if e.code == "builtin-failure" else e.code
        raise GrammarError(
            f"builtin <{symbol}> failed: [{e.code}] {e.message}", code="builtin-failure", cause_code=cause
        ) from e
    except Exception as e:
        raise GrammarError(f"builtin <{symbol}> failed: {e}", code="builtin-failure") from e
    return Leaf(symbol, value, emission)


def _run_actions(rule: Rule, fs: FeatureStructure) -> Tuple[FeatureStructure, ...]:
    registers: List[FeatureStructure] = [fs] + [EMPTY] * len(rule.rhs)
    for eq in rule.actions:
        target = eq.target
        if eq.kind == "remove":
            registers[target.register] = remove_at(registers[target.register], target.path)
            continue
        value = _resolve(eq.source, registers)
        if value is None:
            continue
        if target.path is None:
            if not isinstance(value, FeatureStructure):
                raise GrammarError(f"{eq} puts a non-structure into a whole register (line {rule.line})",
                                   code="bad-register")
            registers[target.register] = value
        else:
            registers[target.register] = put(registers[target.register], target.path, value)
    return tuple(registers)


def _resolve(source, registers: Sequence[FeatureStructure]) -> Optional[Value]:
    if isinstance(source, Ref):
        base = registers[source.register]
        return base if source.path is None else get(base, source.path)
    return source


def check_constraints(d: Derivation) -> bool:
    """Replay every committed rule's constraints against its recorded x0."""
    return all(
        constrain_eq(node.registers[0], eq.target.path, eq.source)
        for node in d.nodes()
        for eq in node.rule.constraints
    )


# ── tracing ────────────────────────────────────────────────────────────────

def _default_summary(fs: FeatureStructure) -> str:
    return ",".join(fs.keys()) or "-"


def trace(d: Derivation, summarize: Optional[Callable[[FeatureStructure], str]] = None) -> str:
    """One ``state<TAB>emission<TAB>remaining`` line per committed rule."""
    summarize = summarize or _default_summary
    lines = []
    for node in d.nodes():
        emitted = [leaf.symbol for leaf in node.children if isinstance(leaf, Leaf) and leaf.emission is not None]
        lines.append(f"{node.symbol}\t{','.join(emitted) or 'NIL'}\t{summarize(node.registers[0])}")
    return "\n".join(lines)


def emissions(d: Derivation) -> List[str]:
    """The non-NIL emission column of ``trace``."""
    return [leaf.symbol for leaf in d.leaves() if leaf.emission is not None]
