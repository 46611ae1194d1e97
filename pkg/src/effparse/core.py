"""Free computations over rows of effects.

A ``Computation`` is a tree: ``Pure`` leaves carry a result value, ``Op``
nodes record one issued effect command together with a resumption that maps
each possible response to the rest of the computation.  Nothing here runs
anything — interpretation is the business of the semantics and handler
modules, which fold over these trees.

Effects are identified by :class:`EffectId` and grouped into an ordered
:class:`EffectRow`; every ``Op`` node names its effect by position in the
row, and construction checks that the position agrees with the command.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Callable, Iterable, Sequence

if TYPE_CHECKING:  # only for annotations; avoids an import cycle
    from .cfg import SemValue
    from .regex import ParseTree

__all__ = [
    "Bool",
    "Ch",
    "Command",
    "CommandKind",
    "Computation",
    "EffectId",
    "EffectRow",
    "FALSE",
    "ListV",
    "NONDET_ROW",
    "NodeV",
    "PARSER_ROW",
    "Op",
    "PairV",
    "Pure",
    "RowError",
    "SplitV",
    "Str",
    "TreeV",
    "TRUE",
    "UNIT",
    "Unit",
    "Value",
    "admissible_responses",
    "bind",
    "call",
    "choice",
    "choices",
    "fail",
    "fmap",
    "pure",
    "symbol_maybe",
    "symbol_strict",
]


class RowError(ValueError):
    """An effect row was malformed, or an effect was not where it should be."""


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------


class Value:
    """Base class for the closed union of values computations may produce."""

    __slots__ = ()


@dataclass(frozen=True)
class Unit(Value):
    """The single uninformative value."""


@dataclass(frozen=True)
class Bool(Value):
    flag: bool


@dataclass(frozen=True)
class Ch(Value):
    """A single character."""

    char: str

    def __post_init__(self) -> None:
        if len(self.char) != 1:
            raise ValueError(f"Ch holds exactly one character, got {self.char!r}")


@dataclass(frozen=True)
class Str(Value):
    """A (possibly empty) string of characters."""

    text: str


@dataclass(frozen=True)
class PairV(Value):
    first: Value
    second: Value


@dataclass(frozen=True)
class ListV(Value):
    items: tuple[Value, ...]


@dataclass(frozen=True)
class TreeV(Value):
    """A regex parse tree lifted into the value union."""

    tree: "ParseTree"


@dataclass(frozen=True)
class NodeV(Value):
    """A grammar semantic value lifted into the value union."""

    node: "SemValue"


@dataclass(frozen=True)
class SplitV(Value):
    """A way of cutting a string into a prefix and the remaining suffix."""

    prefix: str
    suffix: str


UNIT = Unit()
TRUE = Bool(True)
FALSE = Bool(False)


# ---------------------------------------------------------------------------
# Effects and commands
# ---------------------------------------------------------------------------


class EffectId(Enum):
    """The four effect signatures computations may draw commands from."""

    NONDET = "nondet"
    PARSER_MAYBE = "parser_maybe"
    PARSER_STRICT = "parser_strict"
    REC = "rec"


class CommandKind(Enum):
    CHOICE = "choice"
    FAIL = "fail"
    SYMBOL = "symbol"
    CALL = "call"


_KINDS_BY_EFFECT: dict[EffectId, frozenset[CommandKind]] = {
    EffectId.NONDET: frozenset({CommandKind.CHOICE, CommandKind.FAIL}),
    EffectId.PARSER_MAYBE: frozenset({CommandKind.SYMBOL}),
    EffectId.PARSER_STRICT: frozenset({CommandKind.SYMBOL}),
    EffectId.REC: frozenset({CommandKind.CALL}),
}


@dataclass(frozen=True)
class Command:
    """One issued command: which effect, which of its commands, and payload.

    Only ``CALL`` commands carry a meaningful payload (the recursive call's
    input); every other command's payload is ``UNIT``.
    """

    effect: EffectId
    kind: CommandKind
    payload: Value = UNIT

    def __post_init__(self) -> None:
        if self.kind not in _KINDS_BY_EFFECT[self.effect]:
            raise ValueError(f"effect {self.effect.value} has no {self.kind.value} command")
        if self.kind is not CommandKind.CALL and self.payload != UNIT:
            raise ValueError(f"{self.kind.value} commands carry no payload")


def admissible_responses(command: Command) -> tuple[Value, ...] | None:
    """The finite response set of a command, or ``None`` if it is unbounded.

    ``CHOICE`` answers with either boolean, ``FAIL`` with nothing at all;
    symbol reads and recursive calls are answered by whichever interpreter
    runs the computation, so their response sets are not fixed here.
    """
    if command.kind is CommandKind.CHOICE:
        return (TRUE, FALSE)
    if command.kind is CommandKind.FAIL:
        return ()
    return None


@dataclass(frozen=True)
class EffectRow:
    """An ordered collection of distinct effects.

    Order matters: commands name their effect by position, and semantics
    rows align transformers with positions.
    """

    effects: tuple[EffectId, ...]

    def __post_init__(self) -> None:
        if len(set(self.effects)) != len(self.effects):
            raise RowError(f"duplicate effect in row {self.effects}")

    def __contains__(self, effect: EffectId) -> bool:
        return effect in self.effects

    def __len__(self) -> int:
        return len(self.effects)

    def index_of(self, effect: EffectId) -> int:
        """Position of ``effect`` in this row; raises ``RowError`` if absent."""
        try:
            return self.effects.index(effect)
        except ValueError:
            raise RowError(f"effect {effect.value} not in row {self.effects}") from None


NONDET_ROW = EffectRow((EffectId.NONDET,))
PARSER_ROW = EffectRow((EffectId.NONDET, EffectId.PARSER_STRICT))


# ---------------------------------------------------------------------------
# Computations
# ---------------------------------------------------------------------------


class Computation:
    """Base class for effect-tree computations; see ``Pure`` and ``Op``."""

    __slots__ = ()


@dataclass(frozen=True)
class Pure(Computation):
    """A finished computation holding its result."""

    value: Value


@dataclass(frozen=True, eq=False)
class Op(Computation):
    """An issued command plus a resumption from responses to continuations.

    Two ``Op`` nodes never compare equal unless identical (resumptions are
    opaque closures); computations are compared observationally, by running
    them under an interpreter and comparing results.
    """

    row: EffectRow
    index: int
    command: Command
    resume: Callable[[Value], Computation]

    def __post_init__(self) -> None:
        if not 0 <= self.index < len(self.row):
            raise RowError(f"index {self.index} out of range for row {self.row.effects}")
        if self.row.effects[self.index] is not self.command.effect:
            raise RowError(
                f"command effect {self.command.effect.value} does not sit at "
                f"position {self.index} of row {self.row.effects}"
            )


# ---------------------------------------------------------------------------
# Smart constructors
# ---------------------------------------------------------------------------


def pure(value: Value) -> Pure:
    """Wrap a value as a finished computation."""
    return Pure(value)


def bind(m: Computation, k: Callable[[Value], Computation]) -> Computation:
    """Sequence ``m`` with ``k``, grafting ``k`` onto every ``Pure`` leaf."""
    if isinstance(m, Pure):
        return k(m.value)
    assert isinstance(m, Op)
    resume = m.resume
    return Op(m.row, m.index, m.command, lambda response: bind(resume(response), k))


def fmap(g: Callable[[Value], Value], m: Computation) -> Computation:
    """Apply ``g`` to the eventual result of ``m``."""
    return bind(m, lambda value: Pure(g(value)))


def _op(row: EffectRow, effect: EffectId, kind: CommandKind, resume: Callable[[Value], Computation], payload: Value = UNIT) -> Op:
    return Op(row, row.index_of(effect), Command(effect, kind, payload), resume)


def fail(row: EffectRow = NONDET_ROW) -> Op:
    """The computation with no results; its resumption is never reached."""

    def resume(_: Value) -> Computation:
        raise AssertionError("fail has no responses to resume with")

    return _op(row, EffectId.NONDET, CommandKind.FAIL, resume)


def choice(left: Computation, right: Computation, row: EffectRow | None = None) -> Op:
    """Nondeterministically continue as ``left`` (on true) or ``right``.

    The row is taken from whichever branch already carries one; two pure
    branches default to the plain nondeterminism row unless ``row`` says
    otherwise.
    """
    if row is None:
        if isinstance(left, Op):
            row = left.row
        elif isinstance(right, Op):
            row = right.row
        else:
            row = NONDET_ROW
    return _op(row, EffectId.NONDET, CommandKind.CHOICE, lambda response: left if response == TRUE else right)


def choices(branches: Sequence[Computation] | Iterable[Computation], row: EffectRow = NONDET_ROW) -> Computation:
    """Fold a sequence of alternatives into nested binary choices.

    The empty sequence is ``fail``; order of results is preserved
    (first branch's results first).
    """
    branches = list(branches)
    if not branches:
        return fail(row)
    result = branches[-1]
    for branch in reversed(branches[:-1]):
        result = choice(branch, result, row)
    return result


def symbol_maybe(row: EffectRow) -> Op:
    """Read the next input character if any; responds with the char or unit."""
    return _op(row, EffectId.PARSER_MAYBE, CommandKind.SYMBOL, Pure)


def symbol_strict(row: EffectRow) -> Op:
    """Read the next input character; end of input yields no continuation."""
    return _op(row, EffectId.PARSER_STRICT, CommandKind.SYMBOL, Pure)


def call(row: EffectRow, payload: Value) -> Op:
    """Invoke the ambient recursive function on ``payload``."""
    return _op(row, EffectId.REC, CommandKind.CALL, Pure, payload)
