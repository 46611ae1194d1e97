"""Handlers and fuel: running computations instead of reasoning about them.

Three ways of discharging effects live here:

* :func:`run_parser` — the list-of-successes fold for nondeterminism plus
  strict symbol reads.
* :func:`handle_rec` — folds a single-effect handler (such as
  :func:`h_parser`) over a recursive function's body, threading parser
  state into the recursive call inputs and leaving a shorter effect row.
* :func:`run_with_fuel` — expands recursive calls by substitution, paying
  one unit of fuel per expansion along each path; running dry on any path
  yields :class:`Exhausted` rather than a wrong answer.

:func:`terminates_in` is the matching predicate form: it asks whether a
computation's recursive calls all bottom out within a fuel bound, judging
the other effects through a semantics row for the tail of the effect row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import (
    Ch,
    Command,
    CommandKind,
    Computation,
    EffectId,
    EffectRow,
    Op,
    PairV,
    Pure,
    RowError,
    Str,
    TRUE,
    FALSE,
    UNIT,
    Value,
    bind,
    fmap,
)
from .semantics import SemanticsRow

__all__ = [
    "Done",
    "EXHAUSTED",
    "Exhausted",
    "FuelOutcome",
    "RecursiveFn",
    "TerminationInvariantError",
    "h_parser",
    "handle_rec",
    "run_parser",
    "run_parser_prefix",
    "run_with_fuel",
    "terminates_fmap_law",
    "terminates_in",
]


class TerminationInvariantError(RuntimeError):
    """A run that is proven to finish reported running out of fuel."""


@dataclass(frozen=True)
class RecursiveFn:
    """A recursively defined function: input value to body computation.

    The body's effect row must have the recursion effect in head position;
    ``call`` nodes in the body stand for recursive invocations of this very
    function.  The body must be total on the inputs it is ever called with.
    """

    row: EffectRow
    body: Callable[[Value], Computation]

    def __post_init__(self) -> None:
        if not self.row.effects or self.row.effects[0] is not EffectId.REC:
            raise RowError(f"recursive functions need Rec at the head of the row, got {self.row.effects}")


class FuelOutcome:
    """Result of a fuel-bounded run: either all results, or ran dry."""

    __slots__ = ()


@dataclass(frozen=True)
class Done(FuelOutcome):
    """Every path was fully explored; ``results`` pairs values with final states."""

    results: tuple[tuple[Value, str | None], ...]


@dataclass(frozen=True)
class Exhausted(FuelOutcome):
    """Some path hit a recursive call with no fuel left; results unknown."""


EXHAUSTED = Exhausted()


# ---------------------------------------------------------------------------
# List-of-successes parsing
# ---------------------------------------------------------------------------


def _run_parser(m: Computation, state: str, keep_partial: bool) -> list[tuple[Value, str]]:
    if isinstance(m, Pure):
        if state == "" or keep_partial:
            return [(m.value, state)]
        return []
    assert isinstance(m, Op)
    command = m.command
    if command.kind is CommandKind.FAIL:
        return []
    if command.kind is CommandKind.CHOICE:
        return _run_parser(m.resume(TRUE), state, keep_partial) + _run_parser(
            m.resume(FALSE), state, keep_partial
        )
    if command.effect is EffectId.PARSER_STRICT:
        if state == "":
            return []
        return _run_parser(m.resume(Ch(state[0])), state[1:], keep_partial)
    raise RowError(f"run_parser cannot handle a {command.effect.value} command")


def run_parser(m: Computation, text: str) -> tuple[tuple[Value, str], ...]:
    """All complete parses of ``text`` by ``m``, in branch order.

    ``m`` ranges over nondeterminism and strict symbol reads.  A parse
    survives only if it consumes the whole input, so every returned
    remainder is the empty string.
    """
    return tuple(_run_parser(m, text, keep_partial=False))


def run_parser_prefix(m: Computation, text: str) -> tuple[tuple[Value, str], ...]:
    """Like :func:`run_parser` but keeps partial parses with their remainders.

    This is the composable sub-handler form: callers judge the leftovers.
    """
    return tuple(_run_parser(m, text, keep_partial=True))


# ---------------------------------------------------------------------------
# State handling for optional reads
# ---------------------------------------------------------------------------


def h_parser(command: Command, state: str) -> tuple[Value, str]:
    """Answer one optional symbol read from ``state``.

    Empty input answers ``UNIT`` ("no character") and stays empty; otherwise
    the head character is consumed.
    """
    if command.effect is not EffectId.PARSER_MAYBE or command.kind is not CommandKind.SYMBOL:
        raise RowError(f"h_parser only answers optional symbol reads, got {command.kind.value}")
    if state == "":
        return (UNIT, "")
    return (Ch(state[0]), state[1:])


def handle_rec(
    handler: Callable[[Command, str], tuple[Value, str]],
    f: RecursiveFn,
) -> RecursiveFn:
    """Discharge a recursive function's second effect with ``handler``.

    The result is a recursive function over the row with that effect gone.
    Its inputs are pairs ``PairV(original_input, Str(state))``: the handler
    threads the state through the body, and each recursive call's input is
    paired with the state at that moment, so recursion and state advance
    together.  Effects beyond the handled one keep their relative order.
    """
    if len(f.row) < 2:
        raise RowError("handle_rec needs a second effect to discharge")
    new_row = EffectRow((EffectId.REC,) + f.row.effects[2:])

    def transform(m: Computation, state: str) -> Computation:
        if isinstance(m, Pure):
            return m
        assert isinstance(m, Op)
        resume = m.resume
        if m.index == 0:
            paired = PairV(m.command.payload, Str(state))
            return Op(
                new_row,
                0,
                Command(EffectId.REC, CommandKind.CALL, paired),
                lambda output: transform(resume(output), state),
            )
        if m.index == 1:
            response, next_state = handler(m.command, state)
            return transform(resume(response), next_state)
        return Op(
            new_row,
            m.index - 1,
            m.command,
            lambda response: transform(resume(response), state),
        )

    def body(paired_input: Value) -> Computation:
        if not isinstance(paired_input, PairV) or not isinstance(paired_input.second, Str):
            raise TypeError("handled recursive functions take PairV(input, Str(state))")
        return transform(f.body(paired_input.first), paired_input.second.text)

    return RecursiveFn(new_row, body)


# ---------------------------------------------------------------------------
# Fuel
# ---------------------------------------------------------------------------


def terminates_in(
    tail_row: SemanticsRow,
    f: RecursiveFn,
    m: Computation,
    fuel: int,
    state0: str | None = None,
) -> bool:
    """Do all recursive calls in ``m`` bottom out within ``fuel`` expansions?

    Finished computations terminate at any fuel.  A recursive call at fuel
    zero does not; at positive fuel it is unfolded by substituting ``f``'s
    body (spending one unit) and asking again.  Every other effect defers
    to its transformer in ``tail_row`` — the row for the effects after the
    recursion — with the continuation judged at the *same* fuel, so under
    an all-results transformer every branch must terminate.
    """
    if isinstance(m, Pure):
        return True
    assert isinstance(m, Op)
    resume = m.resume
    if m.command.effect is EffectId.REC:
        if m.index != 0:
            raise RowError("recursion must sit at the head of the row")
        if fuel == 0:
            return False
        payload = m.command.payload
        return terminates_in(tail_row, f, bind(f.body(payload), resume), fuel - 1, state0)
    if m.index == 0 or m.index - 1 >= len(tail_row.transformers):
        raise RowError(f"no tail transformer for effect position {m.index}")
    pt = tail_row.transformers[m.index - 1]
    if pt.effect is not m.command.effect:
        raise RowError(
            f"tail transformer {m.index - 1} handles {pt.effect.value}, "
            f"but the command is for {m.command.effect.value}"
        )
    return pt.transform(
        m.command,
        lambda response, next_state: terminates_in(tail_row, f, resume(response), fuel, next_state),
        state0,
    )


def terminates_fmap_law(
    tail_row: SemanticsRow,
    f: RecursiveFn,
    g: Callable[[Value], Value],
    m: Computation,
    fuel: int,
    state0: str | None = None,
) -> bool:
    """Termination is stable under mapping a function over the result."""
    if not terminates_in(tail_row, f, m, fuel, state0):
        return True
    return terminates_in(tail_row, f, fmap(g, m), fuel, state0)


class _OutOfFuel(Exception):
    pass


def run_with_fuel(
    f: RecursiveFn,
    call_input: Value,
    fuel: int,
    state0: str | None = None,
) -> FuelOutcome:
    """Run ``f`` on ``call_input``, expanding recursion on a fuel budget.

    The initial invocation is free; each recursive call along a path costs
    one unit, and nondeterministic branches each inherit the budget at the
    branch point.  If any path reaches a recursive call with nothing left,
    the whole run is :data:`EXHAUSTED` — :class:`Done` certifies that every
    path was explored to the end, with results in the same order
    ``results_demonic`` would give.
    """
    results: list[tuple[Value, str | None]] = []

    def go(m: Computation, remaining: int, state: str | None) -> None:
        if isinstance(m, Pure):
            results.append((m.value, state))
            return
        assert isinstance(m, Op)
        command = m.command
        if command.kind is CommandKind.FAIL:
            return
        if command.kind is CommandKind.CHOICE:
            go(m.resume(TRUE), remaining, state)
            go(m.resume(FALSE), remaining, state)
            return
        if command.kind is CommandKind.CALL:
            if remaining == 0:
                raise _OutOfFuel
            go(bind(f.body(command.payload), m.resume), remaining - 1, state)
            return
        if state is None:
            raise ValueError("computation reads input; supply state0")
        if command.effect is EffectId.PARSER_STRICT:
            if state == "":
                return
            go(m.resume(Ch(state[0])), remaining, state[1:])
            return
        if command.effect is EffectId.PARSER_MAYBE:
            if state == "":
                go(m.resume(UNIT), remaining, "")
            else:
                go(m.resume(Ch(state[0])), remaining, state[1:])
            return
        raise RowError(f"run_with_fuel cannot handle a {command.effect.value} command")

    try:
        go(f.body(call_input), fuel, state0)
    except _OutOfFuel:
        return EXHAUSTED
    return Done(tuple(results))
