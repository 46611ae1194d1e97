"""Predicate-transformer semantics for effect computations.

A :class:`PredicateTransformer` says what one effect's commands mean: it
turns a postcondition on responses into a proposition about issuing the
command.  A :class:`SemanticsRow` lines transformers up with an effect row,
and :func:`wp` folds a row over a computation to compute the weakest
precondition of a postcondition.  Propositions are plain booleans — every
check here is decidable at the scales this library targets.

All transformers share one calling convention: ``transform(command, post,
state)`` where ``post(response, state')`` judges a response together with
the parser state after it.  Transformers for stateless effects simply pass
``state`` through unchanged, which lets plain and stateful rows mix.

:func:`results_demonic` enumerates every reachable leaf of a computation in
a fixed order; for all-results rows ``wp`` is equivalent to quantifying over
that enumeration, which is what makes refinement executable
(:func:`refines_all`, :func:`refines_any`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import (
    UNIT,
    Ch,
    Command,
    CommandKind,
    Computation,
    EffectId,
    EffectRow,
    Op,
    PARSER_ROW,
    Pure,
    RowError,
    TRUE,
    FALSE,
    Value,
)

__all__ = [
    "EnumerationOverflowError",
    "Invariant",
    "MissingInvariantError",
    "PredicateTransformer",
    "SemanticsRow",
    "Spec",
    "StatefulPost",
    "in_language",
    "pt_all",
    "pt_any",
    "pt_parse_strict",
    "pt_parser_maybe",
    "pt_rec",
    "refines_all",
    "refines_any",
    "result_set",
    "results_demonic",
    "wp",
    "wp_spec",
    "wp_stateful",
]


class EnumerationOverflowError(RuntimeError):
    """An invariant's enumerator produced more outputs than its stated bound."""


class MissingInvariantError(ValueError):
    """A computation issued a recursive call but no invariant was supplied."""


#: Postcondition over a response value and the parser state after it.
StatefulPost = Callable[[Value, "str | None"], bool]


@dataclass(frozen=True)
class PredicateTransformer:
    """Meaning of one effect's commands as a weakest-precondition rule.

    ``transform(command, post, state)`` must be monotone in ``post``: if
    ``post`` implies ``post2`` pointwise, the transformed propositions
    must imply likewise.  Every transformer shipped here is.
    """

    effect: EffectId
    transform: Callable[[Command, StatefulPost, "str | None"], bool]


@dataclass(frozen=True)
class SemanticsRow:
    """Transformers in effect-row order: the i-th handles the i-th effect."""

    transformers: tuple[PredicateTransformer, ...]

    def effects(self) -> tuple[EffectId, ...]:
        return tuple(pt.effect for pt in self.transformers)


@dataclass(frozen=True)
class Spec:
    """A precondition plus a postcondition over result values."""

    pre: bool
    post: Callable[[Value], bool]


@dataclass(frozen=True)
class Invariant:
    """A relation between call inputs and outputs, with an enumerator.

    The enumerator must produce, for any input it is used on, a finite
    sequence containing exactly the outputs that satisfy ``relation``
    within its documented bound.  ``max_outputs`` guards against runaway
    enumerations: exceeding it raises, it never truncates.
    """

    relation: Callable[[Value, Value], bool]
    enumerator: Callable[[Value], Sequence[Value]]
    max_outputs: int | None = None

    def outputs_for(self, call_input: Value) -> tuple[Value, ...]:
        outputs = tuple(self.enumerator(call_input))
        if self.max_outputs is not None and len(outputs) > self.max_outputs:
            raise EnumerationOverflowError(
                f"enumerator produced {len(outputs)} outputs, bound is {self.max_outputs}"
            )
        return outputs


# ---------------------------------------------------------------------------
# The transformers
# ---------------------------------------------------------------------------


def pt_all() -> PredicateTransformer:
    """Demonic nondeterminism: the postcondition must hold on every branch."""

    def transform(command: Command, post: StatefulPost, state: str | None) -> bool:
        if command.kind is CommandKind.FAIL:
            return True
        if command.kind is CommandKind.CHOICE:
            return post(TRUE, state) and post(FALSE, state)
        raise RowError(f"pt_all cannot interpret {command.kind.value}")

    return PredicateTransformer(EffectId.NONDET, transform)


def pt_any() -> PredicateTransformer:
    """Angelic nondeterminism: some branch must satisfy the postcondition."""

    def transform(command: Command, post: StatefulPost, state: str | None) -> bool:
        if command.kind is CommandKind.FAIL:
            return False
        if command.kind is CommandKind.CHOICE:
            return post(TRUE, state) or post(FALSE, state)
        raise RowError(f"pt_any cannot interpret {command.kind.value}")

    return PredicateTransformer(EffectId.NONDET, transform)


def pt_rec(inv: Invariant) -> PredicateTransformer:
    """Interpret recursive calls through an invariant.

    A call on input ``i`` satisfies ``post`` iff ``post`` holds of every
    output the invariant relates to ``i`` — a vacuous truth when the
    relation is empty at ``i``.
    """

    def transform(command: Command, post: StatefulPost, state: str | None) -> bool:
        if command.kind is not CommandKind.CALL:
            raise RowError(f"pt_rec cannot interpret {command.kind.value}")
        return all(post(output, state) for output in inv.outputs_for(command.payload))

    return PredicateTransformer(EffectId.REC, transform)


def pt_parse_strict() -> PredicateTransformer:
    """Strict symbol reads: exhausted input is a dead end (vacuously fine)."""

    def transform(command: Command, post: StatefulPost, state: str | None) -> bool:
        if command.kind is not CommandKind.SYMBOL:
            raise RowError(f"pt_parse_strict cannot interpret {command.kind.value}")
        if state is None:
            raise ValueError("symbol read without a parser state")
        if state == "":
            return True
        return post(Ch(state[0]), state[1:])

    return PredicateTransformer(EffectId.PARSER_STRICT, transform)


def pt_parser_maybe() -> PredicateTransformer:
    """Optional symbol reads: exhausted input responds with unit.

    The optional-character convention throughout this library: ``UNIT``
    means "no character", ``Ch(c)`` means "the character c".
    """

    def transform(command: Command, post: StatefulPost, state: str | None) -> bool:
        if command.kind is not CommandKind.SYMBOL:
            raise RowError(f"pt_parser_maybe cannot interpret {command.kind.value}")
        if state is None:
            raise ValueError("symbol read without a parser state")
        if state == "":
            return post(UNIT, "")
        return post(Ch(state[0]), state[1:])

    return PredicateTransformer(EffectId.PARSER_MAYBE, transform)


# ---------------------------------------------------------------------------
# Weakest preconditions
# ---------------------------------------------------------------------------


def _transformer_for(row: SemanticsRow, op: Op) -> PredicateTransformer:
    if op.index >= len(row.transformers):
        raise RowError(
            f"computation uses effect position {op.index} but the semantics row "
            f"has only {len(row.transformers)} transformers"
        )
    pt = row.transformers[op.index]
    if pt.effect is not op.command.effect:
        raise RowError(
            f"transformer at position {op.index} handles {pt.effect.value}, "
            f"but the command is for {op.command.effect.value}"
        )
    return pt


def _wp(row: SemanticsRow, m: Computation, post: StatefulPost, state: str | None) -> bool:
    if isinstance(m, Pure):
        return post(m.value, state)
    assert isinstance(m, Op)
    pt = _transformer_for(row, m)
    resume = m.resume
    return pt.transform(
        m.command,
        lambda response, next_state: _wp(row, resume(response), post, next_state),
        state,
    )


def wp(row: SemanticsRow, m: Computation, post: Callable[[Value], bool]) -> bool:
    """Weakest precondition of ``post`` for ``m`` under ``row``.

    Pure leaves are judged with ``post``; each op defers to the aligned
    transformer applied to the weakest precondition of its resumption.
    Satisfies the sequencing law
    ``wp(row, bind(m, f), P) == wp(row, m, lambda x: wp(row, f(x), P))``.
    """
    return _wp(row, m, lambda value, _state: post(value), None)


def wp_stateful(
    row: SemanticsRow,
    m: Computation,
    post: StatefulPost,
    state0: str,
) -> bool:
    """Like :func:`wp` but threading a parser state, judged by ``post`` too."""
    return _wp(row, m, post, state0)


def wp_spec(spec: Spec, post: Callable[[Value], bool], candidates: Iterable[Value]) -> bool:
    """Weakest precondition of a specification, over a finite universe.

    True iff ``spec.pre`` holds and ``post`` holds of every candidate
    that ``spec.post`` admits.  The candidate set stands in for the
    unbounded quantification of the abstract definition.
    """
    return spec.pre and all(post(o) for o in candidates if spec.post(o))


# ---------------------------------------------------------------------------
# Result enumeration and refinement
# ---------------------------------------------------------------------------


def results_demonic(
    m: Computation,
    rec_inv: Invariant | None = None,
    state0: str | None = None,
) -> tuple[tuple[Value, str | None], ...]:
    """Every reachable result of ``m``, depth-first, left to right.

    Choices explore their true branch first; recursive calls are expanded
    by enumerating ``rec_inv`` outputs in order; symbol reads consume the
    threaded state, which starts at ``state0``.  Each element pairs a leaf
    value with the state at that leaf (``None`` when no state was given).

    For a row interpreted demonically, ``wp(row, m, P)`` holds exactly when
    ``P`` holds on every value enumerated here; for the angelic reading,
    when it holds on at least one.
    """
    out: list[tuple[Value, str | None]] = []

    def go(node: Computation, state: str | None) -> None:
        if isinstance(node, Pure):
            out.append((node.value, state))
            return
        assert isinstance(node, Op)
        command = node.command
        if command.kind is CommandKind.FAIL:
            return
        if command.kind is CommandKind.CHOICE:
            go(node.resume(TRUE), state)
            go(node.resume(FALSE), state)
            return
        if command.kind is CommandKind.CALL:
            if rec_inv is None:
                raise MissingInvariantError(
                    "computation issues recursive calls; supply rec_inv to enumerate them"
                )
            for output in rec_inv.outputs_for(command.payload):
                go(node.resume(output), state)
            return
        # A symbol read, strict or optional.
        if state is None:
            raise ValueError("computation reads input; supply state0")
        if command.effect is EffectId.PARSER_STRICT:
            if state == "":
                return
            go(node.resume(Ch(state[0])), state[1:])
            return
        if state == "":
            go(node.resume(UNIT), "")
        else:
            go(node.resume(Ch(state[0])), state[1:])

    go(m, state0)
    return tuple(out)


def result_set(results: Iterable[tuple[Value, str | None]]) -> tuple[tuple[Value, str | None], ...]:
    """Deduplicate results, keeping the first occurrence of each."""
    seen: list[tuple[Value, str | None]] = []
    for item in results:
        if item not in seen:
            seen.append(item)
    return tuple(seen)


def refines_all(
    general: Computation,
    specific: Computation,
    rec_inv: Invariant | None = None,
    state0: str | None = None,
) -> bool:
    """Does ``specific`` refine ``general`` under the all-results reading?

    Decided by result sets: every result of ``specific`` must be a result
    of ``general``.  Reflexive and transitive by construction.
    """
    allowed = result_set(results_demonic(general, rec_inv, state0))
    return all(
        item in allowed for item in result_set(results_demonic(specific, rec_inv, state0))
    )


def refines_any(
    general: Computation,
    specific: Computation,
    rec_inv: Invariant | None = None,
    state0: str | None = None,
) -> bool:
    """The dual of :func:`refines_all`: every result of ``general`` survives
    in ``specific``."""
    required = result_set(results_demonic(general, rec_inv, state0))
    available = result_set(results_demonic(specific, rec_inv, state0))
    return all(item in available for item in required)


#: Semantics for the two-effect parser row: all results, strict reads.
PARSER_SEMANTICS = SemanticsRow((pt_all(), pt_parse_strict()))


def in_language(m: Computation, text: str) -> bool:
    """Does ``m`` (over nondeterminism + strict reads) accept ``text``?

    Membership means: run from state ``text``, every surviving parse leaves
    nothing unread.  Dead ends (failed branches, reads past the end) are
    vacuously fine, so a computation with no surviving parses accepts.
    """
    if isinstance(m, Op) and m.row.effects != PARSER_ROW.effects:
        raise RowError(f"in_language expects row {PARSER_ROW.effects}, got {m.row.effects}")
    return wp_stateful(PARSER_SEMANTICS, m, lambda _value, state: state == "", text)
