"""Construction rules and monad laws for the computation trees."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from effparse.core import (
    FALSE,
    NONDET_ROW,
    PARSER_ROW,
    TRUE,
    UNIT,
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
    admissible_responses,
    bind,
    call,
    choice,
    choices,
    fail,
    fmap,
    pure,
    symbol_maybe,
    symbol_strict,
)
from effparse.semantics import results_demonic

from helpers import CONTINUATIONS, VALUE_MAPS, random_nondet


def observed(m: Computation) -> tuple:
    """Observational content of a nondeterminism computation."""
    return results_demonic(m)


# ---------------------------------------------------------------------------
# Values and commands
# ---------------------------------------------------------------------------


def test_ch_holds_exactly_one_character() -> None:
    assert Ch("a").char == "a"
    with pytest.raises(ValueError):
        Ch("ab")
    with pytest.raises(ValueError):
        Ch("")


def test_command_kind_must_belong_to_effect() -> None:
    Command(EffectId.NONDET, CommandKind.CHOICE)
    Command(EffectId.NONDET, CommandKind.FAIL)
    Command(EffectId.PARSER_STRICT, CommandKind.SYMBOL)
    Command(EffectId.REC, CommandKind.CALL, Str("x"))
    with pytest.raises(ValueError):
        Command(EffectId.NONDET, CommandKind.SYMBOL)
    with pytest.raises(ValueError):
        Command(EffectId.REC, CommandKind.CHOICE)


def test_only_calls_carry_payloads() -> None:
    with pytest.raises(ValueError):
        Command(EffectId.NONDET, CommandKind.CHOICE, Str("x"))
    assert Command(EffectId.REC, CommandKind.CALL, Str("x")).payload == Str("x")


def test_admissible_responses() -> None:
    assert admissible_responses(Command(EffectId.NONDET, CommandKind.CHOICE)) == (TRUE, FALSE)
    assert admissible_responses(Command(EffectId.NONDET, CommandKind.FAIL)) == ()
    assert admissible_responses(Command(EffectId.PARSER_STRICT, CommandKind.SYMBOL)) is None
    assert admissible_responses(Command(EffectId.REC, CommandKind.CALL, UNIT)) is None


# ---------------------------------------------------------------------------
# Rows and operation nodes
# ---------------------------------------------------------------------------


def test_rows_reject_duplicate_effects() -> None:
    with pytest.raises(RowError):
        EffectRow((EffectId.NONDET, EffectId.NONDET))


def test_index_of_names_missing_effects() -> None:
    assert PARSER_ROW.index_of(EffectId.PARSER_STRICT) == 1
    with pytest.raises(RowError):
        NONDET_ROW.index_of(EffectId.REC)


def test_op_index_must_align_with_command_effect() -> None:
    cmd = Command(EffectId.PARSER_STRICT, CommandKind.SYMBOL)
    Op(PARSER_ROW, 1, cmd, Pure)
    with pytest.raises(RowError):
        Op(PARSER_ROW, 0, cmd, Pure)
    with pytest.raises(RowError):
        Op(PARSER_ROW, 2, cmd, Pure)


def test_ops_compare_by_identity() -> None:
    a, b = fail(), fail()
    assert a == a
    assert a != b


# ---------------------------------------------------------------------------
# Smart constructors
# ---------------------------------------------------------------------------


def test_choice_infers_row_from_either_branch() -> None:
    assert choice(pure(UNIT), pure(UNIT)).row == NONDET_ROW
    assert choice(fail(PARSER_ROW), pure(UNIT)).row == PARSER_ROW
    assert choice(pure(UNIT), fail(PARSER_ROW)).row == PARSER_ROW
    assert choice(pure(UNIT), pure(UNIT), PARSER_ROW).row == PARSER_ROW


def test_choice_resumes_true_left_false_right() -> None:
    m = choice(pure(Ch("l")), pure(Ch("r")))
    assert m.resume(TRUE) == Pure(Ch("l"))
    assert m.resume(FALSE) == Pure(Ch("r"))


def test_choices_of_nothing_is_fail() -> None:
    m = choices([])
    assert isinstance(m, Op)
    assert m.command.kind is CommandKind.FAIL


def test_choices_preserves_branch_order() -> None:
    m = choices([pure(Ch(c)) for c in "abc"])
    assert observed(m) == ((Ch("a"), None), (Ch("b"), None), (Ch("c"), None))


def test_symbol_and_call_constructors_pick_their_row_slot() -> None:
    row = EffectRow((EffectId.REC, EffectId.PARSER_MAYBE, EffectId.NONDET))
    assert symbol_maybe(row).index == 1
    assert call(row, Str("f")).index == 0
    assert call(row, Str("f")).command.payload == Str("f")
    assert symbol_strict(PARSER_ROW).index == 1
    with pytest.raises(RowError):
        symbol_strict(NONDET_ROW)


# ---------------------------------------------------------------------------
# Monad laws, observationally
# ---------------------------------------------------------------------------


def test_bind_left_identity() -> None:
    for k in CONTINUATIONS:
        for v in (UNIT, Ch("a"), Str("xy")):
            assert observed(bind(pure(v), k)) == observed(k(v))


def test_bind_right_identity() -> None:
    rng = random.Random(7)
    for _ in range(50):
        m = random_nondet(rng, rng.randrange(1, 8))
        assert observed(bind(m, pure)) == observed(m)


def test_bind_associativity() -> None:
    rng = random.Random(11)
    for round_number in range(50):
        m = random_nondet(rng, rng.randrange(1, 8))
        f = CONTINUATIONS[round_number % len(CONTINUATIONS)]
        g = CONTINUATIONS[(round_number + 2) % len(CONTINUATIONS)]
        lhs = bind(bind(m, f), g)
        rhs = bind(m, lambda v: bind(f(v), g))
        assert observed(lhs) == observed(rhs)


def test_fmap_is_bind_then_pure() -> None:
    rng = random.Random(13)
    for round_number in range(30):
        m = random_nondet(rng, rng.randrange(1, 8))
        g = VALUE_MAPS[round_number % len(VALUE_MAPS)]
        assert observed(fmap(g, m)) == observed(bind(m, lambda v: pure(g(v))))


def test_bind_grafts_lazily_under_ops() -> None:
    # Binding onto an op node must not invoke the continuation eagerly.
    calls: list[str] = []

    def k(v):
        calls.append("hit")
        return pure(v)

    m = bind(choice(pure(UNIT), fail()), k)
    assert calls == []
    assert observed(m) == ((UNIT, None),)
    assert calls == ["hit"]


@given(st.lists(st.sampled_from("ab"), max_size=6))
def test_choices_results_mirror_the_branch_list(chars: list[str]) -> None:
    m = choices([pure(Ch(c)) for c in chars])
    assert observed(m) == tuple((Ch(c), None) for c in chars)


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 9))
def test_bind_right_identity_generated(seed: int, size: int) -> None:
    m = random_nondet(random.Random(seed), size)
    assert observed(bind(m, pure)) == observed(m)
