"""Context-free grammars parsed through the recursion effect.

A grammar is an ordered list of productions.  :func:`from_prods` turns a
nonterminal into a computation that nondeterministically picks one of its
productions and walks the right-hand side, reading terminals with strict
symbol reads and handing nonterminals to the recursion effect; results are
:class:`SemValue` derivation nodes recording which production fired and the
sub-derivations for its nonterminals, in order.

Left recursion makes naive unfolding diverge, so :func:`chain_bound`
analyses the grammar's left-recursion links first: grammars whose link
graph is cyclic are rejected, and for the rest the longest chain yields a
fuel budget — ``(len(input) + 1) * (bound + 1)`` — under which
:func:`parse` provably finishes.  (A left-corner transform would make
cyclic grammars workable; this library just reports them.)

:func:`spec_produce` is the independent oracle: a direct brute-force
enumeration of the derivation relation, against which the effectful parser
is checked.  The grammar file format understood by the command line lives
in :func:`grammar_from_text`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .core import (
    Ch,
    CommandKind,
    Computation,
    EffectId,
    EffectRow,
    ListV,
    NodeV,
    Op,
    PARSER_ROW,
    Pure,
    Str,
    TRUE,
    FALSE,
    UNIT,
    Value,
    bind,
    call,
    choices,
    fail,
    pure,
    symbol_strict,
)
from .handlers import Done, RecursiveFn, TerminationInvariantError, run_with_fuel

__all__ = [
    "CFG_ROW",
    "ChainReport",
    "CyclicGrammarError",
    "GSymbol",
    "Grammar",
    "GrammarError",
    "GrammarSyntaxError",
    "NonTerm",
    "Nonterminal",
    "Production",
    "SemValue",
    "Term",
    "UndefinedNonterminalError",
    "build_parser",
    "chain_bound",
    "check_variant",
    "exact",
    "expanded_parser",
    "filter_lhs",
    "format_sem_value",
    "from_prods",
    "from_prods_fn",
    "grammar_from_text",
    "left_rec_links",
    "parse",
    "parse_fuel",
    "spec_produce",
]


CFG_ROW = EffectRow((EffectId.REC, EffectId.NONDET, EffectId.PARSER_STRICT))


class GrammarError(ValueError):
    """Base class for problems loading or analysing a grammar."""


class GrammarSyntaxError(GrammarError):
    """A grammar file failed to parse; the message names the line."""


class UndefinedNonterminalError(GrammarError):
    """A right-hand side names a nonterminal with no defining production."""


class CyclicGrammarError(GrammarError):
    """The left-recursion link graph has a cycle, so derivations are unbounded."""

    def __init__(self, cycle: tuple["Nonterminal", ...]) -> None:
        path = " -> ".join(nt.name for nt in cycle)
        super().__init__(f"unbounded derivations: left-recursion cycle {path}")
        self.cycle = cycle


# ---------------------------------------------------------------------------
# The grammar model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Nonterminal:
    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("nonterminal names are nonempty")


class GSymbol:
    """A grammar symbol: either a terminal character or a nonterminal."""

    __slots__ = ()


@dataclass(frozen=True)
class Term(GSymbol):
    char: str

    def __post_init__(self) -> None:
        if len(self.char) != 1:
            raise ValueError(f"terminals are single characters, got {self.char!r}")


@dataclass(frozen=True)
class NonTerm(GSymbol):
    nonterminal: Nonterminal


@dataclass(frozen=True)
class Production:
    """One rule: ``lhs`` produces ``rhs``, at position ``index`` in the grammar."""

    lhs: Nonterminal
    rhs: tuple[GSymbol, ...]
    index: int


@dataclass(frozen=True)
class Grammar:
    """An ordered sequence of productions.

    Production indices must equal their positions, and every nonterminal
    used on a right-hand side must have at least one production of its own
    (an undefined name is almost always a typo, and would silently parse
    nothing).
    """

    productions: tuple[Production, ...]

    def __post_init__(self) -> None:
        for position, production in enumerate(self.productions):
            if production.index != position:
                raise GrammarError(
                    f"production {position} carries index {production.index}"
                )
        defined = {p.lhs for p in self.productions}
        for production in self.productions:
            for symbol in production.rhs:
                if isinstance(symbol, NonTerm) and symbol.nonterminal not in defined:
                    raise UndefinedNonterminalError(
                        f"nonterminal {symbol.nonterminal.name!r} is used but never defined"
                    )

    @property
    def nonterminals(self) -> frozenset[Nonterminal]:
        return frozenset(p.lhs for p in self.productions)


@dataclass(frozen=True)
class SemValue:
    """A derivation node: which nonterminal, which production, which children.

    Children line up, in order, with the nonterminal symbols of the
    production's right-hand side; terminals contribute no child.
    """

    nt: Nonterminal
    production: int
    children: tuple["SemValue", ...]


@dataclass(frozen=True)
class ChainReport:
    """Left-recursion analysis: the links, and a chain-length bound if any.

    ``links`` holds (from, to, witness production index) triples; ``bound``
    is the least number strictly greater than every chain length, present
    exactly when the link graph is acyclic; ``cycle`` names a witness cycle
    otherwise (first nonterminal repeated at the end).
    """

    links: tuple[tuple[Nonterminal, Nonterminal, int], ...]
    bound: int | None
    cyclic: bool
    cycle: tuple[Nonterminal, ...] | None = None

    def __post_init__(self) -> None:
        if (self.bound is None) != self.cyclic:
            raise ValueError("bound must be absent exactly when cyclic")


def format_sem_value(value: SemValue) -> str:
    """Render a derivation node as an s-expression, children nested."""
    inner = f"node {value.nt.name} {value.production}"
    for child in value.children:
        inner += " " + format_sem_value(child)
    return f"({inner})"


# ---------------------------------------------------------------------------
# The effectful parser
# ---------------------------------------------------------------------------


def filter_lhs(g: Grammar, a: Nonterminal) -> tuple[Production, ...]:
    """The productions for ``a``, in grammar order."""
    return tuple(p for p in g.productions if p.lhs == a)


def exact(c: str, row: EffectRow = CFG_ROW) -> Computation:
    """Consume exactly the character ``c``; any other next character fails."""
    return bind(
        symbol_strict(row),
        lambda response: pure(UNIT) if response == Ch(c) else fail(row),
    )


def build_parser(
    g: Grammar,
    rhs: tuple[GSymbol, ...],
    acc: tuple[Value, ...] = (),
) -> Computation:
    """Walk a right-hand side, collecting one child value per nonterminal.

    Terminals are consumed and contribute nothing; nonterminals go through
    the recursion effect, whose response is the child's derivation value.
    Delivers the accumulated children as a list value.
    """
    if not rhs:
        return pure(ListV(acc))
    head, rest = rhs[0], rhs[1:]
    if isinstance(head, Term):
        return bind(exact(head.char), lambda _: build_parser(g, rest, acc))
    assert isinstance(head, NonTerm)
    return bind(
        call(CFG_ROW, Str(head.nonterminal.name)),
        lambda child: build_parser(g, rest, acc + (child,)),
    )


def _node_of(value: Value) -> SemValue:
    if not isinstance(value, NodeV):
        raise TypeError(f"expected a derivation node value, got {value!r}")
    return value.node


def _from_prod(g: Grammar, production: Production) -> Computation:
    def deliver(children_value: Value) -> Computation:
        assert isinstance(children_value, ListV)
        children = tuple(_node_of(child) for child in children_value.items)
        return pure(NodeV(SemValue(production.lhs, production.index, children)))

    return bind(build_parser(g, production.rhs, ()), deliver)


def from_prods(g: Grammar, a: Nonterminal) -> Computation:
    """Parse ``a``: choose one of its productions and walk it.

    A nonterminal with no productions parses nothing.
    """
    return choices([_from_prod(g, p) for p in filter_lhs(g, a)], CFG_ROW)


def from_prods_fn(g: Grammar) -> RecursiveFn:
    """The grammar's parser as a recursive function on nonterminal names."""

    def body(value: Value) -> Computation:
        if not isinstance(value, Str):
            raise TypeError(f"call inputs are nonterminal names, got {value!r}")
        return from_prods(g, Nonterminal(value.text))

    return RecursiveFn(CFG_ROW, body)


# ---------------------------------------------------------------------------
# The derivation oracle
# ---------------------------------------------------------------------------


def spec_produce(g: Grammar, a: Nonterminal, text: str) -> tuple[tuple[SemValue, str], ...]:
    """All derivations of ``a`` on a prefix of ``text``, with remainders.

    A direct enumeration of the derivation relation, independent of the
    effect machinery: for each production in order, walk its right-hand
    side over every way the nonterminals can consume input.  Requires an
    acyclic left-recursion graph; the derivation depth is capped by the
    proven fuel bound, so running into the cap means the bound's proof is
    broken, not that the input is large.
    """
    report = chain_bound(g)
    if report.cyclic:
        assert report.cycle is not None
        raise CyclicGrammarError(report.cycle)
    assert report.bound is not None
    cap = parse_fuel(len(text), report.bound)
    produced: dict[tuple[Nonterminal, str, int], tuple[tuple[SemValue, str], ...]] = {}

    def produce(nt: Nonterminal, s: str, depth: int) -> tuple[tuple[SemValue, str], ...]:
        if depth == 0:
            raise RuntimeError(
                "derivation depth exceeded the proven bound; chain analysis is inconsistent"
            )
        key = (nt, s, depth)
        if key in produced:
            return produced[key]
        out: list[tuple[SemValue, str]] = []
        for production in filter_lhs(g, nt):
            for children, remainder in walk(production.rhs, s, depth):
                out.append((SemValue(nt, production.index, children), remainder))
        produced[key] = tuple(out)
        return produced[key]

    def walk(
        rhs: tuple[GSymbol, ...], s: str, depth: int
    ) -> tuple[tuple[tuple[SemValue, ...], str], ...]:
        if not rhs:
            return (((), s),)
        head, rest = rhs[0], rhs[1:]
        if isinstance(head, Term):
            if s.startswith(head.char):
                return walk(rest, s[1:], depth)
            return ()
        assert isinstance(head, NonTerm)
        out: list[tuple[tuple[SemValue, ...], str]] = []
        for child, remainder in produce(head.nonterminal, s, depth - 1):
            for children, final in walk(rest, remainder, depth):
                out.append(((child,) + children, final))
        return tuple(out)

    return produce(a, text, cap)


# ---------------------------------------------------------------------------
# Left-recursion chains
# ---------------------------------------------------------------------------


def left_rec_links(g: Grammar) -> tuple[tuple[Nonterminal, Nonterminal, int], ...]:
    """The left-recursion links: lhs to each leading-run nonterminal.

    A production whose right-hand side starts with nonterminals can reach
    any of them without consuming input first, so each nonterminal in that
    maximal leading run gets a link from the production's left-hand side,
    witnessed by the production's index.  Duplicate triples are dropped.
    """
    links: list[tuple[Nonterminal, Nonterminal, int]] = []
    for production in g.productions:
        for symbol in production.rhs:
            if not isinstance(symbol, NonTerm):
                break
            link = (production.lhs, symbol.nonterminal, production.index)
            if link not in links:
                links.append(link)
    return tuple(links)


def chain_bound(g: Grammar) -> ChainReport:
    """Analyse the link graph: a cycle witness, or a bound on chain lengths.

    The bound is one more than the longest path in the (acyclic) graph —
    every chain of links is strictly shorter than it.
    """
    links = left_rec_links(g)
    successors: dict[Nonterminal, list[Nonterminal]] = {}
    for source, target, _ in links:
        successors.setdefault(source, []).append(target)

    # Depth-first search with an explicit color map: find a cycle if any,
    # otherwise the longest path from each node.
    visiting: list[Nonterminal] = []
    state: dict[Nonterminal, str] = {}
    longest: dict[Nonterminal, int] = {}

    def explore(node: Nonterminal) -> tuple[Nonterminal, ...] | None:
        state[node] = "visiting"
        visiting.append(node)
        best = 0
        for target in successors.get(node, ()):
            if state.get(target) == "visiting":
                start = visiting.index(target)
                return tuple(visiting[start:]) + (target,)
            if state.get(target) != "done":
                cycle = explore(target)
                if cycle is not None:
                    return cycle
            best = max(best, 1 + longest[target])
        visiting.pop()
        state[node] = "done"
        longest[node] = best
        return None

    for node in sorted({source for source, _, _ in links}, key=lambda nt: nt.name):
        if state.get(node) != "done":
            cycle = explore(node)
            if cycle is not None:
                return ChainReport(links, None, True, cycle)
    bound = 1 + max(longest.values(), default=0)
    return ChainReport(links, bound, False)


def parse_fuel(input_length: int, bound: int) -> int:
    """The fuel budget that provably suffices: ``(length + 1) * (bound + 1)``.

    Between consuming two characters the parser can take at most ``bound``
    recursion steps that stay on the same input (each a left-recursion
    link, and chains are shorter than ``bound``), so charging ``bound + 1``
    per input position plus one closing segment covers every path.
    """
    return (input_length + 1) * (bound + 1)


# ---------------------------------------------------------------------------
# Parsing with fuel
# ---------------------------------------------------------------------------


def parse(g: Grammar, a: Nonterminal, text: str) -> tuple[tuple[SemValue, str], ...]:
    """All parses of a prefix of ``text`` as ``a``, with their remainders.

    Rejects grammars with cyclic left recursion up front; otherwise runs
    the effectful parser with the proven fuel budget.  Running out of fuel
    is therefore not an input condition but a broken invariant, and raises.
    """
    report = chain_bound(g)
    if report.cyclic:
        assert report.cycle is not None
        raise CyclicGrammarError(report.cycle)
    assert report.bound is not None
    outcome = run_with_fuel(
        from_prods_fn(g),
        Str(a.name),
        parse_fuel(len(text), report.bound),
        state0=text,
    )
    if not isinstance(outcome, Done):
        raise TerminationInvariantError(
            "grammar parsing ran out of fuel despite an acyclic chain analysis"
        )
    results: list[tuple[SemValue, str]] = []
    for value, state in outcome.results:
        assert state is not None
        results.append((_node_of(value), state))
    return tuple(results)


def expanded_parser(g: Grammar, a: Nonterminal, depth: int) -> Computation:
    """Unfold the parser for ``a`` into a recursion-free computation.

    Recursive calls are substituted ``depth`` deep; any call past the
    budget becomes a dead branch.  With depth at least the parse fuel for
    the inputs of interest, the result behaves exactly like :func:`parse`
    under the two-effect parser row — useful for language-membership
    reasoning, which wants computations without recursion.
    """

    def expand(m: Computation, remaining: int) -> Computation:
        if isinstance(m, Pure):
            return m
        assert isinstance(m, Op)
        resume = m.resume
        if m.command.kind is CommandKind.CALL:
            if remaining == 0:
                return fail(PARSER_ROW)
            payload = m.command.payload
            assert isinstance(payload, Str)
            unfolded = bind(from_prods(g, Nonterminal(payload.text)), resume)
            return expand(unfolded, remaining - 1)
        return Op(
            PARSER_ROW,
            m.index - 1,
            m.command,
            lambda response: expand(resume(response), remaining),
        )

    return expand(from_prods(g, a), depth)


# ---------------------------------------------------------------------------
# The recursion variant, instrumented
# ---------------------------------------------------------------------------


def check_variant(g: Grammar, samples: Iterable[tuple[Nonterminal, str]]) -> bool:
    """Check the termination measure on every call edge of sampled runs.

    From a state (nonterminal, input), each recursive call must either
    strictly shrink the input, or keep its length while following a
    left-recursion link from the caller.  Call results are supplied by the
    derivation oracle so exploration continues past each call without
    re-descending into it; visited states are explored once.
    """
    report = chain_bound(g)
    link_pairs = {(source, target) for source, target, _ in report.links}
    seen: set[tuple[Nonterminal, str]] = set()
    queue: list[tuple[Nonterminal, str]] = list(samples)
    ok = True

    def walk(m: Computation, state: str, caller: Nonterminal, start: str) -> bool:
        if isinstance(m, Pure):
            return True
        assert isinstance(m, Op)
        command = m.command
        if command.kind is CommandKind.FAIL:
            return True
        if command.kind is CommandKind.CHOICE:
            return walk(m.resume(TRUE), state, caller, start) and walk(
                m.resume(FALSE), state, caller, start
            )
        if command.kind is CommandKind.SYMBOL:
            if state == "":
                return True
            return walk(m.resume(Ch(state[0])), state[1:], caller, start)
        assert command.kind is CommandKind.CALL
        payload = command.payload
        assert isinstance(payload, Str)
        callee = Nonterminal(payload.text)
        shrinks = len(state) < len(start)
        linked = (caller, callee) in link_pairs and len(state) <= len(start)
        if not (shrinks or linked):
            return False
        queue.append((callee, state))
        good = True
        for child, remainder in spec_produce(g, callee, state):
            good = good and walk(m.resume(NodeV(child)), remainder, caller, start)
        return good

    while queue:
        entry = queue.pop(0)
        if entry in seen:
            continue
        seen.add(entry)
        nt, text = entry
        ok = ok and walk(from_prods(g, nt), text, nt, text)
    return ok


# ---------------------------------------------------------------------------
# The grammar file format
# ---------------------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TERM_ESCAPES = {"'": "'", "\\": "\\", "n": "\n", "t": "\t"}


def _strip_comment(line: str) -> str:
    in_quote = False
    i = 0
    while i < len(line):
        c = line[i]
        if c == "#" and not in_quote:
            return line[:i]
        if c == "'":
            in_quote = not in_quote
        elif c == "\\" and in_quote:
            i += 1
        i += 1
    return line


def _tokenize(line: str, lineno: int) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    i = 0
    while i < len(line):
        c = line[i]
        if c in " \t":
            i += 1
            continue
        if line.startswith("->", i):
            tokens.append(("arrow", "->"))
            i += 2
            continue
        if c == "|":
            tokens.append(("pipe", "|"))
            i += 1
            continue
        if c == "'":
            i += 1
            if i >= len(line):
                raise GrammarSyntaxError(f"line {lineno}: unterminated terminal")
            if line[i] == "\\":
                i += 1
                if i >= len(line) or line[i] not in _TERM_ESCAPES:
                    raise GrammarSyntaxError(f"line {lineno}: unknown escape in terminal")
                char = _TERM_ESCAPES[line[i]]
            else:
                char = line[i]
            i += 1
            if i >= len(line) or line[i] != "'":
                raise GrammarSyntaxError(f"line {lineno}: terminals hold exactly one character")
            i += 1
            tokens.append(("term", char))
            continue
        match = _IDENT.match(line, i)
        if match:
            tokens.append(("ident", match.group()))
            i = match.end()
            continue
        raise GrammarSyntaxError(f"line {lineno}: unexpected character {c!r}")
    return tokens


def grammar_from_text(text: str) -> Grammar:
    """Load a grammar from its textual format.

    Each rule line reads ``Lhs -> item item …`` where items are nonterminal
    identifiers or single-quoted terminal characters (``\\'``, ``\\\\``,
    ``\\n``, ``\\t`` escapes); an empty item list derives the empty string.
    ``|`` separates alternative right-hand sides for the same left-hand
    side, ``#`` starts a comment, and blank lines are skipped.  Production
    indices follow file order.
    """
    productions: list[Production] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = _tokenize(_strip_comment(raw), lineno)
        if not tokens:
            continue
        if tokens[0][0] != "ident" or len(tokens) < 2 or tokens[1][0] != "arrow":
            raise GrammarSyntaxError(f"line {lineno}: expected 'Name -> …'")
        lhs = Nonterminal(tokens[0][1])
        alternatives: list[list[tuple[str, str]]] = [[]]
        for token in tokens[2:]:
            if token[0] == "pipe":
                alternatives.append([])
            elif token[0] == "arrow":
                raise GrammarSyntaxError(f"line {lineno}: unexpected '->'")
            else:
                alternatives[-1].append(token)
        for items in alternatives:
            rhs: list[GSymbol] = []
            for kind, payload in items:
                if kind == "term":
                    rhs.append(Term(payload))
                else:
                    rhs.append(NonTerm(Nonterminal(payload)))
            productions.append(Production(lhs, tuple(rhs), len(productions)))
    return Grammar(tuple(productions))
