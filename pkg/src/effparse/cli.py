"""Command-line front end: match, derive, cfg-check, cfg-parse.

Batch commands with deterministic, byte-stable output: results go to
stdout one per line, diagnostics to stderr.  Exit codes are uniform across
commands: 0 when results were found (or the check passed), 1 when there
were none (or the grammar was rejected), 2 for syntax or usage errors, and
3 when a fuel budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .cfg import (
    Grammar,
    GrammarError,
    Nonterminal,
    SemValue,
    chain_bound,
    format_sem_value,
    from_prods_fn,
    grammar_from_text,
    parse as cfg_parse,
)
from .core import Str
from .handlers import Done, TerminationInvariantError, run_with_fuel
from .regex import (
    ParseTree,
    RegexSyntaxError,
    CharT,
    LeftT,
    ListT,
    PairT,
    RightT,
    UnitT,
    derivative,
    dmatch_run,
    format_regex,
    format_tree,
    has_no_star,
    match_fn,
    match_input,
    nullable,
    parse_regex,
)

__all__ = ["CliConfig", "cmd_cfg_check", "cmd_cfg_parse", "cmd_derive", "cmd_match", "main"]


@dataclass(frozen=True)
class CliConfig:
    """Flags shared by the result-producing commands."""

    fuel: int | None = None
    engine: str = "derivative"
    format: str = "sexpr"
    max_results: int | None = None


def _tree_obj(t: ParseTree) -> object:
    if isinstance(t, UnitT):
        return "unit"
    if isinstance(t, CharT):
        return ["char", t.char]
    if isinstance(t, LeftT):
        return ["inl", _tree_obj(t.item)]
    if isinstance(t, RightT):
        return ["inr", _tree_obj(t.item)]
    if isinstance(t, PairT):
        return ["pair", _tree_obj(t.first), _tree_obj(t.second)]
    assert isinstance(t, ListT)
    return ["list"] + [_tree_obj(item) for item in t.items]


def _node_obj(v: SemValue) -> object:
    return ["node", v.nt.name, v.production] + [_node_obj(child) for child in v.children]


def _emit_results(lines: list[str], config: CliConfig) -> int:
    total = len(lines)
    shown = lines
    if config.max_results is not None and total > config.max_results:
        shown = lines[: config.max_results]
        print(f"{total} results, showing {len(shown)}", file=sys.stderr)
    for line in shown:
        print(line)
    return 0 if total else 1


def cmd_match(pattern: str, text: str, config: CliConfig) -> int:
    """Print one parse-tree witness per line for ``text`` against ``pattern``."""
    try:
        r = parse_regex(pattern)
    except RegexSyntaxError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    if config.engine == "structural":
        if not has_no_star(r) and config.fuel is None:
            print(
                "error: the structural engine needs --fuel for patterns with '*'",
                file=sys.stderr,
            )
            return 2
        fuel = config.fuel if config.fuel is not None else 0
        outcome = run_with_fuel(match_fn(), match_input(r, text), fuel)
        if not isinstance(outcome, Done):
            print("error: fuel exhausted", file=sys.stderr)
            return 3
        trees = [value.tree for value, _state in outcome.results]  # type: ignore[union-attr]
    else:
        trees = list(dmatch_run(r, text))
    unique = list(dict.fromkeys(trees))
    if config.format == "json-lines":
        lines = [json.dumps(_tree_obj(t), separators=(",", ":")) for t in unique]
    else:
        lines = [format_tree(t) for t in unique]
    return _emit_results(lines, config)


def cmd_derive(pattern: str, text: str) -> int:
    """Print the derivative chain of ``pattern`` along ``text``, then nullability."""
    try:
        r = parse_regex(pattern)
    except RegexSyntaxError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    print(format_regex(r))
    for c in text:
        r = derivative(r, c)
        print(format_regex(r))
    print(f"nullable: {'yes' if nullable(r) is not None else 'no'}")
    return 0


def _load_grammar(path: str) -> Grammar | int:
    try:
        with open(path, encoding="utf-8") as handle:
            source = handle.read()
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    try:
        return grammar_from_text(source)
    except GrammarError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2


def _cycle_text(cycle: tuple[Nonterminal, ...]) -> str:
    return " -> ".join(nt.name for nt in cycle)


def cmd_cfg_check(path: str) -> int:
    """Report the grammar's left-recursion links and chain bound (or cycle)."""
    grammar = _load_grammar(path)
    if isinstance(grammar, int):
        return grammar
    report = chain_bound(grammar)
    for source, target, index in report.links:
        print(f"link: {source.name} -> {target.name} (production {index})")
    if report.cyclic:
        assert report.cycle is not None
        print(f"cyclic: {_cycle_text(report.cycle)}")
        return 1
    print(f"bound: {report.bound}")
    return 0


def cmd_cfg_parse(path: str, start: str, text: str, config: CliConfig) -> int:
    """Print one derivation per full parse of ``text`` from ``start``."""
    grammar = _load_grammar(path)
    if isinstance(grammar, int):
        return grammar
    start_nt = Nonterminal(start)
    if config.fuel is not None:
        outcome = run_with_fuel(from_prods_fn(grammar), Str(start), config.fuel, state0=text)
        if not isinstance(outcome, Done):
            print("error: fuel exhausted", file=sys.stderr)
            return 3
        results = [
            (value.node, state)  # type: ignore[union-attr]
            for value, state in outcome.results
        ]
    else:
        report = chain_bound(grammar)
        if report.cyclic:
            assert report.cycle is not None
            print(f"cyclic: {_cycle_text(report.cycle)}", file=sys.stderr)
            return 1
        try:
            results = list(cfg_parse(grammar, start_nt, text))
        except TerminationInvariantError as error:
            print(f"error: {error}", file=sys.stderr)
            return 3
    full = list(dict.fromkeys(node for node, remainder in results if remainder == ""))
    if config.format == "json-lines":
        lines = [json.dumps(_node_obj(node), separators=(",", ":")) for node in full]
    else:
        lines = [format_sem_value(node) for node in full]
    return _emit_results(lines, config)


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from error
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="effparse",
        description="Regex and CFG parsing with parse-tree witnesses.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    match_p = commands.add_parser("match", help="match a string against a regex")
    match_p.add_argument("pattern", help="regex in the concrete syntax")
    match_p.add_argument("input", help="string to match")
    match_p.add_argument("--engine", choices=["structural", "derivative"], default="derivative")
    match_p.add_argument("--fuel", type=_natural, default=None, help="recursion budget")
    match_p.add_argument("--format", choices=["sexpr", "json-lines"], default="sexpr")
    match_p.add_argument("--max-results", type=_natural, default=None)

    derive_p = commands.add_parser("derive", help="show a derivative chain")
    derive_p.add_argument("pattern")
    derive_p.add_argument("input")

    check_p = commands.add_parser("cfg-check", help="analyse a grammar's left recursion")
    check_p.add_argument("grammar", help="path to a grammar file")

    parse_p = commands.add_parser("cfg-parse", help="parse a string with a grammar")
    parse_p.add_argument("grammar", help="path to a grammar file")
    parse_p.add_argument("start", help="start nonterminal")
    parse_p.add_argument("input", help="string to parse")
    parse_p.add_argument("--fuel", type=_natural, default=None, help="recursion budget override")
    parse_p.add_argument("--format", choices=["sexpr", "json-lines"], default="sexpr")
    parse_p.add_argument("--max-results", type=_natural, default=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exit_request:
        code = exit_request.code
        return code if isinstance(code, int) else 2
    if args.command == "match":
        config = CliConfig(args.fuel, args.engine, args.format, args.max_results)
        return cmd_match(args.pattern, args.input, config)
    if args.command == "derive":
        return cmd_derive(args.pattern, args.input)
    if args.command == "cfg-check":
        return cmd_cfg_check(args.grammar)
    assert args.command == "cfg-parse"
    config = CliConfig(args.fuel, "derivative", args.format, args.max_results)
    return cmd_cfg_parse(args.grammar, args.start, args.input, config)


if __name__ == "__main__":
    sys.exit(main())
