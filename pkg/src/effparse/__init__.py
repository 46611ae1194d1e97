"""Effect-tree parsing toolkit.

Programs are built as free computations over rows of effects
(:mod:`effparse.core`), given meaning either by predicate transformers
(:mod:`effparse.semantics`) or by handlers and fuel-bounded evaluation
(:mod:`effparse.handlers`), and put to work in two parsing engines: regular
expressions with parse-tree witnesses (:mod:`effparse.regex`) and
context-free grammars with left-recursion analysis (:mod:`effparse.cfg`).
The ``effparse`` command line fronts the engines (:mod:`effparse.cli`).
"""

from . import cfg, cli, core, handlers, regex, semantics

__all__ = ["cfg", "cli", "core", "handlers", "regex", "semantics"]
__version__ = "0.1.0"
