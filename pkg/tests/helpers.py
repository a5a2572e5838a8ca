"""Shared fixtures: the bundled hypersurface complex and common rings."""

from functools import lru_cache
from importlib.resources import files

from serremult.cli import Command, Interpreter, parse_program


def levine_source() -> str:
    return (files("serremult") / "corpus" / "levine.sm").read_text()


@lru_cache(maxsize=None)
def levine():
    """(ring A, complex L, interpreter) from the bundled levine.sm declarations."""
    it = Interpreter()
    for s in parse_program(levine_source()).statements:
        if not isinstance(s, Command):
            it.declare(s)
    return it.rings["A"], it.complexes["L"], it


# criterion number -> (title, "PASS" | "FAIL"), filled by the acceptance suite
ACCEPTANCE = {}
