"""Command-line front end: a small declarative language, a bundled corpus, batch runs.

Example program::

    ring S = QQ[x,y,z,w] grevlex;
    module M = S/(x*z, x*w, y*z, y*w);
    verify(M, S/(x-z, y-w));
"""

from __future__ import annotations

import argparse
import fnmatch
import json
import random
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import yaml

from . import groebner, resolution
from .errors import ParseError, ResourceLimitExceeded, SerreMultError
from .exactnum import GF, QQ
from .fpmodule import FPModule, hilbert_data, krull_dim, length
from .homology import ext_profile, tor
from .multiplicity import (
    chi, chi_higher, diagonal_reduction_check, hilbert_samuel, koszul_euler, theta,
    verify_serre_pair, xi,
)
from .polyring import polynomial_ring, quotient_ring
from .resolution import (
    check_d_squared, complex_from_matrices, detect_periodicity, equivalent_resolutions,
    exactness_audit, free_resolution,
)

COMMANDS = ("chi", "xi", "chi_i", "tor", "ext", "resolve", "betti", "dim", "length", "hilbert",
            "e", "koszul_e", "theta", "verify", "diagonal_check", "compare", "periodicity")
KEYWORDS = ("ring", "ideal", "module", "map", "complex", "use")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


# -- AST ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class RingDecl:
    name: str
    field: str
    variables: tuple
    order: str | None
    relations: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IdealDecl:
    name: str
    gens: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Coker:
    rows: tuple
    shifts: tuple | None


@dataclass(frozen=True)
class RingQuotient:
    ring: str
    ideal: str | tuple  # ideal name or literal generators


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class IdealLit:
    gens: tuple


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    expr: object
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MapDecl:
    name: str
    rows: tuple
    shifts: tuple | None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ComplexDecl:
    name: str
    maps: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class UseDecl:
    name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    line: int = field(default=0, compare=False)


@dataclass
class Session:
    statements: list
    field: str | None = None
    order: str | None = None
    max_steps: int | None = None
    max_len: int | None = None

    def declared(self, kind) -> list:
        cls = {"ring": RingDecl, "ideal": IdealDecl, "module": ModuleDecl,
               "map": MapDecl, "complex": ComplexDecl}[kind]
        return [s.name for s in self.statements if isinstance(s, cls)]

    @property
    def commands(self) -> list:
        return [s for s in self.statements if isinstance(s, Command)]

    def __eq__(self, other):
        return isinstance(other, Session) and self.statements == other.statements


# -- parser -------------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.kinds = {}

    # positions and low-level scanning

    def loc(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, msg, pos=None):
        line, col = self.loc(pos)
        raise ParseError(msg, line, col)

    def skip(self):
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c.isspace():
                self.pos += 1
            elif c == "#" or t.startswith("//", self.pos):
                nl = t.find("\n", self.pos)
                self.pos = len(t) if nl < 0 else nl + 1
            else:
                break

    def peek(self, s=None):
        self.skip()
        if s is None:
            return self.text[self.pos:self.pos + 1]
        return self.text.startswith(s, self.pos)

    def expect(self, s):
        self.skip()
        if not self.text.startswith(s, self.pos):
            got = self.text[self.pos:self.pos + 1] or "end of input"
            self.fail(f"expected '{s}', got '{got}'")
        self.pos += len(s)

    def accept(self, s) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def ident(self, what="name") -> str:
        self.skip()
        t = self.text
        start = self.pos
        if start < len(t) and (t[start].isalpha() or t[start] == "_"):
            end = start + 1
            while end < len(t) and (t[end].isalnum() or t[end] == "_"):
                end += 1
            self.pos = end
            return t[start:end]
        self.fail(f"expected {what}")

    def peek_ident(self):
        save = self.pos
        try:
            return self.ident()
        except ParseError:
            return None
        finally:
            self.pos = save

    def integer(self) -> int:
        self.skip()
        t = self.text
        start = self.pos
        if self.pos < len(t) and t[self.pos] == "-":
            self.pos += 1
        while self.pos < len(t) and t[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or t[start:self.pos] == "-":
            self.fail("expected integer", start)
        return int(t[start:self.pos])

    def poly_text(self) -> str:
        """Raw polynomial text up to a top-level ',' ']' ')' or ';'."""
        self.skip()
        t = self.text
        start = self.pos
        depth = 0
        while self.pos < len(t):
            c = t[self.pos]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    break
                depth -= 1
            elif c in ",];" and depth == 0:
                break
            elif c == "[":
                self.fail("unexpected '['")
            self.pos += 1
        text = "".join(t[start:self.pos].split())
        if not text:
            self.fail("expected polynomial", start)
        return text

    # grammar

    def program(self) -> Session:
        stmts = []
        while True:
            self.skip()
            if self.pos >= len(self.text):
                break
            stmts.append(self.statement())
            self.expect(";")
        return Session(stmts)

    def declare(self, kind, name, pos):
        if (kind, name) in self.kinds:
            self.fail(f"{kind} '{name}' declared twice", pos)
        self.kinds[(kind, name)] = True

    def known(self, name, kinds=None):
        kinds = kinds or ("ring", "ideal", "module", "map", "complex")
        return any((k, name) in self.kinds for k in kinds)

    def statement(self):
        self.skip()
        start = self.pos
        line, _ = self.loc()
        word = self.ident("statement")
        if word in KEYWORDS:
            name_pos = self.pos
            if word == "use":
                name = self.ident("ring name")
                if not self.known(name, ("ring",)):
                    self.fail(f"unknown ring '{name}'", name_pos)
                return UseDecl(name, line)
            self.skip()
            name_pos = self.pos
            name = self.ident(f"{word} name")
            self.declare(word, name, name_pos)
            self.expect("=")
            if word == "ring":
                return self.ring_decl(name, line)
            if word == "ideal":
                return IdealDecl(name, self.poly_list("(", ")"), line)
            if word == "module":
                return ModuleDecl(name, self.module_expr(), line)
            if word == "map":
                rows = self.matrix()
                return MapDecl(name, rows, self.shifts(), line)
            self.expect("[")
            names = []
            while True:
                p = self.pos
                n = self.ident("map name")
                if not self.known(n, ("map",)):
                    self.fail(f"unknown map '{n}'", p)
                names.append(n)
                if not self.accept(","):
                    break
            self.expect("]")
            return ComplexDecl(name, tuple(names), line)
        if word in COMMANDS:
            self.expect("(")
            args = []
            if not self.peek(")"):
                while True:
                    args.append(self.argument())
                    if not self.accept(","):
                        break
            self.expect(")")
            return Command(word, tuple(args), line)
        self.fail(f"unknown statement '{word}'", start)

    def ring_decl(self, name, line):
        self.skip()
        fpos = self.pos
        fname = self.ident("field")
        if fname == "QQ":
            fieldspec = "QQ"
        elif fname in ("GF", "ZZ"):
            if fname == "GF":
                self.expect("(")
                p = self.integer()
                self.expect(")")
            else:
                self.expect("/")
                p = self.integer()
            fieldspec = f"GF({p})"
        else:
            self.fail(f"unknown field '{fname}'", fpos)
        self.expect("[")
        variables = []
        while True:
            self.skip()
            vpos = self.pos
            if self.peek("]") and variables:
                self.fail("expected variable name after ','", comma_pos)
            variables.append(self.ident("variable"))
            if len(set(variables)) != len(variables):
                self.fail("repeated variable", vpos)
            self.skip()
            comma_pos = self.pos
            if not self.accept(","):
                break
        self.expect("]")
        order = None
        nxt = self.peek_ident()
        if nxt in ("grevlex", "lex"):
            order = self.ident()
        relations = ()
        if self.accept("/"):
            relations = self.poly_list("(", ")")
        return RingDecl(name, fieldspec, tuple(variables), order, relations, line)

    def poly_list(self, open_, close):
        self.expect(open_)
        out = []
        if not self.peek(close):
            while True:
                out.append(self.poly_text())
                if not self.accept(","):
                    break
        self.expect(close)
        return tuple(out)

    def matrix(self):
        self.expect("[")
        rows = []
        while True:
            rows.append(self.poly_list("[", "]"))
            if not self.accept(","):
                break
        self.expect("]")
        if len({len(r) for r in rows}) > 1:
            self.fail("ragged matrix")
        return tuple(rows)

    def shifts(self):
        if not self.peek("["):
            return None
        self.expect("[")
        out = []
        if not self.peek("]"):
            while True:
                out.append(self.integer())
                if not self.accept(","):
                    break
        self.expect("]")
        return tuple(out)

    def module_expr(self):
        self.skip()
        pos = self.pos
        word = self.peek_ident()
        if word == "coker":
            self.ident()
            rows = self.matrix()
            return Coker(rows, self.shifts())
        if word is None:
            self.fail("expected module expression")
        self.ident()
        if self.accept("/"):
            if not self.known(word, ("ring",)):
                self.fail(f"unknown ring '{word}'", pos)
            if self.peek("("):
                return RingQuotient(word, self.poly_list("(", ")"))
            ipos = self.pos
            iname = self.ident("ideal name")
            if not self.known(iname, ("ideal",)):
                self.fail(f"unknown ideal '{iname}'", ipos)
            return RingQuotient(word, iname)
        if not self.known(word):
            self.fail(f"unknown name '{word}'", pos)
        return Name(word)

    def argument(self):
        self.skip()
        c = self.peek()
        if c.isdigit() or c == "-":
            return self.integer()
        if c == "(":
            return IdealLit(self.poly_list("(", ")"))
        return self.module_expr()


def parse_program(text: str) -> Session:
    """Parse DSL source into a Session; raises ParseError with line and column."""
    return _Parser(text).program()


# -- printer ------------------------------------------------------------------------------


def _fmt_rows(rows):
    return "[" + ", ".join("[" + ", ".join(r) + "]" for r in rows) + "]"


def _fmt_shifts(shifts):
    return "" if shifts is None else " [" + ", ".join(str(s) for s in shifts) + "]"


def _fmt_expr(e):
    if isinstance(e, int):
        return str(e)
    if isinstance(e, Coker):
        return "coker " + _fmt_rows(e.rows) + _fmt_shifts(e.shifts)
    if isinstance(e, RingQuotient):
        rhs = e.ideal if isinstance(e.ideal, str) else "(" + ", ".join(e.ideal) + ")"
        return f"{e.ring}/{rhs}"
    if isinstance(e, IdealLit):
        return "(" + ", ".join(e.gens) + ")"
    return e.name


def format_statement(s) -> str:
    if isinstance(s, RingDecl):
        field_txt = "QQ" if s.field == "QQ" else s.field
        out = f"ring {s.name} = {field_txt}[{','.join(s.variables)}]"
        if s.order:
            out += f" {s.order}"
        if s.relations:
            out += " / (" + ", ".join(s.relations) + ")"
        return out + ";"
    if isinstance(s, IdealDecl):
        return f"ideal {s.name} = (" + ", ".join(s.gens) + ");"
    if isinstance(s, ModuleDecl):
        return f"module {s.name} = {_fmt_expr(s.expr)};"
    if isinstance(s, MapDecl):
        return f"map {s.name} = {_fmt_rows(s.rows)}{_fmt_shifts(s.shifts)};"
    if isinstance(s, ComplexDecl):
        return f"complex {s.name} = [" + ", ".join(s.maps) + "];"
    if isinstance(s, UseDecl):
        return f"use {s.name};"
    return f"{s.name}(" + ", ".join(_fmt_expr(a) for a in s.args) + ");"


def format_program(session: Session) -> str:
    return "\n".join(format_statement(s) for s in session.statements) + "\n"


# -- interpreter ----------------------------------------------------------------------------


def parse_field(text: str):
    t = text.strip().lower()
    if t == "qq":
        return QQ
    if t.startswith("fp:"):
        return GF(int(t[3:]))
    if t.startswith("gf(") and t.endswith(")"):
        return GF(int(t[3:-1]))
    raise ValueError(f"unknown field '{text}'")


class Interpreter:
    def __init__(self, field_override=None, order_override=None, max_len=None):
        self.field_override = field_override
        self.order_override = order_override
        self.max_len = max_len
        self.rings = {}
        self.ideals = {}
        self.modules = {}
        self.maps = {}
        self.complexes = {}
        self.current = None

    # declarations

    def ring(self, s: RingDecl):
        fld = self.field_override or parse_field(s.field)
        order = self.order_override or s.order or "grevlex"
        base = polynomial_ring(list(s.variables), fld, order)
        Q = quotient_ring(base, list(s.relations))
        self.rings[s.name] = Q
        self.current = Q

    def need_ring(self):
        if self.current is None:
            raise SerreMultError("no ring declared")
        return self.current

    def module(self, expr) -> FPModule:
        if isinstance(expr, Coker):
            return FPModule.from_rows(self.need_ring(), [list(r) for r in expr.rows], expr.shifts)
        if isinstance(expr, RingQuotient):
            Q = self.rings[expr.ring]
            if isinstance(expr.ideal, str):
                ring, gens = self.ideals[expr.ideal]
                if ring != Q:
                    raise SerreMultError(f"ideal '{expr.ideal}' lives in another ring")
            else:
                gens = list(expr.ideal)
            M = FPModule.cyclic(Q, gens)
            M.name = _fmt_expr(expr)
            return M
        if isinstance(expr, Name):
            if expr.name in self.modules:
                return self.modules[expr.name]
            if expr.name in self.rings:
                return FPModule.free(self.rings[expr.name])
        raise SerreMultError(f"'{_fmt_expr(expr)}' is not a module")

    def ideal(self, expr):
        if isinstance(expr, IdealLit):
            return list(expr.gens)
        if isinstance(expr, Name) and expr.name in self.ideals:
            return list(self.ideals[expr.name][1])
        raise SerreMultError(f"'{_fmt_expr(expr)}' is not an ideal")

    def declare(self, s):
        if isinstance(s, RingDecl):
            self.ring(s)
        elif isinstance(s, UseDecl):
            self.current = self.rings[s.name]
        elif isinstance(s, IdealDecl):
            self.ideals[s.name] = (self.need_ring(), list(s.gens))
        elif isinstance(s, ModuleDecl):
            M = self.module(s.expr)
            M.name = s.name
            self.modules[s.name] = M
        elif isinstance(s, MapDecl):
            self.maps[s.name] = (self.need_ring(), s.rows, s.shifts)
        elif isinstance(s, ComplexDecl):
            ring = self.maps[s.maps[0]][0]
            base = self.maps[s.maps[0]][2] or (0,) * len(self.maps[s.maps[0]][1])
            mats = [[list(r) for r in self.maps[m][1]] for m in s.maps]
            self.complexes[s.name] = complex_from_matrices(ring, mats, base)

    # commands

    def execute(self, cmd: Command) -> dict:
        rec = {"cmd": cmd.name, "args": [_fmt_expr(a) for a in cmd.args], "line": cmd.line}
        a = cmd.args
        status = "info"
        name = cmd.name
        if name in ("chi", "xi", "verify", "diagonal_check", "theta", "tor", "ext"):
            M, N = self.module(a[0]), self.module(a[1])
        if name == "chi":
            rec["chi"] = chi(M, N)
        elif name == "xi":
            rec["xi"] = xi(M, N)
        elif name == "chi_i":
            rec["i"] = a[2]
            rec["chi_i"] = chi_higher(self.module(a[0]), self.module(a[1]), a[2])
        elif name == "tor":
            upto = a[2] if len(a) > 2 else None
            rec.update(tor(M, N, upto).to_json())
        elif name == "ext":
            upto = a[2] if len(a) > 2 else None
            lengths, complete = ext_profile(M, N, upto)
            rec.update({"ext_lengths": lengths, "complete": complete})
        elif name == "resolve":
            M = self.module(a[0])
            n = a[1] if len(a) > 1 else self.max_len
            C = free_resolution(M, n)
            rec.update(_complex_record(C))
            status = _verdict_status(rec["verdicts"])
        elif name == "betti":
            if isinstance(a[0], Name) and a[0].name in self.complexes:
                C = self.complexes[a[0].name]
            else:
                C = free_resolution(self.module(a[0]), a[1] if len(a) > 1 else self.max_len)
            rec.update(_complex_record(C))
            status = _verdict_status(rec["verdicts"])
        elif name == "compare":
            C = self.complexes[a[0].name]
            M = self.module(a[1])
            upto = a[2] if len(a) > 2 else C.length
            R = free_resolution(M, upto)
            ok = equivalent_resolutions(C, R, upto) and equivalent_resolutions(R, C, upto)
            rec["equivalent"] = ok
            rec["verdicts"] = [{"name": "equivalent_resolutions", "status": "pass" if ok else "fail"}]
            status = _verdict_status(rec["verdicts"])
        elif name == "periodicity":
            C = self.complexes[a[0].name] if a[0].name in self.complexes else \
                free_resolution(self.module(a[0]), self.max_len)
            cert = detect_periodicity(C)
            rec["certificate"] = cert.to_json() if cert else None
        elif name == "dim":
            rec["dim"] = krull_dim(self.module(a[0]))
        elif name == "length":
            rec["length"] = length(self.module(a[0]))
        elif name == "hilbert":
            data = hilbert_data(self.module(a[0]), a[1] if len(a) > 1 else 10)
            rec.update({"values": [data.values[d] for d in sorted(data.values)],
                        "first_degree": min(data.values) if data.values else 0,
                        "polynomial": [str(c) for c in data.polynomial],
                        "stabilization": data.stabilization})
        elif name == "e":
            k = a[2] if len(a) > 2 else None
            rec.update(hilbert_samuel(self.module(a[0]), self.ideal(a[1]), k).to_json())
        elif name == "koszul_e":
            seq = self.ideal(a[0])
            M = self.module(a[1])
            data = hilbert_samuel(M, seq, len(seq))
            val = koszul_euler(seq, M)
            rec.update({"koszul_euler": val, "e": data.multiplicity})
            rec["verdicts"] = [{"name": "koszul_samuel", "status": "pass" if val == data.multiplicity else "fail"}]
            status = _verdict_status(rec["verdicts"])
        elif name == "theta":
            rec["theta"] = theta(M, N)
        elif name == "verify":
            rep = verify_serre_pair(M, N)
            rec.update(rep.to_json())
            status = "pass" if rep.passed else "fail"
        elif name == "diagonal_check":
            res = diagonal_reduction_check(M, N)
            rec.update({"agree": res.agree, "a_side": res.a_side, "b_side": res.b_side})
            status = "pass" if res.agree else "fail"
        rec["status"] = status
        return rec

    def run(self, session: Session):
        """Yield one record per command."""
        for s in session.statements:
            if isinstance(s, Command):
                try:
                    yield self.execute(s)
                except ResourceLimitExceeded as exc:
                    yield {"cmd": s.name, "line": s.line, "status": "error",
                           "error": type(exc).__name__, "message": str(exc)}
                except (SerreMultError, ValueError, KeyError, IndexError, AttributeError) as exc:
                    yield {"cmd": s.name, "line": s.line, "status": "error",
                           "error": type(exc).__name__, "message": str(exc)}
            else:
                self.declare(s)


def _verdict_status(verdicts) -> str:
    return "fail" if any(v["status"] == "fail" for v in verdicts) else "pass"


def _complex_record(C) -> dict:
    audit = exactness_audit(C)
    ranks = C.betti().ranks
    rec = C.betti().to_json()
    rec["ranks"] = ranks
    rec["complete"] = C.complete
    cert = C.certificate or detect_periodicity(C, check_exact=False)
    rec["certificate"] = cert.to_json() if cert else None
    rec["verdicts"] = [
        {"name": "d_squared", "status": "pass" if check_d_squared(C) else "fail"},
        {"name": "exactness", "status": "pass" if all(audit.values()) else "fail"},
    ]
    return rec


def exit_code(records) -> int:
    code = EXIT_OK
    for r in records:
        if r.get("status") == "error" and r.get("error") == "ResourceLimitExceeded":
            return EXIT_LIMIT
        if r.get("status") in ("fail", "error"):
            code = EXIT_FAIL
    return code


def run_source(text: str, field=None, order=None, max_len=None) -> list:
    session = parse_program(text)
    return list(Interpreter(field, order, max_len).run(session))


# -- corpus -------------------------------------------------------------------------------


PROVENANCE = ("PAPER", "DERIVED", "TRIVIAL")


class CorpusError(Exception):
    pass


@dataclass
class CorpusEntry:
    id: str
    source: str
    expect: list
    provenance: str
    citation: str


def default_corpus() -> Path:
    return Path(resources.files("serremult") / "corpus" / "manifest.yaml")


def load_corpus(path=None) -> list:
    path = Path(path) if path else default_corpus()
    if not path.exists():
        raise CorpusError(f"corpus manifest not found: {path}")
    data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    entries = []
    for raw in data.get("entries", []):
        eid = raw.get("id")
        prov = raw.get("provenance")
        cite = raw.get("citation")
        if prov not in PROVENANCE or not cite:
            raise CorpusError(f"entry {eid!r} lacks a provenance tag or citation")
        if "file" in raw:
            src = (path.parent / raw["file"]).read_text(encoding="utf-8")
        else:
            src = raw.get("source", "")
        entries.append(CorpusEntry(eid, src, list(raw.get("expect", [])), prov, cite))
    return entries


def _lookup(rec, key):
    cur = rec
    for part in key.split("."):
        if isinstance(cur, list):
            cur = next((v.get("status") for v in cur if v.get("name") == part), None) \
                if cur and isinstance(cur[0], dict) and "name" in cur[0] else cur[int(part)]
        elif isinstance(cur, dict):
            cur = cur.get(part)
        else:
            return None
    return cur


def check_entry(entry: CorpusEntry, records) -> list:
    """Mismatches as (command index, key, expected, got)."""
    out = []
    for exp in entry.expect:
        idx = exp.get("command", 0)
        rec = records[idx] if idx < len(records) else {}
        for key, want in exp.items():
            if key == "command":
                continue
            got = _lookup(rec, key)
            if got != want:
                out.append((idx, key, want, got))
    return out


def run_corpus(entries, pattern=None, field=None, order=None, max_len=None) -> list:
    results = []
    for e in entries:
        if pattern and not fnmatch.fnmatch(e.id, pattern):
            continue
        try:
            records = run_source(e.source, field, order, max_len)
        except ParseError as exc:
            records = [{"status": "error", "error": "ParseError", "message": str(exc)}]
        mismatches = check_entry(e, records)
        failed = bool(mismatches) or any(r.get("status") in ("fail", "error") for r in records)
        limit = any(r.get("error") == "ResourceLimitExceeded" for r in records)
        results.append({
            "id": e.id,
            "provenance": e.provenance,
            "citation": e.citation,
            "expected": [{k: v for k, v in x.items() if k != "command"} for x in e.expect],
            "got": [{k: _lookup(records[x.get("command", 0)], k) if x.get("command", 0) < len(records) else None
                     for k in x if k != "command"} for x in e.expect],
            "mismatches": [{"command": i, "key": k, "expected": w, "got": g} for i, k, w, g in mismatches],
            "status": "fail" if failed else "pass",
            "limit": limit,
        })
    return results


# -- random vanishing suite ------------------------------------------------------------------


def random_monomial_ideal(rng: random.Random, nvars=4, max_exp=3):
    gens = set()
    for _ in range(rng.randint(1, 4)):
        if rng.random() < 0.5:
            i = rng.randrange(nvars)
            e = [0] * nvars
            e[i] = rng.randint(1, max_exp)
        else:
            e = [rng.randint(0, 2) for _ in range(nvars)]
            if not any(e):
                e[rng.randrange(nvars)] = 1
        gens.add(tuple(e))
    return sorted(gens)


def _mono_text(e, names):
    parts = [n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a]
    return "*".join(parts)


def vanishing_pairs(seed: int, count: int = 25):
    """Seeded monomial-ideal pairs in k[x1..x4] with dim sum < 4 and finite tensor length."""
    rng = random.Random(seed)
    S = polynomial_ring(["x1", "x2", "x3", "x4"])
    names = S.variables
    out = []
    while len(out) < count:
        a = [_mono_text(e, names) for e in random_monomial_ideal(rng)]
        b = [_mono_text(e, names) for e in random_monomial_ideal(rng)]
        M, N = FPModule.cyclic(S, a), FPModule.cyclic(S, b)
        dm, dn = krull_dim(M), krull_dim(N)
        if dm < 0 or dn < 0 or dm + dn >= 4:
            continue
        if krull_dim(FPModule.cyclic(S, a + b)) != 0:
            continue
        out.append((a, b, M, N))
    return out


def vanishing_suite(seed: int, count: int = 25) -> list:
    recs = []
    for a, b, M, N in vanishing_pairs(seed, count):
        rep = verify_serre_pair(M, N)
        recs.append({"M": a, "N": b, "chi": rep.chi, "dims": rep.dims,
                     "tor_lengths": rep.tor_lengths,
                     "status": "pass" if rep.chi == 0 and rep.passed else "fail"})
    return recs


# -- entry point ---------------------------------------------------------------------------


def _emit(records, text_mode, out):
    for r in records:
        if text_mode:
            keys = [k for k in r if k not in ("cmd", "args", "line", "status")]
            body = ", ".join(f"{k}={json.dumps(r[k], sort_keys=True)}" for k in keys)
            label = r.get("cmd") or r.get("id") or ""
            args = ", ".join(r.get("args", []))
            out.write(f"{r.get('status', ''):<6} {label}({args}) {body}\n" if "cmd" in r
                      else f"{r.get('status', ''):<6} {label} {body}\n")
        else:
            out.write(json.dumps(r, sort_keys=True) + "\n")


def _corpus_table(results, out):
    out.write(f"{'entry':<34} {'status':<6} {'provenance':<9} citation\n")
    for r in results:
        out.write(f"{r['id']:<34} {r['status']:<6} {r['provenance']:<9} {r['citation']}\n")
        for m in r["mismatches"]:
            out.write(f"    mismatch cmd {m['command']} {m['key']}: expected {m['expected']!r}, got {m['got']!r}\n")
    passed = sum(r["status"] == "pass" for r in results)
    out.write(f"{passed}/{len(results)} entries pass\n")


def build_parser():
    p = argparse.ArgumentParser(prog="serremult", description="Intersection multiplicities over graded rings.")
    common = argparse.ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="text", action="store_false", default=False,
                      help="JSON lines output (default)")
    mode.add_argument("--text", dest="text", action="store_true", help="aligned text output")
    common.add_argument("--field", help="qq or fp:P; overrides ring declarations")
    common.add_argument("--order", choices=["grevlex", "lex"], help="monomial order override")
    common.add_argument("--max-steps", type=int, help="reduction step cap per Groebner run")
    common.add_argument("--max-len", type=int, help="default resolution length")
    common.add_argument("--timing", action="store_true", help="append a wall-clock metadata record")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", parents=[common], help="run a DSL program")
    r.add_argument("file", help="program file, or - for stdin")
    c = sub.add_parser("corpus", parents=[common], help="run the bundled corpus")
    c.add_argument("--corpus", help="path to a manifest.yaml")
    c.add_argument("--filter", default="*", help="glob over entry ids")
    c.add_argument("--list", action="store_true", help="list matching entries only")
    v = sub.add_parser("vanishing", parents=[common], help="random vanishing suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=25)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        fld = parse_field(args.field) if args.field else None
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    saved = groebner.LIMITS.max_steps, resolution.SETTINGS["max_len"]
    if args.max_steps:
        groebner.LIMITS.max_steps = args.max_steps
    if args.max_len is not None:
        resolution.SETTINGS["max_len"] = args.max_len
    try:
        return _dispatch(args, fld, sys.stdout)
    finally:
        groebner.LIMITS.max_steps, resolution.SETTINGS["max_len"] = saved


def _dispatch(args, fld, out) -> int:
    started = time.perf_counter()
    if args.command == "run":
        try:
            text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
            session = parse_program(text)
        except (OSError, ParseError) as exc:
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_USAGE
        records = list(Interpreter(fld, args.order, args.max_len).run(session))
        _emit(records, args.text, out)
        code = exit_code(records)
    elif args.command == "corpus":
        try:
            entries = load_corpus(args.corpus)
        except (CorpusError, OSError, yaml.YAMLError) as exc:
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_USAGE
        if args.list:
            for e in entries:
                if fnmatch.fnmatch(e.id, args.filter):
                    out.write(f"{e.id:<34} {e.provenance:<9} {e.citation}\n")
            return EXIT_OK
        results = run_corpus(entries, args.filter, fld, args.order, args.max_len)
        if args.text:
            _corpus_table(results, out)
        else:
            _emit(results, False, out)
        code = EXIT_OK
        if any(r["limit"] for r in results):
            code = EXIT_LIMIT
        elif any(r["status"] != "pass" for r in results):
            code = EXIT_FAIL
    else:
        records = vanishing_suite(args.seed, args.count)
        _emit(records, args.text, out)
        code = exit_code(records)
    if args.timing:
        _emit([{"metadata": {"wall_seconds": round(time.perf_counter() - started, 3)}}], False, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
