"""Session files: parsing, printing, elaboration and execution.

A session is a line-oriented script::

    field QQ
    ring R = [x, y] / (x^2)
    complex C over R
      rank -1 1
      rank 0 1
      d -1 [[x]]
    end
    dga A = koszul R : x, y
    dgmodule K = koszul A : x
    support C expect (x)
    builds K A expect yes

``#`` starts a comment.  Declarations must precede their use.  Every command
may carry ``window lo..hi``, ``at n`` and a trailing ``expect <value>``.
"""

from __future__ import annotations

import contextvars
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Any

from .complexes import FreeComplex, PresentedRing, RelationError, koszul_complex, tensor_complexes, truncation_triangle
from .complexes import direct_sum as complex_sum
from .dg import (
    DGAlgebra,
    DGModule,
    RestrictedModule,
    WindowRequired,
    cone_identity,
    cone_of_element,
    dg_cohomology,
    dg_tensor,
    direct_sum,
    free_module,
    koszul_algebra,
    koszul_module,
    reduce_to_h0,
    shift,
)
from .field import GF, QQ, FieldError
from .groebner import DEFAULT_SPAIR_BUDGET, GroebnerBudgetExceeded, spair_budget
from .oracle import DEFAULT_SEED, PointGrid, dense_cohomology_dims, in_zero_set
from .poly import ParseError, parse_expression, evaluate
from .tate import CharacteristicError, InsufficientDepth, coreduction, tate_resolve
from .verdicts import (
    SpecializationClosedSet,
    SupportIdeal,
    VerdictError,
    builds,
    finitely_builds,
    reduction_supp_check,
    support_equal,
    support_of,
    tensor_support_check,
    thick_membership,
)

COMMANDS = (
    "validate",
    "cohomology",
    "support",
    "support-equal",
    "builds",
    "finitely-builds",
    "tensor-check",
    "reduce",
    "coreduce",
    "truncate",
    "thick-member",
    "crosscheck",
    "reduction-check",
)
OPTIONS = ("seed", "spair-budget", "window", "depth")
ID = r"[A-Za-z_][A-Za-z0-9_']*"


class SessionError(Exception):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


# ---------------------------------------------------------------- abstract syntax


@dataclass
class Decl:
    kind: str  # ring | complex | dga | dgmodule | closed
    name: str
    over: str | None = None  # parent of a literal block
    op: str | None = None  # constructor of a derived declaration
    args: tuple = ()
    elements: tuple = ()  # polynomial arguments after ':'
    body: tuple = ()
    line: int = dc_field(default=0, compare=False)
    text: str = dc_field(default="", compare=False, repr=False)
    spans: tuple = dc_field(default=(), compare=False, repr=False)  # (line, text) per body item

    def at(self, k: int | None) -> tuple[int, str]:
        if k is None or k >= len(self.spans):
            return self.line, self.text
        return self.spans[k]


@dataclass
class Command:
    op: str
    args: tuple = ()
    window: tuple | None = None
    at: int | None = None
    expect: str | None = None
    line: int = dc_field(default=0, compare=False)


@dataclass
class Session:
    field: str = "QQ"
    options: dict = dc_field(default_factory=dict)
    decls: list = dc_field(default_factory=list)
    commands: list = dc_field(default_factory=list)


# ---------------------------------------------------------------- parsing


def _split_top(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside brackets and parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return out


def _parse_matrix(text: str, line: int, col: int) -> tuple:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise SessionError("matrix must look like [[a, b], [c, d]]", line, col)
    inner = text[1:-1].strip()
    rows = []
    for part in _split_top(inner):
        part = part.strip()
        if not (part.startswith("[") and part.endswith("]")):
            raise SessionError(f"bad matrix row {part!r}", line, col)
        body = part[1:-1].strip()
        rows.append(tuple(_split_top(body)) if body else ())
    if len({len(r) for r in rows}) > 1:
        raise SessionError("matrix rows have different lengths", line, col)
    return tuple(rows)


def _parse_window(text: str, line: int, col: int) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise SessionError(f"window must be lo..hi, got {text!r}", line, col)
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise SessionError("window lower end exceeds upper end", line, col)
    return lo, hi


def _strip_comment(raw: str) -> str:
    i = raw.find("#")
    return raw if i < 0 else raw[:i]


def _col(raw: str, piece: str) -> int:
    i = raw.find(piece)
    return i + 1 if i >= 0 else 1


def parse_session(text: str) -> Session:
    """Parse session text; raises :class:`SessionError` with line and column."""
    s = Session()
    lines = text.splitlines()
    block: Decl | None = None
    body: list = []
    spans: list = []
    seen_field = False
    for lineno, raw in enumerate(lines, start=1):
        stripped = _strip_comment(raw).strip()
        if not stripped:
            continue
        indent = len(raw) - len(raw.lstrip())
        if block is not None:
            if stripped == "end":
                block.body = tuple(body)
                block.spans = tuple(spans)
                s.decls.append(block)
                block, body, spans = None, [], []
                continue
            body.append(_parse_block_line(block.kind, stripped, raw, lineno))
            spans.append((lineno, raw))
            continue
        if m := re.fullmatch(r"field\s+(QQ|GF\(\s*(\d+)\s*\))", stripped):
            if seen_field or s.decls:
                raise SessionError("field must be declared once, before anything else", lineno, indent + 1)
            s.field = "QQ" if m.group(1) == "QQ" else f"GF({int(m.group(2))})"
            seen_field = True
            continue
        if stripped.startswith("field"):
            raise SessionError("field must be QQ or GF(p)", lineno, indent + 1)
        if m := re.fullmatch(r"option\s+(\S+)\s+(.+)", stripped):
            key, val = m.group(1), m.group(2).strip()
            if key not in OPTIONS:
                raise SessionError(f"unknown option {key!r}", lineno, _col(raw, key))
            s.options[key] = _option_value(key, val, lineno, _col(raw, val))
            continue
        if m := re.fullmatch(rf"ring\s+({ID})\s*=\s*\[(.*?)\]\s*(?:/\s*\((.*)\))?", stripped):
            vs = tuple(v.strip() for v in m.group(2).split(",") if v.strip())
            for v in vs:
                if not re.fullmatch(ID, v):
                    raise SessionError(f"bad variable name {v!r}", lineno, _col(raw, v))
            rels = tuple(_split_top(m.group(3))) if m.group(3) and m.group(3).strip() else ()
            s.decls.append(Decl("ring", m.group(1), args=vs, elements=rels, line=lineno, text=raw))
            continue
        if m := re.fullmatch(rf"ring\s+({ID})\s*=\s*h0\s+({ID})", stripped):
            s.decls.append(Decl("ring", m.group(1), op="h0", args=(m.group(2),), line=lineno, text=raw))
            continue
        if m := re.fullmatch(rf"(complex|dga|dgmodule)\s+({ID})\s+over\s+({ID})", stripped):
            block = Decl(m.group(1), m.group(2), over=m.group(3), line=lineno, text=raw)
            continue
        if m := re.fullmatch(rf"(complex|dga|dgmodule)\s+({ID})\s*=\s*([a-z][a-z0-9-]*)\s*(.*)", stripped):
            rest = m.group(4)
            elements: tuple = ()
            if ":" in rest:
                rest, els = rest.split(":", 1)
                elements = tuple(_split_top(els))
                if any(not e for e in elements):
                    raise SessionError("empty element in list", lineno, _col(raw, els))
            args = tuple(rest.split())
            s.decls.append(Decl(m.group(1), m.group(2), op=m.group(3), args=args, elements=elements, line=lineno, text=raw))
            continue
        if m := re.fullmatch(rf"closed\s+({ID})\s+over\s+({ID})\s*=\s*(.*)", stripped):
            comps = []
            for part in _split_top(m.group(3), ";"):
                part = part.strip()
                if not part:
                    continue
                if not (part.startswith("(") and part.endswith(")")):
                    raise SessionError(f"component must be (f, g, ...), got {part!r}", lineno, _col(raw, part))
                comps.append(tuple(_split_top(part[1:-1])))
            s.decls.append(Decl("closed", m.group(1), over=m.group(2), body=tuple(comps), line=lineno, text=raw))
            continue
        word = stripped.split()[0]
        if word in COMMANDS:
            s.commands.append(_parse_command(stripped, raw, lineno))
            continue
        raise SessionError(f"unrecognized line starting with {word!r}", lineno, indent + 1)
    if block is not None:
        raise SessionError(f"block {block.name!r} is missing 'end'", block.line, 1)
    return s


def _option_value(key, val, line, col):
    if key == "window":
        return _parse_window(val, line, col)
    try:
        return int(val, 0)
    except ValueError:
        raise SessionError(f"option {key} needs an integer, got {val!r}", line, col) from None


def _parse_block_line(kind: str, stripped: str, raw: str, lineno: int) -> tuple:
    col = len(raw) - len(raw.lstrip()) + 1
    if kind == "complex":
        if m := re.fullmatch(r"rank\s+(-?\d+)\s+(\d+)", stripped):
            return ("rank", int(m.group(1)), int(m.group(2)))
        if m := re.fullmatch(r"d\s+(-?\d+)\s+(\[.*\])", stripped):
            return ("d", int(m.group(1)), _parse_matrix(m.group(2), lineno, _col(raw, m.group(2))))
        raise SessionError("expected 'rank n r', 'd n [[...]]' or 'end'", lineno, col)
    if kind == "dga":
        if m := re.fullmatch(rf"gen\s+({ID})\s+(-?\d+)(?:\s+d=\s*(.*))?", stripped):
            return ("gen", m.group(1), int(m.group(2)), (m.group(3) or "0").strip())
        raise SessionError("expected 'gen name degree [d= expr]' or 'end'", lineno, col)
    if kind == "dgmodule":
        if m := re.fullmatch(rf"basis\s+({ID})\s+(-?\d+)", stripped):
            return ("basis", m.group(1), int(m.group(2)))
        if m := re.fullmatch(rf"d\s+({ID})\s*=\s*(.+)", stripped):
            return ("d", m.group(1), m.group(2).strip())
        raise SessionError("expected 'basis name degree', 'd name = expr' or 'end'", lineno, col)
    raise SessionError(f"{kind} declarations have no block form", lineno, col)


def _parse_command(stripped: str, raw: str, lineno: int) -> Command:
    expect = None
    m = re.search(r"\bexpect\b", stripped)
    if m:
        expect = " ".join(stripped[m.end():].split())
        if not expect:
            raise SessionError("expect needs a value", lineno, _col(raw, "expect"))
        stripped = stripped[: m.start()]
    toks = stripped.split()
    op, toks = toks[0], toks[1:]
    args, window, at = [], None, None
    i = 0
    while i < len(toks):
        t = toks[i]
        if t in ("window", "at"):
            if i + 1 >= len(toks):
                raise SessionError(f"{t} needs a value", lineno, _col(raw, t))
            v = toks[i + 1]
            if t == "window":
                window = _parse_window(v, lineno, _col(raw, v))
            else:
                try:
                    at = int(v)
                except ValueError:
                    raise SessionError(f"at needs an integer, got {v!r}", lineno, _col(raw, v)) from None
            i += 2
            continue
        if not re.fullmatch(ID, t):
            raise SessionError(f"bad argument {t!r}", lineno, _col(raw, t))
        args.append(t)
        i += 1
    return Command(op, tuple(args), window, at, expect, lineno)


# ---------------------------------------------------------------- printing


def _fmt_window(w):
    return f"{w[0]}..{w[1]}"


def format_session(s: Session) -> str:
    out = [f"field {s.field}"]
    for k in OPTIONS:
        if k in s.options:
            v = s.options[k]
            out.append(f"option {k} {_fmt_window(v) if k == 'window' else v}")
    for d in s.decls:
        out.extend(_format_decl(d))
    for c in s.commands:
        parts = [c.op, *c.args]
        if c.window is not None:
            parts += ["window", _fmt_window(c.window)]
        if c.at is not None:
            parts += ["at", str(c.at)]
        if c.expect is not None:
            parts += ["expect", c.expect]
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def _format_decl(d: Decl) -> list[str]:
    if d.kind == "ring":
        if d.op == "h0":
            return [f"ring {d.name} = h0 {d.args[0]}"]
        s = f"ring {d.name} = [{', '.join(d.args)}]"
        if d.elements:
            s += f" / ({', '.join(d.elements)})"
        return [s]
    if d.kind == "closed":
        comps = "; ".join("(" + ", ".join(c) + ")" for c in d.body)
        return [f"closed {d.name} over {d.over} = {comps}".rstrip()]
    if d.op is not None:
        s = f"{d.kind} {d.name} = {d.op}"
        if d.args:
            s += " " + " ".join(d.args)
        if d.elements:
            s += " : " + ", ".join(d.elements)
        return [s]
    lines = [f"{d.kind} {d.name} over {d.over}"]
    for item in d.body:
        if item[0] == "rank":
            lines.append(f"  rank {item[1]} {item[2]}")
        elif item[0] == "d" and d.kind == "complex":
            rows = ", ".join("[" + ", ".join(r) + "]" for r in item[2])
            lines.append(f"  d {item[1]} [{rows}]")
        elif item[0] == "gen":
            lines.append(f"  gen {item[1]} {item[2]} d= {item[3]}")
        elif item[0] == "basis":
            lines.append(f"  basis {item[1]} {item[2]}")
        elif item[0] == "d":
            lines.append(f"  d {item[1]} = {item[2]}")
    lines.append("end")
    return lines


# ---------------------------------------------------------------- elaboration


@dataclass
class Environment:
    field: Any
    objects: dict = dc_field(default_factory=dict)  # name -> (kind, object)

    def get(self, name: str, kinds: tuple, line: int, raw: str = ""):
        if name not in self.objects:
            raise SessionError(f"unknown name {name!r}", line, _col(raw, name) if raw else None)
        kind, obj = self.objects[name]
        if kind not in kinds:
            raise SessionError(f"{name!r} is a {kind}, expected {' or '.join(kinds)}", line, _col(raw, name) if raw else None)
        return obj


def _poly_error(exc: ParseError, d: Decl, piece: str, k: int | None = None):
    line, text = d.at(k)
    base = _col(text, piece) if text else 1
    col = base + (exc.column or 0) if exc.column is not None else base
    msg = str(exc).split(" (column")[0]
    return SessionError(f"{msg} in {piece!r}", line, col)


def elaborate(s: Session) -> Environment:
    """Build every declared object; semantic errors carry the declaration line."""
    try:
        if s.field == "QQ":
            F = QQ
        else:
            F = GF(int(s.field[3:-1]))
    except FieldError as exc:
        raise SessionError(str(exc), 1) from None
    env = Environment(F)
    for d in s.decls:
        if d.name in env.objects:
            raise SessionError(f"{d.name!r} declared twice", d.line, _col(d.text, d.name))
        try:
            obj = _build(env, d)
        except (RelationError, ValueError, IndexError) as exc:
            if isinstance(exc, SessionError):
                raise
            raise SessionError(str(exc), d.line) from None
        env.objects[d.name] = (d.kind, obj)
    for c in s.commands:
        for a in c.args:
            if a not in env.objects:
                raise SessionError(f"unknown name {a!r} in command {c.op}", c.line)
    return env


def _poly(ring: PresentedRing, text: str, d: Decl, k: int | None = None):
    try:
        return ring.reduce(ring.poly.parse(text))
    except ParseError as exc:
        raise _poly_error(exc, d, text, k) from None


def _build(env: Environment, d: Decl):
    F = env.field
    L = d.line
    if d.kind == "ring":
        if d.op == "h0":
            return env.get(d.args[0], ("dga",), L, d.text).h0()
        from .poly import PolyRing

        P = PolyRing(F, d.args)
        rels = [_poly(PresentedRing(P), r, d) for r in d.elements]
        return PresentedRing(P, rels)
    if d.kind == "closed":
        R = env.get(d.over, ("ring",), L, d.text)
        return SpecializationClosedSet(R, [SupportIdeal.of(R, [_poly(R, g, d) for g in comp]).ideal for comp in d.body])
    if d.kind == "complex":
        return _build_complex(env, d)
    if d.kind == "dga":
        return _build_dga(env, d)
    if d.kind == "dgmodule":
        return _build_module(env, d)
    raise SessionError(f"unknown declaration kind {d.kind}", L)


def _need(d: Decl, n: int, what: str):
    if len(d.args) != n:
        raise SessionError(f"{d.op} expects {what}", d.line)


def _build_complex(env, d: Decl) -> FreeComplex:
    L = d.line
    if d.op is None:
        R = env.get(d.over, ("ring",), L, d.text)
        ranks, diffs = {}, {}
        for item in d.body:
            if item[0] == "rank":
                ranks[item[1]] = item[2]
        for k, item in enumerate(d.body):
            if item[0] == "d":
                n, rows = item[1], item[2]
                exp = (ranks.get(n + 1, 0), ranks.get(n, 0))
                got = (len(rows), len(rows[0]) if rows else exp[1])
                if got != exp:
                    raise SessionError(f"d {n} must be {exp[0]} x {exp[1]}, got {got[0]} x {got[1]}", d.at(k)[0])
                diffs[n] = [[_poly(R, e, d, k) for e in row] for row in rows]
        return FreeComplex(R, ranks, diffs)
    op = d.op
    if op == "koszul":
        _need(d, 1, "a ring before ':'")
        R = env.get(d.args[0], ("ring",), L, d.text)
        return koszul_complex(R, [_poly(R, e, d) for e in d.elements])
    if op == "tensor":
        _need(d, 2, "two complexes")
        C, D = (env.get(a, ("complex",), L, d.text) for a in d.args)
        if C.ring != D.ring:
            raise SessionError("tensor of complexes over different rings", L)
        return tensor_complexes(C, D)
    if op == "sum":
        _need(d, 2, "two complexes")
        C, D = (env.get(a, ("complex",), L, d.text) for a in d.args)
        return complex_sum(C, D)
    if op == "shift":
        _need(d, 2, "a complex and an integer")
        return env.get(d.args[0], ("complex",), L, d.text).shift(_int(d.args[1], d))
    if op == "h0":
        _need(d, 1, "a DG-algebra")
        A = env.get(d.args[0], ("dga",), L, d.text)
        return FreeComplex(A.h0(), {0: 1}, {})
    if op == "reduce":
        _need(d, 1, "a DG-module or DG-algebra")
        return reduce_to_h0(_as_module(env, d.args[0], L, d.text))
    raise SessionError(f"unknown complex constructor {op!r}", L, _col(d.text, op))


def _int(tok: str, d: Decl) -> int:
    try:
        return int(tok)
    except ValueError:
        raise SessionError(f"expected an integer, got {tok!r}", d.line, _col(d.text, tok)) from None


def _build_dga(env, d: Decl) -> DGAlgebra:
    L = d.line
    if d.op is None:
        R = env.get(d.over, ("ring",), L, d.text)
        gens = [(g[1], g[2], g[3]) for g in d.body]
        for k, (name, deg, _) in enumerate(gens):
            if deg >= 0:
                raise SessionError(f"generator {name} must have negative degree", *_span_col(d, k, name))
        A = DGAlgebra(R, gens)
        if A._parse_errors:
            name, msg = A._parse_errors[0]
            k = next(i for i, g in enumerate(gens) if g[0] == name)
            try:
                A.parse(gens[k][2], upto=k)
            except ParseError as exc:
                raise _poly_error(exc, d, gens[k][2], k) from None
        for k, ((name, deg, expr), dg) in enumerate(zip(gens, A.gen_differentials)):
            if dg and (not A.is_homogeneous(dg) or A.degree(dg) != deg + 1):
                raise SessionError(f"degree mismatch: d({name}) must have degree {deg + 1}", *_span_col(d, k, expr))
        return A
    if d.op == "koszul":
        _need(d, 1, "a ring before ':'")
        R = env.get(d.args[0], ("ring",), L, d.text)
        return koszul_algebra(R, [_poly(R, e, d) for e in d.elements])
    raise SessionError(f"unknown DG-algebra constructor {d.op!r}", L, _col(d.text, d.op))


def _span_col(d: Decl, k: int, piece: str) -> tuple[int, int]:
    line, text = d.at(k)
    return line, _col(text, piece)


def _as_module(env, name, line, raw=""):
    kind = env.objects.get(name, (None,))[0]
    if kind == "dga":
        return free_module(env.get(name, ("dga",), line, raw))
    return env.get(name, ("dgmodule",), line, raw)


class _ModEvaluator:
    """Evaluates ``sum a_j * b_j`` with algebra coefficients on the left."""

    def __init__(self, A: DGAlgebra, names: dict):
        from .dg import _AlgEvaluator

        self.A = A
        self.alg = _AlgEvaluator(A, None)
        self.names = names

    @staticmethod
    def _is_mod(v):
        return isinstance(v, tuple) and v and v[0] == "mod"

    def num(self, q):
        return self.alg.num(q)

    def var(self, name, col):
        if name in self.names:
            return ("mod", {self.names[name]: self.A.const(1)})
        return self.alg.var(name, col)

    def add(self, a, b):
        if self._is_mod(a) and self._is_mod(b):
            out = dict(a[1])
            for j, c in b[1].items():
                out[j] = self.A.add(out.get(j, {}), c)
            return ("mod", out)
        if self._is_mod(a) or self._is_mod(b):
            other = b if self._is_mod(a) else a
            if other:
                raise ParseError("cannot add an algebra element to a module element")
            return a if self._is_mod(a) else b
        return self.alg.add(a, b)

    def neg(self, a):
        if self._is_mod(a):
            return ("mod", {j: self.A.neg(c) for j, c in a[1].items()})
        return self.alg.neg(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._is_mod(a):
            raise ParseError("write algebra coefficients to the left of basis elements")
        if self._is_mod(b):
            return ("mod", {j: self.A.mul(a, c) for j, c in b[1].items()})
        return self.alg.mul(a, b)

    def pow(self, a, n):
        if self._is_mod(a):
            raise ParseError("cannot raise a module element to a power")
        return self.alg.pow(a, n)


def _build_module(env, d: Decl):
    L = d.line
    if d.op is None:
        A = env.get(d.over, ("dga",), L, d.text)
        basis = [(b[1], b[2]) for b in d.body if b[0] == "basis"]
        names = {n: i for i, (n, _) in enumerate(basis)}
        if len(names) != len(basis):
            raise SessionError("repeated basis name", L)
        clash = set(names) & (set(A.names) | set(A.base.variables))
        if clash:
            raise SessionError(f"basis name {sorted(clash)[0]!r} clashes with a variable", L)
        diff = {}
        ev = _ModEvaluator(A, names)
        for k, item in enumerate(d.body):
            if item[0] != "d":
                continue
            src, expr = item[1], item[2]
            if src not in names:
                raise SessionError(f"unknown basis element {src!r}", *_span_col(d, k, src))
            j = names[src]
            try:
                val = evaluate(parse_expression(expr), ev)
            except ParseError as exc:
                raise _poly_error(exc, d, expr, k) from None
            if not ev._is_mod(val):
                if val:
                    raise SessionError(f"d {src} must be a combination of basis elements", *_span_col(d, k, expr))
                continue
            for i, a in val[1].items():
                a = A.reduce(a)
                if not a:
                    continue
                want = basis[j][1] + 1 - basis[i][1]
                for deg in A.homogeneous_parts(a):
                    if deg != want:
                        raise SessionError(
                            f"degree mismatch in d {src}: coefficient of {basis[i][0]} has degree {deg}, expected {want}",
                            *_span_col(d, k, expr),
                        )
                diff[(i, j)] = a
        return DGModule(A, basis, diff)
    op = d.op
    if op == "free":
        if len(d.args) not in (1, 2):
            raise SessionError("free expects a DG-algebra and an optional degree", L)
        A = env.get(d.args[0], ("dga",), L, d.text)
        return free_module(A, _int(d.args[1], d) if len(d.args) == 2 else 0)
    if op == "koszul":
        _need(d, 1, "a DG-algebra before ':'")
        A = env.get(d.args[0], ("dga",), L, d.text)
        return koszul_module(A, [_poly(A.base, e, d) for e in d.elements])
    if op == "cone":
        _need(d, 1, "a DG-module")
        M = _as_module(env, d.args[0], L, d.text)
        if d.elements:
            if len(d.elements) != 1:
                raise SessionError("cone M : f takes a single element", L)
            return cone_of_element(M, _poly(M.algebra.base, d.elements[0], d))
        return cone_identity(M)
    if op in ("tensor", "sum"):
        _need(d, 2, "two DG-modules")
        M, N = (_as_module(env, a, L, d.text) for a in d.args)
        if M.algebra is not N.algebra:
            raise SessionError(f"{op} needs modules over the same DG-algebra", L)
        return dg_tensor(M, N) if op == "tensor" else direct_sum(M, N)
    if op == "shift":
        _need(d, 2, "a DG-module and an integer")
        return shift(_as_module(env, d.args[0], L, d.text), _int(d.args[1], d))
    if op == "restrict":
        if len(d.args) != 3 or d.args[1] != "to":
            raise SessionError("restrict expects 'restrict X to A'", L)
        X = env.get(d.args[0], ("complex",), L, d.text)
        A = env.get(d.args[2], ("dga",), L, d.text)
        return RestrictedModule(X, A)
    raise SessionError(f"unknown DG-module constructor {op!r}", L, _col(d.text, op))


# ---------------------------------------------------------------- running


@dataclass
class RunOptions:
    seed: int = DEFAULT_SEED
    spair_budget: int = DEFAULT_SPAIR_BUDGET
    window: tuple | None = None
    depth: int | None = None
    jobs: int = 1


class CheckFailed(Exception):
    pass


def resolve_options(s: Session, **overrides) -> RunOptions:
    o = RunOptions()
    o.seed = s.options.get("seed", o.seed)
    o.spair_budget = s.options.get("spair-budget", o.spair_budget)
    o.window = s.options.get("window")
    o.depth = s.options.get("depth")
    for k, v in overrides.items():
        if v is not None:
            setattr(o, k, v)
    return o


def run_session(s: Session, env: Environment | None = None, **overrides) -> dict:
    """Execute every command; the report is deterministic for a fixed seed."""
    opts = resolve_options(s, **overrides)
    env = env or elaborate(s)

    def job(c):
        ctx = contextvars.copy_context()
        return ctx.run(_run_command, env, c, opts)

    if opts.jobs > 1:
        with ThreadPoolExecutor(opts.jobs) as pool:
            results = list(pool.map(job, s.commands))
    else:
        results = [job(c) for c in s.commands]
    summary = {k: sum(1 for r in results if r["status"] == k) for k in ("pass", "fail", "error", "budget")}
    oracle = [dict(r["oracle_crosscheck"], command=i) for i, r in enumerate(results) if "oracle_crosscheck" in r]
    return {
        "field": s.field,
        "seed": opts.seed,
        "spair_budget": opts.spair_budget,
        "commands": results,
        "oracle_crosscheck": oracle,
        "summary": summary,
    }


def exit_code(report: dict) -> int:
    summary = report["summary"]
    if summary["budget"]:
        return 3
    if summary["fail"] or summary["error"]:
        return 1
    return 0


def _run_command(env: Environment, c: Command, opts: RunOptions) -> dict:
    out: dict = {"command": c.op, "args": list(c.args), "line": c.line}
    if c.expect is not None:
        out["expect"] = c.expect
    try:
        with spair_budget(opts.spair_budget):
            result, ok = _HANDLERS[c.op](env, c, opts)
        out["result"] = result
        if isinstance(result, dict) and "oracle_crosscheck" in result:
            out["oracle_crosscheck"] = result.pop("oracle_crosscheck")
        out["status"] = "pass" if ok else "fail"
    except GroebnerBudgetExceeded as exc:
        out["status"] = "budget"
        out["error"] = str(exc)
    except (SessionError, VerdictError, WindowRequired, InsufficientDepth, CharacteristicError, ValueError) as exc:
        out["status"] = "error"
        out["error"] = str(exc)
    return out


def _obj(env, name, line):
    if name not in env.objects:
        raise SessionError(f"unknown name {name!r}", line)
    kind, obj = env.objects[name]
    if kind == "dga":
        return "dgmodule", free_module(obj)
    return kind, obj


def _arity(c: Command, n: int):
    if len(c.args) != n:
        raise SessionError(f"{c.op} takes {n} argument(s)", c.line)


def _yesno(c: Command, answer: str, default: str | None = None) -> bool:
    want = c.expect if c.expect is not None else default
    return want is None or answer == want


def _cmd_validate(env, c, opts):
    _arity(c, 1)
    kind, obj = env.objects.get(c.args[0], (None, None))
    if kind not in ("complex", "dga", "dgmodule"):
        raise SessionError(f"cannot validate {c.args[0]!r}", c.line)
    if isinstance(obj, RestrictedModule):
        rep = obj.complex.validate()
    else:
        rep = obj.validate()
    res = rep.to_json()
    want = c.expect or "ok"
    if want not in ("ok", "invalid"):
        raise SessionError("validate expects 'ok' or 'invalid'", c.line)
    return res, (rep.ok == (want == "ok"))


def _table_for(env, c, opts, name):
    kind, obj = _obj(env, name, c.line)
    if kind == "complex":
        return obj.cohomology_table()
    if kind == "dgmodule":
        if isinstance(obj, RestrictedModule):
            return obj.complex.cohomology_table()
        w = c.window or opts.window
        return dg_cohomology(obj, w)
    raise SessionError(f"{name!r} has no cohomology", c.line)


def _degrees_expect(c: Command, nonzero: list[int]) -> bool:
    if c.expect is None:
        return True
    e = c.expect
    if e == "zero":
        return not nonzero
    if e == "nonzero":
        return bool(nonzero)
    m = re.fullmatch(r"degrees\s+(-?\d+(?:\s*,\s*-?\d+)*)", e)
    if not m:
        raise SessionError(f"cannot understand expectation {e!r}", c.line)
    return sorted(int(x) for x in m.group(1).split(",")) == sorted(nonzero)


def _cmd_cohomology(env, c, opts):
    _arity(c, 1)
    T = _table_for(env, c, opts, c.args[0])
    nz = T.nonzero_degrees()
    res = {"ring": repr(T.ring), "nonzero_degrees": nz, "table": T.to_json()}
    if T.window is not None:
        res["certified_range"] = list(T.window)
    return res, _degrees_expect(c, nz)


def _crosscheck(env, c, opts, kind, obj) -> dict:
    """Fitting-ideal support vs pointwise fiber dimensions on a point grid."""
    if kind == "complex":
        X = obj
    elif isinstance(obj, RestrictedModule):
        X = obj.complex
    else:
        X = reduce_to_h0(obj)
    supp = support_of(obj)
    grid = PointGrid(X.ring, seed=opts.seed)
    disagree = []
    for pt in grid:
        sampled = any(dense_cohomology_dims(X, pt).values())
        if sampled != in_zero_set(supp.ideal, pt):
            disagree.append(repr(pt))
    return {"object": c.args[0], "points": len(grid), "agree": not disagree, "disagreements": disagree}


def _cmd_support(env, c, opts):
    _arity(c, 1)
    kind, obj = _obj(env, c.args[0], c.line)
    supp = support_of(obj)
    res = {"ring": repr(supp.ring), "ideal": supp.to_json(), "empty": supp.is_empty()}
    cross = _crosscheck(env, c, opts, kind, obj)
    ok = cross["agree"]
    if c.expect is not None:
        e = c.expect.strip()
        if e in ("empty", "(1)"):
            ok = ok and supp.is_empty()
        else:
            if not (e.startswith("(") and e.endswith(")")):
                raise SessionError("support expects an ideal like (x, y) or 'empty'", c.line)
            gens = [g for g in _split_top(e[1:-1]) if g]
            try:
                want = SupportIdeal.of(supp.ring, [supp.ring.poly.parse(g) for g in gens])
            except ParseError as exc:
                raise SessionError(f"bad expected ideal: {exc}", c.line) from None
            v = support_equal(supp, want)
            res["expect_verdict"] = v.to_json()
            ok = ok and v.answer == "yes"
    res["oracle_crosscheck"] = cross
    return res, ok


def _cmd_support_equal(env, c, opts):
    _arity(c, 2)
    (_, a), (_, b) = (_obj(env, n, c.line) for n in c.args)
    v = support_equal(support_of(a), support_of(b))
    return v.to_json(), _yesno(c, v.answer, "yes")


def _pair(env, c):
    _arity(c, 2)
    return [_obj(env, n, c.line)[1] for n in c.args]


def _cmd_builds(env, c, opts):
    M, N = _pair(env, c)
    v = builds(M, N)
    return v.to_json(), _yesno(c, v.answer)


def _cmd_finitely_builds(env, c, opts):
    M, N = _pair(env, c)
    v = finitely_builds(M, N)
    return v.to_json(), _yesno(c, v.answer)


def _holds(c, holds: bool) -> bool:
    want = c.expect or "holds"
    if want not in ("holds", "fails"):
        raise SessionError("expect 'holds' or 'fails'", c.line)
    return holds == (want == "holds")


def _cmd_tensor(env, c, opts):
    M, N = _pair(env, c)
    r = tensor_support_check(M, N)
    return r.to_json(), _holds(c, r.holds)


def _cmd_reduction(env, c, opts):
    if len(c.args) not in (1, 2):
        raise SessionError("reduction-check takes one or two DG-modules", c.line)
    mods = [_obj(env, n, c.line) for n in c.args]
    if any(k != "dgmodule" or isinstance(o, RestrictedModule) for k, o in mods):
        raise SessionError("reduction-check needs DG-modules", c.line)
    r = reduction_supp_check(*[o for _, o in mods])
    return r.to_json(), _holds(c, r.holds)


def _cmd_reduce(env, c, opts):
    _arity(c, 1)
    kind, M = _obj(env, c.args[0], c.line)
    if kind != "dgmodule" or isinstance(M, RestrictedModule):
        raise SessionError("reduce needs a DG-module or DG-algebra", c.line)
    X = reduce_to_h0(M)
    nz = X.cohomology_table().nonzero_degrees()
    res = {"ring": repr(X.ring), "complex": X.to_json(), "nonzero_degrees": nz}
    if c.expect is not None and c.expect.startswith("equals "):
        other = env.get(c.expect.split()[1], ("complex",), c.line)
        same = X.same_matrices(other)
        res["equals"] = same
        return res, same
    return res, _degrees_expect(c, nz)


def _cmd_coreduce(env, c, opts):
    _arity(c, 1)
    kind, M = _obj(env, c.args[0], c.line)
    window = c.window or opts.window
    if window is None:
        raise SessionError("coreduce needs a window", c.line)
    if kind == "complex":
        raise SessionError("coreduce a complex over H0 A via 'dgmodule X = restrict C to A'", c.line)
    res_depth = None
    if opts.depth is not None:
        A = M.algebra
        res_depth = tate_resolve(A, opts.depth)
    r = coreduction(M, window, resolution=res_depth)
    res = r.to_json()
    if c.expect is None:
        return res, True
    if c.expect == "zero":
        return res, r.is_zero()
    m = re.fullmatch(r"dims\s+(\d+(?:\s*,\s*\d+)*)", c.expect)
    if not m:
        raise SessionError(f"cannot understand expectation {c.expect!r}", c.line)
    want = [int(x) for x in m.group(1).split(",")]
    got = [r.dims[n] for n in range(window[0], window[1] + 1)] if r.dims is not None else None
    return res, got == want


def _cmd_truncate(env, c, opts):
    _arity(c, 1)
    if c.at is None:
        raise SessionError("truncate needs 'at n'", c.line)
    T = _table_for(env, c, opts, c.args[0])
    tri = truncation_triangle(T, c.at)
    grid = PointGrid(T.ring, seed=opts.seed)
    bad = [repr(p) for p in grid if not tri.check_at(p)]
    res = {
        "at": c.at,
        "left": tri.left.nonzero_degrees(),
        "right": tri.right.nonzero_degrees(),
        "points": len(grid),
        "failures": bad,
    }
    return res, _holds(c, not bad)


def _cmd_thick(env, c, opts):
    _arity(c, 2)
    _, X = _obj(env, c.args[0], c.line)
    S = env.get(c.args[1], ("closed",), c.line)
    v = thick_membership(X, S)
    return v.to_json(), _yesno(c, v.answer)


def _cmd_crosscheck(env, c, opts):
    _arity(c, 1)
    kind, obj = _obj(env, c.args[0], c.line)
    cross = _crosscheck(env, c, opts, kind, obj)
    res = {"oracle_crosscheck": cross}
    ok = cross["agree"]
    if kind == "dgmodule" and not isinstance(obj, RestrictedModule):
        # conservativity: acyclic exactly when the reduction is acyclic
        a = dg_cohomology(obj).is_zero()
        b = reduce_to_h0(obj).cohomology_table().is_zero()
        res["acyclic"] = a
        res["reduction_acyclic"] = b
        ok = ok and a == b
    return res, _holds(c, ok)


_HANDLERS = {
    "validate": _cmd_validate,
    "cohomology": _cmd_cohomology,
    "support": _cmd_support,
    "support-equal": _cmd_support_equal,
    "builds": _cmd_builds,
    "finitely-builds": _cmd_finitely_builds,
    "tensor-check": _cmd_tensor,
    "reduce": _cmd_reduce,
    "coreduce": _cmd_coreduce,
    "truncate": _cmd_truncate,
    "thick-member": _cmd_thick,
    "crosscheck": _cmd_crosscheck,
    "reduction-check": _cmd_reduction,
}


def load_session(path) -> Session:
    with open(path, encoding="utf-8") as fh:
        return parse_session(fh.read())
