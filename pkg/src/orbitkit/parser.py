"""Line-oriented input format for an algebra, a dilation and optional functionals.

    # Heisenberg group
    dim 3
    basis X1 X2 X3
    [X3, X2] = X1
    dilation 4 2 2
    lambda rational 1 0 0
    lambda generic
    lambda mixed 1 * 0          # * marks an independent generic entry
    lambda qstruct t1 t2        # 1, t1, t2 declared Q-linearly independent
      X1 = t1 + 1/2*t2          # rows for unlisted basis names are 0
    lattice

Every error is reported as a SpecParseError carrying line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import LieAlgebra
from .coadjoint import Functional
from .errors import SpecParseError

__all__ = ["SpecDocument", "LambdaDecl", "parse_spec"]

NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_NAME_RE = re.compile(NAME + r"$")
_NUMBER_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?$")
_BRACKET_RE = re.compile(r"\[\s*(" + NAME + r")\s*,\s*(" + NAME + r")\s*\]\s*=\s*(.*)$")
_ROW_RE = re.compile(r"(" + NAME + r")\s*=\s*(.*)$")
_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


@dataclass(frozen=True)
class LambdaDecl:
    mode: str
    values: tuple = ()  # rational/mixed entries (None = generic)
    symbols: tuple = ()  # qstruct symbol names
    rows: tuple = ()  # qstruct: per basis vector (c_0, c_1, ..., c_r)

    def functional(self, n: int) -> Functional:
        if self.mode == "generic":
            return Functional.generic(n)
        if self.mode == "rational":
            return Functional.rational(self.values)
        if self.mode == "mixed":
            return Functional.mixed(self.values)
        return Functional.qstruct(self.symbols, self.rows)


@dataclass
class SpecDocument:
    dim: int = 0
    names: tuple = ()
    brackets: dict = field(default_factory=dict)  # (a, b) -> {name: coeff}
    dilation: tuple | None = None
    lambdas: list = field(default_factory=list)  # [(label, LambdaDecl)]
    lattice: bool = False

    def algebra(self) -> LieAlgebra:
        return LieAlgebra.from_brackets(self.names, self.brackets)

    def functionals(self) -> dict:
        return {label: decl.functional(self.dim) for label, decl in self.lambdas}

    def canonical_text(self) -> str:
        """Normalized spec text; parsing it gives back an equal document."""
        lines = [f"dim {self.dim}", "basis " + " ".join(self.names)]
        for (a, b), rhs in self.brackets.items():
            lines.append(f"[{a}, {b}] = {_format_linear(rhs)}")
        if self.dilation is not None:
            lines.append("dilation " + " ".join(str(x) for x in self.dilation))
        for _, decl in self.lambdas:
            if decl.mode == "generic":
                lines.append("lambda generic")
            elif decl.mode in ("rational", "mixed"):
                vals = " ".join("*" if v is None else str(v) for v in decl.values)
                lines.append(f"lambda {decl.mode} {vals}")
            else:
                lines.append("lambda qstruct " + " ".join(decl.symbols))
                for name, row in zip(self.names, decl.rows):
                    if any(row):
                        coeffs = {"1": row[0]}
                        coeffs.update({s: c for s, c in zip(decl.symbols, row[1:])})
                        lines.append(f"  {name} = {_format_linear(coeffs)}")
        if self.lattice:
            lines.append("lattice")
        return "\n".join(lines) + "\n"


def _format_linear(coeffs: dict) -> str:
    parts = []
    for name, c in coeffs.items():
        if not c:
            continue
        mag = abs(c)
        if name == "1":
            body = str(mag)
        else:
            body = name if mag == 1 else f"{mag}*{name}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.doc = SpecDocument()
        self.seen: set[str] = set()
        self.pending_qstruct: tuple | None = None  # (symbols, rows dict, line number)

    def error(self, msg: str, lineno: int, col: int = 1):
        raise SpecParseError(msg, lineno, col)

    def number(self, token: str, lineno: int, col: int) -> Fraction:
        if not _NUMBER_RE.match(token):
            self.error(f"expected a rational number, got {token!r}", lineno, col)
        num, _, den = token.partition("/")
        if den and int(den) == 0:
            self.error("zero denominator", lineno, col)
        value = Fraction(num)
        return value / int(den) if den else value

    def index(self, name: str, lineno: int, col: int) -> int:
        if not self.doc.names:
            self.error("basis must be declared before it is used", lineno, col)
        if name not in self.doc.names:
            self.error(f"undeclared {name}", lineno, col)
        return self.doc.names.index(name)

    def linear(self, expr: str, allowed, lineno: int, col: int) -> dict:
        """Parse q1*N1 + q2*N2 + ... (a bare number is a coefficient of '1' if allowed)."""
        expr_stripped = expr.strip()
        if not expr_stripped:
            self.error("empty right-hand side", lineno, col)
        if expr_stripped == "0":
            return {}
        out: dict[str, Fraction] = {}
        pos = 0
        text = expr.rstrip()
        while pos < len(text):
            m = _TERM_RE.match(text, pos)
            if not m:
                self.error("malformed term", lineno, col + pos)
            sign, body = m.group(1), m.group(2).strip()
            if not sign and pos > 0 and text[pos:].strip():
                self.error("expected '+' or '-'", lineno, col + pos)
            term_col = col + m.start(2)
            if "*" in body:
                coeff_txt, _, name = body.partition("*")
                coeff = self.number(coeff_txt.strip(), lineno, term_col)
                name = name.strip()
            elif _NAME_RE.match(body):
                coeff, name = Fraction(1), body
            elif "1" in allowed:
                coeff, name = self.number(body, lineno, term_col), "1"
            else:
                parts = body.split()
                if len(parts) == 2:
                    coeff, name = self.number(parts[0], lineno, term_col), parts[1]
                else:
                    self.error(f"cannot read term {body!r}", lineno, term_col)
            if name != "1" and not _NAME_RE.match(name):
                self.error(f"bad name {name!r}", lineno, term_col)
            if name not in allowed:
                self.error(f"undeclared {name}", lineno, term_col)
            if sign == "-":
                coeff = -coeff
            out[name] = out.get(name, Fraction(0)) + coeff
            pos = m.end()
        return out

    def flush_qstruct(self):
        if self.pending_qstruct is None:
            return
        symbols, rows, _ = self.pending_qstruct
        r = len(symbols)
        table = tuple(rows.get(name, (Fraction(0),) * (r + 1)) for name in self.doc.names)
        self.add_lambda(LambdaDecl("qstruct", symbols=symbols, rows=table))
        self.pending_qstruct = None

    def add_lambda(self, decl: LambdaDecl):
        labels = [label for label, _ in self.doc.lambdas]
        label = decl.mode
        k = 2
        while label in labels:
            label = f"{decl.mode}#{k}"
            k += 1
        self.doc.lambdas.append((label, decl))

    def parse(self) -> SpecDocument:
        for lineno, raw in enumerate(self.lines, start=1):
            line = raw.split("#", 1)[0]
            if not line.strip():
                continue
            indent = len(line) - len(line.lstrip())
            body = line.strip()
            if self.pending_qstruct is not None:
                m = _ROW_RE.match(body)
                if m and not body.startswith("["):
                    self.qstruct_row(m, lineno, indent + 1)
                    continue
                self.flush_qstruct()
            if body.startswith("["):
                self.bracket(body, lineno, indent + 1)
                continue
            key, _, rest = body.partition(" ")
            handler = getattr(self, "key_" + key, None) if _NAME_RE.match(key) else None
            if handler is None:
                self.error(f"unknown key {key!r}", lineno, indent + 1)
            handler(rest.strip(), lineno, indent + len(key) + 2)
        self.flush_qstruct()
        return self.finish()

    def once(self, key: str, lineno: int):
        if key in self.seen:
            self.error(f"duplicate '{key}' line", lineno)
        self.seen.add(key)

    def key_dim(self, rest: str, lineno: int, col: int):
        self.once("dim", lineno)
        if not re.fullmatch(r"\d+", rest):
            self.error("dim expects a positive integer", lineno, col)
        n = int(rest)
        if n < 1:
            self.error("dim must be positive", lineno, col)
        self.doc.dim = n

    def key_basis(self, rest: str, lineno: int, col: int):
        self.once("basis", lineno)
        if "dim" not in self.seen:
            self.error("'dim' must precede 'basis'", lineno)
        names = rest.split()
        for name in names:
            if not _NAME_RE.match(name):
                self.error(f"bad basis name {name!r}", lineno, col + rest.find(name))
        if len(set(names)) != len(names):
            self.error("repeated basis name", lineno, col)
        if len(names) != self.doc.dim:
            self.error(f"dimension mismatch: dim {self.doc.dim} but {len(names)} basis names", lineno, col)
        self.doc.names = tuple(names)

    def bracket(self, body: str, lineno: int, col: int):
        m = _BRACKET_RE.match(body)
        if not m:
            self.error("malformed bracket line, expected [A, B] = expr", lineno, col)
        a, b, rhs = m.group(1), m.group(2), m.group(3)
        ia = self.index(a, lineno, col + m.start(1))
        ib = self.index(b, lineno, col + m.start(2))
        if ia == ib:
            self.error("bracket of a basis vector with itself", lineno, col)
        key = (a, b)
        if key in self.doc.brackets or (b, a) in self.doc.brackets:
            self.error(f"bracket [{a}, {b}] given twice", lineno, col)
        self.doc.brackets[key] = self.linear(rhs, set(self.doc.names), lineno, col + m.start(3))

    def key_dilation(self, rest: str, lineno: int, col: int):
        self.once("dilation", lineno)
        if not self.doc.names:
            self.error("basis must be declared before the dilation", lineno)
        values = self.numbers(rest, lineno, col)
        if len(values) != self.doc.dim:
            self.error(f"dimension mismatch: {len(values)} eigenvalues for dim {self.doc.dim}", lineno, col)
        for k, v in enumerate(values):
            if v == 0:
                self.error(f"zero eigenvalue at position {k + 1}", lineno, col)
        self.doc.dilation = tuple(values)

    def numbers(self, rest: str, lineno: int, col: int, allow_star: bool = False) -> list:
        out = []
        for m in re.finditer(r"\S+", rest):
            tok = m.group(0)
            if allow_star and tok == "*":
                out.append(None)
            else:
                out.append(self.number(tok, lineno, col + m.start()))
        return out

    def key_lambda(self, rest: str, lineno: int, col: int):
        if not self.doc.names:
            self.error("basis must be declared before a functional", lineno)
        mode, _, args = rest.partition(" ")
        args = args.strip()
        acol = col + len(mode) + 1
        if mode == "generic":
            if args:
                self.error("'lambda generic' takes no arguments", lineno, acol)
            self.add_lambda(LambdaDecl("generic"))
        elif mode in ("rational", "mixed"):
            values = self.numbers(args, lineno, acol, allow_star=mode == "mixed")
            if len(values) != self.doc.dim:
                self.error(f"dimension mismatch: {len(values)} entries for dim {self.doc.dim}", lineno, acol)
            self.add_lambda(LambdaDecl(mode, values=tuple(values)))
        elif mode == "qstruct":
            symbols = tuple(args.split())
            if not symbols:
                self.error("qstruct needs at least one symbol", lineno, acol)
            for s in symbols:
                if not _NAME_RE.match(s) or s in self.doc.names or s == "1":
                    self.error(f"bad symbol {s!r}", lineno, acol)
            if len(set(symbols)) != len(symbols):
                self.error("repeated symbol", lineno, acol)
            self.pending_qstruct = (symbols, {}, lineno)
        else:
            self.error(f"unknown lambda mode {mode!r}", lineno, col)

    def qstruct_row(self, m, lineno: int, col: int):
        symbols, rows, _ = self.pending_qstruct
        name = m.group(1)
        self.index(name, lineno, col)
        if name in rows:
            self.error(f"row for {name} given twice", lineno, col)
        coeffs = self.linear(m.group(2), {"1", *symbols}, lineno, col + m.start(2))
        rows[name] = (coeffs.get("1", Fraction(0)),) + tuple(coeffs.get(s, Fraction(0)) for s in symbols)

    def key_lattice(self, rest: str, lineno: int, col: int):
        self.once("lattice", lineno)
        if rest:
            self.error("'lattice' takes no arguments", lineno, col)
        self.doc.lattice = True

    def finish(self) -> SpecDocument:
        if "dim" not in self.seen:
            self.error("missing 'dim' line", max(len(self.lines), 1))
        if "basis" not in self.seen:
            self.error("missing 'basis' line", max(len(self.lines), 1))
        return self.doc


def parse_spec(text: str) -> SpecDocument:
    return _Parser(text).parse()
