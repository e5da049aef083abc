"""Text input and canonical output for polynomials.

Grammar (lowest precedence first)::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' INT)?
    atom     := rational | 'i' | zeta | VARIABLE | '(' expr ')' | '-' factor
    rational := INT ('/' INT)?
    zeta     := 'zeta' '(' INT ')'

Variables are regime checked: the complex regime accepts ``z zbar x xbar y
ybar``; the real regime accepts ``x1.. h1.. h[r]i u w`` and rejects ``i``.
Implicit multiplication is not supported.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CyclotomicNumber, DomainError, euler_phi, lcm, zeta_pow
from .polyring import COMPLEX_VARS, SparsePolynomial, var_key

MAX_EXPONENT = 1 << 16
REGIMES = ("complex", "real", "any")

_TOKEN = re.compile(r"(?P<int>\d+)|(?P<name>h\[\d+\]\d+|[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()])")
_REAL_VAR = re.compile(r"^(?:x(\d+)|h(\d+)|h\[(\d+)\](\d+)|u|w)$")


class ParseError(DomainError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class ExprSource:
    text: str
    regime: str = "complex"
    d: int | None = None


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", n))
    return toks


# Expression values carry their own cyclotomic order; combining two values lifts
# both to the lcm of their orders, so "i + zeta(3)" lands in Q(zeta_12).

def _unify(a: SparsePolynomial, b: SparsePolynomial) -> tuple[SparsePolynomial, SparsePolynomial]:
    if a.order == b.order:
        return a, b
    L = lcm(a.order, b.order)
    return a.lift(L), b.lift(L)


class _Parser:
    def __init__(self, text: str, regime: str, d: int | None):
        if regime not in REGIMES:
            raise DomainError(f"unknown regime {regime!r}")
        self.toks = _tokenize(text)
        self.k = 0
        self.regime = regime
        self.d = d

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def advance(self) -> _Tok:
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, value: str) -> _Tok:
        t = self.tok
        if t.kind != "op" or t.value != value:
            raise ParseError(f"expected {value!r}", t.pos)
        return self.advance()

    def parse(self) -> SparsePolynomial:
        if self.tok.kind == "end":
            raise ParseError("empty expression", self.tok.pos)
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.value!r}", self.tok.pos)
        return value

    def expr(self) -> SparsePolynomial:
        value = self.term()
        while self.tok.kind == "op" and self.tok.value in "+-":
            op = self.advance().value
            a, b = _unify(value, self.term())
            value = a + b if op == "+" else a - b
        return value

    def term(self) -> SparsePolynomial:
        value = self.factor()
        while self.tok.kind == "op" and self.tok.value == "*":
            self.advance()
            a, b = _unify(value, self.factor())
            value = a * b
        return value

    def factor(self) -> SparsePolynomial:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.value == "^":
            self.advance()
            t = self.tok
            if t.kind != "int":
                raise ParseError("expected non-negative integer exponent", t.pos)
            self.advance()
            e = int(t.value)
            if e > MAX_EXPONENT:
                raise ParseError(f"exponent {e} exceeds {MAX_EXPONENT}", t.pos)
            base = base ** e
        return base

    def atom(self) -> SparsePolynomial:
        t = self.tok
        if t.kind == "int":
            self.advance()
            num = int(t.value)
            if self.tok.kind == "op" and self.tok.value == "/":
                self.advance()
                dt = self.tok
                if dt.kind != "int":
                    raise ParseError("expected denominator", dt.pos)
                self.advance()
                if int(dt.value) == 0:
                    raise ParseError("zero denominator", dt.pos)
                return SparsePolynomial.constant(Fraction(num, int(dt.value)))
            return SparsePolynomial.constant(num)
        if t.kind == "op" and t.value == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if t.kind == "op" and t.value == "-":
            self.advance()
            return -self.factor()
        if t.kind == "name":
            self.advance()
            if t.value == "i":
                if self.regime == "real":
                    raise ParseError("'i' is not allowed in the real regime", t.pos)
                return SparsePolynomial.constant(zeta_pow(4, 1), 4)
            if t.value == "zeta":
                if self.regime == "real":
                    raise ParseError("'zeta' is not allowed in the real regime", t.pos)
                self.expect("(")
                nt = self.tok
                if nt.kind != "int" or int(nt.value) < 1:
                    raise ParseError("expected positive cyclotomic order", nt.pos)
                self.advance()
                self.expect(")")
                L = int(nt.value)
                return SparsePolynomial.constant(zeta_pow(L, 1), L)
            self.check_var(t)
            return SparsePolynomial.var(t.value)
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.value!r}", t.pos)

    def check_var(self, t: _Tok):
        name = t.value
        if self.regime in ("complex", "any") and name in COMPLEX_VARS:
            return
        if self.regime in ("real", "any"):
            m = _REAL_VAR.match(name)
            if m:
                idx = m.group(1) or m.group(2) or m.group(4)
                if idx is not None:
                    i = int(idx)
                    if i < 1 or (self.d is not None and i > self.d):
                        raise ParseError(f"variable {name!r} outside dimension {self.d}", t.pos)
                return
        raise ParseError(f"unknown variable {name!r} for {self.regime} regime", t.pos)


def parse(src, regime: str = "complex", d: int | None = None) -> SparsePolynomial:
    """Parse text (or an :class:`ExprSource`) into a canonical polynomial."""
    if isinstance(src, ExprSource):
        src, regime, d = src.text, src.regime, src.d
    return _Parser(src, regime, d).parse()


# -- formatting ---------------------------------------------------------------

def _term_key(item):
    mono, _ = item
    deg = sum(e for _, e in mono)
    return (-deg, [(var_key(v), -e) for v, e in mono])


def _format_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def format_scalar(c: CyclotomicNumber) -> str:
    """Coefficient text; 'a + b*i' style for Q(i), explicit zeta(L)^k atoms otherwise."""
    if c.is_rational():
        return _format_rational(c.to_rational())
    if euler_phi(c.order) == 1:
        return _format_rational(c.lift(1).to_rational())
    atom = "i" if c.order == 4 else f"zeta({c.order})"
    parts = []
    for j, q in enumerate(c.coeffs):
        if not q:
            continue
        if j == 0:
            body = _format_rational(abs(q))
        else:
            power = atom if j == 1 else f"{atom}^{j}"
            body = power if abs(q) == 1 else f"{_format_rational(abs(q))}*{power}"
        if not parts:
            parts.append(body if q > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if q > 0 else f"- {body}")
    return " ".join(parts)


def _format_monomial(mono) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)


def format_poly(p: SparsePolynomial) -> str:
    """Deterministic canonical text; ``parse(format_poly(p)) == p``."""
    if p.is_zero():
        return "0"
    out = []
    for mono, c in sorted(p.items(), key=_term_key):
        m = _format_monomial(mono)
        if c.is_rational():
            q = c.to_rational()
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            if not m:
                body = _format_rational(mag)
            elif mag == 1:
                body = m
            else:
                body = f"{_format_rational(mag)}*{m}"
        else:
            sign = "+"
            body = f"({format_scalar(c)})" + (f"*{m}" if m else "")
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def format(p: SparsePolynomial) -> str:  # noqa: A001
    return format_poly(p)
