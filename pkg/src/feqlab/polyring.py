"""Sparse multivariate polynomials over Q(zeta_L).

A polynomial is a map from monomials to nonzero coefficients.  A monomial is a
tuple of ``(variable, exponent)`` pairs with positive exponents, sorted by the
global variable order, so structurally equal polynomials are mathematically
equal.  Order ``L = 1`` is the rational coefficient kind.

Variable names:

* complex form: ``z zbar x xbar y ybar``
* real form: ``x1 x2 ...``, steps ``h1 h2 ...``, step families ``h[r]i``,
  and the bivariate pair ``u w`` (u + i*w = z)
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from .cyclotomic import CyclotomicNumber, DomainError, euler_phi, lcm, zeta_pow

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction, CyclotomicNumber]

COMPLEX_VARS = ("z", "zbar", "x", "xbar", "y", "ybar")
_CONJ = {"z": "zbar", "zbar": "z", "x": "xbar", "xbar": "x", "y": "ybar", "ybar": "y"}
_INDEXED = re.compile(r"^(x|h)(\d+)$|^h\[(\d+)\](\d+)$")


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple[int, ...]:
    """Position of a variable in the global order z < zbar < x < ... < x1 < ... < h1 < ... < u < w."""
    if name in COMPLEX_VARS:
        return (COMPLEX_VARS.index(name),)
    m = _INDEXED.match(name)
    if m:
        if m.group(1) == "x":
            return (6, int(m.group(2)))
        if m.group(1) == "h":
            return (7, 0, int(m.group(2)))
        return (7, int(m.group(3)), int(m.group(4)))
    if name == "u":
        return (8, 0)
    if name == "w":
        return (8, 1)
    raise DomainError(f"unknown variable {name!r}")


def is_valid_var(name: str) -> bool:
    try:
        var_key(name)
    except DomainError:
        return False
    return True


def conjugate_var(name: str) -> str:
    return _CONJ.get(name, name)


def real_var(i: int) -> str:
    return f"x{i}"


def step_var(i: int, family: int | None = None) -> str:
    return f"h{i}" if family is None else f"h[{family}]{i}"


@lru_cache(maxsize=1 << 16)
def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: var_key(ve[0])))


def make_monomial(exps: Mapping[str, int]) -> Monomial:
    for v, e in exps.items():
        var_key(v)
        if e < 0:
            raise DomainError(f"negative exponent for {v}")
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda ve: var_key(ve[0])))


def _as_coeff(c: Scalar, order: int) -> CyclotomicNumber:
    if isinstance(c, CyclotomicNumber):
        if c.order == order:
            return c
        if c.is_rational() or order % c.order == 0:
            return c.lift(order)
        raise DomainError(f"coefficient of order {c.order} does not fit order {order}")
    if isinstance(c, (int, Fraction)):
        return CyclotomicNumber.from_rational(c, order)
    raise TypeError(f"unsupported coefficient {c!r}")


class SparsePolynomial:
    """Immutable sparse polynomial with coefficients in Q(zeta_order)."""

    __slots__ = ("order", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None, order: int = 1):
        if order < 1:
            raise DomainError(f"order must be >= 1, got {order}")
        self.order = order
        clean: dict[Monomial, CyclotomicNumber] = {}
        for mono, c in (terms or {}).items():
            c = _as_coeff(c, order)
            if c:
                clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict, order: int) -> "SparsePolynomial":
        obj = cls.__new__(cls)
        obj.order = order
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar, order: int = 1) -> "SparsePolynomial":
        return cls({(): c}, order)

    @classmethod
    def var(cls, name: str, order: int = 1) -> "SparsePolynomial":
        var_key(name)
        return cls({((name, 1),): 1}, order)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Scalar = 1, order: int = 1) -> "SparsePolynomial":
        return cls({make_monomial(exps): coeff}, order)

    @classmethod
    def zero(cls, order: int = 1) -> "SparsePolynomial":
        return cls._from_clean({}, order)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, CyclotomicNumber]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational_kind(self) -> bool:
        return euler_phi(self.order) == 1

    def has_rational_coeffs(self) -> bool:
        return all(c.is_rational() for c in self._terms.values())

    def variables(self) -> set[str]:
        return {v for mono in self._terms for v, _ in mono}

    def coefficient(self, exps: Mapping[str, int]) -> CyclotomicNumber:
        return self._terms.get(make_monomial(exps), CyclotomicNumber.from_rational(0, self.order))

    def constant_term(self) -> CyclotomicNumber:
        return self._terms.get((), CyclotomicNumber.from_rational(0, self.order))

    def lift(self, order: int) -> "SparsePolynomial":
        """Same polynomial viewed over Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order and not self.has_rational_coeffs():
            raise DomainError(f"cannot lift order {self.order} to {order}")
        return SparsePolynomial._from_clean({m: c.lift(order) for m, c in self._terms.items()}, order)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "SparsePolynomial"):
        if other.order != self.order:
            raise DomainError(f"coefficient kind mismatch: order {self.order} vs {other.order}")

    def _wrap(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return SparsePolynomial.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out[m] + c if m in out else c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SparsePolynomial._from_clean(out, self.order)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._from_clean({m: -c for m, c in self._terms.items()}, self.order)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "SparsePolynomial":
        c = _as_coeff(c, self.order)
        if not c:
            return SparsePolynomial.zero(self.order)
        return SparsePolynomial._from_clean({m: v * c for m, v in self._terms.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self.scale(other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        self._check(other)
        out: dict[Monomial, CyclotomicNumber] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                p = ca * cb
                out[m] = out[m] + p if m in out else p
        return SparsePolynomial._from_clean({m: c for m, c in out.items() if c}, self.order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("polynomial powers must be non-negative integers")
        acc = SparsePolynomial.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = SparsePolynomial.constant(other, self.order if not isinstance(other, CyclotomicNumber) else other.order)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        from .parser import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"SparsePolynomial({self}, order={self.order})"

    # -- methods mirroring the module functions ----------------------------

    def substitute(self, bindings):
        return substitute(self, bindings)

    def conj(self):
        return conj_poly(self)

    def degrees(self):
        return degrees(self)

    def differentiate(self, v):
        return differentiate(self, v)

    def evaluate(self, assignment):
        return evaluate(self, assignment)


Poly = SparsePolynomial


def poly_arith(p: SparsePolynomial, q: SparsePolynomial, op: str) -> SparsePolynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise DomainError(f"unknown operation {op!r}")


def substitute(p: SparsePolynomial, bindings: Mapping[str, SparsePolynomial]) -> SparsePolynomial:
    """Simultaneously replace variables by polynomials; unbound variables pass through."""
    if not bindings:
        return p
    for v, b in bindings.items():
        if b.order != p.order:
            raise DomainError(f"binding for {v} has order {b.order}, polynomial has {p.order}")
    powers: dict[tuple[str, int], SparsePolynomial] = {}

    def power(v: str, e: int) -> SparsePolynomial:
        key = (v, e)
        if key not in powers:
            powers[key] = bindings[v] if e == 1 else power(v, e - 1) * bindings[v]
        return powers[key]

    result: dict[Monomial, CyclotomicNumber] = {}
    for mono, c in p.items():
        kept = tuple((v, e) for v, e in mono if v not in bindings)
        acc = SparsePolynomial._from_clean({kept: c}, p.order)
        for v, e in mono:
            if v in bindings:
                acc = acc * power(v, e)
        for m, cc in acc.items():
            result[m] = result[m] + cc if m in result else cc
    return SparsePolynomial._from_clean({m: c for m, c in result.items() if c}, p.order)


def conj_poly(p: SparsePolynomial) -> SparsePolynomial:
    """Conjugate coefficients and swap each complex variable with its partner."""
    out = {}
    for mono, c in p.items():
        m = tuple(sorted(((conjugate_var(v), e) for v, e in mono), key=lambda ve: var_key(ve[0])))
        out[m] = c.conj()
    return SparsePolynomial._from_clean(out, p.order)


def degrees(p: SparsePolynomial) -> tuple[int, dict[str, int]]:
    """(total degree, max exponent per variable); the zero polynomial has total degree -1."""
    total = -1
    per_var: dict[str, int] = {}
    for mono in p._terms:
        total = max(total, sum(e for _, e in mono))
        for v, e in mono:
            per_var[v] = max(per_var.get(v, 0), e)
    return total, per_var


def total_degree(p: SparsePolynomial) -> int:
    return degrees(p)[0]


def differentiate(p: SparsePolynomial, v: str) -> SparsePolynomial:
    out = {}
    for mono, c in p.items():
        exps = dict(mono)
        e = exps.get(v, 0)
        if e:
            exps[v] = e - 1
            out[make_monomial(exps)] = c * e
    return SparsePolynomial._from_clean(out, p.order)


def laplacian(p: SparsePolynomial, u: str = "u", w: str = "w") -> SparsePolynomial:
    return differentiate(differentiate(p, u), u) + differentiate(differentiate(p, w), w)


def evaluate(p: SparsePolynomial, assignment: Mapping[str, Scalar]) -> CyclotomicNumber:
    missing = p.variables() - set(assignment)
    if missing:
        raise DomainError(f"no value for variables {sorted(missing)}")
    total = CyclotomicNumber.from_rational(0, p.order)
    cache: dict[tuple[str, int], CyclotomicNumber] = {}
    for mono, c in p.items():
        term = c
        for v, e in mono:
            if (v, e) not in cache:
                val = assignment[v]
                if not isinstance(val, CyclotomicNumber):
                    val = CyclotomicNumber.from_rational(val, p.order)
                cache[(v, e)] = val ** e
            term = term * cache[(v, e)]
        total = total + term
    return total


def _imag_unit(order: int) -> CyclotomicNumber:
    return zeta_pow(order, order // 4)


def complexify(p: SparsePolynomial, u: str = "u", w: str = "w") -> SparsePolynomial:
    """Rewrite p(u, w) in z, zbar using u = (z + zbar)/2, w = (z - zbar)/(2i)."""
    order = lcm(p.order, 4)
    q = p.lift(order)
    z = SparsePolynomial.var("z", order)
    zb = SparsePolynomial.var("zbar", order)
    half = Fraction(1, 2)
    i = _imag_unit(order)
    return substitute(q, {u: (z + zb) * half, w: (z - zb) * (half / i)})


def realize(q: SparsePolynomial, u: str = "u", w: str = "w") -> SparsePolynomial:
    """Rewrite q(z, zbar) in real variables using z = u + i*w, zbar = u - i*w."""
    order = lcm(q.order, 4)
    p = q.lift(order)
    uu = SparsePolynomial.var(u, order)
    ww = SparsePolynomial.var(w, order)
    i = _imag_unit(order)
    return substitute(p, {"z": uu + ww * i, "zbar": uu - ww * i})


def real_part(p: SparsePolynomial) -> SparsePolynomial:
    """Coefficientwise real part; meaningful for polynomials in self-conjugate variables."""
    return SparsePolynomial({m: (c + c.conj()) * Fraction(1, 2) for m, c in p.items()}, p.order)


def imag_part(p: SparsePolynomial) -> SparsePolynomial:
    order = lcm(p.order, 4)
    i = _imag_unit(order)
    q = p.lift(order)
    return SparsePolynomial({m: (c - c.conj()) / (i * 2) for m, c in q.items()}, order)
