"""Exact rationals and cyclotomic fields Q(zeta_L).

Elements of Q(zeta_L) are stored in the power basis 1, zeta, ..., zeta^(phi(L)-1),
reduced modulo the L-th cyclotomic polynomial.  Internally the coefficients are
kept as integer numerators over one common positive denominator, which keeps
multiplication in pure integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union


class DomainError(ValueError):
    """Raised for mathematically invalid input (zero division, bad orders, ...)."""


Rational = Union[int, Fraction]


def rat(p: int, q: int = 1) -> Fraction:
    """Reduced rational p/q with a positive denominator."""
    if q == 0:
        raise DomainError("zero denominator")
    return Fraction(p, q)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"phi undefined for {n}")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    k, m, p = 0, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            k += 1
        p += 1
    if m > 1:
        k += 1
    return -1 if k % 2 else 1


def ambient_order(N: int) -> int:
    """Order L = lcm(2N, 4) of the field holding theta, eta and i for parameter N."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    return lcm(2 * N, 4)


# -- dense polynomials over Q, ascending coefficient lists ------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    b = _trim(list(b))
    if not b:
        raise DomainError("polynomial division by zero")
    rem = [Fraction(c) for c in a]
    _trim(rem)
    quot = [Fraction(0)] * max(len(rem) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] / lead
        quot[shift] = c
        for j, bj in enumerate(b):
            rem[shift + j] -= c * bj
        _trim(rem)
    return _trim(quot), rem


def _psub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


@lru_cache(maxsize=None)
def _cyclotomic_int(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _pmul(den, _cyclotomic_int(d))
    quot, rem = _pdivmod(num, den)
    assert not rem
    assert all(c.denominator == 1 for c in quot)
    return tuple(int(c) for c in quot)


def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients of Phi_n in ascending degree, by exact division of x^n - 1."""
    if n < 1:
        raise DomainError(f"cyclotomic polynomial undefined for n={n}")
    return tuple(Fraction(c) for c in _cyclotomic_int(n))


@lru_cache(maxsize=None)
def _power_table(L: int) -> tuple[tuple[int, ...], ...]:
    """Integer power-basis vectors of zeta_L^k for k = 0..L-1."""
    phi = euler_phi(L)
    cyc = _cyclotomic_int(L)
    cur = [1] + [0] * (phi - 1)
    table = []
    for _ in range(L):
        table.append(tuple(cur))
        # multiply by zeta and reduce with zeta^phi = -sum(cyc[j] zeta^j)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cyc[j]
    return tuple(table)


def _reduce_exponents(L: int, vec: Iterable[tuple[int, int]]) -> list[int]:
    """Sum c * zeta_L^k over (k, c) pairs, as an integer power-basis vector."""
    table = _power_table(L)
    out = [0] * euler_phi(L)
    for k, c in vec:
        if c:
            row = table[k % L]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return out


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = den
    for c in nums:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


class CyclotomicNumber:
    """Immutable element of Q(zeta_L) in canonical power-basis form."""

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, coeffs: Sequence[Rational]):
        if order < 1:
            raise DomainError(f"order must be >= 1, got {order}")
        phi = euler_phi(order)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > phi:
            # arbitrary-length input is treated as a polynomial in zeta and reduced
            den = 1
            for c in coeffs:
                den = lcm(den, c.denominator)
            ints = _reduce_exponents(order, ((k, int(c * den)) for k, c in enumerate(coeffs)))
        else:
            den = 1
            for c in coeffs:
                den = lcm(den, c.denominator)
            ints = [int(c * den) for c in coeffs] + [0] * (phi - len(coeffs))
        self.order = order
        self._num, self._den = _normalize(ints, den)

    @classmethod
    def _raw(cls, order: int, nums: Sequence[int], den: int) -> "CyclotomicNumber":
        obj = cls.__new__(cls)
        obj.order = order
        obj._num, obj._den = _normalize(list(nums), den)
        return obj

    @classmethod
    def from_rational(cls, r: Rational, order: int = 1) -> "CyclotomicNumber":
        r = Fraction(r)
        return cls._raw(order, [r.numerator] + [0] * (euler_phi(order) - 1), r.denominator)

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def normalized_trace(self) -> Fraction:
        """Tr(a) / [Q(zeta_L):Q]; unchanged when a is viewed in a larger cyclotomic field."""
        total = Fraction(0)
        for j, c in enumerate(self._num):
            if c:
                m = self.order // gcd(j, self.order)
                total += Fraction(c * _mobius(m), euler_phi(m))
        return total / self._den

    # -- field embedding ---------------------------------------------------

    def lift(self, order: int) -> "CyclotomicNumber":
        """Image in Q(zeta_order) under zeta_L -> zeta_order^(order/L)."""
        if order == self.order:
            return self
        if self.is_rational():
            return CyclotomicNumber._raw(order, [self._num[0]] + [0] * (euler_phi(order) - 1), self._den)
        if order % self.order:
            raise DomainError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        step = order // self.order
        nums = _reduce_exponents(order, ((j * step, c) for j, c in enumerate(self._num)))
        return CyclotomicNumber._raw(order, nums, self._den)

    def _coerce(self, other) -> "CyclotomicNumber | None":
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return other
            if other.is_rational():
                return other.lift(self.order)
            if self.is_rational():
                return None  # handled by caller through swapped lift
            raise DomainError(f"mixed cyclotomic orders {self.order} and {other.order}")
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other, self.order)
        return NotImplemented

    def _pair(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented, NotImplemented
        if o is None:
            return self.lift(other.order), other
        return self, o

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        da, db = a._den, b._den
        nums = [x * db + y * da for x, y in zip(a._num, b._num)]
        return CyclotomicNumber._raw(a.order, nums, da * db)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, [-c for c in self._num], self._den)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        an, bn = a._num, b._num
        if not any(bn[1:]):
            c = bn[0]
            return CyclotomicNumber._raw(a.order, [x * c for x in an], a._den * b._den)
        if not any(an[1:]):
            c = an[0]
            return CyclotomicNumber._raw(a.order, [x * c for x in bn], a._den * b._den)
        conv = [0] * (2 * len(an) - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        conv[i + j] += x * y
        nums = _reduce_exponents(a.order, enumerate(conv))
        return CyclotomicNumber._raw(a.order, nums, a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_L."""
        if self.is_zero():
            raise DomainError("division by zero in cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber.from_rational(1 / self.to_rational(), self.order)
        modulus = list(cyclotomic_polynomial(self.order))
        a = _trim([Fraction(c) for c in self.coeffs])
        # invariant: s_i * a == r_i (mod modulus)
        r0, r1 = modulus, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r0 is a nonzero constant since Phi_L is irreducible
        assert len(r0) == 1
        inv = [c / r0[0] for c in s0]
        _, inv = _pdivmod(inv, modulus)
        return CyclotomicNumber(self.order, inv)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        acc = CyclotomicNumber.from_rational(1, self.order)
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def conj(self) -> "CyclotomicNumber":
        """Image under zeta -> zeta^-1 (complex conjugation)."""
        L = self.order
        nums = _reduce_exponents(L, ((-j, c) for j, c in enumerate(self._num)))
        return CyclotomicNumber._raw(L, nums, self._den)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        if other.order == self.order:
            return self._num == other._num and self._den == other._den
        common = lcm(self.order, other.order)
        a, b = self.lift(common), other.lift(common)
        return a._num == b._num and a._den == b._den

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        return hash(self.normalized_trace())

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if j == 0 else f"{c}*zeta{self.order}^{j}")
        return "CyclotomicNumber(" + (" + ".join(parts) or "0") + ")"

    def __complex__(self):
        import cmath

        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * j / self.order) for j, c in enumerate(self.coeffs)),
            0j,
        )


def zeta_pow(L: int, k: int) -> CyclotomicNumber:
    """zeta_L^k, canonically reduced."""
    if L < 1:
        raise DomainError(f"order must be >= 1, got {L}")
    return CyclotomicNumber._raw(L, _power_table(L)[k % L], 1)


def cyc_arith(a, b, op: str) -> CyclotomicNumber:
    if not isinstance(a, CyclotomicNumber):
        if not isinstance(b, CyclotomicNumber):
            raise DomainError("at least one operand must be a CyclotomicNumber")
        a = CyclotomicNumber.from_rational(a, b.order)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise DomainError(f"unknown operation {op!r}")


def cyc_conj(a) -> CyclotomicNumber:
    if isinstance(a, (int, Fraction)):
        return CyclotomicNumber.from_rational(a)
    return a.conj()


def root_power_sum(N: int, t: int) -> CyclotomicNumber:
    """sum_{k=0}^{N-1} theta^(k t) for theta a primitive N-th root of unity."""
    L = ambient_order(N)
    theta_t = zeta_pow(L, (L // N) * t)
    total = CyclotomicNumber.from_rational(0, L)
    term = CyclotomicNumber.from_rational(1, L)
    for _ in range(N):
        total = total + term
        term = term * theta_t
    return total
