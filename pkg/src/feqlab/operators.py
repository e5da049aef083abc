"""Mean-value, affine and difference operators acting on polynomials.

Complex-form operators take f in ``z, zbar`` and return polynomials in
``x, xbar, y, ybar`` (the point and the radius of the rotated average).
Real-form operators act on ``x1..xd``; a symbolic step introduces ``h1..hd``
(or ``h[r]1..h[r]d`` for the r-th step of a mixed difference) so that
"for all h" becomes a polynomial zero test.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from .cyclotomic import CyclotomicNumber, DomainError, ambient_order, lcm, zeta_pow
from .polyring import SparsePolynomial, real_var, step_var, substitute

SYMBOLIC = "symbolic"
Step = Union[str, Sequence[Union[int, Fraction]]]

_X_INDEX = re.compile(r"^x(\d+)$")


@dataclass(frozen=True)
class EquationParams:
    N: int
    d: int = 1

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N!r}")
        if not isinstance(self.d, int) or self.d < 1:
            raise DomainError(f"d must be a positive integer, got {self.d!r}")

    @property
    def L(self) -> int:
        return ambient_order(self.N)

    @property
    def theta(self) -> CyclotomicNumber:
        return zeta_pow(self.L, self.L // self.N)

    @property
    def eta(self) -> CyclotomicNumber:
        return zeta_pow(self.L, self.L // (2 * self.N))

    @property
    def i(self) -> CyclotomicNumber:
        return zeta_pow(self.L, self.L // 4)


def _as_params(params) -> EquationParams:
    if isinstance(params, EquationParams):
        return params
    return EquationParams(int(params))


def _require_complex(f: SparsePolynomial):
    foreign = f.variables() - {"z", "zbar"}
    if foreign:
        raise DomainError(f"expected a polynomial in z, zbar; found {sorted(foreign)}")


def _var(name: str, order: int) -> SparsePolynomial:
    return SparsePolynomial.var(name, order)


# -- complex form -----------------------------------------------------------

def knw_average(f: SparsePolynomial, params, y_scale: CyclotomicNumber | None = None) -> SparsePolynomial:
    """(1/N) sum_k f(x + theta^k y) as a polynomial in x, xbar, y, ybar.

    ``y_scale`` replaces y by y_scale*y, giving H_{c y}(f).
    """
    params = _as_params(params)
    _require_complex(f)
    L = params.L
    f = f.lift(lcm(f.order, L))
    L = f.order
    theta = params.theta.lift(L)
    x, xb, y, yb = (_var(v, L) for v in ("x", "xbar", "y", "ybar"))
    if y_scale is not None:
        y_scale = y_scale.lift(L)
        y, yb = y * y_scale, yb * y_scale.conj()
    total = SparsePolynomial.zero(L)
    rot = CyclotomicNumber.from_rational(1, L)
    for _ in range(params.N):
        total = total + substitute(f, {"z": x + y * rot, "zbar": xb + yb * rot.conj()})
        rot = rot * theta
    return total * Fraction(1, params.N)


def haruki_defect(f: SparsePolynomial, params) -> SparsePolynomial:
    """H_y(f) - H_{eta y}(f); zero exactly when f solves the Haruki equation."""
    params = _as_params(params)
    avg = knw_average(f, params)
    eta = params.eta.lift(avg.order)
    rotated = substitute(avg, {"y": _var("y", avg.order) * eta, "ybar": _var("ybar", avg.order) * eta.conj()})
    return avg - rotated


def knw_defect(f: SparsePolynomial, params) -> SparsePolynomial:
    """H_y(f)(x) - f(x); zero exactly when f solves the Kakutani-Nagumo-Walsh equation."""
    avg = knw_average(f, params)
    at_x = substitute(f.lift(avg.order), {"z": _var("x", avg.order), "zbar": _var("xbar", avg.order)})
    return avg - at_x


def _scalar_order(c) -> int:
    return c.order if isinstance(c, CyclotomicNumber) else 1


def affine_transform(f: SparsePolynomial, a, b) -> SparsePolynomial:
    """T_{a,b} f (z) = f(a z + b), with zbar -> conj(a) zbar + conj(b)."""
    L = lcm(f.order, lcm(_scalar_order(a), _scalar_order(b)))
    a = a.lift(L) if isinstance(a, CyclotomicNumber) else CyclotomicNumber.from_rational(a, L)
    b = b.lift(L) if isinstance(b, CyclotomicNumber) else CyclotomicNumber.from_rational(b, L)
    z, zb = _var("z", L), _var("zbar", L)
    return substitute(f.lift(L), {"z": z * a + b, "zbar": zb * a.conj() + b.conj()})


# -- real form --------------------------------------------------------------

def real_dimension(f: SparsePolynomial) -> int:
    """Largest index i among the x_i occurring in f (at least 1)."""
    d = 1
    for v in f.variables():
        m = _X_INDEX.match(v)
        if m:
            d = max(d, int(m.group(1)))
    return d


def real_affine_transform(f: SparsePolynomial, a: Sequence, b: Sequence) -> SparsePolynomial:
    """S_{a,b} f (x) = f(a.x + b) with the componentwise product a.x."""
    if len(a) != len(b):
        raise DomainError(f"length mismatch: a has {len(a)} entries, b has {len(b)}")
    if real_dimension(f) > len(a) and any(v.startswith("x") for v in f.variables()):
        raise DomainError(f"polynomial uses x{real_dimension(f)} but vectors have length {len(a)}")
    order = f.order
    bindings = {
        real_var(i + 1): _var(real_var(i + 1), order) * Fraction(ai) + Fraction(bi)
        for i, (ai, bi) in enumerate(zip(a, b))
    }
    return substitute(f, bindings)


def _step_polys(step: Step, d: int, order: int, family: int | None) -> list[SparsePolynomial]:
    if isinstance(step, str):
        if step != SYMBOLIC:
            raise DomainError(f"unknown step {step!r}")
        return [_var(step_var(i + 1, family), order) for i in range(d)]
    if len(step) != d:
        raise DomainError(f"step has length {len(step)}, expected {d}")
    return [SparsePolynomial.constant(Fraction(s), order) for s in step]


def _shift(f: SparsePolynomial, offsets: list[SparsePolynomial]) -> SparsePolynomial:
    order = f.order
    return substitute(f, {real_var(i + 1): _var(real_var(i + 1), order) + off for i, off in enumerate(offsets)})


def _dim_for(f: SparsePolynomial, steps: Sequence[Step], d: int | None) -> int:
    if d is not None:
        return d
    for s in steps:
        if not isinstance(s, str):
            return len(s)
    return real_dimension(f)


def forward_difference(f: SparsePolynomial, N: int, step: Step = SYMBOLIC, d: int | None = None,
                       family: int | None = None) -> SparsePolynomial:
    """sum_k C(N,k) (-1)^(N-k) f(x + k h)."""
    if N < 0:
        raise DomainError("difference order must be non-negative")
    d = _dim_for(f, [step], d)
    h = _step_polys(step, d, f.order, family)
    total = SparsePolynomial.zero(f.order)
    for k in range(N + 1):
        shifted = _shift(f, [hi * k for hi in h])
        total = total + shifted * (comb(N, k) * (-1) ** (N - k))
    return total


def mixed_difference(f: SparsePolynomial, steps: Sequence[Step], d: int | None = None) -> SparsePolynomial:
    """Delta_{h1} Delta_{h2} ... Delta_{hs} f; symbolic entry r uses the variables h[r]i."""
    if not steps:
        raise DomainError("mixed difference needs at least one step")
    d = _dim_for(f, steps, d)
    g = f
    for r in range(len(steps), 0, -1):
        g = forward_difference(g, 1, steps[r - 1], d, family=r)
    return g


def djokovic_terms(steps: Sequence[Sequence]) -> list[tuple[int, list[Fraction], list[Fraction]]]:
    """(sign, alpha_eps, beta_eps) for every eps in {0,1}^s.

    alpha_eps = -sum_r eps_r h_r / r and beta_eps = sum_r eps_r h_r.
    """
    s = len(steps)
    d = len(steps[0])
    out = []
    for eps in itertools.product((0, 1), repeat=s):
        alpha = [Fraction(0)] * d
        beta = [Fraction(0)] * d
        for r, (e, h) in enumerate(zip(eps, steps), start=1):
            if e:
                for i in range(d):
                    alpha[i] -= Fraction(h[i]) / r
                    beta[i] += Fraction(h[i])
        out.append(((-1) ** sum(eps), alpha, beta))
    return out


def djokovic_rhs(f: SparsePolynomial, steps: Sequence[Sequence]) -> SparsePolynomial:
    """sum_eps (-1)^|eps| (Delta^s_{alpha_eps} f)(x + beta_eps) for concrete rational steps."""
    if not steps:
        raise DomainError("Djokovic identity needs at least one step")
    if any(isinstance(s, str) for s in steps):
        raise DomainError("djokovic_rhs accepts only concrete rational steps")
    d = len(steps[0])
    if any(len(s) != d for s in steps):
        raise DomainError("all steps must have the same length")
    s = len(steps)
    total = SparsePolynomial.zero(f.order)
    for sign, alpha, beta in djokovic_terms(steps):
        term = forward_difference(f, s, alpha, d)
        term = _shift(term, [SparsePolynomial.constant(bi, f.order) for bi in beta])
        total = total + term * sign
    return total


def djokovic_check(f: SparsePolynomial, steps: Sequence[Sequence]) -> bool:
    return mixed_difference(f, steps, len(steps[0])) == djokovic_rhs(f, steps)


__all__ = [
    "SYMBOLIC",
    "EquationParams",
    "knw_average",
    "haruki_defect",
    "knw_defect",
    "affine_transform",
    "real_affine_transform",
    "real_dimension",
    "forward_difference",
    "mixed_difference",
    "djokovic_terms",
    "djokovic_rhs",
    "djokovic_check",
]
