"""Floating-point residual scans of the four equations over sample grids.

Complex equations sample x and y on a grid of real and imaginary parts; the
Frechet equation samples x and h in R^d.  Grid points are enumerated in
lexicographic index order (numpy ``indexing="ij"``), and ties for the maximum
residual go to the smallest index, so scans are deterministic.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Union

import numpy as np

from .cyclotomic import CyclotomicNumber, DomainError, zeta_pow
from .polyring import SparsePolynomial

COMPLEX_EQUATIONS = ("knw", "haruki", "nagumo")
EQUATIONS = COMPLEX_EQUATIONS + ("frechet",)
DEFAULT_TOL = 1e-9

Target = Union[SparsePolynomial, Callable]

# exp-like functions for demonstrating falsification; none solves any of the equations
CATALOG: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "exp": np.exp,
    "sin": np.sin,
    "cosh": np.cosh,
    "exp_abs2": lambda z: np.exp(-(z * np.conj(z)).real),
    "reciprocal": lambda z: 1.0 / z,
}


def to_float(a) -> complex:
    """Image of a cyclotomic number under zeta_L -> exp(2 pi i / L)."""
    if not isinstance(a, CyclotomicNumber):
        return complex(float(a), 0.0)
    L = a.order
    return sum((float(c) * cmath.exp(2j * cmath.pi * j / L) for j, c in enumerate(a.coeffs) if c), 0j)


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid applied to every sampled real coordinate."""

    lo: float = -2.0
    hi: float = 2.0
    count: int = 9

    def __post_init__(self):
        if self.count < 2:
            raise DomainError("grid count must be at least 2")
        if not self.lo < self.hi:
            raise DomainError("grid requires min < max")

    def axis(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class ResidualReport:
    equation: str
    params: dict
    max_abs_residual: float
    witness: dict | None
    samples_evaluated: int
    tolerance: float
    poisoned: list[dict] = field(default_factory=list)

    @property
    def solves(self) -> bool:
        return self.max_abs_residual <= self.tolerance and not self.poisoned

    def to_dict(self) -> dict:
        return {
            "equation": self.equation,
            "params": dict(self.params),
            "max_abs_residual": self.max_abs_residual,
            "witness": self.witness,
            "samples_evaluated": self.samples_evaluated,
            "tolerance": self.tolerance,
            "poisoned": list(self.poisoned),
        }


# -- polynomial -> vectorized callable ---------------------------------------

def complex_function(p: SparsePolynomial) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized f(z) for a polynomial in z, zbar."""
    foreign = p.variables() - {"z", "zbar"}
    if foreign:
        raise DomainError(f"expected a polynomial in z, zbar; found {sorted(foreign)}")
    terms = [(to_float(c), dict(m).get("z", 0), dict(m).get("zbar", 0)) for m, c in p.items()]

    def f(z):
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        out = np.zeros_like(z)
        for c, i, j in terms:
            out = out + c * z**i * zb**j
        return out

    return f


_X = re.compile(r"^x(\d+)$")


def real_function(p: SparsePolynomial, d: int) -> Callable[[list[np.ndarray]], np.ndarray]:
    """Vectorized f(x1, ..., xd) for a polynomial in x1..xd."""
    terms = []
    for m, c in p.items():
        exps = [0] * d
        for v, e in m:
            match = _X.match(v)
            if not match or not 1 <= int(match.group(1)) <= d:
                raise DomainError(f"variable {v!r} is not one of x1..x{d}")
            exps[int(match.group(1)) - 1] = e
        terms.append((to_float(c), exps))

    def f(xs):
        out = np.zeros(np.shape(xs[0]), dtype=complex)
        for c, exps in terms:
            t = np.full(np.shape(xs[0]), c, dtype=complex)
            for xi, e in zip(xs, exps):
                if e:
                    t = t * xi**e
            out = out + t
        return out

    return f


# -- residuals ------------------------------------------------------------------

def _roots(N: int) -> tuple[np.ndarray, complex]:
    """Powers theta^k of theta = exp(2 pi i/N), and eta = exp(pi i/N)."""
    return np.exp(2j * np.pi * np.arange(N) / N), cmath.exp(1j * cmath.pi / N)


def grid_points(equation: str, grid: GridSpec, d: int = 1) -> tuple[list[str], list[np.ndarray]]:
    """Coordinate names and flattened coordinate arrays in lexicographic grid order."""
    axis = grid.axis()
    if equation in COMPLEX_EQUATIONS:
        names = ["x.re", "x.im", "y.re", "y.im"]
    elif equation == "frechet":
        names = [f"x{i + 1}" for i in range(d)] + [f"h{i + 1}" for i in range(d)]
    else:
        raise DomainError(f"unknown equation {equation!r}")
    mesh = np.meshgrid(*([axis] * len(names)), indexing="ij")
    return names, [m.ravel() for m in mesh]


def residuals(f: Target, equation: str, N: int, grid: GridSpec = GridSpec(), d: int = 1):
    """Per-point residuals; returns (coordinate names, coordinate arrays, complex residuals)."""
    if N < 1:
        raise DomainError("N must be >= 1")
    names, coords = grid_points(equation, grid, d)
    with np.errstate(all="ignore"):
        if equation == "frechet":
            fn = real_function(f, d) if isinstance(f, SparsePolynomial) else f
            xs, hs = coords[:d], coords[d:]
            res = np.zeros(xs[0].shape, dtype=complex)
            for k in range(N + 1):
                res = res + comb(N, k) * (-1) ** (N - k) * fn([x + k * h for x, h in zip(xs, hs)])
            return names, coords, res
        fn = complex_function(f) if isinstance(f, SparsePolynomial) else f
        x = coords[0] + 1j * coords[1]
        y = coords[2] + 1j * coords[3]
        theta, eta = _roots(N)
        fx = fn(x)
        vals = [fn(x + t * y) for t in theta]
        if equation == "knw":
            res = sum(vals) / N - fx
        elif equation == "haruki":
            res = (sum(vals) - sum(fn(x + t * eta * y) for t in theta)) / N
        else:
            lhs = sum(np.abs(v) ** 2 - np.abs(fx) ** 2 for v in vals)
            rhs = sum(np.abs(v - fx) ** 2 for v in vals)
            res = (lhs - rhs).astype(complex)
    return names, coords, res


def _point(names, coords, idx) -> dict:
    vals = {n: float(c[idx]) for n, c in zip(names, coords)}
    if "x.re" in vals:
        return {"x": [vals["x.re"], vals["x.im"]], "y": [vals["y.re"], vals["y.im"]]}
    return vals


def residual_scan(f: Target, equation: str, N: int, grid: GridSpec = GridSpec(), d: int = 1,
                  tol: float = DEFAULT_TOL) -> ResidualReport:
    names, coords, res = residuals(f, equation, N, grid, d)
    mags = np.abs(res)
    finite = np.isfinite(mags)
    poisoned = [_point(names, coords, int(i)) for i in np.flatnonzero(~finite)]
    params = {"N": N} if equation != "frechet" else {"N": N, "d": d}
    if finite.any():
        safe = np.where(finite, mags, -1.0)
        idx = int(np.argmax(safe))  # first maximal index
        peak, witness = float(mags[idx]), _point(names, coords, idx)
    else:
        peak, witness = float("nan"), None
    return ResidualReport(equation, params, peak, witness, int(mags.size), tol, poisoned)


def falsify(f: Target, equation: str, N: int, grid: GridSpec = GridSpec(), d: int = 1,
            tol: float = DEFAULT_TOL) -> dict | None:
    """First grid point (lexicographic order) with |residual| > tol, or None."""
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    names, coords, res = residuals(f, equation, N, grid, d)
    mags = np.abs(res)
    bad = np.flatnonzero(~(mags <= tol))
    if not bad.size:
        return None
    idx = int(bad[0])
    point = _point(names, coords, idx)
    point["residual"] = float(mags[idx])
    return point


def point_assignment(point_values: dict, order: int) -> dict:
    """Exact cyclotomic assignment for x, xbar, y, ybar from float grid coordinates."""
    i = zeta_pow(order, order // 4)
    out = {}
    for name in ("x", "y"):
        re_, im = (Fraction(v) for v in point_values[name])
        val = i * im + re_
        out[name] = val
        out[name + "bar"] = val.conj()
    return out


__all__ = [
    "CATALOG",
    "GridSpec",
    "ResidualReport",
    "to_float",
    "complex_function",
    "real_function",
    "grid_points",
    "residuals",
    "residual_scan",
    "falsify",
    "point_assignment",
]
