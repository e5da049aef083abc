"""Solution spaces: exact membership tests, monomial bases, corner sets.

Closed translation/dilation invariant spaces are spanned by monomials whose
exponent vectors form a downward closed set, i.e. a finite union of boxes
[n] = {alpha : alpha <= n}.  A :class:`CornerSet` stores the generating box
corners; coordinates may be ``INF``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclotomic import DomainError
from .operators import EquationParams, forward_difference, haruki_defect, knw_defect, SYMBOLIC
from .polyring import SparsePolynomial

INF = math.inf
EQUATIONS = ("haruki", "knw", "frechet")


def haruki_membership(f: SparsePolynomial, params) -> bool:
    return haruki_defect(f, params).is_zero()


def knw_membership(f: SparsePolynomial, params) -> bool:
    return knw_defect(f, params).is_zero()


def frechet_membership(f: SparsePolynomial, N: int, d: int | None = None) -> bool:
    return forward_difference(f, N, SYMBOLIC, d).is_zero()


def membership(equation: str, f: SparsePolynomial, N: int, d: int = 1) -> bool:
    if equation == "haruki":
        return haruki_membership(f, EquationParams(N))
    if equation == "knw":
        return knw_membership(f, EquationParams(N))
    if equation == "frechet":
        EquationParams(N, d)
        return frechet_membership(f, N, d)
    raise DomainError(f"unknown equation {equation!r}")


def defect(equation: str, f: SparsePolynomial, N: int, d: int = 1) -> SparsePolynomial:
    if equation == "haruki":
        return haruki_defect(f, EquationParams(N))
    if equation == "knw":
        return knw_defect(f, EquationParams(N))
    if equation == "frechet":
        EquationParams(N, d)
        return forward_difference(f, N, SYMBOLIC, d)
    raise DomainError(f"unknown equation {equation!r}")


# -- bases and predicates ---------------------------------------------------

def _complex_monomial(i: int, j: int) -> SparsePolynomial:
    return SparsePolynomial.monomial({"z": i, "zbar": j})


def _real_monomial(alpha: Sequence[int]) -> SparsePolynomial:
    return SparsePolynomial.monomial({f"x{k + 1}": e for k, e in enumerate(alpha)})


def compositions_up_to(d: int, cap: int) -> list[tuple[int, ...]]:
    """All alpha in N^d with |alpha| <= cap, in lexicographic order."""
    return [a for a in itertools.product(range(cap + 1), repeat=d) if sum(a) <= cap]


def theorem_predicate(equation: str, alpha: Sequence[int], N: int) -> bool:
    """Membership of a single monomial as predicted by the characterization theorems."""
    if equation == "haruki":
        return max(alpha) <= N - 1
    if equation == "knw":
        return min(alpha) == 0 and max(alpha) <= N - 1
    if equation == "frechet":
        return sum(alpha) <= N - 1
    raise DomainError(f"unknown equation {equation!r}")


def solution_basis(equation: str, N: int, d: int = 1) -> list[SparsePolynomial]:
    EquationParams(N, d)
    if equation == "haruki":
        return [_complex_monomial(i, j) for i in range(N) for j in range(N)]
    if equation == "knw":
        return [_complex_monomial(i, 0) for i in range(N)] + [_complex_monomial(0, j) for j in range(1, N)]
    if equation == "frechet":
        return [_real_monomial(a) for a in compositions_up_to(d, N - 1)]
    raise DomainError(f"unknown equation {equation!r}")


@dataclass
class CharacterizationReport:
    equation: str
    params: dict
    degree_cap: int
    verdicts: list[tuple[tuple[int, ...], bool, bool]] = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        return all(oracle == predicted for _, oracle, predicted in self.verdicts)

    def disagreements(self) -> list[tuple[int, ...]]:
        return [alpha for alpha, oracle, predicted in self.verdicts if oracle != predicted]

    def to_dict(self) -> dict:
        return {
            "equation": self.equation,
            "params": dict(self.params),
            "degree_cap": self.degree_cap,
            "agreement": self.agreement,
            "verdicts": [
                {"exponent": list(alpha), "member": oracle, "predicted": predicted}
                for alpha, oracle, predicted in self.verdicts
            ],
        }


def characterize(equation: str, N: int, d: int = 1, degree_cap: int | None = None) -> CharacterizationReport:
    """Compare the exact membership oracle with the theorem's predicate on every monomial under the cap.

    Complex equations use a per-variable cap (z^i zbar^j, i, j <= cap); the
    Frechet equation uses a total-degree cap in d variables.
    """
    if degree_cap is None:
        degree_cap = 2 * N
    if degree_cap < N:
        raise DomainError(f"degree cap {degree_cap} must be at least N={N}")
    if equation in ("haruki", "knw"):
        exps = list(itertools.product(range(degree_cap + 1), repeat=2))
        make = lambda a: _complex_monomial(*a)  # noqa: E731
        params = {"N": N}
    elif equation == "frechet":
        exps = compositions_up_to(d, degree_cap)
        make = _real_monomial
        params = {"N": N, "d": d}
    else:
        raise DomainError(f"unknown equation {equation!r}")
    report = CharacterizationReport(equation, params, degree_cap)
    for alpha in sorted(exps):
        oracle = membership(equation, make(alpha), N, d)
        report.verdicts.append((tuple(alpha), oracle, theorem_predicate(equation, alpha, N)))
    return report


# -- corner sets --------------------------------------------------------------

def _leq(a: Sequence, b: Sequence) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _check_ext(t) -> tuple:
    out = []
    for c in t:
        if c == INF:
            out.append(INF)
        elif isinstance(c, int) and c >= 0:
            out.append(c)
        else:
            raise DomainError(f"corner coordinates must be non-negative integers or INF, got {c!r}")
    return tuple(out)


@dataclass(frozen=True)
class CornerSet:
    """Antichain of corners n in (N u {INF})^d generating the union of boxes [n]."""

    dim: int
    corners: frozenset

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "CornerSet":
        pts = {_check_ext(p) for p in points}
        if not pts:
            raise DomainError("corner set needs at least one point")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise DomainError("all corners must have the same dimension")
        maximal = {p for p in pts if not any(q != p and _leq(p, q) for q in pts)}
        return cls(dims.pop(), frozenset(maximal))

    def contains(self, alpha: Sequence[int]) -> bool:
        return any(_leq(alpha, c) for c in self.corners)

    def sorted_corners(self) -> list[tuple]:
        return sorted(self.corners)


def downward_closure(c: CornerSet, cap: Sequence[int] | None = None) -> set[tuple[int, ...]]:
    """All finite alpha below some corner; INF coordinates are truncated at ``cap``."""
    out: set[tuple[int, ...]] = set()
    for corner in c.corners:
        bounds = []
        for k, n in enumerate(corner):
            if n == INF:
                if cap is None:
                    raise DomainError("a cap is required to enumerate corners with INF coordinates")
                n = cap[k]
            bounds.append(range(int(n) + 1))
        out.update(itertools.product(*bounds))
    return out


def is_downward_closed(s: set[tuple[int, ...]]) -> bool:
    for alpha in s:
        for k, e in enumerate(alpha):
            if e > 0 and alpha[:k] + (e - 1,) + alpha[k + 1:] not in s:
                return False
    return True


def minimal_corners(s: Iterable[Sequence[int]]) -> CornerSet:
    """Generating corners (the maximal elements) of a finite downward closed set."""
    s = {tuple(a) for a in s}
    for a in s:
        if any(not isinstance(e, int) or e < 0 for e in a):
            raise DomainError(f"expected finite non-negative tuples, got {a!r}")
    if not is_downward_closed(s):
        raise DomainError("set is not downward closed")
    return CornerSet.from_points(s)
