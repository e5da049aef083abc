import random
from fractions import Fraction

import pytest

from feqlab.cyclotomic import CyclotomicNumber, euler_phi
from feqlab.polyring import SparsePolynomial

ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}" + (f": {detail}" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_cyclotomic(rng: random.Random, L: int, bound: int = 5) -> CyclotomicNumber:
    return CyclotomicNumber(L, [random_rational(rng, bound) for _ in range(euler_phi(L))])


def random_poly(rng: random.Random, variables, max_deg: int = 3, terms: int = 4, order: int = 1) -> SparsePolynomial:
    out = SparsePolynomial.zero(order)
    for _ in range(terms):
        exps = {v: rng.randint(0, max_deg) for v in variables}
        while sum(exps.values()) > max_deg:
            v = rng.choice(list(variables))
            if exps[v]:
                exps[v] -= 1
        coeff = random_cyclotomic(rng, order) if order > 1 else random_rational(rng)
        out = out + SparsePolynomial.monomial(exps, coeff, order)
    return out


@pytest.fixture
def rng():
    return random.Random(20261016)


def exact_numeric_gap(f: SparsePolynomial, equation: str, N: int, grid, d: int = 1) -> float:
    """Largest |numeric residual - float(exact defect)| over every grid point."""
    from feqlab.numeric import _point, point_assignment, residuals, to_float
    from feqlab.polyring import evaluate
    from feqlab.spaces import defect

    names, coords, res = residuals(f, equation, N, grid, d)
    exact = defect(equation, f, N, d)
    gap = 0.0
    for idx in range(res.size):
        point = _point(names, coords, idx)
        if equation == "frechet":
            at = {k: Fraction(v) for k, v in point.items()}
        else:
            at = point_assignment(point, exact.order if exact.order % 4 == 0 else 4 * exact.order)
        value = evaluate(exact, at) if not exact.is_zero() else 0
        gap = max(gap, abs(res[idx] - to_float(value)))
    return gap
