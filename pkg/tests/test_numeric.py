import random

import numpy as np
import pytest

from conftest import exact_numeric_gap, random_poly
from feqlab.cyclotomic import CyclotomicNumber, DomainError, zeta_pow
from feqlab.numeric import CATALOG, GridSpec, falsify, residual_scan, residuals, to_float
from feqlab.parser import parse

COARSE = GridSpec(-2, 2, 3)


def C(text):
    return parse(text, "complex")


def test_to_float_examples():
    assert to_float(zeta_pow(4, 1)) == pytest.approx(1j)
    assert to_float(zeta_pow(6, 1)) == pytest.approx(0.5 + np.sqrt(3) / 2 * 1j)
    assert to_float(CyclotomicNumber(4, [2, -3])) == pytest.approx(2 - 3j)
    assert to_float(3) == 3


def test_grid_validation():
    with pytest.raises(DomainError):
        GridSpec(1, 0, 5)
    with pytest.raises(DomainError):
        GridSpec(0, 1, 1)
    assert list(GridSpec(-1, 1, 3).axis()) == [-1, 0, 1]


@pytest.mark.parametrize("N", range(1, 6))
def test_knw_solution_has_tiny_residual(N):
    report = residual_scan(C(f"z^{N - 1}"), "knw", N)
    assert report.max_abs_residual < 1e-9 and report.solves
    assert report.samples_evaluated == 9 ** 4


def test_knw_zN_residual_is_yN():
    # defect of z^N is y^N; on the default grid |y| peaks at 2*sqrt(2)
    N = 3
    names, coords, res = residuals(C("z^3"), "knw", N)
    y = coords[2] + 1j * coords[3]
    assert np.allclose(res, y ** N)
    report = residual_scan(C("z^3"), "knw", N)
    assert report.max_abs_residual == pytest.approx(abs((2 + 2j) ** 3))


def test_nagumo_z_squared_value():
    grid = GridSpec(-1, 1, 3)
    names, coords, res = residuals(C("z^2"), "nagumo", 2, grid)
    at = (coords[0] == 1) & (coords[1] == 0) & (coords[2] == 1) & (coords[3] == 0)
    assert res[at][0] == pytest.approx(4)


def test_nagumo_affine_inputs_pass():
    for N in range(2, 6):
        for text in ("3", "(1 + 2*i)*z - 1/2", "2*z", "i*zbar + z + 1"):
            assert residual_scan(C(text), "nagumo", N).max_abs_residual < 1e-9


def test_nagumo_N1_only_admits_constants():
    # with one root the identity reads Re(conj(f(x)) * (f(x+y) - f(x))) = 0
    assert residual_scan(C("3"), "nagumo", 1).solves
    assert not residual_scan(C("z"), "nagumo", 1).solves


def test_falsify_examples():
    assert falsify(C("2*z + 1"), "nagumo", 2) is None
    w = falsify(C("z*zbar"), "knw", 2)
    assert w is not None and w["residual"] > 1e-9
    assert falsify(C("5"), "haruki", 3) is None
    assert falsify(CATALOG["exp"], "knw", 3) is not None
    with pytest.raises(DomainError):
        falsify(C("z"), "knw", 2, tol=0)


def test_falsify_returns_first_lexicographic_point():
    w = falsify(C("z*zbar"), "knw", 2)
    # first point of the grid has x = -2-2i, y = -2-2i and |y|^2 = 8
    assert w["x"] == [-2.0, -2.0] and w["y"] == [-2.0, -2.0]
    assert w["residual"] == pytest.approx(8)


def test_scan_is_deterministic():
    a = residual_scan(C("z^2*zbar"), "haruki", 3).to_dict()
    b = residual_scan(C("z^2*zbar"), "haruki", 3).to_dict()
    assert a == b


def test_poisoned_samples_are_reported():
    report = residual_scan(CATALOG["reciprocal"], "knw", 2, GridSpec(-1, 1, 3))
    assert report.poisoned and not report.solves
    assert {"x": [0.0, 0.0], "y": [-1.0, -1.0]} in report.poisoned


def test_frechet_scan():
    assert residual_scan(parse("x1^2*x2", "real"), "frechet", 4, d=2, grid=COARSE).solves
    report = residual_scan(parse("x1^3", "real"), "frechet", 3, d=1)
    assert report.max_abs_residual == pytest.approx(6 * 8)
    assert set(report.witness) == {"x1", "h1"}


def test_nagumo_shift_invariance_for_mean_value_solutions():
    # shifting by c changes the left side by 2 Re(conj(c) * sum_k (f(x + theta^k y) - f(x)))
    rng = random.Random(51)
    for _ in range(20):
        N = rng.randint(2, 5)
        f = random_poly(rng, ["z"], N - 1, 3, 4)
        c = CyclotomicNumber(4, [rng.randint(-3, 3), rng.randint(-3, 3)])
        _, _, r1 = residuals(f, "nagumo", N, COARSE)
        _, _, r2 = residuals(f + c, "nagumo", N, COARSE)
        assert np.max(np.abs(r1 - r2)) < 1e-9


def test_nagumo_shift_changes_residual_off_mean_value_solutions():
    f = C("z*zbar")
    _, _, r1 = residuals(f, "nagumo", 2, COARSE)
    _, _, r2 = residuals(f + 1, "nagumo", 2, COARSE)
    knw = residuals(f, "knw", 2, COARSE)[2]
    assert np.allclose(r2 - r1, 2 * 2 * knw.real)
    assert np.max(np.abs(r2 - r1)) > 1


@pytest.mark.parametrize("equation", ["knw", "haruki", "frechet"])
def test_numeric_matches_exact_defect(equation):
    rng = random.Random(52)
    for _ in range(15):
        N = rng.randint(1, 4)
        if equation == "frechet":
            d = rng.randint(1, 2)
            f = random_poly(rng, [f"x{i + 1}" for i in range(d)], 4, 4)
        else:
            d = 1
            f = random_poly(rng, ["z", "zbar"], 4, 4, 4)
        assert exact_numeric_gap(f, equation, N, COARSE, d) < 1e-6
