import random
from fractions import Fraction

import pytest

from conftest import random_cyclotomic, random_poly
from feqlab.cyclotomic import CyclotomicNumber, DomainError, zeta_pow
from feqlab.parser import parse
from feqlab.polyring import (
    SparsePolynomial,
    complexify,
    conj_poly,
    degrees,
    differentiate,
    evaluate,
    imag_part,
    laplacian,
    poly_arith,
    real_part,
    realize,
    substitute,
)

I4 = zeta_pow(4, 1)


def P(text, regime="any"):
    return parse(text, regime)


def test_poly_arith_examples():
    z, zb = P("z"), P("zbar")
    assert (z + zb) * (z - zb) == P("z^2 - zbar^2")
    p = P("x1 + 3")
    assert poly_arith(p, SparsePolynomial.zero(), "add") == p
    assert P("(x1 + x2)^2") == P("x1^2 + 2*x1*x2 + x2^2")


def test_kind_mismatch_is_rejected():
    with pytest.raises(DomainError):
        P("z") + P("i*z")
    with pytest.raises(DomainError):
        poly_arith(P("z"), P("i*z"), "mul")
    # explicit lifting is the supported path
    assert P("z").lift(4) + P("i*z") == P("(1 + i)*z")


def test_no_zero_terms_stored():
    p = P("z + 1") - P("z")
    assert p.terms == {(): CyclotomicNumber.from_rational(1)}
    assert (P("z") - P("z")).terms == {}


def test_substitute_examples():
    assert substitute(P("z^2"), {"z": P("x + y")}) == P("x^2 + 2*x*y + y^2")
    p = P("z*zbar").lift(4)
    bind = {"z": P("x + i*y"), "zbar": P("xbar - i*ybar")}
    # direct expansion of (x + i y)(xbar - i ybar)
    expected = P("x*xbar - i*x*ybar + i*y*xbar + y*ybar")
    assert substitute(p, bind) == expected
    q = P("z^3 + 2*zbar")
    assert substitute(q, {}) == q


def test_substitute_is_simultaneous():
    assert substitute(P("z*zbar^2"), {"z": P("zbar"), "zbar": P("z")}) == P("zbar*z^2")


def test_substitute_is_ring_homomorphism():
    rng = random.Random(3)
    vs = ["z", "zbar"]
    for _ in range(100):
        p, q = random_poly(rng, vs, 3, 3, 4), random_poly(rng, vs, 3, 3, 4)
        bind = {"z": random_poly(rng, ["x", "y"], 2, 2, 4), "zbar": random_poly(rng, ["xbar", "ybar"], 2, 2, 4)}
        assert substitute(p * q, bind) == substitute(p, bind) * substitute(q, bind)
        assert substitute(p + q, bind) == substitute(p, bind) + substitute(q, bind)


def test_conj_poly_examples():
    assert conj_poly(P("z")) == P("zbar")
    assert conj_poly(P("i*z^2*ybar")) == P("-i*zbar^2*y")
    rng = random.Random(4)
    for _ in range(100):
        p = random_poly(rng, ["z", "zbar", "y"], 3, 4, 12)
        q = random_poly(rng, ["z", "zbar", "ybar"], 3, 4, 12)
        assert conj_poly(conj_poly(p)) == p
        assert conj_poly(p * q) == conj_poly(p) * conj_poly(q)


def test_degrees():
    assert degrees(P("x1^2*x2")) == (3, {"x1": 2, "x2": 1})
    assert degrees(P("z^3*zbar")) == (4, {"z": 3, "zbar": 1})
    assert degrees(SparsePolynomial.zero())[0] == -1


def test_degree_is_additive():
    rng = random.Random(8)
    for _ in range(200):
        a = SparsePolynomial.monomial({"x1": rng.randint(0, 4), "x2": rng.randint(0, 4)}, rng.randint(1, 9))
        b = SparsePolynomial.monomial({"x1": rng.randint(0, 4), "x3": rng.randint(0, 4)}, rng.randint(1, 9))
        assert degrees(a * b)[0] == degrees(a)[0] + degrees(b)[0]
    # random pairs over a field: top homogeneous parts multiply to a nonzero form
    for _ in range(200):
        p, q = random_poly(rng, ["x1", "x2"], 4, 4), random_poly(rng, ["x1", "x2"], 4, 4)
        if not p.is_zero() and not q.is_zero():
            assert degrees(p * q)[0] == degrees(p)[0] + degrees(q)[0]


def test_differentiate_and_laplacian():
    assert differentiate(P("x1^2*x2"), "x1") == P("2*x1*x2")
    assert laplacian(P("u^2 - w^2")).is_zero()
    assert laplacian(P("u^2 + w^2")) == P("4")


def test_evaluate_examples():
    one_plus_i = I4 + 1
    val = evaluate(P("z*zbar"), {"z": one_plus_i, "zbar": one_plus_i.conj()})
    assert val == 2
    assert evaluate(P("7"), {"z": 3}) == 7
    with pytest.raises(DomainError):
        evaluate(P("z*y"), {"z": 1})


def test_evaluate_commutes_with_arithmetic():
    rng = random.Random(11)
    for _ in range(100):
        p, q = random_poly(rng, ["x", "y"], 3, 4, 12), random_poly(rng, ["x", "y"], 3, 4, 12)
        at = {"x": random_cyclotomic(rng, 12), "y": random_cyclotomic(rng, 12)}
        assert evaluate(p * q, at) == evaluate(p, at) * evaluate(q, at)
        assert evaluate(p + q, at) == evaluate(p, at) + evaluate(q, at)
        assert evaluate(p - q, at) == evaluate(p, at) - evaluate(q, at)


def test_ring_axioms_random():
    rng = random.Random(12)
    for _ in range(500):
        order = rng.choice([1, 4, 12])
        p, q, r = (random_poly(rng, ["z", "zbar"], 2, 3, order) for _ in range(3))
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r


def test_realize_complexify_examples():
    assert realize(P("z*zbar")) == P("u^2 + w^2")
    assert complexify(P("u")) == P("1/2*z + 1/2*zbar")
    assert complexify(P("w")) == P("-1/2*i*z + 1/2*i*zbar")


def test_realize_complexify_round_trip():
    rng = random.Random(13)
    for _ in range(100):
        p = random_poly(rng, ["u", "w"], 4, 4, rng.choice([1, 4, 12]))
        assert realize(complexify(p)) == p
        q = random_poly(rng, ["z", "zbar"], 4, 4, rng.choice([1, 4, 8]))
        assert complexify(realize(q)) == q


def test_real_and_imag_parts():
    zk = realize(P("z^3"))
    assert real_part(zk) == P("u^3 - 3*u*w^2")
    assert imag_part(zk) == P("3*u^2*w - w^3")


def test_lift_rejects_non_multiple():
    with pytest.raises(DomainError):
        P("i*z").lift(6)
    assert P("2*z").lift(6) == P("2*z")


def test_scalar_coefficients():
    p = P("z + 1").lift(4)
    assert p * I4 == P("i*z + i")
    assert p * Fraction(1, 2) == P("1/2*z + 1/2")
    assert SparsePolynomial.constant(random_cyclotomic(random.Random(1), 4), 4).variables() == set()
