"""
Tests del núcleo exacto: anillo de Laurent, derivadas, evaluación y matrices
"""
from fractions import Fraction

import pytest

from app.core.exceptions import (
    DimensionMismatchException,
    NonInvertibleVariableException,
    ZeroInvertibleValueException,
)
from app.modules.exact_core.models import Poly, PolyMatrix, symbols, to_rational
from app.modules.exact_core.services import ExactService, SamplingService

X, Y, Z, b, u = symbols("X", "Y", "Z", "b", "u")


def test_difference_of_squares():
    assert (X + Y) * (X - Y) == X**2 - Y**2


def test_additive_inverse_is_empty():
    p = 3 * X * Y - Fraction(1, 2) * Z + 7
    assert (p + (-p)).is_zero
    assert len(p + (-p)) == 0


def test_laurent_cancellation_on_invertible_variable():
    assert (-b * X * Y) * X**-1 == -b * Y


def test_negative_exponent_on_non_invertible_variable():
    with pytest.raises(NonInvertibleVariableException):
        Poly.var("Y", -1)
    with pytest.raises(NonInvertibleVariableException):
        (X + Y) ** -1


def test_partial_power_rule():
    assert (X**2 - b * X * Y).partial("Y") == -b * X


def test_partial_chain_rule_on_u():
    assert (u**2).partial("x") == -2 * u**2
    assert Poly.var("u", -1).partial("x") == Poly.var("u", -1)


def test_partial_of_constant():
    assert Poly.const(5).partial("X").is_zero


def test_partials_commute(rng):
    p = SamplingService.random_poly(("X", "Y", "Z", "u"), rng, terms=6)
    for v, w in (("X", "Y"), ("Y", "Z"), ("x", "Y"), ("X", "x")):
        assert p.partial(v).partial(w) == p.partial(w).partial(v)


def test_evaluation_examples():
    assert (X**2 - 1).evaluate({"X": 3}) == 8
    assert (Y * Z * X**-1).evaluate({"X": 2, "Y": 4, "Z": 3}) == 6
    p = 2 * Y * Z + Fraction(3, 4)
    assert p.evaluate({"Y": 0, "Z": 0}) == Fraction(3, 4)


def test_evaluation_rejects_zero_on_invertible():
    with pytest.raises(ZeroInvertibleValueException):
        (X**-1).evaluate({"X": 0})


def test_evaluation_is_ring_homomorphism(rng):
    names = ("X", "Y", "Z")
    p = SamplingService.random_poly(names, rng)
    q = SamplingService.random_poly(names, rng)
    for _ in range(100):
        point = SamplingService.random_assignment(names, rng)
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)


def test_ring_axioms(rng):
    names = ("X", "Y", "b")
    p, q, r = (SamplingService.random_poly(names, rng) for _ in range(3))
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p + q == q + p


def test_substitution_and_power():
    assert (X * Y).substitute({"X": Poly.var("X1") * Poly.var("X2")}) == Poly.var("X1") * Poly.var("X2") * Y
    assert ExactService.poly_pow(X + 1, 3) == X**3 + 3 * X**2 + 3 * X + 1
    assert (X**-2).substitute({"X": 2 * u}) == Fraction(1, 4) * u**-2
    assert (X**2 * Y + Y).total_degree() == 3
    assert (X**2 * Y + Y).total_degree(["Y"]) == 1


def test_decimal_strings_are_exact():
    assert to_rational("0.1") == Fraction(1, 10)
    assert to_rational("-1/2") == Fraction(-1, 2)


def test_canonical_rendering():
    assert str(X**2 - 1) == "X^2 - 1"
    assert str(-b * X * Y + Fraction(1, 2)) == "-b*X*Y + 1/2"
    assert str(Poly()) == "0"


def test_identity_kronecker():
    assert PolyMatrix.identity(3).kron(PolyMatrix.identity(3)) == PolyMatrix.identity(9)


def test_self_commutator_vanishes():
    a = PolyMatrix([[X, Y], [Z, 1]])
    assert a.commutator(a).is_zero


def test_group_element_kronecker_entry():
    m = PolyMatrix([[X, 0, Y], [0, X, Z], [0, 0, 1]])
    # entrada (1,3) en numeración 1-based
    assert m.kron(m)[0, 2] == X * Y


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchException):
        PolyMatrix.identity(2) @ PolyMatrix.identity(3)


def test_kronecker_mixed_product(rng):
    def random_matrix():
        return PolyMatrix(
            [[SamplingService.random_rational(rng) for _ in range(3)] for _ in range(3)]
        )

    a, b_, c, d = (random_matrix() for _ in range(4))
    assert a.kron(b_) @ c.kron(d) == (a @ c).kron(b_ @ d)


def test_random_points_detect_nonzero(rng):
    assert SamplingService.vanishes_at_random_points((X + Y) ** 2 - X**2 - 2 * X * Y - Y**2, rng=rng)
    assert not SamplingService.vanishes_at_random_points(X * Y - Y * Z, rng=rng)


def test_matrix_eval():
    a = PolyMatrix([[X, Y], [Z, 1]])
    value = ExactService.matrix_eval(a, {"X": 2, "Y": Fraction(1, 2), "Z": -1})
    assert value == PolyMatrix([[2, Fraction(1, 2)], [-1, 1]])
    assert value.variables() == ()


def test_rename_merges_exponents():
    """Fusionar copias tensoriales suma exponentes y cancela X^-1*X"""
    merged = (Poly.var("X1", -1) * Poly.var("X2") * Poly.var("Y1")).rename({"X1": "X", "X2": "X", "Y1": "Y"})
    assert merged == Y
    doubled = (Poly.var("X1") * Poly.var("X2")).rename({"X1": "X", "X2": "X"})
    assert doubled == X**2
    assert (X + Y).rename({"Y": "X"}) == 2 * X
