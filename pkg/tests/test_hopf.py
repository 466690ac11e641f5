"""
Tests del álgebra de Poisson-Hopf: coproducto, corchete tensorial y axiomas
"""
from fractions import Fraction

import pytest

from app.core.exceptions import ValidationException
from app.modules.exact_core.models import Poly, symbols
from app.modules.exact_core.services import SamplingService
from app.modules.hopf.services import HopfService
from app.modules.pl_bracket.models import PLParams
from app.modules.pl_bracket.services import PLBracketService

X, Y, Z = symbols("X", "Y", "Z")
X1, Y1, Z1, X2, Y2, Z2, X3, Y3 = symbols("X1", "Y1", "Z1", "X2", "Y2", "Z2", "X3", "Y3")


def test_coproduct_examples():
    assert HopfService.coproduct(X) == X1 * X2
    assert HopfService.coproduct(Poly.const(1)) == 1
    assert HopfService.coproduct(Y * Z) == (X1 * Y2 + Y1) * (X1 * Z2 + Z1)
    assert HopfService.coproduct(X**-1) == X1**-1 * X2**-1


def test_local_coproduct_examples():
    u1, u2, y1, y2, x1, x2 = symbols("u1", "u2", "y1", "y2", "x1", "x2")
    assert HopfService.local_coproduct(Poly.var("u")) == u1 * u2
    assert HopfService.local_coproduct(Poly.var("y")) == u1 * y2 + y1
    assert HopfService.local_coproduct(Poly.var("x")) == x1 + x2


def test_coproduct_matches_group_law():
    assert all(r.is_zero for r in HopfService.group_law_residual())


def test_tensor_bracket_factor_embedding(symbolic_params):
    s = PLBracketService.build_structure(symbolic_params)
    expected = s.pair("X", "Y").rename({"X": "X1", "Y": "Y1", "Z": "Z1"})
    assert HopfService.tensor_bracket(s, X1, Y1) == expected
    assert HopfService.tensor_bracket(s, X1, Y2).is_zero


def test_tensor_bracket_on_coproducts(lv_params):
    s = PLBracketService.build_structure(lv_params)
    lhs = HopfService.tensor_bracket(s, HopfService.coproduct(X), HopfService.coproduct(Y))
    assert lhs == -X1 * X2 * (X1 * Y2 + Y1)
    assert lhs == HopfService.coproduct(-X * Y)


def test_poisson_map_symbolic(symbolic_params):
    assert all(r.is_zero for r in HopfService.poisson_map_residual(symbolic_params))


def test_poisson_map_special_case():
    assert all(r.is_zero for r in HopfService.poisson_map_residual(PLParams.of(0, 0, 0, 0, 0, -1)))


def test_poisson_map_detects_cubic_corruption():
    corrupted = PLBracketService.custom_structure({"XY": X * Y**2, "XZ": 0, "YZ": 0})
    residuals = HopfService.poisson_map_residual(corrupted)
    assert not residuals[0].is_zero


def test_local_poisson_map_symbolic(symbolic_params):
    assert all(r.is_zero for r in HopfService.local_poisson_map_residual(symbolic_params))


def test_coassociativity():
    assert all(r.is_zero for r in HopfService.coassociativity_residual())


def test_iterated_coproduct_examples():
    assert HopfService.iterated_coproduct(X, 2) == HopfService.coproduct(X)
    assert HopfService.iterated_coproduct(X, 3) == X1 * X2 * X3
    assert HopfService.iterated_coproduct(Y, 3) == X1 * X2 * Y3 + X1 * Y2 + Y1


@pytest.mark.parametrize("factors", [3, 4])
def test_iterated_coproduct_nesting_is_immaterial(factors):
    for w in (X, Y, Z, Y * Z * X**-1):
        left = HopfService.iterated_coproduct(w, factors, "left")
        right = HopfService.iterated_coproduct(w, factors, "right")
        assert left == right


def test_iterated_coproduct_requires_two_factors():
    with pytest.raises(ValidationException):
        HopfService.iterated_coproduct(X, 1)


def test_counit_and_antipode():
    assert HopfService.counit_and_antipode(X)[0] == 1
    assert HopfService.counit_and_antipode(Y)[0] == 0
    assert HopfService.counit_and_antipode(Z)[0] == 0
    assert HopfService.antipode(X) * X == 1
    _, antipode = HopfService.counit_and_antipode(Y)
    assert antipode == -Y * X**-1
    assert str(antipode) == "(-Y)/X"


def test_antipode_axioms():
    assert all(r.is_zero for r in HopfService.antipode_axiom_residual())


def test_coproduct_is_algebra_map(rng):
    for _ in range(5):
        p = SamplingService.random_poly(("X", "Y", "Z"), rng, terms=3)
        q = SamplingService.random_poly(("X", "Y", "Z"), rng, terms=3)
        assert HopfService.is_algebra_map(p, q)


def test_counit_of_casimir_numerator():
    p = Fraction(1, 2) * (1 + X**2)
    assert HopfService.counit(p) == 1
