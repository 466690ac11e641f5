"""
Tests de la familia P[a,b,c,d,e,f]: tabla, Leibniz, Jacobi, Casimir, linealización
"""
from fractions import Fraction

import numpy as np
import pytest

from app.core.exceptions import ChartMismatchException, ValidationException
from app.modules.exact_core.models import Poly, symbols
from app.modules.exact_core.services import SamplingService
from app.modules.pl_bracket.models import ChartTag, PLParams
from app.modules.pl_bracket.schemas import PLParamsInput, parse_param_list
from app.modules.pl_bracket.services import PLBracketService, casimir_commutes

X, Y, Z, x, y, z, u = symbols("X", "Y", "Z", "x", "y", "z", "u")
a, b, c, d, e, f, r12 = symbols("a", "b", "c", "d", "e", "f", "r12")


def test_lotka_volterra_table():
    s = PLBracketService.build_structure(PLParams.of(0, "sym", 0, 0, 0, 0))
    assert s.pair("X", "Y") == -b * X * Y
    assert s.pair("X", "Z") == b * X * Z
    assert s.pair("Y", "Z") == b * Y * Z


def test_zero_params_give_zero_brackets():
    s = PLBracketService.build_structure(PLParams.zero())
    assert all(p.is_zero for p in s.brackets.values())


def test_coboundary_identification_table():
    params = PLParams.of("sym", 0, 0, "sym", 0, -r12)
    s = PLBracketService.build_structure(params)
    assert s.pair("Y", "Z") == r12 * (X**2 - 1) - d * Y + a * Z


def test_printed_generic_table_renders(symbolic_params):
    s = PLBracketService.build_structure(symbolic_params)
    assert s.pair("X", "Y") == a * X**2 - b * X * Y - 2 * c * X * Z - a * X
    assert s.pair("X", "Z") == d * X**2 + 2 * e * X * Y + b * X * Z - d * X
    assert s.pair("Y", "Z") == -f * X**2 + e * Y**2 + b * Y * Z - d * Y + c * Z**2 + a * Z + f
    for key, value in s.brackets.items():
        assert value.total_degree(["X", "Y", "Z"]) <= 2
        constant = value.substitute({"X": 0, "Y": 0, "Z": 0})
        assert constant == (f if key == "YZ" else 0)


def test_bracket_examples(lv_params):
    s = PLBracketService.build_structure(lv_params)
    assert PLBracketService.bracket(s, X, X).is_zero
    assert PLBracketService.bracket(s, Y, Z) == Y * Z
    assert PLBracketService.bracket(s, Y * Z * X**-1, X).is_zero


def test_antisymmetry_and_leibniz(symbolic_params, rng):
    s = PLBracketService.build_structure(symbolic_params)
    names = ("X", "Y", "Z")
    p, q, r = (SamplingService.random_poly(names, rng, terms=3) for _ in range(3))
    pq = PLBracketService.bracket_poly(s, p, q)
    assert pq == -PLBracketService.bracket_poly(s, q, p)
    lhs = PLBracketService.bracket_poly(s, p * q, r)
    rhs = p * PLBracketService.bracket_poly(s, q, r) + PLBracketService.bracket_poly(s, p, r) * q
    assert lhs == rhs


def test_chart_mismatch():
    s = PLBracketService.build_structure(PLParams.of(0, 1, 0, 0, 0, 0), ChartTag.LOCAL)
    with pytest.raises(ChartMismatchException):
        PLBracketService.bracket(s, X, y)


def test_jacobi_symbolic(symbolic_params):
    for chart in ChartTag:
        s = PLBracketService.build_structure(symbolic_params, chart)
        assert all(r.is_zero for r in PLBracketService.jacobi_residual(s))


def test_jacobi_detects_corrupted_table():
    s = PLBracketService.custom_structure({"XY": Y**2, "XZ": 0, "YZ": X})
    (residual,) = PLBracketService.jacobi_residual(s)
    assert residual == 2 * X * Y


def test_casimir_examples():
    assert PLBracketService.casimir(PLParams.of(0, 1, 0, 0, 0, 0)) == Y * Z * X**-1
    assert str(PLBracketService.casimir(PLParams.of(0, 1, 0, 0, 0, 0))) == "(Y*Z)/X"
    assert PLBracketService.casimir(PLParams.zero()).is_zero


def test_casimir_is_central(symbolic_params):
    assert all(r.is_zero for r in casimir_commutes(symbolic_params))


def test_local_casimir_matches_and_is_central(symbolic_params):
    local = PLBracketService.local_casimir(symbolic_params)
    group = PLBracketService.casimir(symbolic_params).to_laurent()
    assert local.substitute({"u": X, "y": Y, "z": Z}) == group
    s = PLBracketService.build_structure(symbolic_params, ChartTag.LOCAL)
    for w in (x, y, z):
        assert PLBracketService.bracket_poly(s, local, w).is_zero


def test_local_chart_pushes_to_group_chart(symbolic_params):
    local = PLBracketService.build_structure(symbolic_params, ChartTag.LOCAL)
    group = PLBracketService.build_structure(symbolic_params, ChartTag.GROUP)
    assert PLBracketService.to_group_chart(local).brackets == group.brackets


def test_linearization_symbolic(symbolic_params):
    s = PLBracketService.build_structure(symbolic_params, ChartTag.LOCAL)
    table = PLBracketService.linearize(s)
    assert table.xy == a * x + b * y + 2 * c * z
    assert table.xz == d * x - 2 * e * y - b * z
    assert table.yz == 2 * f * x - d * y + a * z
    assert all(r.is_zero for r in PLBracketService.jacobi_residual(table.as_structure()))


def test_linearization_of_zero_params():
    s = PLBracketService.build_structure(PLParams.zero(), ChartTag.LOCAL)
    assert PLBracketService.linearize(s).is_zero


def test_linearization_matches_finite_differences():
    params = PLParams.of("1/2", -1, 2, 3, "0.25", -2)
    s = PLBracketService.build_structure(params, ChartTag.LOCAL)
    numeric = PLBracketService.finite_difference_linearization(s)
    exact = PLBracketService.linear_table_matrix(PLBracketService.linearize(s))
    assert np.max(np.abs(numeric - exact)) < 1e-6


def test_linearize_requires_local_chart(lv_params):
    with pytest.raises(ChartMismatchException):
        PLBracketService.linearize(PLBracketService.build_structure(lv_params))


def test_poisson_rank():
    s = PLBracketService.build_structure(PLParams.of(1, 2, 3, 4, 5, 6))
    assert PLBracketService.poisson_rank(s, {"X": 2, "Y": 3, "Z": 5}) == 2
    zero = PLBracketService.build_structure(PLParams.zero())
    assert PLBracketService.poisson_rank(zero, {"X": 2, "Y": 3, "Z": 5}) == 0


def test_params_parsing():
    params = PLParamsInput(a=0, b="0.5", c="sym", d=1.25, e=0, f="-1/3").to_params()
    assert params.b == Poly.const(Fraction(1, 2))
    assert params.c == c
    assert params.d == Poly.const(Fraction(5, 4))
    assert params.is_symbolic
    assert parse_param_list("0,0,0,0,0,-1").numeric() == (0, 0, 0, 0, 0, -1)
    with pytest.raises(ValidationException):
        parse_param_list("1,2,3")
