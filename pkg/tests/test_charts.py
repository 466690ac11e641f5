"""
Tests de las cartas (J3, J+, J-) y de las estructuras con nombre
"""
import numpy as np
import pytest

from app.core.exceptions import DomainException, InvalidParametersException, UnknownStructureException
from app.modules.charts.models import Chart, ChartKind
from app.modules.charts.services import NAMED_STRUCTURES, ChartService
from app.modules.pl_bracket.models import PLParams

DEFORMATIONS = (0.5, -0.5, 1.0, -1.0, 2.0, -2.0)


def test_poincare_bracket_scales_with_b():
    chart = Chart(ChartKind.STANDARD, 1.0)
    point = (0.3, -1.2, 0.7)
    value = ChartService.pushforward_bracket(PLParams.of(0, 3, 0, 0, 0, 0), chart, 0, 1, point)
    assert value == pytest.approx(1.5 * point[1], abs=1e-12)
    assert ChartService.pushforward_bracket(PLParams.of(0, 3, 0, 0, 0, 0), chart, 0, 0, point) == 0


@pytest.mark.parametrize("kind", [ChartKind.STANDARD, ChartKind.NONSTANDARD, ChartKind.LOCAL])
def test_generic_family_matches_closed_forms(kind, rng):
    """Parámetros aleatorios frente a las formas cerradas de la familia completa"""
    for _ in range(5):
        params = tuple(rng.uniform(-2, 2, size=6))
        chart = Chart(kind, float(rng.choice(DEFORMATIONS)))
        assert ChartService.closed_form_check(params, chart, rng).passed
        assert ChartService.casimir_transport_check(params, chart, rng).passed


@pytest.mark.parametrize("identifier", sorted(NAMED_STRUCTURES))
def test_named_structure_report(identifier, rng):
    checks = ChartService.check_named_structure(identifier, 1.0, rng)
    failed = [check.line() for check in checks if not check.passed]
    assert failed == []


@pytest.mark.parametrize("identifier", ["sl2-standard", "sl2-nonstandard", "so3-q", "e2-q"])
def test_named_structure_report_other_deformations(identifier, rng):
    for deformation in (-0.5, 2.0):
        checks = ChartService.check_named_structure(identifier, deformation, rng)
        assert all(check.passed for check in checks)


def test_sl2_standard_brackets():
    point = np.array([0.4, 1.1, -0.6])
    params = NAMED_STRUCTURES["sl2-standard"].params(1)
    matrix = ChartService.pushforward_matrix(params, Chart(ChartKind.STANDARD, 1.0), point)
    assert matrix[0, 1] == pytest.approx(point[1])
    assert matrix[0, 2] == pytest.approx(-point[2])
    assert matrix[1, 2] == pytest.approx(np.sinh(2 * point[0]))


def test_sl2_nonstandard_brackets():
    point = np.array([0.4, 1.1, -0.6])
    params = NAMED_STRUCTURES["sl2-nonstandard"].params(1)
    matrix = ChartService.pushforward_matrix(params, Chart(ChartKind.NONSTANDARD, 1.0), point)
    assert matrix[1, 2] == pytest.approx(2 * point[0])
    assert matrix[0, 1] == pytest.approx(point[1] * np.cosh(point[2]))


def test_heisenberg_g_brackets():
    point = np.array([0.4, 1.1, -0.6])
    params = NAMED_STRUCTURES["heisenberg-g"].params(2)
    matrix = ChartService.pushforward_matrix(params, Chart(ChartKind.STANDARD, 2.0), point)
    assert matrix[0, 1] == pytest.approx(-0.5 / 2.0 * point[2])
    assert matrix[0, 2] == pytest.approx(0, abs=1e-12)
    assert matrix[1, 2] == pytest.approx(0, abs=1e-12)


def test_unknown_structure():
    with pytest.raises(UnknownStructureException):
        ChartService.named_structure("sl3-standard")


def test_zero_deformation_is_rejected():
    with pytest.raises(InvalidParametersException):
        Chart(ChartKind.NONSTANDARD, 0.0)


def test_point_outside_domain():
    chart = Chart(ChartKind.STANDARD, 1.0)
    with pytest.raises(DomainException):
        ChartService.forward(chart, (1000.0, 0.0, 0.0))
    with pytest.raises(DomainException):
        ChartService.inverse(chart, (-1.0, 0.0, 0.0))


@pytest.mark.parametrize("deformation,expected", [(1.0, (2.0, 1.0)), (2.0, (4.0, 0.5)), (-0.5, (-1.0, -2.0))])
def test_standard_casimir_relation(deformation, expected, rng):
    relation = ChartService.casimir_relation("sl2-standard", deformation, rng)
    assert relation.symbolic
    assert relation.k1 == pytest.approx(expected[0])
    assert relation.k0 == pytest.approx(expected[1])
    assert relation.passed


def test_nonstandard_casimir_relation(rng):
    relation = ChartService.casimir_relation("sl2-nonstandard", 1.0, rng)
    assert relation.symbolic
    assert relation.k1 == pytest.approx(-2.0)
    assert relation.k0 == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("kind", [ChartKind.STANDARD, ChartKind.NONSTANDARD])
def test_deformed_coproduct(kind, rng):
    for deformation in DEFORMATIONS:
        assert ChartService.deformed_coproduct_check(Chart(kind, deformation), rng).passed


def test_coproduct_at_counit_point():
    chart = Chart(ChartKind.STANDARD, 1.0)
    origin = ChartService.forward(chart, (0.0, 0.0, 0.0))
    assert np.allclose(origin, (1.0, 0.0, 0.0))


def test_sl2_limit(rng):
    assert ChartService.sl2_limit_check(1e-4, rng).passed


def test_numeric_jacobi_on_random_params(rng):
    params = tuple(rng.uniform(-1, 1, size=6))
    chart = Chart(ChartKind.STANDARD, 1.0)
    assert ChartService.numeric_jacobi(params, chart, (0.2, -0.3, 0.5)) < 1e-6


def test_roundtrip(rng):
    for kind in ChartKind:
        assert ChartService.chart_roundtrip_check(Chart(kind, 0.5), rng).passed


def test_get_named_structure_endpoint(client):
    response = client.get("/api/v1/charts/sl2-standard", params={"deformation": 1})
    assert response.status_code == 200
    body = response.json()
    assert body["family"] == "D"
    assert body["params"]["b"] == "2"
    assert body["brackets"]["{J3,J+}"] == "Jp"


def test_get_unknown_structure_endpoint(client):
    assert client.get("/api/v1/charts/nope").status_code == 404


def test_chart_check_endpoint(client):
    response = client.post("/api/v1/charts/check", json={"id": "heisenberg-q", "deformation": 0.5})
    assert response.status_code == 200
    assert response.json()["all_passed"] is True
