"""
Tests del grupo libro cuántico: reescritura, coproducto, Casimir y coacción
"""
import pytest

from app.core.exceptions import NonInvertibleVariableException, ValidationException
from app.modules.exact_core.models import Poly
from app.modules.hopf.models import MatrixLayout
from app.modules.qalgebra.models import NCPoly, NCTensorPoly, RewriteStrategy, generators
from app.modules.qalgebra.services import CONFLUENCE_ALPHABET, QAlgebraService

X, Y, Z = generators("X", "Y", "Z")
k = Poly.var("k")


def test_single_swaps():
    assert QAlgebraService.nc_normal_form("Y X") == NCPoly({(("X", 1), ("Y", 1)): k})
    assert QAlgebraService.nc_normal_form("Z X") == NCPoly({(("X", 1), ("Z", 1)): k.inverse()})
    assert QAlgebraService.nc_normal_form("Z Y") == NCPoly({(("Y", 1), ("Z", 1)): k.inverse()})


def test_inverse_cancels():
    assert QAlgebraService.nc_normal_form("X X^-1") == NCPoly.const(1)
    assert QAlgebraService.nc_normal_form("X^-1 Y X") == Y * k


@pytest.mark.parametrize("strategy", list(RewriteStrategy))
def test_zyx_word(strategy):
    """ẐŶX̂ = k⁻¹ X̂ŶẐ por cualquier camino"""
    result = QAlgebraService.nc_normal_form("Z*Y*X", strategy)
    assert result == NCPoly({(("X", 1), ("Y", 1), ("Z", 1)): k.inverse()})


def test_sum_of_words():
    result = QAlgebraService.nc_normal_form([(1, "X Y"), (-1, "Y X")])
    assert result == X * Y * (1 - k)


def test_parse_rejects_unknown_letters():
    with pytest.raises(ValidationException):
        QAlgebraService.parse_word("X W")


def test_only_x_is_invertible():
    with pytest.raises(NonInvertibleVariableException):
        NCPoly.gen("Y", -1)
    with pytest.raises(NonInvertibleVariableException):
        Y.inverse()


def test_normal_form_is_multiplicative(rng):
    for _ in range(50):
        u = [CONFLUENCE_ALPHABET[i] for i in rng.integers(0, 4, size=5)]
        v = [CONFLUENCE_ALPHABET[i] for i in rng.integers(0, 4, size=4)]
        whole = QAlgebraService.nc_normal_form(u + v)
        assert whole == QAlgebraService.nc_normal_form(u) * QAlgebraService.nc_normal_form(v)


def test_confluence():
    result = QAlgebraService.rewriting_confluence(max_length=6, random_words=200)
    assert result.passed, result.line()


def test_relations_hold_on_generators():
    assert all(r.is_zero for r in QAlgebraService.relations_encoded())


def test_coproduct_is_homomorphism():
    residuals = QAlgebraService.q_homomorphism_residual()
    assert len(residuals) == 3
    assert all(r.is_zero for r in residuals)


def test_coproduct_respects_reordering():
    """Δ(ŶX̂) = k Δ(X̂)Δ(Ŷ)"""
    left = QAlgebraService.coproduct(Y) * QAlgebraService.coproduct(X)
    assert left == QAlgebraService.coproduct(X * Y) * k
    assert isinstance(left, NCTensorPoly)


def test_coproduct_of_inverse():
    inverse = QAlgebraService.coproduct(NCPoly.gen("X", -1))
    assert inverse * QAlgebraService.coproduct(X) == NCTensorPoly.const(1)


def test_corrupted_coproduct_fails():
    xy, _, yz = QAlgebraService.q_homomorphism_residual(corrupted=True)
    assert xy.is_zero
    assert not yz.is_zero


def test_casimir_is_central():
    assert all(c.is_zero for c in QAlgebraService.q_casimir_centrality())
    casimir = QAlgebraService.quantum_casimir()
    assert casimir.commutator(casimir).is_zero
    assert not X.commutator(Y).is_zero


def test_coaction_orderings():
    assert QAlgebraService.coaction_covariance(MatrixLayout.CLASSICAL).is_zero
    residual = QAlgebraService.coaction_covariance(MatrixLayout.QUANTUM)
    assert not residual.is_zero
    assert QAlgebraService.covariant_layouts() == {"classical": True, "quantum": False}


@pytest.mark.parametrize("layout", list(MatrixLayout))
def test_matrix_coproduct(layout):
    residuals = QAlgebraService.quantum_matrix_coproduct_check(layout)
    assert len(residuals) == 9
    assert all(r.is_zero for r in residuals)


def test_classical_limit():
    checks = QAlgebraService.classical_limit_check()
    assert [c.name for c in checks] == [
        "qalgebra/classical-limit/XY",
        "qalgebra/classical-limit/XZ",
        "qalgebra/classical-limit/YZ",
    ]
    assert all(c.passed for c in checks)
    b = Poly.var("b")
    assert QAlgebraService.classical_limit(Y, Z) == b * Poly.var("Y") * Poly.var("Z")


def test_classical_limit_vanishes_at_b_zero():
    limit = QAlgebraService.classical_limit(X, Y)
    assert limit.substitute({"b": 0}).is_zero


def test_run_checks_and_negative_control():
    checks = QAlgebraService.run_checks(max_length=3)
    assert all(c.passed for c in checks)
    corrupted = {c.name: c.passed for c in QAlgebraService.run_checks("coproduct", max_length=3)}
    assert corrupted["qalgebra/coproduct-homomorphism"] is False
    assert sum(1 for ok in corrupted.values() if not ok) == 1
    with pytest.raises(ValidationException):
        QAlgebraService.run_checks("jacobi")


def test_qcheck_endpoint(client):
    response = client.get("/api/v1/qcheck", params={"max_length": 3})
    assert response.status_code == 200
    body = response.json()
    assert body["all_passed"] is True
    assert body["covariant_layouts"]["classical"] is True


def test_qcheck_endpoint_corrupted(client):
    response = client.get("/api/v1/qcheck", params={"max_length": 2, "corrupt": "coproduct"})
    assert response.status_code == 200
    assert response.json()["all_passed"] is False
    assert client.get("/api/v1/qcheck", params={"corrupt": "nope"}).status_code == 422


def test_normal_form_endpoint(client):
    response = client.post("/api/v1/qcheck/normal-form", json={"word": "Y X"})
    assert response.status_code == 200
    assert response.json()["normal_form"] == "(k)*X*Y"
