"""
Tests de la clasificación A-I, cobordes y bialgebra tangente
"""
from fractions import Fraction

import pytest

from app.core.exceptions import InvalidParametersException, ValidationException
from app.modules.classify.models import ClassLetter, ClassificationStatus
from app.modules.classify.services import ClassifyService
from app.modules.exact_core.models import ZERO, Poly
from app.modules.exact_core.services import SamplingService
from app.modules.pl_bracket.models import LinearBracketTable, PLParams


def test_row_a():
    result = ClassifyService.classify(PLParams.of(0, 0, 0, 0, 0, -1))
    assert result.letter == "A"
    assert result.coboundary
    assert result.r_matrix.r12 == 1
    assert result.r_matrix.r13.is_zero and result.r_matrix.r23.is_zero


def test_standard_deformation_is_row_d():
    result = ClassifyService.classify(PLParams.of(0, 2, 0, 0, 0, "1/2"))
    assert result.letter == "D"
    assert result.label.lambda_ == 2
    assert result.label.alpha == Fraction(-1, 2)
    assert not result.coboundary


def test_row_i_with_alpha():
    result = ClassifyService.classify(PLParams.of(0, 0, "-1/2", -3, 0, 0))
    assert result.letter == "I"
    assert result.label.alpha == 3


def test_a_only_goes_to_b_through_swap():
    result = ClassifyService.classify(PLParams.of(1, 0, 0, 0, 0, 0))
    assert result.letter == "B"
    assert result.normalizations == ("swap_e1_e2",)
    assert result.coboundary


def test_zero_vector_is_trivial():
    result = ClassifyService.classify(PLParams.zero())
    assert result.status == ClassificationStatus.TRIVIAL
    assert result.letter is None
    assert result.r_matrix.is_zero


def test_symbolic_params_are_rejected(symbolic_params):
    with pytest.raises(ValidationException):
        ClassifyService.classify(symbolic_params)


def test_is_coboundary():
    flag, r = ClassifyService.is_coboundary(PLParams.of(0, 0, 0, 0, 0, -1))
    assert flag and r.r12 == 1
    assert ClassifyService.is_coboundary(PLParams.of(0, 1, 0, 0, 0, 0)) == (False, None)
    flag, r = ClassifyService.is_coboundary(PLParams.of(2, 0, 0, 3, 0, 5))
    assert flag
    assert (r.r12, r.r13, r.r23) == (-5, 2, 3)


def test_is_coboundary_symbolic(symbolic_params):
    flag, _ = ClassifyService.is_coboundary(symbolic_params)
    assert not flag


@pytest.mark.parametrize("letter", list(ClassLetter))
def test_every_row_classifies_to_its_letter(letter, rng):
    """Cada fila instanciada en 10 valores aleatorios admisibles"""
    for _ in range(10):
        lambda_, alpha, omega = (SamplingService.random_rational(rng) for _ in range(3))
        params = ClassifyService.instantiate_row(letter, lambda_, alpha, omega)
        result = ClassifyService.classify(params)
        assert result.letter == letter.value
        assert result.coboundary == (letter in (ClassLetter.A, ClassLetter.B))
        if letter in (ClassLetter.C, ClassLetter.D, ClassLetter.E, ClassLetter.F):
            assert result.label.lambda_ == lambda_


@pytest.mark.parametrize("letter", list(ClassLetter))
def test_classification_is_swap_invariant(letter, rng):
    lambda_, alpha, omega = (SamplingService.random_rational(rng) for _ in range(3))
    params = ClassifyService.instantiate_row(letter, lambda_, alpha, omega)
    swapped = ClassifyService.swap_e1_e2(params)
    assert ClassifyService.classify(swapped).letter == letter.value


def test_swap_is_an_involution(symbolic_params):
    twice = ClassifyService.swap_e1_e2(ClassifyService.swap_e1_e2(symbolic_params))
    assert twice == symbolic_params


def test_instantiate_row_rejects_zero():
    with pytest.raises(InvalidParametersException):
        ClassifyService.instantiate_row(ClassLetter.D, 1, 0, 1)


def test_instantiate_row_shapes():
    assert ClassifyService.instantiate_row(ClassLetter.E, 4, 1, 3) == PLParams.of(0, 0, 2, 0, 2, -3)
    assert ClassifyService.instantiate_row(ClassLetter.G) == PLParams.of(0, 0, "-1/2", 0, 0, 0)


def test_unresolved_reports_row_family():
    result = ClassifyService.classify(PLParams.of(0, 0, 1, 0, 0, 0))
    assert result.status == ClassificationStatus.UNRESOLVED
    assert result.row_family == ClassLetter.G
    assert "G" in result.diagnostic


def test_unresolved_without_family():
    result = ClassifyService.classify(PLParams.of(0, 1, 1, 0, 0, 0))
    assert result.status == ClassificationStatus.UNRESOLVED
    assert result.row_family is None


def test_row_family_of_printed_i_usage():
    assert ClassifyService.row_family(PLParams.of(0, 0, 5, 7, 0, 0)) == ClassLetter.I


def test_tangent_bialgebra_of_row_d():
    tangent = ClassifyService.tangent_bialgebra(PLParams.of(0, 2, 0, 0, 0, "-1/2"))
    assert tangent.killing_determinant == -128
    assert tangent.dual_type == "semisimple"
    assert tangent.is_bialgebra


def test_tangent_bialgebra_of_row_i():
    tangent = ClassifyService.tangent_bialgebra(PLParams.of(0, 0, "-1/2", -1, 0, 0))
    assert tangent.killing_determinant == -8
    assert tangent.dual_type == "semisimple"


def test_zero_params_give_abelian_dual():
    assert ClassifyService.dual_algebra_type(PLParams.zero()) == "abelian"


def test_lv_dual_is_solvable(lv_params):
    assert ClassifyService.dual_algebra_type(lv_params) == "solvable"


def test_symbolic_tangent_is_a_bialgebra(symbolic_params):
    """Jacobi del dual y condición de 1-cociclo para (a..f) simbólicos"""
    tangent = ClassifyService.tangent_bialgebra(symbolic_params)
    assert all(r.is_zero for r in tangent.dual_jacobi)
    assert all(r.is_zero for r in tangent.cocycle_residuals)


def test_corrupted_dual_fails_jacobi():
    table = LinearBracketTable(xy=Poly.var("y"), xz=ZERO, yz=Poly.var("x"))
    tangent = ClassifyService.tangent_from_table(table)
    assert not all(r.is_zero for r in tangent.dual_jacobi)
    assert not tangent.is_bialgebra


def test_classify_endpoint(client):
    response = client.post("/api/v1/classify", json={"params": {"f": -1}})
    assert response.status_code == 200
    body = response.json()
    assert body["class"] == "A"
    assert body["coboundary"] is True


def test_classify_endpoint_rejects_symbolic(client):
    response = client.post("/api/v1/classify", json={"params": {"a": "sym"}})
    assert response.status_code == 422
