"""
Tests de la capa de r-matrices: Schouten/mCYBE, Sklyanin, forma r̂ y Yang-Baxter
"""
import pytest

from app.modules.exact_core.models import Poly, PolyMatrix, symbols
from app.modules.exact_core.services import SamplingService
from app.modules.hopf.models import MatrixLayout
from app.modules.pl_bracket.models import ChartTag, PLParams
from app.modules.pl_bracket.services import PLBracketService
from app.modules.rmatrix.models import BOOK_ALGEBRA, SkewBivector, Trivector
from app.modules.rmatrix.services import RMatrixService, evaluate_at_random_point, nonzero_summary

a, b, c, d, e, f = symbols("a", "b", "c", "d", "e", "f")
r12, r13, r23, u, y, z = symbols("r12", "r13", "r23", "u", "y", "z")


def test_book_algebra_is_a_lie_algebra():
    assert BOOK_ALGEBRA.bracket(0, 2) == (1, 0, 0)
    assert BOOK_ALGEBRA.bracket(1, 2) == (0, 1, 0)
    assert all(r.is_zero for r in BOOK_ALGEBRA.jacobi_residuals())


def test_schouten_of_zero():
    assert RMatrixService.schouten_bracket(SkewBivector()).is_zero


def test_schouten_symbolic_is_ad_invariant():
    t = RMatrixService.schouten_bracket(SkewBivector.symbolic())
    assert all(r.is_zero for r in RMatrixService.mcybe_residual(t))
    # en r3(1) el bracket de Schouten se anula idénticamente
    assert t.is_zero


def test_mcybe_on_unit_trivector():
    t = Trivector(Poly.var("t"))
    assert RMatrixService.mcybe_residual(t) == [0, 0, -2 * Poly.var("t")]
    assert all(r.is_zero for r in RMatrixService.mcybe_residual(Trivector()))


def test_invariant_vector_fields():
    assert RMatrixService.invariant_fields_check() == {
        "left_closes": True,
        "right_closes": True,
        "left_right_commute": True,
    }


def test_sklyanin_examples():
    s = RMatrixService.sklyanin_bracket(SkewBivector.symbolic())
    assert s.pair("x", "y") == r13 * (1 - u)
    assert s.pair("y", "z") == -r12 * (1 - u**2) - r23 * y + r13 * z
    zero = RMatrixService.sklyanin_bracket(SkewBivector())
    assert all(p.is_zero for p in zero.brackets.values())


def test_sklyanin_satisfies_jacobi():
    s = RMatrixService.sklyanin_bracket(SkewBivector.symbolic())
    assert all(r.is_zero for r in PLBracketService.jacobi_residual(s))


def test_sklyanin_matches_coboundary_family():
    r = SkewBivector.symbolic()
    group = PLBracketService.to_group_chart(RMatrixService.sklyanin_bracket(r))
    expected = PLBracketService.build_structure(RMatrixService.coboundary_params(r))
    assert group.brackets == expected.brackets
    local = PLBracketService.build_structure(RMatrixService.coboundary_params(r), ChartTag.LOCAL)
    assert RMatrixService.sklyanin_bracket(r).brackets == local.brackets


def test_coboundary_params_examples():
    assert RMatrixService.coboundary_params(SkewBivector.of(1, 0, 0)) == PLParams.of(0, 0, 0, 0, 0, -1)
    assert RMatrixService.coboundary_params(SkewBivector.of(0, 0, -1)) == PLParams.of(0, 0, 0, -1, 0, 0)
    assert RMatrixService.coboundary_params(SkewBivector()).is_zero


def test_cocommutator_is_dual_of_linearization():
    r = SkewBivector.symbolic()
    delta = RMatrixService.cocommutator(r)
    assert delta[2] == {(0, 1): -2 * r12, (0, 2): -r13, (1, 2): -r23}
    table = PLBracketService.linearize(
        PLBracketService.build_structure(RMatrixService.coboundary_params(r), ChartTag.LOCAL)
    )
    constants = table.structure_constants()
    # y <-> e1, z <-> e2, x <-> e3
    assert delta[0][(0, 1)] == constants[("y", "z")]["y"]
    assert delta[2][(0, 1)] == constants[("y", "z")]["x"]


def test_rhat_entries():
    rhat = RMatrixService.rhat_matrix(PLParams.symbolic())
    assert rhat[1, 0] == c
    assert rhat[1, 1] == b
    assert rhat[1, 8] == f
    assert RMatrixService.rhat_matrix(PLParams.zero()).is_zero


def test_rhat_nilpotent_on_coboundary_stratum():
    params = PLParams.of("sym", 0, 0, "sym", 0, "sym")
    rhat = RMatrixService.rhat_matrix(params)
    assert (rhat @ rhat).is_zero


def test_rhat_form_symbolic():
    assert RMatrixService.rhat_form_residual(PLParams.symbolic()).is_zero
    assert RMatrixService.rhat_form_residual(PLParams.of(0, 1, 0, 0, 0, 0)).is_zero


def test_rhat_layout_report():
    report = RMatrixService.rhat_layout_report(PLParams.symbolic())
    assert report == {"classical": False, "quantum": True}


def test_rhat_form_detects_sign_flip():
    params = PLParams.symbolic()
    rhat = RMatrixService.rhat_matrix(params)
    corrupted = PolyMatrix.from_sparse(9, 9, {(i, j): v for i, j, v in rhat.nonzero_entries()} | {(1, 0): -c})
    residual = RMatrixService.rhat_form_residual(params, rhat=corrupted)
    assert not residual.is_zero
    assert nonzero_summary(residual) is not None


@pytest.mark.parametrize("layout", list(MatrixLayout))
def test_rhat_coincides_with_r_matrix(layout):
    r = SkewBivector.symbolic()
    params = RMatrixService.layout_identification(r, layout)
    assert RMatrixService.rhat_from_r_matrix(r, layout) == RMatrixService.rhat_matrix(params)


def test_yang_baxter_on_coboundary_stratum():
    params = PLParams.of("sym", 0, 0, "sym", 0, "sym")
    assert RMatrixService.cybe_residual(params) == (True, "symbolic")
    assert RMatrixService.qybe_residual(params) == (True, "symbolic")


def test_yang_baxter_for_zero_params():
    assert RMatrixService.cybe_residual(PLParams.zero())[0]
    assert RMatrixService.qybe_residual(PLParams.zero())[0]


def test_cybe_fails_off_coboundary_stratum():
    passed, _ = RMatrixService.cybe_residual(PLParams.of(1, 1, 1, 1, 1, 1))
    assert not passed
    passed, _ = RMatrixService.cybe_residual(PLParams.of(0, "sym", "sym", 0, "sym", 0))
    assert not passed


@pytest.mark.parametrize("values", [(0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 0), (0, 2, 0, 0, 0, 1)])
def test_cybe_holds_on_single_noncoboundary_directions(values):
    """b, c o e por separado siguen cumpliendo CYBE: la condición b = c = e = 0 es suficiente, no necesaria"""
    assert RMatrixService.cybe_residual(PLParams.of(*values)) == (True, "symbolic")


def test_cybe_fails_at_random_non_coboundary_points(rng):
    rhat = RMatrixService.rhat_matrix(PLParams.symbolic())
    for _ in range(20):
        numeric = evaluate_at_random_point(rhat, rng)
        assert not RMatrixService.cybe_matrix(numeric).is_zero


def test_quantum_r_is_identity_plus_rhat_on_coboundary_stratum():
    params = PLParams.of("sym", 0, 0, "sym", 0, "sym")
    assert RMatrixService.quantum_r_matrix(params) == PolyMatrix.identity(9) + RMatrixService.rhat_matrix(params)


def test_random_point_fallback(monkeypatch, rng):
    from app.core.config import settings

    monkeypatch.setattr(settings, "SYMBOLIC_TERM_BUDGET", 1)
    passed, method = RMatrixService.cybe_residual(PLParams.of("sym", 0, 0, "sym", 0, "sym"), rng)
    assert passed and method == "random-points"
    assert SamplingService.random_rational(rng) != 0
