"""
Tests de la dinámica LV: campos impresos, flujo vía corchete, integrador y conservación
"""
import numpy as np
import pytest

from app.core.exceptions import StateDomainException, ValidationException
from app.modules.dynamics.integrator import DormandPrince
from app.modules.dynamics.models import (
    CasimirHamiltonian,
    FieldVariant,
    LVHamiltonian,
    State,
    TrajectoryStatus,
)
from app.modules.dynamics.schemas import SimulationConfig
from app.modules.dynamics.services import DynamicsService
from app.modules.pl_bracket.models import PLParams

LV = (0.0, 1.0, 0.0, 0.0, 0.0, 0.0)
BOUNDED = LVHamiltonian((1, 1, 1), (-1, -1, -1))


def _prefix(trajectory, low=1e-2, high=1e2):
    """Pasos iniciales con todas las coordenadas en (low, high)"""
    prefix = []
    for point in trajectory.points:
        if min(point.X, point.Y, point.Z) <= low or max(point.X, point.Y, point.Z) >= high:
            break
        prefix.append(point)
    return prefix


def test_lv_field_by_hand():
    H = LVHamiltonian((1, 1, 1), (0, 0, 0))
    assert np.allclose(DynamicsService.lv_vector_field(1.0, H, (1, 1, 1)), (0, 2, -2))
    assert np.allclose(DynamicsService.lv_vector_field(0.0, H, (1, 2, 3)), 0)


def test_lv_field_matches_bracket_flow(rng):
    H = LVHamiltonian(tuple(rng.uniform(-1, 1, 3)), tuple(rng.uniform(-1, 1, 3)))
    for s in DynamicsService.random_states(100, rng):
        printed = DynamicsService.lv_vector_field(2.5, H, s)
        oracle = DynamicsService.hamiltonian_flow((0, 2.5, 0, 0, 0, 0), H, s)
        assert np.allclose(printed, oracle, rtol=1e-12, atol=1e-12)


def test_deformed_field_reduces_to_lv(rng):
    H = LVHamiltonian((1, 2, 3), (0.5, -1, 2))
    for s in DynamicsService.random_states(10, rng):
        assert np.array_equal(
            DynamicsService.deformed_vector_field(LV, H, s), DynamicsService.lv_vector_field(1.0, H, s)
        )


def test_a_term_alone_leaves_y_still():
    H = LVHamiltonian((0, 0, 0), (0, 0, 0))
    field = DynamicsService.deformed_vector_field((1, 0, 0, 0, 0, 0), H, (1.3, 0.7, 2.1))
    assert field[1] == 0


def test_consistent_variant_matches_bracket_flow(rng):
    for _ in range(5):
        params = tuple(rng.uniform(-1, 1, 6))
        H = LVHamiltonian(tuple(rng.uniform(-1, 1, 3)), tuple(rng.uniform(-1, 1, 3)))
        report = DynamicsService.oracle_report(params, H, rng=rng)
        consistent = [check for check in report if "/consistent/" in check.name]
        assert len(consistent) == 3
        assert all(check.passed for check in consistent)


def test_printed_z_line_is_flagged():
    H = LVHamiltonian((1, 1, 1), (1, 1, 1))
    report = {check.name: check.passed for check in DynamicsService.oracle_report((1, 1, 1, 1, 1, 1), H)}
    assert report["oracle/printed/X"]
    assert report["oracle/printed/Y"]
    assert not report["oracle/printed/Z"]
    assert report["oracle/consistent/Z"]


def test_printed_z_line_agrees_without_e():
    H = LVHamiltonian((1, 1, 1), (1, 1, 1))
    report = DynamicsService.oracle_report((1, 1, 1, 1, 0, 1), H)
    assert all(check.passed for check in report)


def test_casimir_generates_no_flow(rng):
    params = tuple(rng.uniform(-1, 1, 6))
    H = CasimirHamiltonian(params)
    for s in DynamicsService.random_states(20, rng):
        assert np.max(np.abs(DynamicsService.hamiltonian_flow(params, H, s))) < 1e-9


def test_flow_of_x_on_lv_stratum():
    H = LVHamiltonian((1, 0, 0), (0, 0, 0))
    X, Y, Z = 1.5, 0.5, 2.0
    assert np.allclose(DynamicsService.hamiltonian_flow(LV, H, (X, Y, Z)), (0, X * Y, -X * Z))


def test_logs_require_positive_state():
    H = LVHamiltonian((1, 1, 1), (1, 1, 1))
    with pytest.raises(StateDomainException):
        DynamicsService.lv_vector_field(1.0, H, (1.0, -2.0, 3.0))


def test_involution(rng):
    H = LVHamiltonian((1, 1, 1), (1, 1, 1))
    assert DynamicsService.involution_check(LV, H, rng) < 1e-10
    assert DynamicsService.involution_check((1, 1, 1, 1, 1, 1), H, rng) < 1e-10
    assert DynamicsService.involution_check(LV, LVHamiltonian((1, 0, 0), (0, 0, 0)), rng) < 1e-12


def test_zero_field_is_constant():
    trajectory = DynamicsService.integrate(lambda s: np.zeros(3), State(0.0, 1.0, 2.0, 3.0), 5.0)
    assert trajectory.status == TrajectoryStatus.COMPLETED
    assert np.allclose(trajectory.states, (1.0, 2.0, 3.0))
    assert trajectory.final.t == 5.0


def test_lv_acceptance_run_exits_domain():
    """Z decae hasta el guardián de dominio; H y 𝒞 se conservan mientras tanto"""
    H = LVHamiltonian((1, 1, 1), (1, 1, 1))
    field = DynamicsService.build_field(LV, H)
    trajectory = DynamicsService.integrate(
        field, State(0.0, 1.0, 2.0, 3.0), 20.0, 1e-10, 1e-12, params=LV, hamiltonian=H
    )
    assert trajectory.status == TrajectoryStatus.DOMAIN_EXIT
    assert trajectory.is_monotonic()
    prefix = _prefix(trajectory, high=np.inf)
    assert len(prefix) > 5
    assert max(p.relH for p in prefix) < 1e-8
    assert max(p.relC for p in prefix) < 1e-8


def test_bounded_lv_run_conserves():
    field = DynamicsService.build_field(LV, BOUNDED)
    trajectory = DynamicsService.integrate(
        field, State(0.0, 1.0, 2.0, 3.0), 20.0, 1e-10, 1e-12, params=LV, hamiltonian=BOUNDED, positive=True
    )
    assert trajectory.status == TrajectoryStatus.COMPLETED
    rel_h, rel_c = trajectory.max_drift()
    assert rel_h < 1e-8
    assert rel_c < 1e-8
    assert np.all(trajectory.states > 0)


def test_deformed_run_breaks_down_in_finite_time():
    """Con P[1,1,1,1,1,1] Y colapsa hacia t = 0.0686: el paso se anula antes de la guarda de dominio"""
    params = (1, 1, 1, 1, 1, 1)
    H = LVHamiltonian((1, 1, 1), (1, 1, 1))
    field = DynamicsService.build_field(params, H)
    trajectory = DynamicsService.integrate(
        field, State(0.0, 1.0, 2.0, 3.0), 5.0, 1e-10, 1e-12, params=params, hamiltonian=H
    )
    assert trajectory.is_monotonic()
    assert trajectory.status == TrajectoryStatus.STEP_UNDERFLOW
    assert 0.05 < trajectory.final.t < 0.08
    rel_h, rel_c = trajectory.max_drift()
    assert rel_h < 1e-8
    assert rel_c < 1e-8


def test_b_scaling_halves_time():
    fast = DynamicsService.integrate(
        DynamicsService.build_field((0, 2, 0, 0, 0, 0), BOUNDED), State(0.0, 1.0, 2.0, 3.0), 1.0, 1e-11, 1e-13
    )
    slow = DynamicsService.integrate(
        DynamicsService.build_field(LV, BOUNDED), State(0.0, 1.0, 2.0, 3.0), 2.0, 1e-11, 1e-13
    )
    assert np.allclose(fast.states[-1], slow.states[-1], rtol=1e-7)


def test_printed_and_bracket_integrations_agree():
    H = LVHamiltonian((1, 1, 1), (1, 1, 1))
    params = (0.5, 1, 0.25, -0.5, 0.0, 0.3)
    printed = DynamicsService.integrate(
        DynamicsService.build_field(params, H, FieldVariant.PRINTED), (1.0, 2.0, 3.0), 0.2
    )
    bracket = DynamicsService.integrate(DynamicsService.build_field(params, H), (1.0, 2.0, 3.0), 0.2)
    assert np.allclose(printed.states[-1], bracket.states[-1], rtol=1e-8)


def test_max_steps_status():
    trajectory = DynamicsService.integrate(
        DynamicsService.build_field(LV, BOUNDED), (1.0, 2.0, 3.0), 20.0, max_steps=5
    )
    assert trajectory.status == TrajectoryStatus.MAX_STEPS
    assert trajectory.steps == 5


def test_invalid_tolerances():
    with pytest.raises(ValidationException):
        DormandPrince(lambda s: s, rtol=0.0)
    with pytest.raises(ValidationException):
        DynamicsService.integrate(lambda s: s, (1.0, 1.0, 1.0), 0.0)


def test_symbolic_params_rejected(symbolic_params):
    with pytest.raises(ValidationException):
        DynamicsService.build_field(symbolic_params, BOUNDED)


def test_simulate_records_metadata():
    config = SimulationConfig(name="demo", alpha=(1, 1, 1), beta=(-1, -1, -1), t_end=2.0)
    trajectory = DynamicsService.simulate(config)
    assert trajectory.status == TrajectoryStatus.COMPLETED
    assert trajectory.metadata["name"] == "demo"
    assert trajectory.metadata["params"]["b"] == "1"


def test_sweep_keeps_order():
    configs = [
        SimulationConfig(name=f"run-{i}", alpha=(1, 1, 1), beta=(-1, -1, -1), x0=(1.0, 1.0 + i, 2.0), t_end=1.0)
        for i in range(3)
    ]
    trajectories = DynamicsService.run_sweep_blocking(configs)
    assert [t.metadata["name"] for t in trajectories] == ["run-0", "run-1", "run-2"]
    assert all(t.status == TrajectoryStatus.COMPLETED for t in trajectories)


def test_simulate_endpoint(client):
    response = client.post(
        "/api/v1/simulate",
        json={"params": {"b": 1}, "alpha": [1, 1, 1], "beta": [-1, -1, -1], "t_end": 1.0},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "completed"
    assert body["max_relH"] < 1e-8


def test_simulate_endpoint_rejects_bad_x0(client):
    response = client.post("/api/v1/simulate", json={"x0": [-1, 1, 1]})
    assert response.status_code == 422


def test_casimir_value_on_lv_stratum():
    assert DynamicsService.casimir(PLParams.of(0, 1, 0, 0, 0, 0), (2.0, 3.0, 4.0)) == pytest.approx(6.0)
