"""
Servicios de dinámica: campos vectoriales LV (impresos y vía corchete),
integración con monitor de conservación e involución H-𝒞
"""
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple, Union

import anyio
import numpy as np

from app.core.config import settings
from app.core.exceptions import StateDomainException, ValidationException
from app.core.logging import get_logger
from app.core.schemas import CheckResult
from app.modules.dynamics.integrator import DormandPrince
from app.modules.dynamics.models import (
    CasimirHamiltonian,
    FieldVariant,
    Hamiltonian,
    LVHamiltonian,
    State,
    Trajectory,
    TrajectoryPoint,
    as_state_array,
    relative_drift,
    require_positive,
)
from app.modules.dynamics.schemas import SimulationConfig
from app.modules.pl_bracket.models import PLParams

logger = get_logger(__name__)

ParamSource = Union[PLParams, Sequence[float]]
Field = Callable[[np.ndarray], np.ndarray]


def as_floats(params: ParamSource) -> Tuple[float, ...]:
    """
    Raises:
        ValidationException: Si los parámetros son simbólicos o no son seis
    """
    if isinstance(params, PLParams):
        return tuple(float(v) for v in params.numeric())
    values = tuple(float(v) for v in params)
    if len(values) != 6:
        raise ValidationException(f"Se esperaban 6 parámetros, recibidos {len(values)}")
    return values


def poisson_matrix(params: ParamSource, s: np.ndarray) -> np.ndarray:
    """Matriz {W_i, W_j} del corchete genérico en (X, Y, Z)"""
    a, b, c, d, e, f = as_floats(params)
    X, Y, Z = s
    xy = a * X**2 - b * X * Y - 2 * c * X * Z - a * X
    xz = d * X**2 + 2 * e * X * Y + b * X * Z - d * X
    yz = -f * X**2 + e * Y**2 + b * Y * Z - d * Y + c * Z**2 + a * Z + f
    return np.array([[0.0, xy, xz], [-xy, 0.0, yz], [-xz, -yz, 0.0]])


def _on_lv_stratum(values: Tuple[float, ...]) -> bool:
    a, _, c, d, e, f = values
    return a == c == d == e == f == 0


class DynamicsService:
    """Flujos hamiltonianos sobre el grupo libro"""

    @staticmethod
    def lv_vector_field(b: float, H: LVHamiltonian, s: Union[State, Sequence[float]]) -> np.ndarray:
        """
        Sistema Lotka-Volterra impreso:
        Ẋ = bX[α3Z - α2Y + (β3-β2)], Ẏ = bY[α1X + α3Z + (β1+β3)], Ż = bZ[-α1X - α2Y - (β1+β2)]
        """
        X, Y, Z = _state(s, H)
        a1, a2, a3 = H.alpha
        b1, b2, b3 = H.beta
        return np.array([
            b * X * (a3 * Z - a2 * Y + (b3 - b2)),
            b * Y * (a1 * X + a3 * Z + (b1 + b3)),
            b * Z * (-a1 * X - a2 * Y - (b1 + b2)),
        ])

    @staticmethod
    def deformed_vector_field(
        params: ParamSource,
        H: LVHamiltonian,
        s: Union[State, Sequence[float]],
        variant: FieldVariant = FieldVariant.PRINTED,
    ) -> np.ndarray:
        """
        Perturbación de cinco parámetros del sistema LV

        variant=PRINTED transcribe el término e de Ż con (α1 Y + β1);
        CONSISTENT usa (α1 X + β1).

        Raises:
            StateDomainException: Si Y o Z se anulan con β2 o β3 no nulos
        """
        a, b, c, d, e, f = as_floats(params)
        X, Y, Z = _state(s, H)
        a1, a2, a3 = H.alpha
        b1, b2, b3 = H.beta
        if (b2 != 0 and Y == 0) or (b3 != 0 and Z == 0):
            raise StateDomainException("División por Y o Z nulos en el campo deformado")
        h2 = a2 + (b2 / Y if b2 != 0 else 0.0)
        h3 = a3 + (b3 / Z if b3 != 0 else 0.0)
        g1X = a1 * X + b1
        g1_eterm = (a1 * Y + b1) if variant == FieldVariant.PRINTED else g1X

        x_dot = (
            b * X * (a3 * Z - a2 * Y + (b3 - b2))
            + h2 * (a * X * (X - 1) - 2 * c * X * Z)
            + h3 * (d * X * (X - 1) + 2 * e * X * Y)
        )
        y_dot = (
            b * Y * (a1 * X + a3 * Z + (b1 + b3))
            + a * ((a3 * Z + b3) - (X - 1) * g1X)
            + c * Z * (2 * g1X + (a3 * Z + b3))
            + h3 * (Y * (e * Y - d) + f * (1 - X**2))
        )
        z_dot = (
            b * Z * (-a1 * X - a2 * Y - (b1 + b2))
            + d * ((1 - X) * g1X + (a2 * Y + b2))
            + h2 * (f * (X**2 - 1) - Z * (a + c * Z))
            - e * Y * (2 * g1_eterm + (a2 * Y + b2))
        )
        return np.array([x_dot, y_dot, z_dot])

    @staticmethod
    def hamiltonian_flow(params: ParamSource, H: Hamiltonian, s: Union[State, Sequence[float]]) -> np.ndarray:
        """Ẇ = Σ_V {W, V} ∂H/∂V"""
        state = _state(s, H)
        return poisson_matrix(params, state) @ H.gradient(state)

    @staticmethod
    def casimir(params: ParamSource, s: Union[State, Sequence[float]]) -> float:
        return CasimirHamiltonian(as_floats(params)).value(_state(s))

    @staticmethod
    def build_field(params: ParamSource, H: Hamiltonian, variant: FieldVariant = FieldVariant.BRACKET) -> Field:
        """Campo a integrar según la variante"""
        values = as_floats(params)
        if variant == FieldVariant.BRACKET:
            return partial(DynamicsService.hamiltonian_flow, values, H)
        if not isinstance(H, LVHamiltonian):
            raise ValidationException("Las variantes impresas requieren un hamiltoniano LV")
        if _on_lv_stratum(values):
            return partial(DynamicsService.lv_vector_field, values[1], H)
        return lambda s: DynamicsService.deformed_vector_field(values, H, s, variant)

    # ============================================
    # Integración
    # ============================================

    @staticmethod
    def integrate(
        field: Field,
        s0: Union[State, Sequence[float]],
        t_end: float,
        rtol: Optional[float] = None,
        atol: Optional[float] = None,
        *,
        params: Optional[ParamSource] = None,
        hamiltonian: Optional[Hamiltonian] = None,
        max_steps: Optional[int] = None,
        positive: Optional[bool] = None,
    ) -> Trajectory:
        """
        Integra con DOPRI5 registrando H y 𝒞 en cada paso aceptado

        El guardián de dominio (min(X,Y,Z) < DOMAIN_GUARD) se activa si el
        hamiltoniano tiene logaritmos o si `positive` lo pide.
        """
        t0 = s0.t if isinstance(s0, State) else 0.0
        y0 = s0.as_array() if isinstance(s0, State) else as_state_array(s0)
        casimir = CasimirHamiltonian(as_floats(params)) if params is not None else None
        guarded = positive if positive is not None else bool(hamiltonian is not None and hamiltonian.has_logs)
        if guarded:
            require_positive(y0, settings.DOMAIN_GUARD)

        h0 = hamiltonian.value(y0) if hamiltonian is not None else 0.0
        c0 = casimir.value(y0) if casimir is not None else 0.0
        points: List[TrajectoryPoint] = []

        def record(t: float, y: np.ndarray) -> None:
            h = hamiltonian.value(y) if hamiltonian is not None else 0.0
            c = casimir.value(y) if casimir is not None else 0.0
            points.append(TrajectoryPoint(
                t, float(y[0]), float(y[1]), float(y[2]), h, c, relative_drift(h, h0), relative_drift(c, c0)
            ))

        def accept(y: np.ndarray) -> None:
            if guarded:
                require_positive(y, settings.DOMAIN_GUARD)

        record(t0, y0)
        solver = DormandPrince(field, rtol, atol, max_steps)
        outcome = solver.integrate(y0, t0, t0 + float(t_end), on_step=record, accept_state=accept)
        trajectory = Trajectory(
            points=points,
            status=outcome.status,
            steps=outcome.steps,
            rejections=outcome.rejections,
            rtol=solver.rtol,
            atol=solver.atol,
            message=outcome.message,
        )
        logger.info(
            "Integración %s: %d pasos, %d rechazos, t = %.6g",
            outcome.status.value, outcome.steps, outcome.rejections, outcome.t,
        )
        return trajectory

    @staticmethod
    def simulate(config: SimulationConfig) -> Trajectory:
        """Integración completa a partir de una configuración"""
        params = config.params.to_params()
        H = LVHamiltonian(tuple(config.alpha), tuple(config.beta))
        field = DynamicsService.build_field(params, H, config.variant)
        values = as_floats(params)
        trajectory = DynamicsService.integrate(
            field,
            State(0.0, *config.x0),
            config.t_end,
            config.rtol,
            config.atol,
            params=params,
            hamiltonian=H,
            max_steps=config.max_steps,
            positive=H.has_logs or _on_lv_stratum(values),
        )
        trajectory.metadata.update({
            "name": config.name,
            "params": params.as_dict(),
            "alpha": list(H.alpha),
            "beta": list(H.beta),
            "x0": list(config.x0),
            "t_end": config.t_end,
            "variant": config.variant.value,
        })
        return trajectory

    @staticmethod
    async def run_sweep(configs: Sequence[SimulationConfig]) -> List[Trajectory]:
        """Lote de integraciones en hilos, limitado por BOOKLIE_THREADS"""
        for config in configs:
            config.params.to_params().numeric()
        limiter = anyio.CapacityLimiter(settings.BOOKLIE_THREADS)
        results: List[Optional[Trajectory]] = [None] * len(configs)

        async def run(index: int, config: SimulationConfig) -> None:
            results[index] = await anyio.to_thread.run_sync(DynamicsService.simulate, config, limiter=limiter)

        async with anyio.create_task_group() as group:
            for index, config in enumerate(configs):
                group.start_soon(run, index, config)
        logger.info("Barrido de %d configuraciones completado", len(configs))
        return results

    @staticmethod
    def run_sweep_blocking(configs: Sequence[SimulationConfig]) -> List[Trajectory]:
        return anyio.run(DynamicsService.run_sweep, configs)

    # ============================================
    # Diagnósticos
    # ============================================

    @staticmethod
    def random_states(n: int, rng: np.random.Generator, low: float = 0.1, high: float = 3.0) -> np.ndarray:
        return rng.uniform(low, high, size=(n, 3))

    @staticmethod
    def involution_check(
        params: ParamSource, H: Hamiltonian, rng: Optional[np.random.Generator] = None, n: int = 100
    ) -> float:
        """max |{H, 𝒞}| en estados aleatorios del dominio"""
        rng = rng or np.random.default_rng(settings.SEED)
        casimir = CasimirHamiltonian(as_floats(params))
        worst = 0.0
        for s in DynamicsService.random_states(n, rng):
            value = H.gradient(s) @ poisson_matrix(params, s) @ casimir.gradient(s)
            worst = max(worst, abs(float(value)))
        return worst

    @staticmethod
    def oracle_report(
        params: ParamSource,
        H: LVHamiltonian,
        states: Optional[np.ndarray] = None,
        rng: Optional[np.random.Generator] = None,
    ) -> List[CheckResult]:
        """
        Compara línea a línea los campos impresos con el flujo del corchete
        """
        values = as_floats(params)
        if states is None:
            states = DynamicsService.random_states(100, rng or np.random.default_rng(settings.SEED))
        tolerance = settings.ORACLE_TOLERANCE
        candidates = []
        if _on_lv_stratum(values):
            candidates.append(("lv", lambda s: DynamicsService.lv_vector_field(values[1], H, s)))
        candidates.append(("printed", lambda s: DynamicsService.deformed_vector_field(values, H, s)))
        candidates.append((
            "consistent",
            lambda s: DynamicsService.deformed_vector_field(values, H, s, FieldVariant.CONSISTENT),
        ))

        results = []
        for name, field in candidates:
            errors = np.zeros(3)
            for s in states:
                oracle = DynamicsService.hamiltonian_flow(values, H, s)
                errors = np.maximum(errors, np.abs(field(s) - oracle) / np.maximum(1.0, np.abs(oracle)))
            for line, error in zip("XYZ", errors):
                passed = bool(error < tolerance)
                if not passed:
                    logger.warning("Campo %s: la línea %s discrepa del corchete (%.3e)", name, line, error)
                results.append(CheckResult(
                    name=f"oracle/{name}/{line}",
                    passed=passed,
                    detail=f"error máximo {error:.3e}",
                    first_nonzero=None if passed else f"{error:.17g}",
                    method="numeric",
                ))
        return results


def _state(s: Union[State, Sequence[float]], H: Optional[Hamiltonian] = None) -> np.ndarray:
    state = s.as_array() if isinstance(s, State) else as_state_array(s)
    if H is not None and H.has_logs:
        require_positive(state)
    return state
