"""
Integrador Dormand-Prince 5(4) con control de paso PI
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from app.core.config import settings
from app.core.exceptions import StateDomainException, ValidationException
from app.core.logging import get_logger
from app.modules.dynamics.models import TrajectoryStatus

logger = get_logger(__name__)

VectorField = Callable[[np.ndarray], np.ndarray]
StepCallback = Callable[[float, np.ndarray], None]

# tabla de Butcher (DOPRI5)
A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# b - b* para la estimación del error local
E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])


@dataclass
class StepController:
    """Controlador PI: h ← h·safety·err^-0.17·errold^0.04"""
    safety: float = 0.9
    facmin: float = 0.2
    facmax: float = 10.0
    alpha: float = 0.17
    beta: float = 0.04
    errold: float = 1e-4

    def factor(self, err: float, accepted: bool) -> float:
        err = max(err, 1e-16)
        factor = self.safety * err ** (-self.alpha) * self.errold ** self.beta
        if not accepted:
            return min(1.0, max(self.facmin, factor))
        self.errold = max(err, 1e-4)
        return min(self.facmax, max(self.facmin, factor))


@dataclass
class IntegrationOutcome:
    status: TrajectoryStatus
    t: float
    y: np.ndarray
    steps: int
    rejections: int
    message: str = ""


class DormandPrince:
    """
    DOPRI5 de paso adaptativo

    La norma del error es la RMS de Hairer:
    sqrt(mean((e_i / (atol + rtol·max(|y_i|, |y_new_i|)))^2)).
    """

    def __init__(
        self,
        field: VectorField,
        rtol: Optional[float] = None,
        atol: Optional[float] = None,
        max_steps: Optional[int] = None,
        controller: Optional[StepController] = None,
    ):
        self.field = field
        self.rtol = settings.ODE_RTOL if rtol is None else float(rtol)
        self.atol = settings.ODE_ATOL if atol is None else float(atol)
        self.max_steps = settings.ODE_MAX_STEPS if max_steps is None else int(max_steps)
        self.controller = controller or StepController()
        if self.rtol <= 0 or self.atol <= 0:
            raise ValidationException("rtol y atol deben ser positivos")
        if self.max_steps < 1:
            raise ValidationException("max_steps debe ser >= 1")

    def _norm(self, error: np.ndarray, y: np.ndarray, y_new: np.ndarray) -> float:
        scale = self.atol + self.rtol * np.maximum(np.abs(y), np.abs(y_new))
        return float(np.sqrt(np.mean((error / scale) ** 2)))

    def initial_step(self, y0: np.ndarray, f0: np.ndarray, span: float) -> float:
        """Estimación inicial de Hairer-Nørsett-Wanner"""
        scale = self.atol + self.rtol * np.abs(y0)
        d0 = float(np.sqrt(np.mean((y0 / scale) ** 2)))
        d1 = float(np.sqrt(np.mean((f0 / scale) ** 2)))
        h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        h0 = min(h0, span)
        try:
            f1 = self.field(y0 + h0 * f0)
        except StateDomainException:
            return h0 * 1e-3
        d2 = float(np.sqrt(np.mean(((f1 - f0) / scale) ** 2))) / h0
        if max(d1, d2) <= 1e-15:
            h1 = max(1e-6, h0 * 1e-3)
        else:
            h1 = (0.01 / max(d1, d2)) ** (1 / 5)
        return min(100 * h0, h1, span)

    def step(self, y: np.ndarray, h: float):
        """Un paso: (y_new, error estimado)"""
        k = np.empty((7, y.size))
        k[0] = self.field(y)
        for i in range(1, 7):
            increment = sum(coef * k[j] for j, coef in enumerate(A[i]))
            k[i] = self.field(y + h * increment)
        y_new = y + h * (B @ k)
        return y_new, h * (E @ k)

    def integrate(
        self,
        y0: np.ndarray,
        t0: float,
        t_end: float,
        on_step: Optional[StepCallback] = None,
        accept_state: Optional[Callable[[np.ndarray], None]] = None,
    ) -> IntegrationOutcome:
        """
        Integra de t0 a t_end; no lanza por fallos numéricos, los reporta

        Args:
            on_step: Llamado con (t, y) en cada paso aceptado
            accept_state: Lanza StateDomainException si el estado sale del dominio

        Returns:
            IntegrationOutcome con el último estado válido
        """
        if t_end <= t0:
            raise ValidationException(f"t_end ({t_end}) debe ser mayor que t0 ({t0})")
        t, y = float(t0), np.asarray(y0, dtype=float).copy()
        steps = rejections = 0
        try:
            h = self.initial_step(y, self.field(y), t_end - t0)
        except StateDomainException as e:
            return IntegrationOutcome(TrajectoryStatus.DOMAIN_EXIT, t, y, 0, 0, str(e))
        rejected_last = False
        domain_message = ""

        while t < t_end:
            if steps >= self.max_steps:
                return IntegrationOutcome(TrajectoryStatus.MAX_STEPS, t, y, steps, rejections,
                                          f"Límite de {self.max_steps} pasos alcanzado")
            if h <= 16 * np.finfo(float).eps * max(1.0, abs(t)):
                if domain_message:
                    return IntegrationOutcome(TrajectoryStatus.DOMAIN_EXIT, t, y, steps, rejections, domain_message)
                return IntegrationOutcome(TrajectoryStatus.STEP_UNDERFLOW, t, y, steps, rejections,
                                          f"Paso demasiado pequeño en t = {t:.17g}")
            h = min(h, t_end - t)
            try:
                y_new, error = self.step(y, h)
                err = self._norm(error, y, y_new) if np.all(np.isfinite(y_new)) else np.inf
            except StateDomainException as e:
                err = np.inf
                y_new = None
                domain_message = str(e)

            if err <= 1.0:
                if accept_state is not None:
                    try:
                        accept_state(y_new)
                    except StateDomainException as e:
                        return IntegrationOutcome(TrajectoryStatus.DOMAIN_EXIT, t, y, steps, rejections, str(e))
                t = t_end if t_end - (t + h) <= 1e-14 * max(1.0, abs(t_end)) else t + h
                y = y_new
                steps += 1
                factor = self.controller.factor(err, accepted=True)
                if rejected_last:
                    factor = min(1.0, factor)
                rejected_last = False
                h *= factor
                if on_step is not None:
                    on_step(t, y)
                logger.debug("t=%.6g h=%.3e err=%.3e", t, h, err)
            else:
                rejections += 1
                rejected_last = True
                if not np.isfinite(err):
                    h *= self.controller.facmin
                else:
                    h *= self.controller.factor(err, accepted=False)

        return IntegrationOutcome(TrajectoryStatus.COMPLETED, t, y, steps, rejections)
