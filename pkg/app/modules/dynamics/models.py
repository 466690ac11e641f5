"""
Modelos de la dinámica Lotka-Volterra sobre el grupo libro
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Protocol, Sequence, Tuple

import numpy as np

from app.core.exceptions import StateDomainException, ValidationException


class FieldVariant(str, Enum):
    """Origen del campo vectorial integrado"""
    BRACKET = "bracket"          # Ẇ = {W, H} con la matriz de Poisson
    PRINTED = "printed"          # sistema deformado transcrito literalmente
    CONSISTENT = "consistent"    # igual que printed con (α1 X + β1) en el término e de Ż


class TrajectoryStatus(str, Enum):
    COMPLETED = "completed"
    DOMAIN_EXIT = "domain_exit"
    STEP_UNDERFLOW = "step_underflow"
    MAX_STEPS = "max_steps"


@dataclass(frozen=True)
class State:
    """Punto (t, X, Y, Z) del espacio de fases"""
    t: float
    X: float
    Y: float
    Z: float

    @classmethod
    def from_array(cls, t: float, values: np.ndarray) -> "State":
        return cls(float(t), float(values[0]), float(values[1]), float(values[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.X, self.Y, self.Z], dtype=float)


class Hamiltonian(Protocol):
    """Función en (X, Y, Z) con gradiente analítico"""

    @property
    def has_logs(self) -> bool: ...

    def value(self, s: np.ndarray) -> float: ...

    def gradient(self, s: np.ndarray) -> np.ndarray: ...


def require_positive(s: np.ndarray, guard: float = 0.0) -> None:
    """
    Raises:
        StateDomainException: Si alguna coordenada no supera el umbral
    """
    if not np.all(np.isfinite(s)) or float(np.min(s)) <= guard:
        raise StateDomainException(f"Estado fuera del dominio X, Y, Z > {guard:g}: {tuple(float(v) for v in s)}")


@dataclass(frozen=True)
class LVHamiltonian:
    """H = α1 X + α2 Y + α3 Z + β1 log X + β2 log Y + β3 log Z"""
    alpha: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    beta: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if len(self.alpha) != 3 or len(self.beta) != 3:
            raise ValidationException("α y β deben tener tres componentes")
        object.__setattr__(self, "alpha", tuple(float(v) for v in self.alpha))
        object.__setattr__(self, "beta", tuple(float(v) for v in self.beta))

    @property
    def has_logs(self) -> bool:
        return any(v != 0 for v in self.beta)

    def value(self, s: np.ndarray) -> float:
        if self.has_logs:
            require_positive(s)
        alpha, beta = np.asarray(self.alpha), np.asarray(self.beta)
        logs = np.log(s, where=beta != 0, out=np.zeros(3))
        return float(alpha @ s + beta @ logs)

    def gradient(self, s: np.ndarray) -> np.ndarray:
        """∂H/∂W = α_W + β_W / W"""
        if self.has_logs:
            require_positive(s)
        beta = np.asarray(self.beta)
        inverse = np.divide(beta, s, where=beta != 0, out=np.zeros(3))
        return np.asarray(self.alpha) + inverse


@dataclass(frozen=True)
class CasimirHamiltonian:
    """El Casimir genérico usado como hamiltoniano (flujo nulo)"""
    params: Tuple[float, ...]

    @property
    def has_logs(self) -> bool:
        return False

    def value(self, s: np.ndarray) -> float:
        a, b, c, d, e, f = self.params
        X, Y, Z = s
        if X == 0:
            raise StateDomainException("El Casimir requiere X ≠ 0")
        return float((f * (1 + X**2) + (X - 1) * (d * Y - a * Z) + e * Y**2 + (b * Y + c * Z) * Z) / X)

    def gradient(self, s: np.ndarray) -> np.ndarray:
        a, b, c, d, e, f = self.params
        X, Y, Z = s
        if X == 0:
            raise StateDomainException("El Casimir requiere X ≠ 0")
        numerator = f * (1 + X**2) + (X - 1) * (d * Y - a * Z) + e * Y**2 + (b * Y + c * Z) * Z
        return np.array([
            ((2 * f * X + d * Y - a * Z) * X - numerator) / X**2,
            (d * (X - 1) + 2 * e * Y + b * Z) / X,
            (-a * (X - 1) + b * Y + 2 * c * Z) / X,
        ])


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    X: float
    Y: float
    Z: float
    H: float
    C: float
    relH: float
    relC: float

    def row(self) -> Tuple[float, ...]:
        return (self.t, self.X, self.Y, self.Z, self.H, self.C, self.relH, self.relC)


TRAJECTORY_COLUMNS: Tuple[str, ...] = ("t", "X", "Y", "Z", "H", "C", "relH", "relC")


@dataclass
class Trajectory:
    """Pasos aceptados con H, 𝒞 y sus derivas relativas respecto a t = 0"""
    points: List[TrajectoryPoint] = field(default_factory=list)
    status: TrajectoryStatus = TrajectoryStatus.COMPLETED
    steps: int = 0
    rejections: int = 0
    rtol: float = 0.0
    atol: float = 0.0
    message: str = ""
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def final(self) -> TrajectoryPoint:
        return self.points[-1]

    @property
    def times(self) -> np.ndarray:
        return np.array([p.t for p in self.points])

    @property
    def states(self) -> np.ndarray:
        return np.array([[p.X, p.Y, p.Z] for p in self.points])

    def max_drift(self, until: Optional[float] = None) -> Tuple[float, float]:
        """(max relH, max relC), opcionalmente hasta el tiempo `until`"""
        selected = [p for p in self.points if until is None or p.t <= until]
        if not selected:
            return 0.0, 0.0
        return max(p.relH for p in selected), max(p.relC for p in selected)

    def is_monotonic(self) -> bool:
        return all(b.t > a.t for a, b in zip(self.points, self.points[1:]))

    def summary(self) -> Dict[str, object]:
        rel_h, rel_c = self.max_drift()
        return {
            "status": self.status.value,
            "steps": self.steps,
            "rejections": self.rejections,
            "rtol": self.rtol,
            "atol": self.atol,
            "t_final": self.final.t if self.points else None,
            "max_relH": rel_h,
            "max_relC": rel_c,
            "message": self.message,
            **self.metadata,
        }


def relative_drift(value: float, initial: float) -> float:
    return abs(value - initial) / abs(initial) if initial != 0 else abs(value - initial)


def as_state_array(values: Sequence[float]) -> np.ndarray:
    array = np.asarray(values, dtype=float).reshape(-1)
    if array.shape != (3,):
        raise ValidationException(f"El estado requiere tres componentes: {values}")
    return array
