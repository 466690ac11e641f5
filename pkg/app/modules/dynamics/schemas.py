"""
Schemas Pydantic para simulaciones
"""
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.config import settings
from app.modules.dynamics.models import FieldVariant
from app.modules.pl_bracket.schemas import PLParamsInput

Triple = Tuple[float, float, float]


# ============================================
# Request Schemas
# ============================================

class SimulationConfig(BaseModel):
    """
    Configuración de una integración

    Ejemplo (demo LV):
        {"params": {"b": 1}, "alpha": [1, 1, 1], "beta": [1, 1, 1],
         "x0": [1, 2, 3], "t_end": 20}
    """
    name: str = Field(default="run", description="Etiqueta de la corrida")
    params: PLParamsInput = Field(default_factory=lambda: PLParamsInput(b=1), description="Parámetros (a..f)")
    alpha: Triple = Field(default=(1.0, 1.0, 1.0), description="α1, α2, α3")
    beta: Triple = Field(default=(1.0, 1.0, 1.0), description="β1, β2, β3")
    x0: Triple = Field(default=(1.0, 2.0, 3.0), description="Estado inicial (X, Y, Z)")
    t_end: float = Field(default=20.0, gt=0, description="Tiempo final")
    rtol: float = Field(default_factory=lambda: settings.ODE_RTOL, gt=0)
    atol: float = Field(default_factory=lambda: settings.ODE_ATOL, gt=0)
    max_steps: int = Field(default_factory=lambda: settings.ODE_MAX_STEPS, ge=1)
    variant: FieldVariant = Field(default=FieldVariant.BRACKET, description="bracket | printed | consistent")

    model_config = ConfigDict(extra="forbid")

    @field_validator("x0")
    @classmethod
    def validate_x0(cls, v: Triple) -> Triple:
        if v[0] <= 0:
            raise ValueError("X debe ser positivo (dominio del grupo libro)")
        return v


class SweepRequest(BaseModel):
    """Lote de configuraciones ejecutadas en paralelo"""
    configs: List[SimulationConfig] = Field(min_length=1)


# ============================================
# Response Schemas
# ============================================

class TrajectorySummary(BaseModel):
    """Metadatos de la corrida y derivas máximas"""
    name: str
    status: str
    steps: int
    rejections: int
    t_final: Optional[float]
    max_relH: float
    max_relC: float
    message: str = ""
    final_state: Optional[Triple] = None
    metadata: Dict[str, object] = Field(default_factory=dict)

    @classmethod
    def from_trajectory(cls, trajectory) -> "TrajectorySummary":
        summary = trajectory.summary()
        final = trajectory.final if trajectory.points else None
        return cls(
            name=str(trajectory.metadata.get("name", "run")),
            status=summary["status"],
            steps=summary["steps"],
            rejections=summary["rejections"],
            t_final=summary["t_final"],
            max_relH=summary["max_relH"],
            max_relC=summary["max_relC"],
            message=summary["message"],
            final_state=(final.X, final.Y, final.Z) if final else None,
            metadata={k: v for k, v in trajectory.metadata.items() if k != "name"},
        )
