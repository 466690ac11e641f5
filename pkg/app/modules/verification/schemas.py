"""
Schemas de la suite de verificación y de la configuración de corridas
"""
from enum import Enum
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.config import settings
from app.modules.dynamics.models import FieldVariant
from app.modules.dynamics.schemas import SimulationConfig
from app.modules.pl_bracket.schemas import PLParamsInput

Triple = Tuple[float, float, float]
Command = Literal["verify", "classify", "chart", "simulate", "qcheck"]


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIP = "SKIP"


# ============================================
# Configuración
# ============================================

class RunConfig(BaseModel):
    """
    Configuración completa de una corrida de la CLI

    Se puede leer de un archivo JSON (--config) y se serializa de vuelta
    sin pérdida.
    """
    command: Command = Field(default="verify", description="Subcomando")
    params: PLParamsInput = Field(default_factory=lambda: PLParamsInput(b=1), description="Parámetros (a..f)")

    # Hamiltoniano e integración
    alpha: Triple = Field(default=(1.0, 1.0, 1.0))
    beta: Triple = Field(default=(1.0, 1.0, 1.0))
    x0: Triple = Field(default=(1.0, 2.0, 3.0))
    t_end: float = Field(default=20.0, gt=0)
    rtol: float = Field(default_factory=lambda: settings.ODE_RTOL, gt=0)
    atol: float = Field(default_factory=lambda: settings.ODE_ATOL, gt=0)
    max_steps: int = Field(default_factory=lambda: settings.ODE_MAX_STEPS, ge=1)
    variant: FieldVariant = Field(default=FieldVariant.BRACKET)

    # Cartas
    chart_id: Optional[str] = Field(default=None, description="Estructura con nombre")
    deformation: float = Field(default=1.0, description="η o φ (no nulo)")

    # Verificación
    seed: int = Field(default_factory=lambda: settings.SEED)
    only: List[str] = Field(default_factory=list, description="Grupos o checks a ejecutar")
    corrupt: List[str] = Field(default_factory=list, description="Controles negativos")
    symbolic_only: bool = Field(default=False, description="Omitir los checks numéricos")

    # Salidas
    csv_path: Optional[str] = None
    json_path: Optional[str] = None
    gnuplot_path: Optional[str] = None
    sweep_path: Optional[str] = None

    model_config = ConfigDict(extra="forbid")

    @field_validator("deformation")
    @classmethod
    def validate_deformation(cls, v: float) -> float:
        if v == 0:
            raise ValueError("El parámetro de deformación debe ser no nulo")
        return v

    def simulation_config(self, name: str = "run") -> SimulationConfig:
        return SimulationConfig(
            name=name,
            params=self.params,
            alpha=self.alpha,
            beta=self.beta,
            x0=self.x0,
            t_end=self.t_end,
            rtol=self.rtol,
            atol=self.atol,
            max_steps=self.max_steps,
            variant=self.variant,
        )


class VerifyRequest(BaseModel):
    """Cuerpo de POST /verify"""
    only: List[str] = Field(default_factory=list)
    corrupt: List[str] = Field(default_factory=list)
    seed: int = Field(default_factory=lambda: settings.SEED)
    symbolic_only: bool = False

    def to_config(self) -> RunConfig:
        return RunConfig(
            command="verify",
            only=self.only,
            corrupt=self.corrupt,
            seed=self.seed,
            symbolic_only=self.symbolic_only,
        )


# ============================================
# Reporte
# ============================================

class VerificationEntry(BaseModel):
    """Una fila del reporte"""
    name: str
    group: str
    status: CheckStatus
    detail: str = ""
    first_nonzero: Optional[str] = None
    method: str = "symbolic"
    wall_time: float = Field(description="Segundos")

    def line(self) -> str:
        text = f"{self.status.value:<4}  {self.name:<40} {self.wall_time:8.3f}s"
        if self.detail:
            text += f"  {self.detail}"
        if self.status == CheckStatus.FAIL and self.first_nonzero:
            text += f"\n      primera entrada no nula: {self.first_nonzero}"
        return text


class VerificationReport(BaseModel):
    """Resultado de la suite: cada check aparece exactamente una vez"""
    version: str
    input: RunConfig
    entries: List[VerificationEntry] = Field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(entry.status != CheckStatus.FAIL for entry in self.entries)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def counts(self) -> dict:
        return {status.value: sum(e.status == status for e in self.entries) for status in CheckStatus}

    def table(self) -> str:
        """Tabla legible para la terminal"""
        lines = [entry.line() for entry in self.entries]
        counts = self.counts()
        lines.append(
            f"\n{counts['PASS']} PASS, {counts['FAIL']} FAIL, {counts['SKIP']} SKIP en {self.wall_time:.2f}s"
        )
        return "\n".join(lines)
