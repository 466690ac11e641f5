"""
Schemas de reporte reutilizables por todos los módulos
"""
from typing import Generic, List, Optional, TypeVar

from pydantic import BaseModel, ConfigDict, Field

T = TypeVar("T")


class CheckResult(BaseModel):
    """Resultado de una verificación individual (PASS/FAIL)"""
    name: str = Field(description="Identificador de la verificación")
    passed: bool = Field(description="True si el residuo es nulo (o bajo tolerancia)")
    detail: str = Field(default="", description="Resumen legible del resultado")
    first_nonzero: Optional[str] = Field(default=None, description="Primera entrada no nula del residuo, si falla")
    method: str = Field(default="symbolic", description="symbolic | random-points | numeric")

    model_config = ConfigDict(frozen=True)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        """Línea de reporte para la CLI"""
        text = f"{self.status}  {self.name}"
        if self.detail:
            text += f"  ({self.detail})"
        if not self.passed and self.first_nonzero:
            text += f"  primera entrada no nula: {self.first_nonzero}"
        return text


class Report(BaseModel, Generic[T]):
    """
    Reporte genérico: lista de resultados y su agregado

    Ejemplo:
        Report[CheckResult] para la suite de verificación
    """
    checks: List[T] = Field(default_factory=list, description="Resultados individuales")

    @property
    def passed(self) -> bool:
        return all(getattr(check, "passed", True) for check in self.checks)
