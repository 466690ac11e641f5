"""
Schemas Pydantic para cartas y estructuras con nombre
"""
from fractions import Fraction
from typing import Dict, Optional

import sympy as sp
from pydantic import BaseModel, Field, field_validator

from app.core.schemas import CheckResult, Report
from app.modules.charts.models import DEFORMATION, Chart, NamedStructure

BRACKET_NAMES = ("{J3,J+}", "{J3,J-}", "{J+,J-}")


# ============================================
# Request Schemas
# ============================================

class ChartCheckRequest(BaseModel):
    """
    Verificación de una estructura con nombre

    Ejemplo:
        {"id": "sl2-standard", "deformation": 1.0, "seed": 0}
    """
    id: str = Field(description="Identificador de la estructura")
    deformation: float = Field(default=1.0, description="η (estándar) o φ (no estándar), no nulo")
    seed: Optional[int] = Field(default=None, description="Semilla del muestreo")

    @field_validator("deformation")
    @classmethod
    def validate_deformation(cls, v: float) -> float:
        if v == 0:
            raise ValueError("El parámetro de deformación debe ser no nulo")
        return v


# ============================================
# Response Schemas
# ============================================

class NamedStructureResponse(BaseModel):
    """Estructura con nombre renderizada para una deformación concreta"""
    id: str
    description: str
    chart: str = Field(description="standard | nonstandard")
    family: str = Field(description="Fila de la tabla A-I")
    params: Dict[str, str] = Field(description="Parámetros (a..f) asignados")
    brackets: Dict[str, str] = Field(description="{J3,J+}, {J3,J-}, {J+,J-}")
    casimir: str

    @classmethod
    def render(cls, structure: NamedStructure, chart: Chart) -> "NamedStructureResponse":
        """Sustituye la deformación de la carta en las formas cerradas"""
        exact = Fraction(repr(chart.deformation))
        value = sp.Rational(exact.numerator, exact.denominator)
        return cls(
            id=structure.identifier,
            description=structure.description,
            chart=structure.kind.value,
            family=structure.family,
            params=structure.params(exact).as_dict(),
            brackets={
                name: str(expr.subs(DEFORMATION, value)) for name, expr in zip(BRACKET_NAMES, structure.brackets)
            },
            casimir=str(structure.casimir.subs(DEFORMATION, value)),
        )


class ChartReport(Report[CheckResult]):
    """Reporte de verificación de una carta"""
    id: str
    deformation: float
    all_passed: bool = False
