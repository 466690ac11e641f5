"""
Schemas Pydantic para las identidades cuánticas
"""
from typing import Dict, Optional

from pydantic import BaseModel, Field

from app.core.schemas import CheckResult, Report


class NormalFormRequest(BaseModel):
    """Palabra a reducir, p. ej. 'Z Y X^-1'"""
    word: str = Field(min_length=1, description="Letras X, X^-1, Y, Z separadas por espacios o '*'")


class NormalFormResponse(BaseModel):
    word: str
    normal_form: str


class QCheckReport(Report[CheckResult]):
    """Reporte de las identidades del grupo libro cuántico"""
    corrupt: Optional[str] = None
    covariant_layouts: Dict[str, bool] = Field(default_factory=dict)
    all_passed: bool = False
