"""
Schemas Pydantic para parámetros y estructuras Poisson-Lie
"""
from typing import Dict, List, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.exceptions import ValidationException
from app.modules.pl_bracket.models import PARAM_NAMES, SYMBOLIC_LITERAL, PLParams

ParamInput = Union[int, str]


class PLParamsInput(BaseModel):
    """
    Parámetros (a..f) en JSON: enteros, cadenas decimales exactas o "sym"

    Ejemplo:
        {"a": 0, "b": "0.5", "c": 0, "d": 0, "e": 0, "f": "-1/2"}
    """
    a: ParamInput = Field(default=0, description="Parámetro a")
    b: ParamInput = Field(default=0, description="Parámetro b")
    c: ParamInput = Field(default=0, description="Parámetro c")
    d: ParamInput = Field(default=0, description="Parámetro d")
    e: ParamInput = Field(default=0, description="Parámetro e")
    f: ParamInput = Field(default=0, description="Parámetro f")

    model_config = ConfigDict(extra="forbid")

    @field_validator(*PARAM_NAMES, mode="before")
    @classmethod
    def normalize_value(cls, v):
        """Los números JSON con decimales se leen por su representación decimal"""
        if isinstance(v, bool):
            raise ValueError("Valor booleano no permitido")
        if isinstance(v, float):
            return repr(v)
        return v

    def to_params(self) -> PLParams:
        return PLParams.of(self.a, self.b, self.c, self.d, self.e, self.f)


class StructureResponse(BaseModel):
    """Tabla de corchetes renderizada"""
    chart: str = Field(description="group | local")
    params: Dict[str, str] = Field(description="Parámetros tal como se usaron")
    brackets: Dict[str, str] = Field(description="Corchetes fundamentales")
    casimir: str = Field(description="Casimir genérico")


def parse_param_list(text: str) -> PLParams:
    """
    Lee 'a,b,c,d,e,f' de la CLI (enteros, decimales, fracciones o 'sym')

    Raises:
        ValidationException: Si no hay exactamente seis valores
    """
    parts: List[str] = [part.strip() for part in text.split(",")]
    if len(parts) != len(PARAM_NAMES) or any(not part for part in parts):
        raise ValidationException(f"Se esperaban 6 valores separados por comas: '{text}'")
    return PLParams.from_sequence(parts)


def symbolic_input() -> PLParamsInput:
    return PLParamsInput(**{name: SYMBOLIC_LITERAL for name in PARAM_NAMES})
