"""
Schemas Pydantic para la clasificación
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.modules.classify.models import Classification, ClassificationStatus, TangentBialgebra
from app.modules.pl_bracket.schemas import PLParamsInput


# ============================================
# Request Schemas
# ============================================

class ClassifyRequest(BaseModel):
    """Vector de parámetros a clasificar"""
    params: PLParamsInput = Field(description="Parámetros numéricos (a..f)")
    tangent: bool = Field(default=False, description="Incluir el tipo del álgebra dual")


# ============================================
# Response Schemas
# ============================================

class ClassifyResponse(BaseModel):
    """
    Resultado de classify

    Ejemplo:
        {"class": "A", "free_params": {}, "coboundary": true,
         "r_matrix": {"r12": "1", "r13": "0", "r23": "0"}}
    """
    status: ClassificationStatus = Field(description="classified | trivial | unresolved")
    class_: Optional[str] = Field(default=None, alias="class", description="Letra A-I")
    free_params: Dict[str, str] = Field(default_factory=dict, description="λ, α, ω según la fila")
    coboundary: bool = Field(description="True si b = c = e = 0")
    r_matrix: Optional[Dict[str, str]] = Field(default=None, description="r12, r13, r23 si es coborde")
    normalizations: List[str] = Field(default_factory=list, description="Normalizaciones aplicadas")
    row_family: Optional[str] = Field(default=None, description="Fila cuyo patrón sigue el vector")
    diagnostic: str = Field(default="", description="Diagnóstico para vectores no resueltos")
    dual_type: Optional[str] = Field(default=None, description="semisimple | solvable | abelian")
    killing_determinant: Optional[str] = Field(default=None, description="det de la forma de Killing del dual")

    model_config = ConfigDict(populate_by_name=True)

    @classmethod
    def from_result(cls, result: Classification, tangent: Optional[TangentBialgebra] = None) -> "ClassifyResponse":
        return cls(
            status=result.status,
            class_=result.letter,
            free_params=result.label.free_params() if result.label else {},
            coboundary=result.coboundary,
            r_matrix=result.r_matrix.as_dict() if result.r_matrix is not None else None,
            normalizations=list(result.normalizations),
            row_family=result.row_family.value if result.row_family else None,
            diagnostic=result.diagnostic,
            dual_type=tangent.dual_type if tangent else None,
            killing_determinant=str(tangent.killing_determinant) if tangent else None,
        )

    def payload(self) -> dict:
        """JSON de la CLI: claves por alias y sin nulos"""
        return self.model_dump(by_alias=True, exclude_none=True, mode="json")
