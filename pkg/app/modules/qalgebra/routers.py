"""
Router del álgebra cuántica - Endpoints de la API
"""
from typing import Optional

import anyio
from fastapi import APIRouter, HTTPException, Query, status

from app.core.exceptions import ValidationException
from app.modules.qalgebra.schemas import NormalFormRequest, NormalFormResponse, QCheckReport
from app.modules.qalgebra.services import QAlgebraService

router = APIRouter(prefix="/qcheck", tags=["álgebra cuántica"])


@router.get("", response_model=QCheckReport)
async def verificar_identidades(
    corrupt: Optional[str] = Query(default=None, description="'coproduct' para el control negativo"),
    max_length: int = Query(default=6, ge=0, le=8),
):
    """
    Verificar las identidades cuánticas.

    Confluencia, Δ como homomorfismo, Casimir central, coacción y límite clásico.
    """
    try:
        checks = await anyio.to_thread.run_sync(QAlgebraService.run_checks, corrupt, max_length)
    except ValidationException as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    return QCheckReport(
        checks=checks,
        corrupt=corrupt,
        covariant_layouts=QAlgebraService.covariant_layouts(),
        all_passed=all(check.passed for check in checks),
    )


@router.post("/normal-form", response_model=NormalFormResponse)
async def forma_normal(datos: NormalFormRequest):
    """Reducir una palabra a orden normal X̂^i Ŷ^j Ẑ^k."""
    try:
        result = QAlgebraService.nc_normal_form(datos.word)
    except ValidationException as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    return NormalFormResponse(word=datos.word, normal_form=str(result))
