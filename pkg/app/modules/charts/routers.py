"""
Router de Cartas - Endpoints de la API
"""
from fastapi import APIRouter, HTTPException, status

from app.core.exceptions import NotFoundException, ValidationException
from app.modules.charts.schemas import ChartCheckRequest, ChartReport, NamedStructureResponse
from app.modules.charts.services import ChartService
from app.modules.exact_core.services import SamplingService

router = APIRouter(prefix="/charts", tags=["cartas"])


@router.get("/{structure_id}", response_model=NamedStructureResponse)
async def obtener_estructura(structure_id: str, deformation: float = 1.0):
    """
    Obtener una estructura con nombre: parámetros, corchetes y Casimir.
    """
    try:
        structure = ChartService.named_structure(structure_id)
        chart = ChartService.chart_for(structure_id, deformation)
    except NotFoundException as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))
    except ValidationException as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    return NamedStructureResponse.render(structure, chart)


@router.post("/check", response_model=ChartReport)
async def verificar_estructura(datos: ChartCheckRequest):
    """
    Verificar numéricamente una estructura con nombre.

    Compara corchetes, Casimir, coproducto y Jacobi con las formas cerradas.
    """
    try:
        checks = ChartService.check_named_structure(
            datos.id, datos.deformation, SamplingService.make_rng(datos.seed)
        )
    except NotFoundException as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))
    return ChartReport(
        id=datos.id,
        deformation=datos.deformation,
        checks=checks,
        all_passed=all(check.passed for check in checks),
    )
