"""
Router de Verificación - Endpoints de la API
"""
import anyio
from fastapi import APIRouter, HTTPException, status

from app.core.exceptions import ValidationException
from app.modules.verification.schemas import VerificationReport, VerifyRequest
from app.modules.verification.services import VerificationService

router = APIRouter(prefix="/verify", tags=["verificación"])


@router.post("", response_model=VerificationReport)
async def verificar(datos: VerifyRequest):
    """
    Ejecutar la suite de verificación.

    - **only**: grupos ('rmatrix') o checks ('hopf/antipode')
    - **corrupt**: controles negativos ('jacobi', 'rhat', 'coproduct', ...)
    """
    try:
        return await anyio.to_thread.run_sync(VerificationService.run, datos.to_config())
    except ValidationException as e:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=str(e)
        )
