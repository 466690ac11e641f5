"""
Router de Clasificación - Endpoints de la API
"""
from fastapi import APIRouter, HTTPException, status

from app.core.exceptions import ValidationException
from app.modules.classify.schemas import ClassifyRequest, ClassifyResponse
from app.modules.classify.services import ClassifyService

router = APIRouter(prefix="/classify", tags=["clasificación"])


@router.post("", response_model=ClassifyResponse, response_model_by_alias=True)
async def clasificar(datos: ClassifyRequest):
    """
    Clasificar un vector (a..f) en las clases A-I.

    Los vectores fuera de las familias normalizadas devuelven status 'unresolved'.
    """
    try:
        params = datos.params.to_params()
        result = ClassifyService.classify(params)
        tangent = ClassifyService.tangent_bialgebra(params) if datos.tangent else None
        return ClassifyResponse.from_result(result, tangent)
    except ValidationException as e:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=str(e)
        )
