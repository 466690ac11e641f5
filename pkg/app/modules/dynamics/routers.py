"""
Router de Simulación - Endpoints de la API
"""
from typing import List

import anyio
from fastapi import APIRouter, HTTPException, status

from app.core.exceptions import ValidationException
from app.modules.dynamics.schemas import SimulationConfig, SweepRequest, TrajectorySummary
from app.modules.dynamics.services import DynamicsService

router = APIRouter(prefix="/simulate", tags=["dinámica"])


@router.post("", response_model=TrajectorySummary)
async def simular(config: SimulationConfig):
    """
    Integrar el flujo LV (o su perturbación) y devolver el resumen de conservación.
    """
    try:
        trajectory = await anyio.to_thread.run_sync(DynamicsService.simulate, config)
    except ValidationException as e:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=str(e)
        )
    return TrajectorySummary.from_trajectory(trajectory)


@router.post("/sweep", response_model=List[TrajectorySummary])
async def barrido(datos: SweepRequest):
    """
    Ejecutar un lote de simulaciones en paralelo (BOOKLIE_THREADS hilos).
    """
    try:
        trajectories = await DynamicsService.run_sweep(datos.configs)
    except ValidationException as e:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=str(e)
        )
    return [TrajectorySummary.from_trajectory(t) for t in trajectories]
