"""
Servicios de salida - CSV de trayectorias, JSON de reportes y scripts gnuplot

Toda salida numérica usa settings.SIGNIFICANT_DIGITS cifras significativas,
suficientes para releer el mismo float. Con la misma configuración y semilla
los archivos generados son idénticos byte a byte.
"""
import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
from pydantic import BaseModel

from app.core.config import settings
from app.core.logging import get_logger
from app.modules.dynamics.models import TRAJECTORY_COLUMNS, Trajectory

logger = get_logger(__name__)

PathLike = Union[str, Path]


def format_number(value: float) -> str:
    """Float con las cifras significativas configuradas (p. ej. '0.10000000000000001')"""
    return f"{float(value):.{settings.SIGNIFICANT_DIGITS}g}"


def _prepare(path: PathLike) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    return target


def write_trajectory_csv(trajectory: Trajectory, path: PathLike) -> Path:
    """
    Escribir una trayectoria como CSV

    Args:
        trajectory: Trayectoria integrada
        path: Archivo destino (se crean los directorios faltantes)

    Returns:
        Ruta escrita; columnas t,X,Y,Z,H,C,relH,relC
    """
    target = _prepare(path)
    rows = np.array([point.row() for point in trajectory.points], dtype=float)
    rows = rows.reshape(-1, len(TRAJECTORY_COLUMNS))
    np.savetxt(
        target,
        rows,
        fmt=f"%.{settings.SIGNIFICANT_DIGITS}g",
        delimiter=",",
        header=",".join(TRAJECTORY_COLUMNS),
        comments="",
    )
    logger.info("Trayectoria escrita en %s (%d filas)", target, len(rows))
    return target


def to_payload(data: Union[BaseModel, Dict[str, Any], list]) -> Any:
    """Estructura JSON nativa de un modelo pydantic, dict o lista"""
    if isinstance(data, BaseModel):
        return data.model_dump(mode="json", by_alias=True)
    if isinstance(data, list):
        return [to_payload(item) for item in data]
    return data


def dumps(data: Union[BaseModel, Dict[str, Any], list]) -> str:
    """JSON determinista: claves ordenadas y sangría fija"""
    return json.dumps(to_payload(data), sort_keys=True, indent=2, ensure_ascii=False)


def write_json(data: Union[BaseModel, Dict[str, Any], list], path: PathLike) -> Path:
    """
    Escribir un reporte o metadatos como JSON

    Returns:
        Ruta escrita
    """
    target = _prepare(path)
    target.write_text(dumps(data) + "\n", encoding="utf-8")
    logger.info("JSON escrito en %s", target)
    return target


def trajectory_metadata(trajectory: Trajectory) -> Dict[str, Any]:
    """Resumen de la corrida para el JSON de metadatos"""
    metadata = dict(trajectory.summary())
    metadata["version"] = settings.APP_VERSION
    metadata["columns"] = list(TRAJECTORY_COLUMNS)
    if trajectory.points:
        metadata["final_state"] = [trajectory.final.X, trajectory.final.Y, trajectory.final.Z]
    return metadata


def gnuplot_script(csv_path: PathLike, title: str = "booklie") -> str:
    """
    Script gnuplot para el CSV de una trayectoria

    Dos paneles: componentes X, Y, Z y derivas relH, relC en escala log.
    """
    name = Path(csv_path).name
    return "\n".join([
        f"# {title}",
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set multiplot layout 2,1",
        f"set title '{title}: estado'",
        "set xlabel 't'",
        f"plot '{name}' using 1:2 with lines, '' using 1:3 with lines, '' using 1:4 with lines",
        f"set title '{title}: derivas relativas'",
        "set logscale y",
        f"plot '{name}' using 1:($7 + 1e-18) with lines title 'relH', '' using 1:($8 + 1e-18) with lines title 'relC'",
        "unset multiplot",
        "",
    ])


def write_gnuplot_script(csv_path: PathLike, path: PathLike, title: str = "booklie") -> Path:
    """Escribe el script junto a su CSV (referencia relativa por nombre)"""
    target = _prepare(path)
    target.write_text(gnuplot_script(csv_path, title), encoding="utf-8")
    logger.info("Script gnuplot escrito en %s", target)
    return target
