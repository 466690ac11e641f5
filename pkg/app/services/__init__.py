"""
Servicios auxiliares - salida numérica y reportes
"""
from .reporting import (
    dumps,
    format_number,
    trajectory_metadata,
    write_gnuplot_script,
    write_json,
    write_trajectory_csv,
)

__all__ = [
    "dumps",
    "format_number",
    "trajectory_metadata",
    "write_gnuplot_script",
    "write_json",
    "write_trajectory_csv",
]
