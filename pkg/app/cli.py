"""
CLI de booklie - verify, classify, chart, simulate, qcheck

Códigos de salida: 0 todo PASS, 1 algún check falla, 2 error de uso.
Cada opción sobrescribe el valor correspondiente de --config.
"""
import json
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import pydantic
import typer

from app.core.config import settings
from app.core.exceptions import AppException, ValidationException
from app.core.logging import configure_logging
from app.core.schemas import CheckResult
from app.modules.charts.schemas import ChartReport, NamedStructureResponse
from app.modules.charts.services import ChartService
from app.modules.classify.schemas import ClassifyResponse
from app.modules.classify.services import ClassifyService
from app.modules.dynamics.models import Trajectory, TrajectoryStatus
from app.modules.dynamics.schemas import SweepRequest, TrajectorySummary
from app.modules.dynamics.services import DynamicsService
from app.modules.exact_core.services import SamplingService
from app.modules.pl_bracket.models import PARAM_NAMES
from app.modules.pl_bracket.schemas import parse_param_list
from app.modules.qalgebra.schemas import QCheckReport
from app.modules.qalgebra.services import QAlgebraService
from app.modules.verification.schemas import Command, RunConfig
from app.modules.verification.services import VerificationService
from app.services import (
    dumps,
    format_number,
    trajectory_metadata,
    write_gnuplot_script,
    write_json,
    write_trajectory_csv,
)

USAGE_ERROR = 2
FAILED_STATUSES = {TrajectoryStatus.MAX_STEPS, TrajectoryStatus.STEP_UNDERFLOW}

app = typer.Typer(
    name="booklie",
    help="Estructuras Poisson-Lie del grupo libro: verificación, clasificación, cartas y dinámica.",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Log a nivel INFO")):
    """booklie - toolkit del grupo libro"""
    configure_logging("INFO" if verbose else "WARNING")


# ============================================
# Utilidades
# ============================================

def _usage_error(message: object) -> typer.Exit:
    typer.echo(f"Error: {message}", err=True)
    return typer.Exit(USAGE_ERROR)


@contextmanager
def usage_errors() -> Iterator[None]:
    """Precondiciones violadas -> código 2"""
    try:
        yield
    except pydantic.ValidationError as e:
        raise _usage_error(_pydantic_message(e))
    except AppException as e:
        raise _usage_error(e.message)


def _pydantic_message(error: pydantic.ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in item['loc']) or 'config'}: {item['msg']}" for item in error.errors()
    )


def _split(values: Optional[Sequence[str]]) -> Optional[List[str]]:
    """'--only a,b --only c' -> ['a', 'b', 'c']"""
    if not values:
        return None
    return [part.strip() for value in values for part in value.split(",") if part.strip()]


def _params_override(text: Optional[str]) -> Optional[Dict[str, str]]:
    if text is None:
        return None
    parse_param_list(text)
    return dict(zip(PARAM_NAMES, (part.strip() for part in text.split(","))))


def _triple(text: Optional[str], label: str) -> Optional[Tuple[float, float, float]]:
    if text is None:
        return None
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ValidationException(f"{label}: se esperaban tres números separados por comas, no '{text}'")
    if len(values) != 3:
        raise ValidationException(f"{label}: se esperaban tres números, no {len(values)}")
    return values


def load_config(command: Command, config_path: Optional[Path], overrides: Dict[str, object]) -> RunConfig:
    """
    Combinar --config (JSON) con las opciones explícitas

    Raises:
        ValidationException: Archivo ilegible o configuración inválida
    """
    data: Dict[str, object] = {}
    if config_path is not None:
        try:
            data = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationException(f"No se pudo leer {config_path}: {e}")
        if not isinstance(data, dict):
            raise ValidationException(f"{config_path}: se esperaba un objeto JSON")
    data.update({key: value for key, value in overrides.items() if value is not None})
    data["command"] = command
    try:
        return RunConfig.model_validate(data)
    except pydantic.ValidationError as e:
        raise ValidationException(_pydantic_message(e))


def _echo_checks(checks: Sequence[CheckResult]) -> None:
    for check in checks:
        typer.echo(check.line())


# ============================================
# Comandos
# ============================================

@app.command()
def verify(
    only: Optional[List[str]] = typer.Option(None, "--only", help="Grupos o checks (p. ej. rmatrix, hopf/antipode)"),
    corrupt: Optional[List[str]] = typer.Option(None, "--corrupt", help="Control negativo a inyectar"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semilla del muestreo"),
    symbolic_only: bool = typer.Option(False, "--symbolic-only", help="Omitir los checks numéricos"),
    json_path: Optional[Path] = typer.Option(None, "--json", help="Reporte JSON"),
    config: Optional[Path] = typer.Option(None, "--config", help="Configuración JSON"),
):
    """Ejecutar la suite de verificación."""
    with usage_errors():
        run_config = load_config("verify", config, {
            "only": _split(only),
            "corrupt": _split(corrupt),
            "seed": seed,
            "symbolic_only": symbolic_only or None,
            "json_path": str(json_path) if json_path else None,
        })
        report = VerificationService.run(run_config)
    typer.echo(report.table())
    if run_config.json_path:
        write_json(report, run_config.json_path)
    raise typer.Exit(report.exit_code)


@app.command()
def classify(
    params: Optional[str] = typer.Option(None, "--params", help="a,b,c,d,e,f"),
    tangent: bool = typer.Option(False, "--tangent", help="Incluir el tipo del álgebra dual"),
    json_path: Optional[Path] = typer.Option(None, "--json", help="Resultado JSON"),
    config: Optional[Path] = typer.Option(None, "--config", help="Configuración JSON"),
):
    """Clasificar un vector de parámetros en las clases A-I."""
    with usage_errors():
        run_config = load_config("classify", config, {
            "params": _params_override(params),
            "json_path": str(json_path) if json_path else None,
        })
        values = run_config.params.to_params()
        result = ClassifyService.classify(values)
        bialgebra = ClassifyService.tangent_bialgebra(values) if tangent else None
    response = ClassifyResponse.from_result(result, bialgebra)
    typer.echo(dumps(response.payload()))
    if run_config.json_path:
        write_json(response.payload(), run_config.json_path)


@app.command()
def chart(
    structure_id: Optional[str] = typer.Option(None, "--id", help="Estructura con nombre (p. ej. sl2-standard)"),
    eta: Optional[float] = typer.Option(None, "--eta", help="η de la carta estándar"),
    phi: Optional[float] = typer.Option(None, "--phi", help="φ de la carta no estándar"),
    deformation: Optional[float] = typer.Option(None, "--deformation", help="η o φ"),
    check: bool = typer.Option(False, "--check", help="Verificar numéricamente la estructura"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semilla del muestreo"),
    json_path: Optional[Path] = typer.Option(None, "--json", help="Resultado JSON"),
    config: Optional[Path] = typer.Option(None, "--config", help="Configuración JSON"),
):
    """Mostrar o verificar una estructura con nombre en su carta."""
    value = next((v for v in (eta, phi, deformation) if v is not None), None)
    with usage_errors():
        run_config = load_config("chart", config, {
            "chart_id": structure_id,
            "deformation": value,
            "seed": seed,
            "json_path": str(json_path) if json_path else None,
        })
        if run_config.chart_id is None:
            raise ValidationException("Falta --id")
        structure = ChartService.named_structure(run_config.chart_id)
        chart_obj = ChartService.chart_for(run_config.chart_id, run_config.deformation)
        rendered = NamedStructureResponse.render(structure, chart_obj)

    if not check:
        typer.echo(dumps(rendered))
        if run_config.json_path:
            write_json(rendered, run_config.json_path)
        return

    checks = ChartService.check_named_structure(
        run_config.chart_id, run_config.deformation, SamplingService.make_rng(run_config.seed)
    )
    report = ChartReport(
        id=run_config.chart_id,
        deformation=run_config.deformation,
        checks=checks,
        all_passed=all(c.passed for c in checks),
    )
    _echo_checks(checks)
    if run_config.json_path:
        write_json(report, run_config.json_path)
    raise typer.Exit(0 if report.all_passed else 1)


def _summary_line(trajectory: Trajectory) -> str:
    summary = TrajectorySummary.from_trajectory(trajectory)
    text = (
        f"{summary.name}: {summary.status} pasos={summary.steps} rechazos={summary.rejections} "
        f"t_final={format_number(summary.t_final or 0.0)} "
        f"max_relH={format_number(summary.max_relH)} max_relC={format_number(summary.max_relC)}"
    )
    if summary.message:
        text += f"  ({summary.message})"
    return text


@app.command()
def simulate(
    params: Optional[str] = typer.Option(None, "--params", help="a,b,c,d,e,f"),
    alpha: Optional[str] = typer.Option(None, "--alpha", help="α1,α2,α3"),
    beta: Optional[str] = typer.Option(None, "--beta", help="β1,β2,β3"),
    x0: Optional[str] = typer.Option(None, "--x0", help="X,Y,Z iniciales"),
    t_end: Optional[float] = typer.Option(None, "--t-end", help="Tiempo final"),
    rtol: Optional[float] = typer.Option(None, "--rtol"),
    atol: Optional[float] = typer.Option(None, "--atol"),
    max_steps: Optional[int] = typer.Option(None, "--max-steps"),
    variant: Optional[str] = typer.Option(None, "--variant", help="bracket | printed | consistent"),
    sweep: Optional[Path] = typer.Option(None, "--sweep", help="Lote JSON {'configs': [...]}"),
    csv_path: Optional[Path] = typer.Option(None, "--csv", help="CSV de la trayectoria (directorio con --sweep)"),
    json_path: Optional[Path] = typer.Option(None, "--json", help="Metadatos JSON"),
    gnuplot_path: Optional[Path] = typer.Option(None, "--gnuplot", help="Script gnuplot (requiere --csv)"),
    config: Optional[Path] = typer.Option(None, "--config", help="Configuración JSON"),
):
    """Integrar el sistema Lotka-Volterra (o su deformación)."""
    with usage_errors():
        run_config = load_config("simulate", config, {
            "params": _params_override(params),
            "alpha": _triple(alpha, "--alpha"),
            "beta": _triple(beta, "--beta"),
            "x0": _triple(x0, "--x0"),
            "t_end": t_end,
            "rtol": rtol,
            "atol": atol,
            "max_steps": max_steps,
            "variant": variant,
            "csv_path": str(csv_path) if csv_path else None,
            "json_path": str(json_path) if json_path else None,
            "gnuplot_path": str(gnuplot_path) if gnuplot_path else None,
            "sweep_path": str(sweep) if sweep else None,
        })
        if run_config.gnuplot_path and not run_config.csv_path:
            raise ValidationException("--gnuplot requiere --csv")
        if run_config.sweep_path:
            trajectories = _run_sweep(Path(run_config.sweep_path))
        else:
            trajectories = [DynamicsService.simulate(run_config.simulation_config())]

    for trajectory in trajectories:
        typer.echo(_summary_line(trajectory))

    if run_config.sweep_path:
        _write_sweep_outputs(trajectories, run_config)
    else:
        _write_run_outputs(trajectories[0], run_config)
    failed = any(t.status in FAILED_STATUSES for t in trajectories)
    raise typer.Exit(1 if failed else 0)


def _run_sweep(path: Path) -> List[Trajectory]:
    try:
        request = SweepRequest.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ValidationException(f"No se pudo leer {path}: {e}")
    return DynamicsService.run_sweep_blocking(request.configs)


def _write_run_outputs(trajectory: Trajectory, run_config: RunConfig) -> None:
    if run_config.csv_path:
        write_trajectory_csv(trajectory, run_config.csv_path)
    if run_config.json_path:
        write_json(trajectory_metadata(trajectory), run_config.json_path)
    if run_config.gnuplot_path:
        write_gnuplot_script(run_config.csv_path, run_config.gnuplot_path, str(trajectory.metadata.get("name", "run")))


def _write_sweep_outputs(trajectories: Sequence[Trajectory], run_config: RunConfig) -> None:
    """Un CSV por corrida en el directorio --csv, numerado por posición en el lote"""
    if run_config.csv_path:
        directory = Path(run_config.csv_path)
        for index, trajectory in enumerate(trajectories):
            name = f"{index:03d}_{trajectory.metadata.get('name', 'run')}.csv"
            write_trajectory_csv(trajectory, directory / name)
            if run_config.gnuplot_path:
                write_gnuplot_script(directory / name, directory / name.replace(".csv", ".plt"), name[:-4])
    if run_config.json_path:
        write_json([trajectory_metadata(t) for t in trajectories], run_config.json_path)


@app.command()
def qcheck(
    corrupt: Optional[str] = typer.Option(None, "--corrupt", help="'coproduct' para el control negativo"),
    max_length: int = typer.Option(6, "--max-length", min=0, max=8, help="Longitud exhaustiva de confluencia"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semilla de las palabras aleatorias"),
    json_path: Optional[Path] = typer.Option(None, "--json", help="Reporte JSON"),
):
    """Verificar las identidades del grupo libro cuántico."""
    with usage_errors():
        checks = QAlgebraService.run_checks(corrupt, max_length, SamplingService.make_rng(seed))
    report = QCheckReport(
        checks=checks,
        corrupt=corrupt,
        covariant_layouts=QAlgebraService.covariant_layouts(),
        all_passed=all(c.passed for c in checks),
    )
    _echo_checks(checks)
    layouts = ", ".join(name for name, ok in report.covariant_layouts.items() if ok) or "ninguno"
    typer.echo(f"coacción covariante en: {layouts}")
    if json_path:
        write_json(report, json_path)
    raise typer.Exit(0 if report.all_passed else 1)


@app.command()
def serve(
    host: str = typer.Option("127.0.0.1", "--host"),
    port: Optional[int] = typer.Option(None, "--port"),
):
    """Levantar la API HTTP con uvicorn."""
    import uvicorn

    uvicorn.run("main:app", host=host, port=port or settings.PORT, reload=settings.DEBUG)


if __name__ == "__main__":
    app()
