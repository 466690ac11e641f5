"""
Suite de verificación: identidades simbólicas, r-matrices, clasificación,
dinámica y álgebra cuántica con controles negativos
"""
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import AppException, ValidationException
from app.core.logging import get_logger
from app.core.schemas import CheckResult
from app.modules.classify.models import ClassLetter
from app.modules.classify.services import ClassifyService
from app.modules.dynamics.models import LVHamiltonian
from app.modules.dynamics.services import DynamicsService
from app.modules.exact_core.models import Poly, PolyMatrix, symbols
from app.modules.exact_core.services import SamplingService
from app.modules.hopf.services import HopfService
from app.modules.pl_bracket.models import PLParams
from app.modules.pl_bracket.services import PLBracketService, casimir_commutes
from app.modules.qalgebra.services import QAlgebraService
from app.modules.rmatrix.models import SkewBivector
from app.modules.rmatrix.services import RMatrixService, nonzero_summary
from app.modules.verification.schemas import (
    CheckStatus,
    RunConfig,
    VerificationEntry,
    VerificationReport,
)

logger = get_logger(__name__)

X, Y, Z = symbols("X", "Y", "Z")

CORRUPTIONS: Dict[str, str] = {
    "jacobi": "tabla {X,Y} = Y², {Y,Z} = X en lugar de la familia",
    "poisson-map": "corchete cúbico {X,Y} = XY²",
    "rhat": "signo invertido en la entrada r̂[2,1]",
    "coproduct": "Δ(Ŷ) = Ŷ⊗X̂ + 1⊗Ŷ",
    "oracle": "campo impreso con (α1 Y + β1) en el término e de Ż",
}


@dataclass
class RunContext:
    rng: np.random.Generator
    corrupt: frozenset


@dataclass(frozen=True)
class SuiteCheck:
    """Entrada de la suite; `run` devuelve uno o varios resultados"""
    name: str
    group: str
    run: Callable[[RunContext], List[CheckResult]]
    numeric: bool = False


def poly_check(name: str, residuals: Sequence[Poly], detail: str = "") -> CheckResult:
    """PASS si todos los residuos son el polinomio nulo"""
    first = next((str(r) for r in residuals if not r.is_zero), None)
    return CheckResult(
        name=name,
        passed=first is None,
        detail=detail or f"{len(residuals)} residuos",
        first_nonzero=first,
    )


def matrix_check(name: str, residual: PolyMatrix, detail: str = "") -> CheckResult:
    return CheckResult(
        name=name,
        passed=residual.is_zero,
        detail=detail or f"matriz {residual.shape[0]}x{residual.shape[1]}",
        first_nonzero=nonzero_summary(residual),
    )


# ============================================
# Checks
# ============================================

def _jacobi(ctx: RunContext) -> List[CheckResult]:
    if "jacobi" in ctx.corrupt:
        structure = PLBracketService.custom_structure({"XY": Y**2, "XZ": 0, "YZ": X})
    else:
        structure = PLBracketService.build_structure(PLParams.symbolic())
    return [poly_check("pl_bracket/jacobi", PLBracketService.jacobi_residual(structure), "a..f simbólicos")]


def _casimir(ctx: RunContext) -> List[CheckResult]:
    return [poly_check("pl_bracket/casimir", list(casimir_commutes(PLParams.symbolic())), "{𝒞, X}, {𝒞, Y}, {𝒞, Z}")]


def _poisson_map(ctx: RunContext) -> List[CheckResult]:
    if "poisson-map" in ctx.corrupt:
        source = PLBracketService.custom_structure({"XY": X * Y**2, "XZ": 0, "YZ": 0})
    else:
        source = PLParams.symbolic()
    return [poly_check("hopf/poisson-map", HopfService.poisson_map_residual(source), "Δ{v,w} − {Δv,Δw}")]


def _coassociativity(ctx: RunContext) -> List[CheckResult]:
    return [poly_check("hopf/coassociativity", HopfService.coassociativity_residual())]


def _antipode(ctx: RunContext) -> List[CheckResult]:
    return [poly_check("hopf/antipode", HopfService.antipode_axiom_residual())]


def _group_law(ctx: RunContext) -> List[CheckResult]:
    return [poly_check("hopf/group-law", HopfService.group_law_residual(), "Δ = entradas de M₁·M₂")]


def _mcybe(ctx: RunContext) -> List[CheckResult]:
    bracket = RMatrixService.schouten_bracket(SkewBivector.symbolic())
    return [poly_check("rmatrix/mcybe", RMatrixService.mcybe_residual(bracket), f"[[r,r]] = {bracket.t}")]


def _sklyanin(ctx: RunContext) -> List[CheckResult]:
    r = SkewBivector.symbolic()
    pushed = PLBracketService.to_group_chart(RMatrixService.sklyanin_bracket(r))
    expected = PLBracketService.build_structure(RMatrixService.coboundary_params(r))
    residuals = [pushed.pair(v, w) - expected.pair(v, w) for v, w in (("X", "Y"), ("X", "Z"), ("Y", "Z"))]
    return [poly_check("rmatrix/sklyanin", residuals, "P[r13, 0, 0, r23, 0, −r12]")]


def _rhat_form(ctx: RunContext) -> List[CheckResult]:
    params = PLParams.symbolic()
    rhat = None
    if "rhat" in ctx.corrupt:
        printed = RMatrixService.rhat_matrix(params)
        entries = {(i, j): v for i, j, v in printed.nonzero_entries()}
        entries[(1, 0)] = -entries[(1, 0)]
        rhat = PolyMatrix.from_sparse(9, 9, entries)
    return [matrix_check("rmatrix/rhat-form", RMatrixService.rhat_form_residual(params, rhat=rhat))]


def _coboundary_stratum() -> PLParams:
    return PLParams.of("sym", 0, 0, "sym", 0, "sym")


def _rhat_nilpotent(ctx: RunContext) -> List[CheckResult]:
    rhat = RMatrixService.rhat_matrix(_coboundary_stratum())
    return [matrix_check("rmatrix/rhat-nilpotent", rhat @ rhat, "r̂² con b = c = e = 0")]


def _yang_baxter(ctx: RunContext) -> List[CheckResult]:
    params = _coboundary_stratum()
    cybe, cybe_method = RMatrixService.cybe_residual(params, ctx.rng)
    qybe, qybe_method = RMatrixService.qybe_residual(params, ctx.rng)
    broken, broken_method = RMatrixService.cybe_residual(PLParams.of(1, 1, 1, 1, 1, 1), ctx.rng)
    return [
        CheckResult(name="rmatrix/cybe", passed=cybe, detail="b = c = e = 0", method=cybe_method),
        CheckResult(name="rmatrix/qybe", passed=qybe, detail="R con entradas a, d, f", method=qybe_method),
        CheckResult(
            name="rmatrix/cybe-noncoboundary",
            passed=not broken,
            detail="a = b = c = d = e = f = 1 debe violar CYBE",
            method=broken_method,
        ),
    ]


def _classify_table(ctx: RunContext) -> List[CheckResult]:
    failures = []
    for letter in ClassLetter:
        for _ in range(10):
            values = [SamplingService.random_rational(ctx.rng) or 1 for _ in range(3)]
            params = ClassifyService.instantiate_row(letter, *values)
            result = ClassifyService.classify(params)
            if result.letter != letter or result.coboundary != (letter in (ClassLetter.A, ClassLetter.B)):
                failures.append(f"{letter.value}: {params}")
    return [CheckResult(
        name="classify/table",
        passed=not failures,
        detail="9 filas x 10 instancias",
        first_nonzero=failures[0] if failures else None,
    )]


def _involution(ctx: RunContext) -> List[CheckResult]:
    H = LVHamiltonian((1, 1, 1), (1, 1, 1))
    worst = max(
        DynamicsService.involution_check(params, H, ctx.rng)
        for params in ((0, 1, 0, 0, 0, 0), (1, 1, 1, 1, 1, 1))
    )
    return [CheckResult(
        name="dynamics/involution",
        passed=worst < settings.ORACLE_TOLERANCE,
        detail=f"max |{{H, 𝒞}}| = {worst:.3e}",
        method="numeric",
    )]


def _oracle(ctx: RunContext) -> List[CheckResult]:
    H = LVHamiltonian((1, 1, 1), (1, 1, 1))
    states = DynamicsService.random_states(100, ctx.rng)
    wanted = "printed" if "oracle" in ctx.corrupt else "consistent"
    results = DynamicsService.oracle_report((0, 1, 0, 0, 0, 0), H, states)
    results += DynamicsService.oracle_report((1, 1, 1, 1, 1, 1), H, states)
    selected = [r for r in results if r.name.split("/")[1] in ("lv", wanted)]
    failed = [r for r in selected if not r.passed]
    return [CheckResult(
        name="dynamics/oracle",
        passed=not failed,
        detail=f"campos lv y {wanted} frente al corchete en 100 estados",
        first_nonzero=f"{failed[0].name}: {failed[0].detail}" if failed else None,
        method="numeric",
    )]


def _qalgebra(ctx: RunContext) -> List[CheckResult]:
    corrupt = "coproduct" if "coproduct" in ctx.corrupt else None
    return QAlgebraService.run_checks(corrupt, rng=ctx.rng)


SUITE: Tuple[SuiteCheck, ...] = (
    SuiteCheck("pl_bracket/jacobi", "pl_bracket", _jacobi),
    SuiteCheck("pl_bracket/casimir", "pl_bracket", _casimir),
    SuiteCheck("hopf/poisson-map", "hopf", _poisson_map),
    SuiteCheck("hopf/coassociativity", "hopf", _coassociativity),
    SuiteCheck("hopf/antipode", "hopf", _antipode),
    SuiteCheck("hopf/group-law", "hopf", _group_law),
    SuiteCheck("rmatrix/mcybe", "rmatrix", _mcybe),
    SuiteCheck("rmatrix/sklyanin", "rmatrix", _sklyanin),
    SuiteCheck("rmatrix/rhat-form", "rmatrix", _rhat_form),
    SuiteCheck("rmatrix/rhat-nilpotent", "rmatrix", _rhat_nilpotent),
    SuiteCheck("rmatrix/yang-baxter", "rmatrix", _yang_baxter),
    SuiteCheck("classify/table", "classify", _classify_table),
    SuiteCheck("dynamics/involution", "dynamics", _involution, numeric=True),
    SuiteCheck("dynamics/oracle", "dynamics", _oracle, numeric=True),
    SuiteCheck("qalgebra", "qalgebra", _qalgebra),
)

GROUPS: Tuple[str, ...] = tuple(dict.fromkeys(check.group for check in SUITE))


def _normalize(name: str) -> str:
    return name.strip().replace("-", "_") if "/" not in name else name.strip()


class VerificationService:
    """Ejecuta la suite y arma el reporte"""

    @staticmethod
    def select(only: Sequence[str]) -> List[SuiteCheck]:
        """
        Checks pedidos por grupo ('rmatrix') o por nombre ('hopf/antipode')

        Raises:
            ValidationException: Si algún nombre no existe
        """
        if not only:
            return list(SUITE)
        wanted = [_normalize(name) for name in only]
        known = set(GROUPS) | {check.name for check in SUITE}
        unknown = [name for name in wanted if name not in known]
        if unknown:
            raise ValidationException(f"Checks desconocidos: {unknown}; grupos: {list(GROUPS)}")
        return [check for check in SUITE if check.group in wanted or check.name in wanted]

    @staticmethod
    def validate_corruptions(corrupt: Sequence[str]) -> frozenset:
        unknown = sorted(set(corrupt) - set(CORRUPTIONS))
        if unknown:
            raise ValidationException(f"Corrupciones desconocidas: {unknown}; disponibles: {sorted(CORRUPTIONS)}")
        return frozenset(corrupt)

    @staticmethod
    def run(config: RunConfig) -> VerificationReport:
        """
        Ejecuta los checks seleccionados; los fallos matemáticos son contenido
        del reporte, no excepciones

        Raises:
            ValidationException: Nombres de checks o corrupciones desconocidos
        """
        selected = VerificationService.select(config.only)
        ctx = RunContext(
            rng=SamplingService.make_rng(config.seed),
            corrupt=VerificationService.validate_corruptions(config.corrupt),
        )
        started = time.perf_counter()
        entries: List[VerificationEntry] = []
        for check in selected:
            if check.numeric and config.symbolic_only:
                entries.append(VerificationEntry(
                    name=check.name, group=check.group, status=CheckStatus.SKIP,
                    detail="omitido (--symbolic-only)", method="numeric", wall_time=0.0,
                ))
                continue
            entries.extend(VerificationService._execute(check, ctx))
        report = VerificationReport(
            version=settings.APP_VERSION,
            input=config,
            entries=entries,
            wall_time=time.perf_counter() - started,
        )
        counts = report.counts()
        logger.info("Verificación: %d PASS, %d FAIL, %d SKIP", counts["PASS"], counts["FAIL"], counts["SKIP"])
        return report

    @staticmethod
    def _execute(check: SuiteCheck, ctx: RunContext) -> List[VerificationEntry]:
        started = time.perf_counter()
        try:
            results = check.run(ctx)
        except AppException as e:
            logger.error("El check %s lanzó %s", check.name, e)
            results = [CheckResult(name=check.name, passed=False, detail=f"error: {e}")]
        elapsed = time.perf_counter() - started
        share = elapsed / max(len(results), 1)
        entries = []
        for result in results:
            if not result.passed:
                logger.warning("FAIL %s: %s", result.name, result.first_nonzero or result.detail)
            entries.append(VerificationEntry(
                name=result.name,
                group=check.group,
                status=CheckStatus.PASS if result.passed else CheckStatus.FAIL,
                detail=result.detail,
                first_nonzero=result.first_nonzero,
                method=result.method,
                wall_time=share if len(results) > 1 else elapsed,
            ))
        return entries
