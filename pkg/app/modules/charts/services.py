"""
Servicios de cartas: corchetes transportados, estructuras con nombre,
relaciones de Casimir y coproductos deformados (verificación numérica)
"""
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy as sp

from app.core.config import settings
from app.core.exceptions import DomainException, UnknownStructureException, ValidationException
from app.core.logging import get_logger
from app.core.schemas import CheckResult
from app.modules.charts.models import (
    DEFORMATION,
    GX,
    GY,
    GZ,
    J3,
    JM,
    JP,
    PARAM_SYMBOLS,
    CHART_SYMBOLS,
    CasimirRelation,
    Chart,
    ChartKind,
    NamedStructure,
    forward_map,
    inverse_map,
)
from app.modules.classify.services import ClassifyService
from app.modules.exact_core.services import SamplingService
from app.modules.pl_bracket.models import PLParams

logger = get_logger(__name__)

ParamSource = Union[PLParams, Sequence[float]]
PAIRS: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (1, 2))


def as_floats(params: ParamSource) -> Tuple[float, ...]:
    """
    Raises:
        ValidationException: Si los parámetros son simbólicos
    """
    if isinstance(params, PLParams):
        return tuple(float(v) for v in params.numeric())
    values = tuple(float(v) for v in params)
    if len(values) != 6:
        raise ValidationException(f"Se esperaban 6 parámetros, recibidos {len(values)}")
    return values


# ============================================
# Expresiones simbólicas
# ============================================

def group_bracket_exprs() -> sp.Matrix:
    """Matriz de Poisson genérica en (X, Y, Z)"""
    a, b, c, d, e, f = PARAM_SYMBOLS
    X, Y, Z = GX, GY, GZ
    xy = a * X**2 - b * X * Y - 2 * c * X * Z - a * X
    xz = d * X**2 + 2 * e * X * Y + b * X * Z - d * X
    yz = -f * X**2 + e * Y**2 + b * Y * Z - d * Y + c * Z**2 + a * Z + f
    return sp.Matrix([[0, xy, xz], [-xy, 0, yz], [-xz, -yz, 0]])


def group_casimir_expr() -> sp.Expr:
    a, b, c, d, e, f = PARAM_SYMBOLS
    X, Y, Z = GX, GY, GZ
    return (f * (1 + X**2) + (X - 1) * (d * Y - a * Z) + e * Y**2 + (b * Y + c * Z) * Z) / X


def generic_closed_forms(kind: ChartKind) -> Tuple[Tuple[sp.Expr, sp.Expr, sp.Expr], sp.Expr]:
    """Corchetes y Casimir impresos para la familia completa en cada carta"""
    a, b, c, d, e, f = PARAM_SYMBOLS
    q = DEFORMATION
    if kind == ChartKind.STANDARD:
        brackets = (
            a * sp.sinh(q * J3) / q + b / (2 * q) * JP + c / q * JM,
            d * sp.sinh(q * J3) / q - e / q * JP - b / (2 * q) * JM,
            2 * f * sp.sinh(2 * q * J3) + sp.cosh(q * J3) * (-d * JP + a * JM),
        )
        casimir = (
            2 * f * sp.cosh(2 * q * J3) + 2 * sp.sinh(q * J3) * (-d * JP + a * JM)
            + e * JP**2 + JM * (b * JP + c * JM)
        )
        return brackets, casimir
    if kind == ChartKind.NONSTANDARD:
        brackets = (
            -2 * f * sp.sinh(2 * q * JM) + sp.cosh(q * JM) * (d * JP - a * J3),
            -d * sp.sinh(q * JM) / q + e / q * JP + b / (2 * q) * J3,
            -a * sp.sinh(q * JM) / q - b / (2 * q) * JP - c / q * J3,
        )
        casimir = (
            2 * f * sp.cosh(2 * q * JM) + 2 * sp.sinh(q * JM) * (-d * JP + a * J3)
            + e * JP**2 + J3 * (b * JP + c * J3)
        )
        return brackets, casimir
    x, y, z = CHART_SYMBOLS[ChartKind.LOCAL]
    u = sp.exp(-x)
    brackets = (
        a * (1 - u) + b * y + 2 * c * z,
        d * (1 - u) - 2 * e * y - b * z,
        f * (1 - u**2) + e * y**2 + b * y * z - d * y + c * z**2 + a * z,
    )
    casimir = (f * (1 + u**2) + d * (u - 1) * y + e * y**2 + a * z * (1 - u) + z * (b * y + c * z)) / u
    return brackets, casimir


# ============================================
# Funciones compiladas (numpy)
# ============================================

@lru_cache(maxsize=None)
def _compiled_group() -> Tuple[Callable, Callable]:
    args = (*PARAM_SYMBOLS, GX, GY, GZ)
    return (
        sp.lambdify(args, group_bracket_exprs(), "numpy"),
        sp.lambdify(args, group_casimir_expr(), "numpy"),
    )


@lru_cache(maxsize=None)
def _compiled_chart(kind: ChartKind) -> Dict[str, Callable]:
    coords = CHART_SYMBOLS[kind]
    inverse = sp.Matrix(inverse_map(kind))
    jacobian = inverse.jacobian(sp.Matrix([GX, GY, GZ]))
    brackets, casimir = generic_closed_forms(kind)
    chart_args = (DEFORMATION, *coords)
    closed_args = (*PARAM_SYMBOLS, DEFORMATION, *coords)
    return {
        "forward": sp.lambdify(chart_args, sp.Matrix(forward_map(kind)), "numpy"),
        "inverse": sp.lambdify((DEFORMATION, GX, GY, GZ), inverse, "numpy"),
        "jacobian": sp.lambdify((DEFORMATION, GX, GY, GZ), jacobian, "numpy"),
        "brackets": sp.lambdify(closed_args, sp.Matrix(brackets), "numpy"),
        "casimir": sp.lambdify(closed_args, casimir, "numpy"),
    }


@lru_cache(maxsize=None)
def _compiled_named(identifier: str) -> Tuple[Callable, Callable]:
    structure = NAMED_STRUCTURES[identifier]
    args = (DEFORMATION, *CHART_SYMBOLS[structure.kind])
    return (
        sp.lambdify(args, sp.Matrix(structure.brackets), "numpy"),
        sp.lambdify(args, structure.casimir, "numpy"),
    )


def _flat(values) -> np.ndarray:
    return np.asarray(values, dtype=float).reshape(-1)


# ============================================
# Catálogo de estructuras con nombre
# ============================================

def _bind(**values) -> Callable[[Fraction], PLParams]:
    def bindings(q: Fraction) -> PLParams:
        return PLParams.of(**{name: rule(q) for name, rule in values.items()})
    return bindings


def _catalog() -> Dict[str, NamedStructure]:
    q = DEFORMATION
    half = sp.Rational(1, 2)
    return {
        structure.identifier: structure
        for structure in (
            NamedStructure(
                identifier="lv-poincare",
                description="Lotka-Volterra / Poincaré en base de cono de luz (b = 1)",
                kind=ChartKind.STANDARD,
                bindings=_bind(b=lambda _: 1),
                brackets=(JP / (2 * q), -JM / (2 * q), sp.Integer(0)),
                casimir=JP * JM,
                family="C",
            ),
            NamedStructure(
                identifier="sl2-standard",
                description="q-deformación estándar de sl(2): b = 2η, f = 1/(2η)",
                kind=ChartKind.STANDARD,
                bindings=_bind(b=lambda q_: 2 * q_, f=lambda q_: 1 / (2 * q_)),
                brackets=(JP, -JM, sp.sinh(2 * q * J3) / q),
                casimir=sp.cosh(2 * q * J3) / q + 2 * q * JP * JM,
                family="D",
            ),
            NamedStructure(
                identifier="sl2-nonstandard",
                description="q-deformación no estándar (jordaniana) de sl(2): c = -2φ, d = 1",
                kind=ChartKind.NONSTANDARD,
                bindings=_bind(c=lambda q_: -2 * q_, d=lambda _: 1),
                brackets=(JP * sp.cosh(q * JM), -sp.sinh(q * JM) / q, 2 * J3),
                casimir=-2 * sp.sinh(q * JM) * JP - 2 * q * J3**2,
                family="I",
            ),
            NamedStructure(
                identifier="heisenberg-q",
                description="Heisenberg cuántico: f = 1/(4η)",
                kind=ChartKind.STANDARD,
                bindings=_bind(f=lambda q_: 1 / (4 * q_)),
                brackets=(sp.Integer(0), sp.Integer(0), sp.sinh(2 * q * J3) / (2 * q)),
                casimir=sp.cosh(2 * q * J3) / (2 * q),
                family="A",
            ),
            NamedStructure(
                identifier="euclidean-nonstandard",
                description="(pseudo)euclídeo no estándar: d = 1",
                kind=ChartKind.NONSTANDARD,
                bindings=_bind(d=lambda _: 1),
                brackets=(JP * sp.cosh(q * JM), -sp.sinh(q * JM) / q, sp.Integer(0)),
                casimir=-2 * sp.sinh(q * JM) * JP,
                family="B",
            ),
            NamedStructure(
                identifier="so3-q",
                description="so(3)/so(2,1) cuántico: c = e = η, f = 1/(2η)",
                kind=ChartKind.STANDARD,
                bindings=_bind(c=lambda q_: q_, e=lambda q_: q_, f=lambda q_: 1 / (2 * q_)),
                brackets=(JM, -JP, sp.sinh(2 * q * J3) / q),
                casimir=sp.cosh(2 * q * J3) / q + q * JP**2 + q * JM**2,
                family="E",
            ),
            NamedStructure(
                identifier="euclidean-f",
                description="euclídeo con reglas de conmutación no deformadas: c = e = η, f = 0",
                kind=ChartKind.STANDARD,
                bindings=_bind(c=lambda q_: q_, e=lambda q_: q_),
                brackets=(JM, -JP, sp.Integer(0)),
                casimir=q * JP**2 + q * JM**2,
                family="F",
            ),
            NamedStructure(
                identifier="heisenberg-g",
                description="Heisenberg no deformado con coproducto deformado: c = -1/2",
                kind=ChartKind.STANDARD,
                bindings=_bind(c=lambda _: Fraction(-1, 2)),
                brackets=(-half * JM / q, sp.Integer(0), sp.Integer(0)),
                casimir=-half * JM**2,
                family="G",
            ),
            NamedStructure(
                identifier="e2-q",
                description="e(2)/e(1,1) cuántico: c = -1/2, f = 1/(2η)",
                kind=ChartKind.STANDARD,
                bindings=_bind(c=lambda _: Fraction(-1, 2), f=lambda q_: 1 / (2 * q_)),
                brackets=(-half * JM / q, sp.Integer(0), sp.sinh(2 * q * J3) / q),
                casimir=sp.cosh(2 * q * J3) / q - half * JM**2,
                family="H",
            ),
        )
    }


NAMED_STRUCTURES: Dict[str, NamedStructure] = _catalog()

# C̃ impresos y relación afín esperada (k1, k0) en función de la deformación
_CASIMIR_TARGETS: Dict[str, Tuple[sp.Expr, Callable[[float], Tuple[float, float]]]] = {
    "sl2-standard": (
        sp.sinh(DEFORMATION * J3) ** 2 / DEFORMATION**2 + JP * JM,
        lambda q: (2 * q, 1 / q),
    ),
    "sl2-nonstandard": (
        J3**2 + JP * sp.sinh(DEFORMATION * JM) / DEFORMATION,
        lambda q: (-2 * q, 0 * q),
    ),
}


class ChartService:
    """Transporte de la familia P[a..f] a las cartas (J3, J+, J-)"""

    @staticmethod
    def named_structure(identifier: str) -> NamedStructure:
        """
        Raises:
            UnknownStructureException: Si el identificador no existe
        """
        structure = NAMED_STRUCTURES.get(identifier)
        if structure is None:
            raise UnknownStructureException(identifier, sorted(NAMED_STRUCTURES))
        return structure

    @staticmethod
    def chart_for(identifier: str, deformation: float) -> Chart:
        return Chart(ChartService.named_structure(identifier).kind, float(deformation))

    # ============================================
    # Mapas de la carta
    # ============================================

    @staticmethod
    def forward(chart: Chart, point: Sequence[float]) -> np.ndarray:
        """
        (X, Y, Z) de un punto de la carta

        Raises:
            DomainException: Si el punto cae fuera del dominio X > 0
        """
        values = _flat(point)
        if values.shape != (3,) or not np.all(np.isfinite(values)):
            raise ValidationException(f"Punto inválido: {point}")
        with np.errstate(over="ignore"):
            group = _flat(_compiled_chart(chart.kind)["forward"](chart.deformation, *values))
        if not np.all(np.isfinite(group)) or group[0] <= 0:
            raise DomainException(f"Punto fuera del dominio de la carta: {tuple(values)}")
        return group

    @staticmethod
    def inverse(chart: Chart, group: Sequence[float]) -> np.ndarray:
        X, Y, Z = _flat(group)
        if X <= 0:
            raise DomainException(f"X = {X} fuera del dominio X > 0")
        return _flat(_compiled_chart(chart.kind)["inverse"](chart.deformation, X, Y, Z))

    @staticmethod
    def sample_points(n: int, rng: np.random.Generator) -> np.ndarray:
        bound = settings.CHART_COORD_BOUND
        return rng.uniform(-bound, bound, size=(n, 3))

    # ============================================
    # Corchetes
    # ============================================

    @staticmethod
    def pushforward_matrix(params: ParamSource, chart: Chart, point: Sequence[float]) -> np.ndarray:
        """Matriz de Poisson en la carta: J·Π(X,Y,Z)·Jᵀ por regla de la cadena"""
        values = as_floats(params)
        X, Y, Z = ChartService.forward(chart, point)
        bracket_fn, _ = _compiled_group()
        group_matrix = np.asarray(bracket_fn(*values, X, Y, Z), dtype=float)
        jacobian = np.asarray(_compiled_chart(chart.kind)["jacobian"](chart.deformation, X, Y, Z), dtype=float)
        return jacobian @ group_matrix @ jacobian.T

    @staticmethod
    def pushforward_bracket(params: ParamSource, chart: Chart, i: int, j: int, point: Sequence[float]) -> float:
        """{J_i, J_j} en el punto (índices 0-based en el orden de la carta)"""
        if not (0 <= i < 3 and 0 <= j < 3):
            raise ValidationException(f"Índices fuera de rango: ({i}, {j})")
        return float(ChartService.pushforward_matrix(params, chart, point)[i, j])

    @staticmethod
    def closed_form_matrix(params: ParamSource, chart: Chart, point: Sequence[float]) -> np.ndarray:
        """Matriz de las formas cerradas genéricas impresas"""
        values = as_floats(params)
        entries = _flat(_compiled_chart(chart.kind)["brackets"](*values, chart.deformation, *_flat(point)))
        return _antisymmetric(entries)

    @staticmethod
    def named_matrix(identifier: str, deformation: float, point: Sequence[float]) -> np.ndarray:
        bracket_fn, _ = _compiled_named(identifier)
        return _antisymmetric(_flat(bracket_fn(float(deformation), *_flat(point))))

    @staticmethod
    def group_casimir(params: ParamSource, group: Sequence[float]) -> float:
        _, casimir_fn = _compiled_group()
        return float(casimir_fn(*as_floats(params), *_flat(group)))

    @staticmethod
    def chart_casimir(params: ParamSource, chart: Chart, point: Sequence[float]) -> float:
        casimir_fn = _compiled_chart(chart.kind)["casimir"]
        return float(casimir_fn(*as_floats(params), chart.deformation, *_flat(point)))

    # ============================================
    # Verificaciones
    # ============================================

    @staticmethod
    def closed_form_check(
        params: ParamSource, chart: Chart, rng: np.random.Generator, n: Optional[int] = None
    ) -> CheckResult:
        """Corchete transportado frente a las formas cerradas genéricas"""
        points = ChartService.sample_points(n or settings.CHART_SAMPLE_POINTS, rng)
        error = max(
            _relative_error(
                ChartService.pushforward_matrix(params, chart, p), ChartService.closed_form_matrix(params, chart, p)
            )
            for p in points
        )
        return _tolerance_check(f"closed-form/{chart.kind.value}", error, settings.CHART_TOLERANCE)

    @staticmethod
    def casimir_transport_check(
        params: ParamSource, chart: Chart, rng: np.random.Generator, n: Optional[int] = None
    ) -> CheckResult:
        """𝒞(X,Y,Z) compuesto con la carta frente al Casimir impreso en la carta"""
        points = ChartService.sample_points(n or settings.CHART_SAMPLE_POINTS, rng)
        error = 0.0
        for p in points:
            group_value = ChartService.group_casimir(params, ChartService.forward(chart, p))
            chart_value = ChartService.chart_casimir(params, chart, p)
            error = max(error, abs(group_value - chart_value) / max(1.0, abs(group_value)))
        return _tolerance_check(f"casimir-transport/{chart.kind.value}", error, settings.CASIMIR_TOLERANCE)

    @staticmethod
    def numeric_jacobi(params: ParamSource, chart: Chart, point: Sequence[float], step: float = 1e-5) -> float:
        """
        Suma cíclica de {{J_i,J_j},J_k} con derivadas por diferencias centradas
        """
        base = _flat(point)
        pi = ChartService.pushforward_matrix(params, chart, base)
        gradients = np.zeros((3, 3, 3))
        for m in range(3):
            shift = np.zeros(3)
            shift[m] = step
            upper = ChartService.pushforward_matrix(params, chart, base + shift)
            lower = ChartService.pushforward_matrix(params, chart, base - shift)
            gradients[:, :, m] = (upper - lower) / (2 * step)
        residual = 0.0
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            residual += float(gradients[i, j, :] @ pi[:, k])
        return abs(residual)

    @staticmethod
    def jacobi_check(
        params: ParamSource, chart: Chart, rng: np.random.Generator, n: int = 20
    ) -> CheckResult:
        points = ChartService.sample_points(n, rng) * 0.5
        error = max(ChartService.numeric_jacobi(params, chart, p) for p in points)
        return _tolerance_check(f"jacobi/{chart.kind.value}", error, 1e-6)

    @staticmethod
    def chart_roundtrip_check(chart: Chart, rng: np.random.Generator, n: Optional[int] = None) -> CheckResult:
        """inverse∘forward = id en puntos aleatorios"""
        points = ChartService.sample_points(n or settings.CHART_SAMPLE_POINTS, rng)
        error = max(
            float(np.max(np.abs(ChartService.inverse(chart, ChartService.forward(chart, p)) - p))) for p in points
        )
        return _tolerance_check(f"roundtrip/{chart.kind.value}", error, 1e-12)

    @staticmethod
    def deformed_coproduct_check(
        chart: Chart, rng: np.random.Generator, n: int = 50
    ) -> CheckResult:
        """
        Ley de grupo transportada frente al coproducto impreso:
        primitivo en J3 (estándar) o J- (no estándar) y
        Δ(J) = e^{-qP}⊗J + J⊗e^{qP} en los otros dos
        """
        if chart.kind == ChartKind.LOCAL:
            raise ValidationException("El coproducto deformado solo se define en las cartas estándar y no estándar")
        q = chart.deformation
        primitive = 0 if chart.kind == ChartKind.STANDARD else 2
        error = 0.0
        for _ in range(n):
            p1, p2 = ChartService.sample_points(2, rng)
            X1, Y1, Z1 = ChartService.forward(chart, p1)
            X2, Y2, Z2 = ChartService.forward(chart, p2)
            product = ChartService.inverse(chart, (X1 * X2, X1 * Y2 + Y1, X1 * Z2 + Z1))
            expected = np.empty(3)
            for k in range(3):
                if k == primitive:
                    expected[k] = p1[k] + p2[k]
                else:
                    expected[k] = np.exp(-q * p1[primitive]) * p2[k] + p1[k] * np.exp(q * p2[primitive])
            error = max(error, float(np.max(np.abs(product - expected) / np.maximum(1.0, np.abs(expected)))))
        return _tolerance_check(f"coproduct/{chart.kind.value}", error, settings.CASIMIR_TOLERANCE)

    @staticmethod
    def casimir_relation(
        identifier: str, deformation: float, rng: Optional[np.random.Generator] = None
    ) -> CasimirRelation:
        """
        Ajusta 𝒞 = k1·C̃ + k0 por mínimos cuadrados y lo confirma
        simbólicamente reescribiendo en exponenciales

        Raises:
            ValidationException: Si la estructura no tiene C̃ impreso
        """
        if identifier not in _CASIMIR_TARGETS:
            raise ValidationException(f"Sin relación de Casimir para '{identifier}' (sl2-standard | sl2-nonstandard)")
        structure = ChartService.named_structure(identifier)
        chart = Chart(structure.kind, float(deformation))
        target, expected_fn = _CASIMIR_TARGETS[identifier]
        exact = Fraction(repr(float(deformation)))
        expected = tuple(float(v) for v in expected_fn(float(deformation)))
        target_fn = sp.lambdify((DEFORMATION, *CHART_SYMBOLS[chart.kind]), target, "numpy")
        params = structure.params(exact)

        rng = rng or SamplingService.make_rng()
        points = ChartService.sample_points(settings.CHART_SAMPLE_POINTS, rng)
        casimir = np.array([ChartService.group_casimir(params, ChartService.forward(chart, p)) for p in points])
        tilde = np.array([float(target_fn(chart.deformation, *p)) for p in points])
        design = np.column_stack([tilde, np.ones_like(tilde)])
        (k1, k0), *_ = np.linalg.lstsq(design, casimir, rcond=None)
        residual = float(np.max(np.abs(casimir - (expected[0] * tilde + expected[1]))))

        exact_q = sp.Rational(exact.numerator, exact.denominator)
        k1_sym, k0_sym = expected_fn(exact_q)
        difference = (structure.casimir - k1_sym * target - k0_sym).subs(DEFORMATION, exact_q)
        symbolic = sp.simplify(sp.expand(difference.rewrite(sp.exp))) == 0

        logger.info("Relación de Casimir %s: k1=%.17g k0=%.17g", identifier, k1, k0)
        return CasimirRelation(
            identifier=identifier,
            k1=float(k1),
            k0=float(k0),
            expected=expected,
            max_residual=residual,
            symbolic=bool(symbolic),
        )

    @staticmethod
    def sl2_limit_check(eta: float = 1e-4, rng: Optional[np.random.Generator] = None) -> CheckResult:
        """sl2-standard con η pequeño frente a {J3,J±} = ±J±, {J+,J-} = 2J3"""
        rng = rng or SamplingService.make_rng()
        structure = ChartService.named_structure("sl2-standard")
        params = structure.params(Fraction(repr(float(eta))))
        chart = Chart(ChartKind.STANDARD, float(eta))
        error = 0.0
        for p in ChartService.sample_points(settings.CHART_SAMPLE_POINTS, rng):
            matrix = ChartService.pushforward_matrix(params, chart, p)
            lie = _antisymmetric(np.array([p[1], -p[2], 2 * p[0]]))
            error = max(error, float(np.max(np.abs(matrix - lie))))
        return _tolerance_check("sl2-limit", error, 1e-6)

    @staticmethod
    def check_named_structure(
        identifier: str, deformation: float, rng: Optional[np.random.Generator] = None
    ) -> List[CheckResult]:
        """Reporte completo de una estructura con nombre"""
        rng = rng or SamplingService.make_rng()
        structure = ChartService.named_structure(identifier)
        chart = Chart(structure.kind, float(deformation))
        params = structure.params(Fraction(repr(float(deformation))))
        _, casimir_fn = _compiled_named(identifier)

        points = ChartService.sample_points(settings.CHART_SAMPLE_POINTS, rng)
        bracket_error = 0.0
        casimir_error = 0.0
        for p in points:
            pushed = ChartService.pushforward_matrix(params, chart, p)
            printed = ChartService.named_matrix(identifier, deformation, p)
            bracket_error = max(bracket_error, _relative_error(pushed, printed))
            group_value = ChartService.group_casimir(params, ChartService.forward(chart, p))
            printed_value = float(casimir_fn(chart.deformation, *p))
            casimir_error = max(casimir_error, abs(group_value - printed_value) / max(1.0, abs(group_value)))

        family = ClassifyService.row_family(params)
        checks = [
            _tolerance_check(f"{identifier}/brackets", bracket_error, settings.CHART_TOLERANCE),
            _tolerance_check(f"{identifier}/casimir", casimir_error, settings.CASIMIR_TOLERANCE),
            ChartService.casimir_transport_check(params, chart, rng),
            ChartService.deformed_coproduct_check(chart, rng),
            ChartService.jacobi_check(params, chart, rng),
            ChartService.chart_roundtrip_check(chart, rng),
            CheckResult(
                name=f"{identifier}/family",
                passed=family is not None and family.value == structure.family,
                detail=f"fila {family.value if family else '-'} (esperada {structure.family})",
                method="symbolic",
            ),
        ]
        if identifier in _CASIMIR_TARGETS:
            relation = ChartService.casimir_relation(identifier, deformation, rng)
            checks.append(CheckResult(
                name=f"{identifier}/casimir-relation",
                passed=relation.passed and relation.max_residual < settings.CASIMIR_TOLERANCE * 100,
                detail=f"k1 = {relation.k1:.17g}, k0 = {relation.k0:.17g}",
                method="numeric",
            ))
        logger.info("Estructura %s: %d/%d verificaciones", identifier, sum(c.passed for c in checks), len(checks))
        return checks


def _antisymmetric(upper: np.ndarray) -> np.ndarray:
    """Matriz 3x3 a partir de las entradas (01, 02, 12)"""
    matrix = np.zeros((3, 3))
    for value, (i, j) in zip(upper, PAIRS):
        matrix[i, j] = value
        matrix[j, i] = -value
    return matrix


def _relative_error(left: np.ndarray, right: np.ndarray) -> float:
    return float(np.max(np.abs(left - right) / np.maximum(1.0, np.abs(right))))


def _tolerance_check(name: str, error: float, tolerance: float) -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(error < tolerance),
        detail=f"error máximo {error:.3e} (tolerancia {tolerance:.0e})",
        first_nonzero=None if error < tolerance else f"{error:.17g}",
        method="numeric",
    )
