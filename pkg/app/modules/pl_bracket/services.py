"""
Servicios del corchete Poisson-Lie: construcción, extensión de Leibniz,
Jacobi, Casimir y linealización
"""
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import ChartMismatchException, ValidationException
from app.core.logging import get_logger
from app.modules.exact_core.models import ZERO, Poly, Scalar, split_variable
from app.modules.pl_bracket.models import (
    CHART_AUXILIARY,
    CHART_COORDINATES,
    CHART_DENOMINATOR,
    COORDINATE_BASES,
    ChartTag,
    LinearBracketTable,
    PLParams,
    PoissonStructure,
    RationalFunction,
)

logger = get_logger(__name__)

BracketArg = Union[Poly, RationalFunction, Scalar]

X, Y, Z = (Poly.var(name) for name in ("X", "Y", "Z"))
x, y, z, u = (Poly.var(name) for name in ("x", "y", "z", "u"))


def poisson_bracket(p: Poly, q: Poly, structure: PoissonStructure) -> Poly:
    """
    {p,q} = Σ_{i<j} (∂_i p ∂_j q - ∂_j p ∂_i q) {w_i, w_j}

    Sin comprobación de carta; la usan también los productos tensoriales.
    """
    coords = structure.coordinates
    dp = [p.partial(w) for w in coords]
    dq = [q.partial(w) for w in coords]
    result = ZERO
    for (i, j), value in structure.table.items():
        if value.is_zero:
            continue
        factor = dp[i] * dq[j] - dp[j] * dq[i]
        if not factor.is_zero:
            result = result + factor * value
    return result


class PLBracketService:
    """Operaciones sobre la familia P[a,b,c,d,e,f]"""

    @staticmethod
    def build_structure(params: PLParams, chart: ChartTag = ChartTag.GROUP) -> PoissonStructure:
        """
        Tabla de corchetes fundamentales tal como se imprime

        Args:
            params: Parámetros (numéricos o simbólicos)
            chart: Carta de grupo (X,Y,Z) o local (x,y,z) con u = e^{-x}

        Returns:
            PoissonStructure con {X,Y}, {X,Z}, {Y,Z} (resp. {x,y}, {x,z}, {y,z})
        """
        a, b, c, d, e, f = params.values
        if chart == ChartTag.GROUP:
            table = {
                (0, 1): a * X**2 - b * X * Y - 2 * c * X * Z - a * X,
                (0, 2): d * X**2 + 2 * e * X * Y + b * X * Z - d * X,
                (1, 2): -f * X**2 + e * Y**2 + b * Y * Z - d * Y + c * Z**2 + a * Z + f,
            }
        else:
            table = {
                (0, 1): a * (1 - u) + b * y + 2 * c * z,
                (0, 2): d * (1 - u) - 2 * e * y - b * z,
                (1, 2): f * (1 - u**2) + e * y**2 + b * y * z - d * y + c * z**2 + a * z,
            }
        return PoissonStructure(
            chart=chart,
            coordinates=CHART_COORDINATES[chart],
            table=table,
            params=params,
            auxiliary=CHART_AUXILIARY[chart],
        )

    @staticmethod
    def custom_structure(
        brackets: Mapping[str, Union[Poly, Scalar]],
        chart: ChartTag = ChartTag.GROUP,
    ) -> PoissonStructure:
        """
        Estructura arbitraria (controles negativos), claves 'XY', 'XZ', 'YZ'

        Raises:
            ValidationException: Si alguna clave no es un par de coordenadas
        """
        coords = CHART_COORDINATES[chart]
        keys = {f"{coords[i]}{coords[j]}": (i, j) for i in range(3) for j in range(i + 1, 3)}
        unknown = set(brackets) - set(keys)
        if unknown:
            raise ValidationException(f"Pares de corchete desconocidos: {sorted(unknown)}")
        table = {keys[name]: Poly.coerce(value) for name, value in brackets.items()}
        return PoissonStructure(chart, coords, table, None, CHART_AUXILIARY[chart])

    @staticmethod
    def _check_chart(structure: PoissonStructure, *polys: Poly) -> None:
        allowed = structure.allowed_variables()
        for p in polys:
            for name in p.variables:
                if split_variable(name)[0] in COORDINATE_BASES and name not in allowed:
                    raise ChartMismatchException(
                        f"La variable '{name}' no pertenece a la carta {structure.chart.value} "
                        f"{structure.coordinates}"
                    )

    @staticmethod
    def bracket_poly(structure: PoissonStructure, p: BracketArg, q: BracketArg) -> Poly:
        """Corchete como polinomio de Laurent (regla del cociente implícita)"""
        p = p.to_laurent() if isinstance(p, RationalFunction) else Poly.coerce(p)
        q = q.to_laurent() if isinstance(q, RationalFunction) else Poly.coerce(q)
        PLBracketService._check_chart(structure, p, q)
        return poisson_bracket(p, q, structure)

    @staticmethod
    def bracket(structure: PoissonStructure, p: BracketArg, q: BracketArg) -> RationalFunction:
        """
        Extensión de Leibniz de los corchetes fundamentales

        Raises:
            ChartMismatchException: Si p o q usan coordenadas de otra carta
        """
        value = PLBracketService.bracket_poly(structure, p, q)
        denominator = CHART_DENOMINATOR.get(structure.chart, "X")
        return RationalFunction.from_laurent(value, denominator)

    @staticmethod
    def jacobi_residual(structure: PoissonStructure) -> List[Poly]:
        """
        {{w_i,w_j},w_k} + cíclico para cada terna de generadores

        En dimensión 3 hay una única terna independiente.
        """
        coords = structure.coordinates
        residuals = []
        n = len(coords)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    wi, wj, wk = (Poly.var(coords[m]) for m in (i, j, k))
                    total = (
                        poisson_bracket(structure.fundamental(i, j), wk, structure)
                        + poisson_bracket(structure.fundamental(j, k), wi, structure)
                        + poisson_bracket(structure.fundamental(k, i), wj, structure)
                    )
                    residuals.append(total)
        logger.debug("Jacobi: %d ternas, %d no nulas", len(residuals), sum(not r.is_zero for r in residuals))
        return residuals

    @staticmethod
    def casimir(params: PLParams) -> RationalFunction:
        """C = [f(1+X²) + (X-1)(dY - aZ) + eY² + (bY + cZ)Z] / X"""
        a, b, c, d, e, f = params.values
        numerator = f * (1 + X**2) + (X - 1) * (d * Y - a * Z) + e * Y**2 + (b * Y + c * Z) * Z
        return RationalFunction.from_laurent(numerator * Poly.var("X", -1), "X")

    @staticmethod
    def local_casimir(params: PLParams) -> Poly:
        """e^{x}[f(1+u²) + d(u-1)y + ey² + az(1-u) + z(by+cz)] como Laurent en u"""
        a, b, c, d, e, f = params.values
        body = f * (1 + u**2) + d * (u - 1) * y + e * y**2 + a * z * (1 - u) + z * (b * y + c * z)
        return body * Poly.var("u", -1)

    @staticmethod
    def to_group_chart(structure: PoissonStructure) -> PoissonStructure:
        """
        Lleva una estructura local a (X,Y,Z): {X,·} = -u{x,·}, luego u -> X

        Raises:
            ChartMismatchException: Si la estructura no está en la carta local
        """
        if structure.chart != ChartTag.LOCAL:
            raise ChartMismatchException("to_group_chart requiere una estructura en carta local")
        rename = {"u": X, "y": Y, "z": Z}
        xy = (-u * structure.pair("x", "y")).substitute(rename)
        xz = (-u * structure.pair("x", "z")).substitute(rename)
        yz = structure.pair("y", "z").substitute(rename)
        return PoissonStructure(
            chart=ChartTag.GROUP,
            coordinates=CHART_COORDINATES[ChartTag.GROUP],
            table={(0, 1): xy, (0, 2): xz, (1, 2): yz},
            params=structure.params,
        )

    @staticmethod
    def linearize(structure: PoissonStructure) -> LinearBracketTable:
        """
        Parte lineal: u -> 1 - x, truncado a grado total 1 en (x, y, z)

        Raises:
            ChartMismatchException: Si la estructura no está en la carta local
        """
        if structure.chart != ChartTag.LOCAL:
            raise ChartMismatchException("linearize requiere una estructura en carta local")
        coords = ("x", "y", "z")

        def linear_part(p: Poly) -> Poly:
            return p.substitute({"u": 1 - x}).truncate(1, coords)

        return LinearBracketTable(
            xy=linear_part(structure.pair("x", "y")),
            xz=linear_part(structure.pair("x", "z")),
            yz=linear_part(structure.pair("y", "z")),
        )

    @staticmethod
    def finite_difference_linearization(
        structure: PoissonStructure,
        step: float = 1e-5,
    ) -> np.ndarray:
        """
        Jacobiano numérico en el origen de los corchetes locales

        Returns:
            Matriz 3x3: fila = par (xy, xz, yz), columna = derivada en (x, y, z)

        Raises:
            ValidationException: Si la estructura depende de parámetros simbólicos
        """
        coords = ("x", "y", "z")
        pairs = [structure.pair("x", "y"), structure.pair("x", "z"), structure.pair("y", "z")]
        for p in pairs:
            if set(p.variables) - {"x", "y", "z", "u"}:
                raise ValidationException("La verificación numérica requiere parámetros numéricos")

        def evaluate(p: Poly, point: np.ndarray) -> float:
            values = dict(zip(coords, point))
            values["u"] = float(np.exp(-point[0]))
            return p.evaluate_float(values)

        jacobian = np.zeros((3, 3))
        for row, p in enumerate(pairs):
            for col in range(3):
                delta = np.zeros(3)
                delta[col] = step
                jacobian[row, col] = (evaluate(p, delta) - evaluate(p, -delta)) / (2 * step)
        return jacobian

    @staticmethod
    def linear_table_matrix(table: LinearBracketTable) -> np.ndarray:
        """Coeficientes de la tabla lineal en el mismo formato que el jacobiano numérico"""
        constants = table.structure_constants()
        rows = []
        for key in (("x", "y"), ("x", "z"), ("y", "z")):
            rows.append([float(constants[key][w].constant_term()) for w in ("x", "y", "z")])
        return np.array(rows)

    @staticmethod
    def poisson_rank(structure: PoissonStructure, point: Mapping[str, Scalar]) -> int:
        """Rango exacto de la matriz de Poisson en un punto racional"""
        matrix = [
            [structure.fundamental(i, j).evaluate(point) for j in range(3)]
            for i in range(3)
        ]
        return _exact_rank(matrix)


def _exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Eliminación gaussiana sobre racionales"""
    matrix = [list(row) for row in rows]
    rank = 0
    cols = len(matrix[0]) if matrix else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(matrix)) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col] != 0:
                factor = matrix[r][col] / matrix[rank][col]
                matrix[r] = [vr - factor * vp for vr, vp in zip(matrix[r], matrix[rank])]
        rank += 1
    return rank


def casimir_commutes(params: PLParams) -> Tuple[Poly, Poly, Poly]:
    """Corchetes {C, X}, {C, Y}, {C, Z} (nulos para cualquier parámetro)"""
    structure = PLBracketService.build_structure(params)
    casimir = PLBracketService.casimir(params)
    return tuple(PLBracketService.bracket_poly(structure, casimir, w) for w in (X, Y, Z))
