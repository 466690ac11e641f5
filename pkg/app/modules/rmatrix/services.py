"""
Servicios de r-matrices: Schouten y mCYBE, corchete de Sklyanin, forma r̂
de la familia completa y ecuaciones de Yang-Baxter clásica y cuántica
"""
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.logging import get_logger
from app.modules.exact_core.models import ONE, ZERO, Poly, PolyMatrix
from app.modules.exact_core.services import SamplingService
from app.modules.hopf.models import MatrixLayout, group_element
from app.modules.pl_bracket.models import (
    CHART_AUXILIARY,
    CHART_COORDINATES,
    ChartTag,
    PLParams,
    PoissonStructure,
)
from app.modules.pl_bracket.services import PLBracketService
from app.modules.rmatrix.models import (
    BOOK_ALGEBRA,
    LieAlgebra3,
    SkewBivector,
    Trivector,
    VectorField,
)

logger = get_logger(__name__)

# campos invariantes: e1, e2, e3 actúan como ∂_y, ∂_z, ∂_x
y, z, u = (Poly.var(name) for name in ("y", "z", "u"))


LEFT_FIELDS = (
    VectorField({"y": u}, "L1"),
    VectorField({"z": u}, "L2"),
    VectorField({"x": ONE}, "L3"),
)
RIGHT_FIELDS = (
    VectorField({"y": ONE}, "R1"),
    VectorField({"z": ONE}, "R2"),
    VectorField({"x": ONE, "y": -y, "z": -z}, "R3"),
)


def _unit(rows: int, i: int, j: int, value: int = 1) -> PolyMatrix:
    return PolyMatrix.from_sparse(rows, rows, {(i, j): value})


def fundamental_representation(layout: MatrixLayout = MatrixLayout.CLASSICAL) -> Tuple[PolyMatrix, ...]:
    """
    Matrices 3x3 de e1, e2, e3 compatibles con la disposición del elemento de grupo
    """
    e3 = PolyMatrix.from_sparse(3, 3, {(0, 0): -1, (1, 1): -1})
    if layout == MatrixLayout.CLASSICAL:
        return _unit(3, 0, 2), _unit(3, 1, 2), e3
    return _unit(3, 1, 2), _unit(3, 0, 2), e3


def _pad(matrix: PolyMatrix, position: str) -> PolyMatrix:
    """
    Inmersión de un operador 9x9 en el producto triple (27x27)

    position: '12', '23' o '13'
    """
    identity = PolyMatrix.identity(3)
    if position == "12":
        return matrix.kron(identity)
    if position == "23":
        return identity.kron(matrix)
    entries: Dict[Tuple[int, int], Poly] = {}
    for row, col, value in matrix.nonzero_entries():
        i, k = divmod(row, 3)
        l, n = divmod(col, 3)
        for j in range(3):
            entries[(9 * i + 3 * j + k, 9 * l + 3 * j + n)] = value
    return PolyMatrix.from_sparse(27, 27, entries)


class RMatrixService:
    """Capa de r-matrices sobre el álgebra libro r3(1)"""

    # ============================================
    # Álgebra de Lie: Schouten y mCYBE
    # ============================================

    @staticmethod
    def schouten_bracket(r: SkewBivector, algebra: LieAlgebra3 = BOOK_ALGEBRA) -> Trivector:
        """
        [[r,r]] = [r12,r13] + [r12,r23] + [r13,r23] leído en la componente e1⊗e2⊗e3

        Para r antisimétrico el resultado es totalmente antisimétrico.
        """
        i, j, k = 0, 1, 2
        c = algebra.structure_constant
        total = ZERO
        for a in range(3):
            for b in range(3):
                rab = r.component(a, b)
                if rab.is_zero:
                    continue
                for cc in range(3):
                    for d in range(3):
                        rcd = r.component(cc, d)
                        if rcd.is_zero:
                            continue
                        weight = ZERO
                        # [e_a, e_c] ⊗ e_b ⊗ e_d
                        if b == j and d == k:
                            weight = weight + c(i, a, cc)
                        # e_a ⊗ [e_b, e_c] ⊗ e_d
                        if a == i and d == k:
                            weight = weight + c(j, b, cc)
                        # e_a ⊗ e_c ⊗ [e_b, e_d]
                        if a == i and cc == j:
                            weight = weight + c(k, b, d)
                        if not weight.is_zero:
                            total = total + weight * rab * rcd
        return Trivector(total)

    @staticmethod
    def mcybe_residual(t: Trivector, algebra: LieAlgebra3 = BOOK_ALGEBRA) -> List[Poly]:
        """
        Componente e1∧e2∧e3 de la acción adjunta de cada generador sobre t

        Returns:
            Lista [ad_e1 t, ad_e2 t, ad_e3 t]; todo cero si t es ad-invariante
        """
        residuals = []
        for g in range(3):
            total = ZERO
            for slot in range(3):
                index = [0, 1, 2]
                for l in range(3):
                    coeff = algebra.structure_constant(index[slot], g, l)
                    if coeff.is_zero:
                        continue
                    moved = list(index)
                    moved[slot] = l
                    total = total + coeff * t.component(*moved)
            residuals.append(total)
        return residuals

    # ============================================
    # Campos invariantes y corchete de Sklyanin
    # ============================================

    @staticmethod
    def invariant_fields_check() -> Dict[str, bool]:
        """
        Los campos izquierdos cierran r3(1), los derechos con signo opuesto,
        y todo campo izquierdo conmuta con todo campo derecho
        """
        L1, L2, L3 = LEFT_FIELDS
        R1, R2, R3 = RIGHT_FIELDS
        zero = VectorField({})
        return {
            "left_closes": L1.lie_bracket(L3) == L1 and L2.lie_bracket(L3) == L2 and L1.lie_bracket(L2) == zero,
            "right_closes": R1.lie_bracket(R3) == -R1 and R2.lie_bracket(R3) == -R2 and R1.lie_bracket(R2) == zero,
            "left_right_commute": all(Lf.lie_bracket(Rf) == zero for Lf in LEFT_FIELDS for Rf in RIGHT_FIELDS),
        }

    @staticmethod
    def sklyanin_pair(r: SkewBivector, f: Poly, g: Poly) -> Poly:
        """{f,g} = r^{αβ}(L_α f L_β g - R_α f R_β g)"""
        left_f = [field(f) for field in LEFT_FIELDS]
        left_g = [field(g) for field in LEFT_FIELDS]
        right_f = [field(f) for field in RIGHT_FIELDS]
        right_g = [field(g) for field in RIGHT_FIELDS]
        total = ZERO
        for alpha in range(3):
            for beta in range(3):
                coeff = r.component(alpha, beta)
                if coeff.is_zero:
                    continue
                total = total + coeff * (left_f[alpha] * left_g[beta] - right_f[alpha] * right_g[beta])
        return total

    @staticmethod
    def sklyanin_bracket(r: SkewBivector) -> PoissonStructure:
        """Estructura coborde en la carta local (x, y, z), u = e^{-x}"""
        coords = CHART_COORDINATES[ChartTag.LOCAL]
        table = {}
        for i in range(3):
            for j in range(i + 1, 3):
                table[(i, j)] = RMatrixService.sklyanin_pair(r, Poly.var(coords[i]), Poly.var(coords[j]))
        return PoissonStructure(
            chart=ChartTag.LOCAL,
            coordinates=coords,
            table=table,
            params=RMatrixService.coboundary_params(r),
            auxiliary=CHART_AUXILIARY[ChartTag.LOCAL],
        )

    @staticmethod
    def coboundary_params(r: SkewBivector) -> PLParams:
        """a = r13, b = c = e = 0, d = r23, f = -r12"""
        return PLParams(a=r.r13, d=r.r23, f=-r.r12)

    @staticmethod
    def layout_identification(r: SkewBivector, layout: MatrixLayout) -> PLParams:
        """
        Parámetros cuyo r̂ coincide con r en la representación fundamental

        quantum: a = r13, d = r23, f = -r12
        classical: a = r23, d = r13, f = r12
        """
        if layout == MatrixLayout.QUANTUM:
            return RMatrixService.coboundary_params(r)
        return PLParams(a=r.r23, d=r.r13, f=r.r12)

    @staticmethod
    def cocommutator(r: SkewBivector, algebra: LieAlgebra3 = BOOK_ALGEBRA) -> List[Dict[Tuple[int, int], Poly]]:
        """
        δ(e_k) = [1⊗e_k + e_k⊗1, r] como coeficientes de e_i∧e_j (i < j)
        """
        result = []
        for k in range(3):
            tensor: Dict[Tuple[int, int], Poly] = {}
            for a in range(3):
                for b in range(3):
                    rab = r.component(a, b)
                    if rab.is_zero:
                        continue
                    for m in range(3):
                        # [e_k, e_a] ⊗ e_b
                        ca = algebra.structure_constant(m, k, a)
                        if not ca.is_zero:
                            tensor[(m, b)] = tensor.get((m, b), ZERO) + ca * rab
                        # e_a ⊗ [e_k, e_b]
                        cb = algebra.structure_constant(m, k, b)
                        if not cb.is_zero:
                            tensor[(a, m)] = tensor.get((a, m), ZERO) + cb * rab
            result.append({(i, j): tensor.get((i, j), ZERO) for i in range(3) for j in range(i + 1, 3)})
        return result

    # ============================================
    # Forma r̂ de la familia completa
    # ============================================

    @staticmethod
    def rhat_matrix(params: PLParams) -> PolyMatrix:
        """La matriz 9x9 r̂, lineal en a..f"""
        a, b, c, d, e, f = params.values
        return PolyMatrix([
            [0, -2 * e, d, 2 * e, 0, 0, -d, 0, 0],
            [c, b, a, 0, e, 0, 0, -d, f],
            [0, 0, 0, 0, 0, e, 0, -e, 0],
            [-c, b, 0, -2 * b, -e, d, -a, 0, -f],
            [0, -2 * c, 0, 2 * c, 0, a, 0, -a, 0],
            [0, 0, -c, 0, 0, -b, c, b, 0],
            [0, 0, b, 0, 0, e, -b, -e, 0],
            [0, 0, -c, 0, 0, 0, c, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0, 0],
        ])

    @staticmethod
    def quantum_r_matrix(params: PLParams) -> PolyMatrix:
        """R triangular superior con entradas a, d, f (I + r̂ en el estrato b = c = e = 0)"""
        a, _, _, d, _, f = params.values
        return PolyMatrix([
            [1, 0, d, 0, 0, 0, -d, 0, 0],
            [0, 1, a, 0, 0, 0, 0, -d, f],
            [0, 0, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, d, -a, 0, -f],
            [0, 0, 0, 0, 1, a, 0, -a, 0],
            [0, 0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 0, 0, 0, 1],
        ])

    @staticmethod
    def rhat_from_r_matrix(r: SkewBivector, layout: MatrixLayout = MatrixLayout.QUANTUM) -> PolyMatrix:
        """Σ_{α<β} r^{αβ}(ρ(e_α)⊗ρ(e_β) - ρ(e_β)⊗ρ(e_α))"""
        rho = fundamental_representation(layout)
        result = PolyMatrix.zeros(9)
        for alpha in range(3):
            for beta in range(alpha + 1, 3):
                coeff = r.component(alpha, beta)
                if coeff.is_zero:
                    continue
                term = rho[alpha].kron(rho[beta]) - rho[beta].kron(rho[alpha])
                result = result + term.scale(coeff)
        return result

    @staticmethod
    def bracket_tensor(structure: PoissonStructure, layout: MatrixLayout) -> PolyMatrix:
        """{M ⊗, M}: entrada ((i,j),(k,l)) = {M_ik, M_jl}"""
        m = group_element(0, layout)
        entries = {}
        for i in range(3):
            for k in range(3):
                if m[i, k].is_constant:
                    continue
                for j in range(3):
                    for l in range(3):
                        if m[j, l].is_constant:
                            continue
                        value = PLBracketService.bracket_poly(structure, m[i, k], m[j, l])
                        if not value.is_zero:
                            entries[(3 * i + j, 3 * k + l)] = value
        return PolyMatrix.from_sparse(9, 9, entries)

    @staticmethod
    def rhat_form_residual(
        params: PLParams,
        layout: MatrixLayout = MatrixLayout.QUANTUM,
        rhat: Optional[PolyMatrix] = None,
    ) -> PolyMatrix:
        """
        {M ⊗, M} - [M ⊗ M, r̂]

        Args:
            params: Parámetros de la estructura
            layout: Disposición de Y, Z en la matriz del elemento de grupo
            rhat: r̂ alternativo (controles negativos); por defecto el impreso
        """
        structure = PLBracketService.build_structure(params)
        m = group_element(0, layout)
        tensor = m.kron(m)
        rhat = rhat if rhat is not None else RMatrixService.rhat_matrix(params)
        return RMatrixService.bracket_tensor(structure, layout) - tensor.commutator(rhat)

    @staticmethod
    def rhat_layout_report(params: PLParams) -> Dict[str, bool]:
        """Qué disposición de la matriz reproduce la identidad r̂"""
        return {
            layout.value: RMatrixService.rhat_form_residual(params, layout).is_zero
            for layout in MatrixLayout
        }

    # ============================================
    # Yang-Baxter clásica y cuántica
    # ============================================

    @staticmethod
    def cybe_matrix(rhat: PolyMatrix) -> PolyMatrix:
        """[r12,r13] + [r12,r23] + [r13,r23] en 27x27"""
        r12, r13, r23 = (_pad(rhat, position) for position in ("12", "13", "23"))
        return r12.commutator(r13) + r12.commutator(r23) + r13.commutator(r23)

    @staticmethod
    def qybe_matrix(r_matrix: PolyMatrix) -> PolyMatrix:
        """R12 R13 R23 - R23 R13 R12"""
        r12, r13, r23 = (_pad(r_matrix, position) for position in ("12", "13", "23"))
        return r12 @ r13 @ r23 - r23 @ r13 @ r12

    @staticmethod
    def _within_budget(matrix: PolyMatrix) -> bool:
        terms = matrix.term_count()
        return terms * terms <= settings.SYMBOLIC_TERM_BUDGET

    @staticmethod
    def cybe_residual(params: PLParams, rng: Optional[np.random.Generator] = None) -> Tuple[bool, str]:
        """
        Residuo CYBE de r̂(params)

        Simbólico si cabe en el presupuesto de términos; si no, evaluación exacta
        en RANDOM_EVALUATION_POINTS puntos racionales.

        Returns:
            (es_cero, método)
        """
        rhat = RMatrixService.rhat_matrix(params)
        if RMatrixService._within_budget(rhat.kron(PolyMatrix.identity(3))):
            return RMatrixService.cybe_matrix(rhat).is_zero, "symbolic"
        return _vanishes_on_random_points(rhat, RMatrixService.cybe_matrix, rng), "random-points"

    @staticmethod
    def qybe_residual(params: PLParams, rng: Optional[np.random.Generator] = None) -> Tuple[bool, str]:
        """Residuo QYBE de R (entradas a, d, f)"""
        r_matrix = RMatrixService.quantum_r_matrix(params)
        if RMatrixService._within_budget(r_matrix.kron(PolyMatrix.identity(3))):
            return RMatrixService.qybe_matrix(r_matrix).is_zero, "symbolic"
        return _vanishes_on_random_points(r_matrix, RMatrixService.qybe_matrix, rng), "random-points"


def _vanishes_on_random_points(matrix: PolyMatrix, build, rng: Optional[np.random.Generator]) -> bool:
    rng = rng if rng is not None else SamplingService.make_rng()
    variables = matrix.variables()
    for _ in range(settings.RANDOM_EVALUATION_POINTS):
        point = SamplingService.random_assignment(variables, rng)
        if not build(matrix.evaluate(point)).is_zero:
            logger.info("Residuo no nulo en el punto %s", point)
            return False
    return True


def evaluate_at_random_point(matrix: PolyMatrix, rng: np.random.Generator) -> PolyMatrix:
    """Evalúa todas las variables de la matriz en un punto racional aleatorio"""
    return matrix.evaluate(SamplingService.random_assignment(matrix.variables(), rng))


def nonzero_summary(matrix: PolyMatrix) -> Optional[str]:
    """Primera entrada no nula como '(fila,col): valor' en numeración 1-based"""
    entry = matrix.first_nonzero()
    if entry is None:
        return None
    i, j, value = entry
    return f"({i + 1},{j + 1}): {value}"
