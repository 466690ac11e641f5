"""
Servicios de clasificación: tabla de clases A-I, detección de cobordes
y bialgebra tangente
"""
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from app.core.exceptions import InvalidParametersException
from app.core.logging import get_logger
from app.modules.exact_core.models import ZERO, Poly
from app.modules.classify.models import (
    TIE_BREAK_ORDER,
    ClassLabel,
    ClassLetter,
    Classification,
    ClassificationStatus,
    TangentBialgebra,
)
from app.modules.pl_bracket.models import ChartTag, LinearBracketTable, PLParams
from app.modules.pl_bracket.services import PLBracketService
from app.modules.rmatrix.models import BOOK_ALGEBRA, LieAlgebra3, SkewBivector

logger = get_logger(__name__)

HALF = Fraction(1, 2)
Numeric = Tuple[Fraction, ...]
RowMatcher = Callable[[Numeric], Optional[ClassLabel]]


# ============================================
# Filas de la tabla
# ============================================

def _zero_except(values: Numeric, allowed: str) -> bool:
    return all(v == 0 for name, v in zip("abcdef", values) if name not in allowed)


def _match_a(v: Numeric) -> Optional[ClassLabel]:
    a, b, c, d, e, f = v
    if _zero_except(v, "f") and f != 0:
        return ClassLabel(ClassLetter.A)
    return None


def _match_b(v: Numeric) -> Optional[ClassLabel]:
    a, b, c, d, e, f = v
    # único otro caso coborde: b = c = e = 0 con a o d no nulos
    if _zero_except(v, "adf") and (a != 0 or d != 0):
        return ClassLabel(ClassLetter.B)
    return None


def _match_c(v: Numeric) -> Optional[ClassLabel]:
    if _zero_except(v, "b") and v[1] != 0:
        return ClassLabel(ClassLetter.C, lambda_=v[1])
    return None


def _match_d(v: Numeric) -> Optional[ClassLabel]:
    a, b, c, d, e, f = v
    if _zero_except(v, "bf") and b != 0 and f != 0:
        return ClassLabel(ClassLetter.D, lambda_=b, alpha=-f)
    return None


def _match_e(v: Numeric) -> Optional[ClassLabel]:
    a, b, c, d, e, f = v
    if _zero_except(v, "cef") and c != 0 and c == e and f != 0:
        return ClassLabel(ClassLetter.E, lambda_=2 * c, omega=-f)
    return None


def _match_f(v: Numeric) -> Optional[ClassLabel]:
    a, b, c, d, e, f = v
    if _zero_except(v, "ce") and c != 0 and c == e:
        return ClassLabel(ClassLetter.F, lambda_=2 * c)
    return None


def _match_g(v: Numeric) -> Optional[ClassLabel]:
    if _zero_except(v, "c") and v[2] == -HALF:
        return ClassLabel(ClassLetter.G)
    return None


def _match_h(v: Numeric) -> Optional[ClassLabel]:
    a, b, c, d, e, f = v
    if _zero_except(v, "cf") and c == -HALF and f != 0:
        return ClassLabel(ClassLetter.H, omega=-f)
    return None


def _match_i(v: Numeric) -> Optional[ClassLabel]:
    a, b, c, d, e, f = v
    if _zero_except(v, "cd") and c == -HALF and d != 0:
        return ClassLabel(ClassLetter.I, alpha=-d)
    return None


ROW_MATCHERS: Dict[ClassLetter, RowMatcher] = {
    ClassLetter.A: _match_a,
    ClassLetter.B: _match_b,
    ClassLetter.C: _match_c,
    ClassLetter.D: _match_d,
    ClassLetter.E: _match_e,
    ClassLetter.F: _match_f,
    ClassLetter.G: _match_g,
    ClassLetter.H: _match_h,
    ClassLetter.I: _match_i,
}

# patrones de soporte (parámetros no nulos) de cada fila; 'ce' exige c = e
ROW_SUPPORTS: Dict[ClassLetter, Tuple[str, ...]] = {
    ClassLetter.A: ("f",),
    ClassLetter.B: ("d", "a", "ad", "af", "df", "adf"),
    ClassLetter.C: ("b",),
    ClassLetter.D: ("bf",),
    ClassLetter.E: ("cef",),
    ClassLetter.F: ("ce",),
    ClassLetter.G: ("c",),
    ClassLetter.H: ("cf",),
    ClassLetter.I: ("cd",),
}


class ClassifyService:
    """Correspondencia de vectores (a..f) con las nueve clases"""

    @staticmethod
    def swap_e1_e2(params: PLParams) -> PLParams:
        """Automorfismo e1 <-> e2: (a,b,c,d,e,f) -> (d,-b,-e,a,-c,-f)"""
        a, b, c, d, e, f = params.values
        return PLParams(a=d, b=-b, c=-e, d=a, e=-c, f=-f)

    @staticmethod
    def is_coboundary(params: PLParams) -> Tuple[bool, Optional[SkewBivector]]:
        """
        Coborde si y solo si b = c = e = 0; r = (r12, r13, r23) = (-f, a, d)
        """
        a, b, c, d, e, f = params.values
        if b.is_zero and c.is_zero and e.is_zero:
            return True, SkewBivector(r12=-f, r13=a, r23=d)
        return False, None

    @staticmethod
    def instantiate_row(
        letter: ClassLetter,
        lambda_: Fraction = Fraction(1),
        alpha: Fraction = Fraction(1),
        omega: Fraction = Fraction(1),
    ) -> PLParams:
        """
        Vector de parámetros de una fila de la tabla

        Raises:
            InvalidParametersException: Si algún parámetro libre es nulo
        """
        lambda_, alpha, omega = Fraction(lambda_), Fraction(alpha), Fraction(omega)
        if 0 in (lambda_, alpha, omega):
            raise InvalidParametersException("λ, α y ω deben ser no nulos")
        half = -HALF
        rows = {
            ClassLetter.A: (0, 0, 0, 0, 0, -1),
            ClassLetter.B: (0, 0, 0, -1, 0, 0),
            ClassLetter.C: (0, lambda_, 0, 0, 0, 0),
            ClassLetter.D: (0, lambda_, 0, 0, 0, -alpha),
            ClassLetter.E: (0, 0, lambda_ / 2, 0, lambda_ / 2, -omega),
            ClassLetter.F: (0, 0, lambda_ / 2, 0, lambda_ / 2, 0),
            ClassLetter.G: (0, 0, half, 0, 0, 0),
            ClassLetter.H: (0, 0, half, 0, 0, -omega),
            ClassLetter.I: (0, 0, half, -alpha, 0, 0),
        }
        return PLParams.of(*rows[ClassLetter(letter)])

    @staticmethod
    def _match(values: Numeric) -> Optional[ClassLabel]:
        for letter in TIE_BREAK_ORDER:
            label = ROW_MATCHERS[letter](values)
            if label is not None:
                return label
        return None

    @staticmethod
    def row_family(params: PLParams) -> Optional[ClassLetter]:
        """
        Fila cuyo patrón de ceros (y empate c = e) sigue el vector,
        sin exigir los valores concretos; prueba también el vector intercambiado
        """
        for candidate in (params, ClassifyService.swap_e1_e2(params)):
            support = "".join(name for name, v in zip("abcdef", candidate.values) if not v.is_zero)
            for letter in TIE_BREAK_ORDER:
                if support not in ROW_SUPPORTS[letter]:
                    continue
                if "c" in support and "e" in support and candidate.c != candidate.e:
                    continue
                return letter
        return None

    @staticmethod
    def classify(params: PLParams) -> Classification:
        """
        Clasifica un vector numérico aplicando solo las normalizaciones
        documentadas (intercambio e1 <-> e2, reescalados de α y ω)

        Raises:
            ValidationException: Si los parámetros son simbólicos
        """
        values = params.numeric()
        coboundary, r_matrix = ClassifyService.is_coboundary(params)
        if params.is_zero:
            return Classification(
                status=ClassificationStatus.TRIVIAL,
                r_matrix=r_matrix,
                diagnostic="estructura nula (trivial)",
            )
        label = ClassifyService._match(values)
        normalizations: Tuple[str, ...] = ()
        if label is None:
            swapped = ClassifyService.swap_e1_e2(params).numeric()
            label = ClassifyService._match(swapped)
            normalizations = ("swap_e1_e2",) if label is not None else ()
        elif label.letter == ClassLetter.B and values[0] != 0 and values[3] == 0:
            normalizations = ("swap_e1_e2",)
        if label is None:
            family = ClassifyService.row_family(params)
            diagnostic = "fuera de las familias normalizadas"
            if family is not None:
                diagnostic += f"; sigue el patrón de la fila {family.value}"
            logger.info("Vector sin clasificar %s: %s", params, diagnostic)
            return Classification(
                status=ClassificationStatus.UNRESOLVED,
                r_matrix=r_matrix,
                diagnostic=diagnostic,
                row_family=family,
            )
        return Classification(
            status=ClassificationStatus.CLASSIFIED,
            label=label,
            normalizations=normalizations,
            r_matrix=r_matrix,
            row_family=label.letter,
        )

    # ============================================
    # Bialgebra tangente
    # ============================================

    @staticmethod
    def dual_algebra(table: LinearBracketTable) -> LieAlgebra3:
        """
        Álgebra dual en la base (y, z, x) <-> (e1, e2, e3)

        [w_i, w_j]* = {w_i, w_j}_0
        """
        constants = table.structure_constants()
        order = ("y", "z", "x")

        def coefficients(pair: Tuple[str, str], sign: int) -> Tuple[Poly, Poly, Poly]:
            return tuple(sign * constants[pair][w] for w in order)

        return LieAlgebra3({
            (0, 1): coefficients(("y", "z"), 1),
            (0, 2): coefficients(("x", "y"), -1),
            (1, 2): coefficients(("x", "z"), -1),
        }, name="dual")

    @staticmethod
    def cocommutator_from_dual(dual: LieAlgebra3) -> List[Dict[Tuple[int, int], Poly]]:
        """δ(e_k) = Σ_{i<j} C^k_ij e_i∧e_j"""
        return [
            {(i, j): dual.structure_constant(k, i, j) for i in range(3) for j in range(i + 1, 3)}
            for k in range(3)
        ]

    @staticmethod
    def cocycle_residuals(algebra: LieAlgebra3, delta: List[Dict[Tuple[int, int], Poly]]) -> List[Poly]:
        """
        δ([e_p, e_q]) - ad_{e_p} δ(e_q) + ad_{e_q} δ(e_p) para p < q
        """
        def ad_on_bivector(g: int, bivector: Dict[Tuple[int, int], Poly]) -> Dict[Tuple[int, int], Poly]:
            result: Dict[Tuple[int, int], Poly] = {}

            def add(i: int, j: int, value: Poly) -> None:
                if i == j or value.is_zero:
                    return
                key, sign = ((i, j), 1) if i < j else ((j, i), -1)
                result[key] = result.get(key, ZERO) + sign * value

            for (i, j), coeff in bivector.items():
                if coeff.is_zero:
                    continue
                for m in range(3):
                    add(m, j, coeff * algebra.structure_constant(m, g, i))
                    add(i, m, coeff * algebra.structure_constant(m, g, j))
            return result

        residuals: List[Poly] = []
        for p in range(3):
            for q in range(p + 1, 3):
                lhs: Dict[Tuple[int, int], Poly] = {}
                for k in range(3):
                    ck = algebra.structure_constant(k, p, q)
                    if ck.is_zero:
                        continue
                    for key, value in delta[k].items():
                        lhs[key] = lhs.get(key, ZERO) + ck * value
                right_q = ad_on_bivector(p, delta[q])
                right_p = ad_on_bivector(q, delta[p])
                for key in ((0, 1), (0, 2), (1, 2)):
                    residuals.append(
                        lhs.get(key, ZERO) - right_q.get(key, ZERO) + right_p.get(key, ZERO)
                    )
        return residuals

    @staticmethod
    def tangent_bialgebra(params: PLParams) -> TangentBialgebra:
        """r3(1) con el dual leído de la linealización y comprobación del cociclo"""
        structure = PLBracketService.build_structure(params, ChartTag.LOCAL)
        return ClassifyService.tangent_from_table(PLBracketService.linearize(structure))

    @staticmethod
    def tangent_from_table(table: LinearBracketTable) -> TangentBialgebra:
        dual = ClassifyService.dual_algebra(table)
        killing = dual.killing_form()
        determinant = _det3([[killing[i, j] for j in range(3)] for i in range(3)])
        delta = ClassifyService.cocommutator_from_dual(dual)
        return TangentBialgebra(
            algebra=BOOK_ALGEBRA,
            dual=dual,
            killing_determinant=determinant,
            dual_jacobi=dual.jacobi_residuals(),
            cocycle_residuals=ClassifyService.cocycle_residuals(BOOK_ALGEBRA, delta),
        )

    @staticmethod
    def dual_algebra_type(params: PLParams) -> str:
        return ClassifyService.tangent_bialgebra(params).dual_type


def _det3(m: List[List[Poly]]) -> Poly:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
