"""
Servicios del grupo libro cuántico: forma normal por reescritura, coproducto
como homomorfismo, Casimir cuántico, coacción sobre el plano cuántico y
límite clásico
"""
import itertools
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.config import settings
from app.core.exceptions import ValidationException
from app.core.logging import get_logger
from app.core.schemas import CheckResult
from app.modules.exact_core.models import Poly
from app.modules.hopf.models import MatrixLayout
from app.modules.pl_bracket.models import PLParams
from app.modules.pl_bracket.services import PLBracketService
from app.modules.qalgebra.models import (
    KAPPA,
    NCMonomial,
    NCPoly,
    NCTensorPoly,
    NCWord,
    RewriteStrategy,
    as_word,
    generators,
    kappa_power,
    letter_key,
    swap_weight,
)

logger = get_logger(__name__)

X, Y, Z = generators("X", "Y", "Z")
K = NCPoly.kappa(1)
K_INV = NCPoly.kappa(-1)

RELATION_NAMES: Tuple[str, ...] = ("XY", "XZ", "YZ")
CONFLUENCE_ALPHABET: Tuple[Tuple[str, int], ...] = (("X", 1), ("X", -1), ("Y", 1), ("Z", 1))
_TOKEN = re.compile(r"^([A-Za-z]+\d*)(?:\^(-?\d+))?$")

Expression = Union[NCPoly, str, Sequence, Iterable[Tuple[object, Sequence]]]


def q_relations(x: NCPoly, y: NCPoly, z: NCPoly) -> List[NCPoly]:
    """X̂Ŷ − k⁻¹ŶX̂, X̂Ẑ − kẐX̂, ŶẐ − kẐŶ evaluadas en (x, y, z)"""
    return [x * y - K_INV * y * x, x * z - K * z * x, y * z - K * z * y]


def _first_nonzero(residuals: Sequence[NCPoly]) -> Optional[str]:
    for residual in residuals:
        if not residual.is_zero:
            return str(residual)
    return None


def residual_check(name: str, residuals: Sequence[NCPoly], detail: str = "") -> CheckResult:
    """PASS si todos los residuos son el polinomio nulo en k"""
    first = _first_nonzero(residuals)
    return CheckResult(
        name=name,
        passed=first is None,
        detail=detail or f"{len(residuals)} residuos",
        first_nonzero=first,
        method="symbolic",
    )


class QAlgebraService:
    """Álgebra de Hopf no conmutativa del grupo libro cuántico"""

    # ============================================
    # Reescritura
    # ============================================

    @staticmethod
    def parse_word(text: str) -> NCWord:
        """
        'Z Y X^-1' o 'Z*Y*X^-1' -> (('Z',1), ('Y',1), ('X',-1))

        Raises:
            ValidationException: Si algún símbolo no es un generador válido
        """
        letters = []
        for token in re.split(r"[\s*]+", text.strip()):
            if not token or token == "1":
                continue
            match = _TOKEN.match(token)
            if not match:
                raise ValidationException(f"Símbolo no reconocido en la palabra: '{token}'")
            letters.append((match.group(1), int(match.group(2) or 1)))
        return as_word(letters)

    @staticmethod
    def rewrite(
        word: Sequence,
        strategy: RewriteStrategy = RewriteStrategy.LEFTMOST,
        rng: Optional[np.random.Generator] = None,
    ) -> Tuple[int, NCMonomial]:
        """
        Lleva una palabra a orden normal con intercambios de letras adyacentes

        Reglas: h·g -> k^w g·h si g precede a h en el orden normal, y
        g^a·g^b -> g^(a+b) (X̂X̂⁻¹ -> 1).

        Returns:
            (exponente total de k, monomio normal)
        """
        letters: List[Tuple[str, int]] = list(as_word(word))
        rng = rng if rng is not None else np.random.default_rng(settings.SEED)
        shift = 0
        while True:
            candidates = [
                i for i in range(len(letters) - 1)
                if letters[i][0] == letters[i + 1][0] or letter_key(letters[i][0]) > letter_key(letters[i + 1][0])
            ]
            if not candidates:
                break
            if strategy == RewriteStrategy.LEFTMOST:
                i = candidates[0]
            elif strategy == RewriteStrategy.RIGHTMOST:
                i = candidates[-1]
            else:
                i = int(rng.choice(candidates))
            (h, h_exp), (g, g_exp) = letters[i], letters[i + 1]
            if h == g:
                merged = [(h, h_exp + g_exp)] if h_exp + g_exp else []
                letters[i:i + 2] = merged
            else:
                shift += swap_weight(g, h) * g_exp * h_exp
                letters[i:i + 2] = [(g, g_exp), (h, h_exp)]
        return shift, tuple(letters)

    @staticmethod
    def nc_normal_form(
        expression: Expression,
        strategy: RewriteStrategy = RewriteStrategy.LEFTMOST,
        rng: Optional[np.random.Generator] = None,
    ) -> NCPoly:
        """
        Forma normal de una palabra, de una cadena o de una suma [(coef, palabra)]

        Un NCPoly ya está en forma normal y se devuelve tal cual.
        """
        if isinstance(expression, NCPoly):
            return expression
        if isinstance(expression, str):
            expression = QAlgebraService.parse_word(expression)
        items = list(expression)
        if items and isinstance(items[0], tuple) and len(items[0]) == 2 and not isinstance(items[0][0], str):
            terms = items
        else:
            terms = [(1, items)]
        result = NCPoly()
        for coeff, word in terms:
            if isinstance(word, str):
                word = QAlgebraService.parse_word(word)
            shift, mono = QAlgebraService.rewrite(word, strategy, rng)
            result = result + NCPoly({mono: Poly.coerce(coeff) * kappa_power(shift)})
        return result

    @staticmethod
    def word_product(word: Sequence) -> NCPoly:
        """Producto letra a letra con la multiplicación de NCPoly"""
        result = NCPoly.const(1)
        for name, exponent in as_word(word):
            result = result * NCPoly.gen(name, exponent)
        return result

    @staticmethod
    def rewriting_confluence(
        max_length: int = 6,
        random_words: int = 1000,
        rng: Optional[np.random.Generator] = None,
    ) -> CheckResult:
        """
        Independencia del orden de aplicación de las reglas

        Exhaustivo sobre {X̂, X̂⁻¹, Ŷ, Ẑ} hasta `max_length` letras; además
        `random_words` palabras más largas con elección aleatoria de regla.
        Todas las estrategias deben coincidir con el producto de NCPoly.
        """
        rng = rng if rng is not None else np.random.default_rng(settings.SEED)
        checked = 0
        for length in range(max_length + 1):
            for word in itertools.product(CONFLUENCE_ALPHABET, repeat=length):
                reference = QAlgebraService.rewrite(word, RewriteStrategy.LEFTMOST)
                if (
                    QAlgebraService.rewrite(word, RewriteStrategy.RIGHTMOST) != reference
                    or QAlgebraService.nc_normal_form(word) != QAlgebraService.word_product(word)
                ):
                    return _confluence_failure(word, checked)
                checked += 1
        for _ in range(random_words):
            length = int(rng.integers(max_length + 1, max_length + 7))
            word = [CONFLUENCE_ALPHABET[i] for i in rng.integers(0, len(CONFLUENCE_ALPHABET), size=length)]
            left = QAlgebraService.rewrite(word, RewriteStrategy.LEFTMOST)
            if QAlgebraService.rewrite(word, RewriteStrategy.RANDOM, rng) != left:
                return _confluence_failure(tuple(word), checked)
            checked += 1
        logger.info("Confluencia verificada en %d palabras", checked)
        return CheckResult(
            name="qalgebra/confluence",
            passed=True,
            detail=f"{checked} palabras, longitud exhaustiva <= {max_length}",
            method="symbolic",
        )

    # ============================================
    # Coproducto
    # ============================================

    @staticmethod
    def coproduct_images(corrupted: bool = False) -> Dict[str, NCTensorPoly]:
        """
        Δ(X̂) = X̂⊗X̂, Δ(Ŷ) = X̂⊗Ŷ + Ŷ⊗1, Δ(Ẑ) = X̂⊗Ẑ + Ẑ⊗1

        corrupted=True usa Δ(Ŷ) = Ŷ⊗X̂ + 1⊗Ŷ (control negativo).
        """
        one = NCPoly.const(1)
        images = {
            "X": NCTensorPoly.tensor(X, X),
            "Y": NCTensorPoly.tensor(X, Y) + NCTensorPoly.tensor(Y, one),
            "Z": NCTensorPoly.tensor(X, Z) + NCTensorPoly.tensor(Z, one),
        }
        if corrupted:
            images["Y"] = NCTensorPoly.tensor(Y, X) + NCTensorPoly.tensor(one, Y)
        return images

    @staticmethod
    def coproduct(p: NCPoly, corrupted: bool = False) -> NCTensorPoly:
        """Extensión multiplicativa de Δ a un NCPoly en orden normal"""
        images = QAlgebraService.coproduct_images(corrupted)
        result = NCTensorPoly()
        for mono, coeff in p.items():
            term = NCTensorPoly.const(coeff)
            for name, exponent in mono:
                if name not in images:
                    raise ValidationException(f"Δ solo está definido sobre X̂, Ŷ, Ẑ: '{name}'")
                term = term * images[name] ** exponent
            result = result + term
        return result

    @staticmethod
    def q_homomorphism_residual(corrupted: bool = False) -> List[NCTensorPoly]:
        """Relaciones q evaluadas en (Δ(X̂), Δ(Ŷ), Δ(Ẑ)), en el orden XY, XZ, YZ"""
        images = QAlgebraService.coproduct_images(corrupted)
        return q_relations(images["X"], images["Y"], images["Z"])

    @staticmethod
    def relations_encoded() -> List[NCPoly]:
        """Las relaciones sobre los propios generadores se anulan en forma normal"""
        return q_relations(X, Y, Z)

    # ============================================
    # Casimir cuántico
    # ============================================

    @staticmethod
    def quantum_casimir() -> NCPoly:
        """Ĉ = X̂⁻¹ŶẐ"""
        return NCPoly.gen("X", -1) * Y * Z

    @staticmethod
    def q_casimir_centrality() -> List[NCPoly]:
        """[Ĉ, X̂], [Ĉ, Ŷ], [Ĉ, Ẑ] en forma normal"""
        casimir = QAlgebraService.quantum_casimir()
        return [casimir.commutator(g) for g in (X, Y, Z)]

    # ============================================
    # Matriz cuántica y coacción
    # ============================================

    @staticmethod
    def quantum_matrix(layout: MatrixLayout = MatrixLayout.QUANTUM) -> List[List[NCPoly]]:
        """M̂ = [[X̂,0,top],[0,X̂,middle],[0,0,1]]; quantum: top = Ẑ, classical: top = Ŷ"""
        top, middle = (Z, Y) if layout == MatrixLayout.QUANTUM else (Y, Z)
        zero, one = NCPoly(), NCPoly.const(1)
        return [[X, zero, top], [zero, X, middle], [zero, zero, one]]

    @staticmethod
    def quantum_matrix_coproduct_check(layout: MatrixLayout = MatrixLayout.QUANTUM) -> List[NCTensorPoly]:
        """Δ(M̂ᵢⱼ) − Σₖ M̂ᵢₖ ⊗ M̂ₖⱼ para las nueve entradas"""
        m = QAlgebraService.quantum_matrix(layout)
        residuals = []
        for i in range(3):
            for j in range(3):
                expected = NCTensorPoly()
                for k in range(3):
                    expected = expected + NCTensorPoly.tensor(m[i][k], m[k][j])
                residuals.append(QAlgebraService.coproduct(m[i][j]) - expected)
        return residuals

    @staticmethod
    def coaction(layout: MatrixLayout = MatrixLayout.QUANTUM) -> Tuple[NCTensorPoly, NCTensorPoly]:
        """(ŷ', ẑ') = M̂ ⊗ (ŷ, ẑ, 1); el plano vive en el segundo factor"""
        m = QAlgebraService.quantum_matrix(layout)
        plane = (NCPoly.gen("y"), NCPoly.gen("z"), NCPoly.const(1))
        images = []
        for row in m[:2]:
            image = NCTensorPoly()
            for entry, coordinate in zip(row, plane):
                image = image + NCTensorPoly.tensor(entry, coordinate)
            images.append(image)
        return images[0], images[1]

    @staticmethod
    def coaction_covariance(layout: MatrixLayout = MatrixLayout.QUANTUM) -> NCTensorPoly:
        """ŷ'ẑ' − k ẑ'ŷ' usando ŷẑ = k ẑŷ en el plano"""
        y_image, z_image = QAlgebraService.coaction(layout)
        return y_image * z_image - K * z_image * y_image

    @staticmethod
    def covariant_layouts() -> Dict[str, bool]:
        return {layout.value: QAlgebraService.coaction_covariance(layout).is_zero for layout in MatrixLayout}

    # ============================================
    # Límite clásico
    # ============================================

    @staticmethod
    def classical_expansion(p: NCPoly) -> Tuple[Poly, Poly]:
        """
        Desarrollo con k = 1 + bη, η² = 0: (orden 0, coeficiente de η)

        k^n = 1 + n·b·η; los monomios se leen como conmutativos.

        Raises:
            ValidationException: Si un coeficiente depende de algo distinto de k
        """
        b = Poly.var("b")
        order0, order1 = Poly(), Poly()
        for mono, coeff in p.items():
            commutative = Poly({mono: 1})
            value, slope = 0, 0
            for kmono, c in coeff.items():
                exponents = dict(kmono)
                if set(exponents) - {KAPPA}:
                    raise ValidationException(f"Coeficiente fuera de Q[k, k⁻¹]: {coeff}")
                n = exponents.get(KAPPA, 0)
                value += c
                slope += n * c
            order0 = order0 + commutative * value
            order1 = order1 + commutative * b * slope
        return order0, order1

    @staticmethod
    def classical_limit(first: NCPoly, second: NCPoly) -> Poly:
        """
        lim (âb̂ − b̂â)/η

        Raises:
            ValidationException: Si el conmutador no se anula a orden 0
        """
        order0, order1 = QAlgebraService.classical_expansion(first.commutator(second))
        if not order0.is_zero:
            raise ValidationException(f"El conmutador no se anula en k = 1: {order0}")
        return order1

    @staticmethod
    def classical_limit_check() -> List[CheckResult]:
        """Los conmutadores reproducen {X,Y} = −bXY, {X,Z} = bXZ, {Y,Z} = bYZ"""
        structure = PLBracketService.build_structure(PLParams.of(b="sym"))
        results = []
        for (v, g), (w, h) in itertools.combinations(zip("XYZ", (X, Y, Z)), 2):
            limit = QAlgebraService.classical_limit(g, h)
            residual = limit - structure.pair(v, w)
            results.append(CheckResult(
                name=f"qalgebra/classical-limit/{v}{w}",
                passed=residual.is_zero,
                detail=f"{{{v},{w}}} = {limit}",
                first_nonzero=None if residual.is_zero else str(residual),
            ))
        return results

    # ============================================
    # Suite
    # ============================================

    @staticmethod
    def run_checks(
        corrupt: Optional[str] = None,
        max_length: int = 6,
        rng: Optional[np.random.Generator] = None,
    ) -> List[CheckResult]:
        """
        Identidades cuánticas como lista de PASS/FAIL

        Args:
            corrupt: 'coproduct' sustituye Δ(Ŷ) por Ŷ⊗X̂ + 1⊗Ŷ
            max_length: Longitud exhaustiva de la prueba de confluencia
        """
        if corrupt not in (None, "coproduct"):
            raise ValidationException(f"Corrupción desconocida para qalgebra: '{corrupt}'")
        layouts = QAlgebraService.covariant_layouts()
        passing = [name for name, ok in layouts.items() if ok]
        quantum = QAlgebraService.coaction_covariance(MatrixLayout.QUANTUM)
        classical = QAlgebraService.coaction_covariance(MatrixLayout.CLASSICAL)

        checks = [
            residual_check("qalgebra/relations", QAlgebraService.relations_encoded()),
            QAlgebraService.rewriting_confluence(max_length, rng=rng),
            residual_check(
                "qalgebra/coproduct-homomorphism",
                QAlgebraService.q_homomorphism_residual(corrupted=corrupt == "coproduct"),
            ),
            residual_check("qalgebra/casimir-centrality", QAlgebraService.q_casimir_centrality()),
            CheckResult(
                name="qalgebra/coaction",
                passed=bool(passing),
                detail="ordenación covariante: " + (", ".join(passing) or "ninguna"),
                first_nonzero=None if passing else str(quantum),
            ),
        ]
        for layout in MatrixLayout:
            checks.append(residual_check(
                f"qalgebra/matrix-coproduct/{layout.value}",
                QAlgebraService.quantum_matrix_coproduct_check(layout),
            ))
        checks.extend(QAlgebraService.classical_limit_check())
        for layout, residual in ((MatrixLayout.QUANTUM, quantum), (MatrixLayout.CLASSICAL, classical)):
            if not residual.is_zero:
                logger.info("La coacción con ordenación %s no es covariante: %s", layout.value, residual)
        return checks


def _confluence_failure(word: Tuple, checked: int) -> CheckResult:
    logger.warning("Reescritura no confluente en la palabra %s", word)
    return CheckResult(
        name="qalgebra/confluence",
        passed=False,
        detail=f"{checked} palabras verificadas antes del fallo",
        first_nonzero=" ".join(f"{n}^{e}" if e != 1 else n for n, e in word),
        method="symbolic",
    )
