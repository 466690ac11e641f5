"""
Servicios del núcleo exacto: aritmética de anillo, cálculo formal y
evaluación aleatoria exacta (estilo Schwartz-Zippel)
"""
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

import numpy as np

from app.core.config import settings
from app.modules.exact_core.models import (
    Poly,
    PolyMatrix,
    Scalar,
    is_invertible,
)


class ExactService:
    """Operaciones puras sobre Poly y PolyMatrix"""

    # ============================================
    # Polinomios
    # ============================================

    @staticmethod
    def poly_add(p: Poly, q: Poly) -> Poly:
        return p + q

    @staticmethod
    def poly_mul(p: Poly, q: Poly) -> Poly:
        return p * q

    @staticmethod
    def poly_neg(p: Poly) -> Poly:
        return -p

    @staticmethod
    def poly_pow(p: Poly, n: int) -> Poly:
        """
        Potencia entera

        Raises:
            NonInvertibleVariableException: Si n < 0 y p no es monomio invertible
        """
        return p ** n

    @staticmethod
    def poly_partial(p: Poly, variable: str) -> Poly:
        """Derivada parcial; para x aplica la regla de la cadena sobre u = e^{-x}"""
        return p.partial(variable)

    @staticmethod
    def poly_eval(p: Poly, assignment: Mapping[str, Scalar]) -> Fraction:
        return p.evaluate(assignment)

    @staticmethod
    def poly_substitute(p: Poly, mapping: Mapping[str, Union[Poly, Scalar]]) -> Poly:
        return p.substitute(mapping)

    @staticmethod
    def total_degree(p: Poly, variables: Optional[Iterable[str]] = None) -> int:
        return p.total_degree(variables)

    # ============================================
    # Matrices
    # ============================================

    @staticmethod
    def matrix_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
        return a @ b

    @staticmethod
    def matrix_kron(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
        return a.kron(b)

    @staticmethod
    def matrix_commutator(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
        return a.commutator(b)

    @staticmethod
    def matrix_eval(a: PolyMatrix, assignment: Mapping[str, Scalar]) -> PolyMatrix:
        return a.evaluate(assignment)


class SamplingService:
    """Puntos racionales aleatorios reproducibles"""

    @staticmethod
    def make_rng(seed: Optional[int] = None) -> np.random.Generator:
        return np.random.default_rng(settings.SEED if seed is None else seed)

    @staticmethod
    def random_rational(rng: np.random.Generator) -> Fraction:
        """
        Racional con numerador en [-N, N] \\ {0} y denominador en [1, D]

        Nunca devuelve 0, así que sirve también para variables invertibles.
        """
        bound = settings.RANDOM_NUMERATOR_BOUND
        numerator = int(rng.integers(1, bound + 1)) * (1 if rng.integers(0, 2) else -1)
        denominator = int(rng.integers(1, settings.RANDOM_DENOMINATOR_BOUND + 1))
        return Fraction(numerator, denominator)

    @staticmethod
    def random_assignment(variables: Iterable[str], rng: np.random.Generator) -> dict:
        return {name: SamplingService.random_rational(rng) for name in variables}

    @staticmethod
    def vanishes_at_random_points(
        p: Poly,
        n: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
    ) -> bool:
        """
        Comprueba p == 0 evaluando en n puntos racionales aleatorios

        Un polinomio no nulo de grado total g se anula en un punto aleatorio
        con probabilidad a lo sumo g / (tamaño del conjunto muestral).
        """
        if p.is_zero:
            return True
        rng = rng if rng is not None else SamplingService.make_rng()
        count = n if n is not None else settings.RANDOM_EVALUATION_POINTS
        variables = p.variables
        for _ in range(count):
            if p.evaluate(SamplingService.random_assignment(variables, rng)) != 0:
                return False
        return True

    @staticmethod
    def matrix_vanishes_at_random_points(
        m: PolyMatrix,
        n: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
    ) -> bool:
        rng = rng if rng is not None else SamplingService.make_rng()
        count = n if n is not None else settings.RANDOM_EVALUATION_POINTS
        variables = m.variables()
        for _ in range(count):
            point = SamplingService.random_assignment(variables, rng)
            if not m.evaluate(point).is_zero:
                return False
        return True

    @staticmethod
    def random_poly(
        variables: Iterable[str],
        rng: np.random.Generator,
        terms: int = 4,
        max_degree: int = 2,
    ) -> Poly:
        """Polinomio pequeño aleatorio (exponentes negativos solo en invertibles)"""
        names = list(variables)
        result = Poly()
        for _ in range(terms):
            exponents = {}
            for name in names:
                low = -1 if is_invertible(name) else 0
                exponents[name] = int(rng.integers(low, max_degree + 1))
            result = result + Poly({tuple(exponents.items()): SamplingService.random_rational(rng)})
        return result
