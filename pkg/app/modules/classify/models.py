"""
Modelos de clasificación de las estructuras Poisson-Lie (clases A-I)
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.modules.exact_core.models import Poly
from app.modules.rmatrix.models import LieAlgebra3, SkewBivector


class ClassLetter(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"
    H = "H"
    I = "I"


class ClassificationStatus(str, Enum):
    CLASSIFIED = "classified"
    TRIVIAL = "trivial"          # vector nulo
    UNRESOLVED = "unresolved"


# orden fijo de desempate: filas específicas antes que superconjuntos parametrizados
TIE_BREAK_ORDER: Tuple[ClassLetter, ...] = (
    ClassLetter.A, ClassLetter.B, ClassLetter.C, ClassLetter.G, ClassLetter.F,
    ClassLetter.D, ClassLetter.H, ClassLetter.E, ClassLetter.I,
)

COBOUNDARY_LETTERS = frozenset({ClassLetter.A, ClassLetter.B})


@dataclass(frozen=True)
class ClassLabel:
    """
    Clase de la tabla con sus parámetros libres

    lambda_: esencial; alpha: reescalable a cualquier valor no nulo;
    omega: reescalable conservando el signo.
    """
    letter: ClassLetter
    lambda_: Optional[Fraction] = None
    alpha: Optional[Fraction] = None
    omega: Optional[Fraction] = None

    @property
    def coboundary(self) -> bool:
        return self.letter in COBOUNDARY_LETTERS

    def free_params(self) -> Dict[str, str]:
        values = {"lambda": self.lambda_, "alpha": self.alpha, "omega": self.omega}
        return {name: str(value) for name, value in values.items() if value is not None}


@dataclass(frozen=True)
class Classification:
    """Resultado de classify: etiqueta, trivial o no resuelto con diagnóstico"""
    status: ClassificationStatus
    label: Optional[ClassLabel] = None
    normalizations: Tuple[str, ...] = ()
    r_matrix: Optional[SkewBivector] = None
    diagnostic: str = ""
    row_family: Optional[ClassLetter] = None

    @property
    def letter(self) -> Optional[str]:
        return self.label.letter.value if self.label else None

    @property
    def coboundary(self) -> bool:
        return self.r_matrix is not None


@dataclass(frozen=True)
class TangentBialgebra:
    """Álgebra r3(1), su dual (linealización) y diagnósticos del 1-cociclo"""
    algebra: LieAlgebra3
    dual: LieAlgebra3
    killing_determinant: Poly
    dual_jacobi: List[Poly] = field(default_factory=list)
    cocycle_residuals: List[Poly] = field(default_factory=list)

    @property
    def dual_type(self) -> str:
        if self.dual.is_abelian:
            return "abelian"
        if not self.killing_determinant.is_zero:
            return "semisimple"
        return "solvable"

    @property
    def is_bialgebra(self) -> bool:
        return all(r.is_zero for r in self.dual_jacobi + self.cocycle_residuals)
