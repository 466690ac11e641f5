"""
Modelos de cartas de coordenadas (J3, J+, J-) sobre el grupo libro
y de las estructuras con nombre que se obtienen con ellas
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Tuple

import sympy as sp

from app.core.exceptions import InvalidParametersException
from app.modules.pl_bracket.models import PARAM_NAMES, PLParams


class ChartKind(str, Enum):
    STANDARD = "standard"
    NONSTANDARD = "nonstandard"
    LOCAL = "local"


# Símbolos compartidos por todas las expresiones de cartas
J3, JP, JM = sp.symbols("J3 Jp Jm", real=True)
GX, GY, GZ = sp.symbols("X Y Z", positive=True)
DEFORMATION = sp.Symbol("eta", nonzero=True, real=True)
PARAM_SYMBOLS: Tuple[sp.Symbol, ...] = sp.symbols(" ".join(PARAM_NAMES), real=True)
LX, LY, LZ = sp.symbols("x y z", real=True)

CHART_SYMBOLS: Dict[ChartKind, Tuple[sp.Symbol, sp.Symbol, sp.Symbol]] = {
    ChartKind.STANDARD: (J3, JP, JM),
    ChartKind.NONSTANDARD: (J3, JP, JM),
    ChartKind.LOCAL: (LX, LY, LZ),
}

CHART_LABELS: Dict[ChartKind, Tuple[str, str, str]] = {
    ChartKind.STANDARD: ("J3", "J+", "J-"),
    ChartKind.NONSTANDARD: ("J3", "J+", "J-"),
    ChartKind.LOCAL: ("x", "y", "z"),
}


def forward_map(kind: ChartKind) -> Tuple[sp.Expr, sp.Expr, sp.Expr]:
    """(X, Y, Z) en función de las coordenadas de la carta"""
    q = DEFORMATION
    if kind == ChartKind.STANDARD:
        return sp.exp(-2 * q * J3), sp.exp(-q * J3) * JP, sp.exp(-q * J3) * JM
    if kind == ChartKind.NONSTANDARD:
        return sp.exp(-2 * q * JM), sp.exp(-q * JM) * JP, sp.exp(-q * JM) * J3
    return sp.exp(-LX), LY, LZ


def inverse_map(kind: ChartKind) -> Tuple[sp.Expr, sp.Expr, sp.Expr]:
    """Coordenadas de la carta en función de (X, Y, Z), con X > 0"""
    q = DEFORMATION
    root = 1 / sp.sqrt(GX)
    if kind == ChartKind.STANDARD:
        return -sp.log(GX) / (2 * q), GY * root, GZ * root
    if kind == ChartKind.NONSTANDARD:
        return GZ * root, GY * root, -sp.log(GX) / (2 * q)
    return -sp.log(GX), GY, GZ


@dataclass(frozen=True)
class Chart:
    """
    Carta con su parámetro de deformación (η en la estándar, φ en la no estándar)

    Raises:
        InvalidParametersException: Si el parámetro de deformación es nulo
    """
    kind: ChartKind
    deformation: float = 1.0

    def __post_init__(self):
        if self.kind != ChartKind.LOCAL and self.deformation == 0:
            symbol = "φ" if self.kind == ChartKind.NONSTANDARD else "η"
            raise InvalidParametersException(f"El parámetro de deformación {symbol} debe ser no nulo")

    @property
    def labels(self) -> Tuple[str, str, str]:
        return CHART_LABELS[self.kind]

    def __repr__(self) -> str:
        return f"<Chart {self.kind.value} deformation={self.deformation}>"


Bindings = Callable[[Fraction], PLParams]


@dataclass(frozen=True)
class NamedStructure:
    """
    Estructura con nombre: asignación de parámetros, carta y formas cerradas

    brackets: ({J3,J+}, {J3,J-}, {J+,J-}) como expresiones sympy en J y eta
    """
    identifier: str
    description: str
    kind: ChartKind
    bindings: Bindings
    brackets: Tuple[sp.Expr, sp.Expr, sp.Expr]
    casimir: sp.Expr
    family: str

    def params(self, deformation: Fraction) -> PLParams:
        return self.bindings(Fraction(deformation))

    def __repr__(self) -> str:
        return f"<NamedStructure {self.identifier} ({self.kind.value})>"


@dataclass(frozen=True)
class CasimirRelation:
    """𝒞 = k1·C̃ + k0"""
    identifier: str
    k1: float
    k0: float
    expected: Tuple[float, float]
    max_residual: float
    symbolic: bool

    @property
    def passed(self) -> bool:
        return self.symbolic and abs(self.k1 - self.expected[0]) < 1e-8 and abs(self.k0 - self.expected[1]) < 1e-8
