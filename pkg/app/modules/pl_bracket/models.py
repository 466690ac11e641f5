"""
Modelos de la familia P[a,b,c,d,e,f] de estructuras Poisson-Lie del grupo libro
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from app.core.exceptions import ValidationException
from app.modules.exact_core.models import ZERO, Poly, PolyMatrix, Scalar, split_variable, to_rational

PARAM_NAMES: Tuple[str, ...] = ("a", "b", "c", "d", "e", "f")
SYMBOLIC_LITERAL = "sym"

ParamValue = Union[Poly, Scalar, str]


class ChartTag(str, Enum):
    """Carta de coordenadas de la estructura"""
    GROUP = "group"    # (X, Y, Z)
    LOCAL = "local"    # (x, y, z) con u = e^{-x}


CHART_COORDINATES: Dict[ChartTag, Tuple[str, ...]] = {
    ChartTag.GROUP: ("X", "Y", "Z"),
    ChartTag.LOCAL: ("x", "y", "z"),
}

# variables invertibles que acompañan a cada carta
CHART_AUXILIARY: Dict[ChartTag, Tuple[str, ...]] = {
    ChartTag.GROUP: (),
    ChartTag.LOCAL: ("u",),
}

CHART_DENOMINATOR: Dict[ChartTag, str] = {
    ChartTag.GROUP: "X",
    ChartTag.LOCAL: "u",
}

COORDINATE_BASES = frozenset({"X", "Y", "Z", "x", "y", "z", "u"})


def _param_value(name: str, value: ParamValue) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, str) and value.strip().lower() == SYMBOLIC_LITERAL:
        return Poly.var(name)
    return Poly.const(to_rational(value))


@dataclass(frozen=True)
class PLParams:
    """
    Los seis parámetros (a, b, c, d, e, f)

    Cada valor es un Poly: constante en modo numérico, la variable formal
    homónima en modo simbólico. Se permiten especializaciones parciales
    (p. ej. b = c = e = 0 con a, d, f simbólicos).
    """
    a: Poly = ZERO
    b: Poly = ZERO
    c: Poly = ZERO
    d: Poly = ZERO
    e: Poly = ZERO
    f: Poly = ZERO

    @classmethod
    def of(cls, a: ParamValue = 0, b: ParamValue = 0, c: ParamValue = 0,
           d: ParamValue = 0, e: ParamValue = 0, f: ParamValue = 0) -> "PLParams":
        """Construye desde enteros, Fractions, cadenas decimales o 'sym'"""
        values = dict(zip(PARAM_NAMES, (a, b, c, d, e, f)))
        return cls(**{name: _param_value(name, value) for name, value in values.items()})

    @classmethod
    def from_mapping(cls, data: Mapping[str, ParamValue]) -> "PLParams":
        unknown = set(data) - set(PARAM_NAMES)
        if unknown:
            raise ValidationException(f"Parámetros desconocidos: {sorted(unknown)}")
        return cls.of(**{name: data.get(name, 0) for name in PARAM_NAMES})

    @classmethod
    def from_sequence(cls, values) -> "PLParams":
        values = list(values)
        if len(values) != 6:
            raise ValidationException(f"Se esperaban 6 parámetros, se recibieron {len(values)}")
        return cls.of(*values)

    @classmethod
    def symbolic(cls) -> "PLParams":
        return cls.of(*([SYMBOLIC_LITERAL] * 6))

    @classmethod
    def zero(cls) -> "PLParams":
        return cls()

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.values)

    @property
    def values(self) -> Tuple[Poly, ...]:
        return tuple(getattr(self, name) for name in PARAM_NAMES)

    @property
    def is_symbolic(self) -> bool:
        return any(not value.is_constant for value in self.values)

    @property
    def is_zero(self) -> bool:
        return all(value.is_zero for value in self.values)

    def numeric(self) -> Tuple[Fraction, ...]:
        """
        Valores racionales

        Raises:
            ValidationException: Si algún parámetro es simbólico
        """
        if self.is_symbolic:
            raise ValidationException("Se requieren parámetros numéricos")
        return tuple(value.constant_term() for value in self.values)

    def substitute(self, assignment: Mapping[str, Union[Poly, Scalar]]) -> "PLParams":
        return PLParams(*(value.substitute(assignment) for value in self.values))

    def as_dict(self) -> Dict[str, str]:
        return {name: str(value) for name, value in zip(PARAM_NAMES, self.values)}

    def __str__(self) -> str:
        return "P[" + ",".join(str(value) for value in self.values) + "]"


@dataclass(frozen=True, eq=False)
class PoissonStructure:
    """
    Tabla de corchetes fundamentales sobre una lista de coordenadas

    Solo se guardan los pares i < j; la antisimetría es por construcción.
    La potencia tensorial concatena coordenadas sufijadas con corchetes
    cruzados nulos.
    """
    chart: ChartTag
    coordinates: Tuple[str, ...]
    table: Mapping[Tuple[int, int], Poly]
    params: Optional[PLParams] = None
    auxiliary: Tuple[str, ...] = field(default=())

    def fundamental(self, i: int, j: int) -> Poly:
        if i == j:
            return ZERO
        if i < j:
            return self.table.get((i, j), ZERO)
        return -self.table.get((j, i), ZERO)

    def pair(self, v: str, w: str) -> Poly:
        """Corchete fundamental por nombre de coordenada"""
        return self.fundamental(self.coordinates.index(v), self.coordinates.index(w))

    @property
    def brackets(self) -> Dict[str, Poly]:
        """Tabla legible {'XY': {X,Y}, 'XZ': {X,Z}, 'YZ': {Y,Z}}"""
        n = len(self.coordinates)
        return {
            f"{self.coordinates[i]}{self.coordinates[j]}": self.fundamental(i, j)
            for i in range(n) for j in range(i + 1, n)
        }

    def matrix(self) -> PolyMatrix:
        n = len(self.coordinates)
        return PolyMatrix([[self.fundamental(i, j) for j in range(n)] for i in range(n)])

    def allowed_variables(self) -> frozenset:
        return frozenset(self.coordinates) | frozenset(self.auxiliary)

    def renamed(self, suffix: int) -> "PoissonStructure":
        """Copia sobre las variables del factor tensorial `suffix`"""
        mapping = {name: f"{name}{suffix}" for name in self.coordinates + self.auxiliary}
        return PoissonStructure(
            chart=self.chart,
            coordinates=tuple(mapping[c] for c in self.coordinates),
            table={key: value.rename(mapping) for key, value in self.table.items()},
            params=self.params,
            auxiliary=tuple(mapping[c] for c in self.auxiliary),
        )

    def tensor_power(self, factors: int = 2) -> "PoissonStructure":
        """Estructura producto sobre `factors` copias (corchetes cruzados nulos)"""
        coordinates: Tuple[str, ...] = ()
        auxiliary: Tuple[str, ...] = ()
        table: Dict[Tuple[int, int], Poly] = {}
        for index in range(1, factors + 1):
            copy = self.renamed(index)
            offset = len(coordinates)
            for (i, j), value in copy.table.items():
                table[(i + offset, j + offset)] = value
            coordinates += copy.coordinates
            auxiliary += copy.auxiliary
        return PoissonStructure(self.chart, coordinates, table, self.params, auxiliary)

    def __repr__(self) -> str:
        body = ", ".join(f"{{{k[0]},{k[1:]}}} = {v}" for k, v in self.brackets.items())
        return f"<PoissonStructure {self.chart.value}: {body}>"


@dataclass(frozen=True)
class RationalFunction:
    """
    Cociente numerador / var^power con var invertible (X o u)

    Normalizado: power >= 0 y sin potencias comunes de var por cancelar.
    """
    numerator: Poly
    variable: str = "X"
    power: int = 0

    @classmethod
    def from_laurent(cls, p: Poly, variable: str = "X") -> "RationalFunction":
        power = max(0, -p.min_exponent(variable))
        numerator = p * Poly.var(variable, power) if power else p
        return cls(numerator, variable, power)

    @classmethod
    def coerce(cls, value: Union["RationalFunction", Poly, Scalar], variable: str = "X") -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        return cls.from_laurent(Poly.coerce(value), variable)

    def to_laurent(self) -> Poly:
        if not self.power:
            return self.numerator
        return self.numerator * Poly.var(self.variable, -self.power)

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        return self.to_laurent().evaluate(assignment)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalFunction):
            return self.to_laurent() == other.to_laurent()
        if isinstance(other, (Poly, int, Fraction)):
            return self.to_laurent() == Poly.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_laurent())

    def __str__(self) -> str:
        if not self.power:
            return str(self.numerator)
        denominator = self.variable if self.power == 1 else f"{self.variable}^{self.power}"
        return f"({self.numerator})/{denominator}"


@dataclass(frozen=True)
class LinearBracketTable:
    """Corchete lineal (Lie-Poisson) en las coordenadas locales x, y, z"""
    xy: Poly
    xz: Poly
    yz: Poly

    @property
    def is_zero(self) -> bool:
        return self.xy.is_zero and self.xz.is_zero and self.yz.is_zero

    def as_structure(self) -> PoissonStructure:
        return PoissonStructure(
            chart=ChartTag.LOCAL,
            coordinates=CHART_COORDINATES[ChartTag.LOCAL],
            table={(0, 1): self.xy, (0, 2): self.xz, (1, 2): self.yz},
        )

    def structure_constants(self) -> Dict[Tuple[str, str], Dict[str, Poly]]:
        """
        Constantes de estructura del álgebra dual: [w_i, w_j]* = Σ_k C^k_ij w_k
        """
        pairs = {("x", "y"): self.xy, ("x", "z"): self.xz, ("y", "z"): self.yz}
        result: Dict[Tuple[str, str], Dict[str, Poly]] = {}
        for key, value in pairs.items():
            result[key] = {w: _linear_coefficient(value, w) for w in ("x", "y", "z")}
        return result

    def __str__(self) -> str:
        return f"{{x,y}}0 = {self.xy}; {{x,z}}0 = {self.xz}; {{y,z}}0 = {self.yz}"


def _linear_coefficient(p: Poly, variable: str) -> Poly:
    """Coeficiente (posiblemente simbólico) de `variable` en un polinomio lineal"""
    result = {}
    for mono, coeff in p.items():
        exps = dict(mono)
        if exps.get(variable) == 1 and not any(
            split_variable(v)[0] in COORDINATE_BASES for v in exps if v != variable
        ):
            result[tuple((v, e) for v, e in mono if v != variable)] = coeff
    return Poly(result)
