"""
Modelos del núcleo exacto - Racionales y polinomios de Laurent dispersos

Un Poly es un diccionario monomio -> coeficiente racional. Los monomios son
tuplas ordenadas (variable, exponente) sobre un orden global fijo de
variables, de modo que la igualdad de polinomios es igualdad de diccionarios.
"""
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from app.core.exceptions import (
    DimensionMismatchException,
    NonInvertibleVariableException,
    ValidationException,
    ZeroInvertibleValueException,
)

Rational = Fraction
Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[int, Fraction]

# ============================================
# Orden global de variables
# ============================================

VARIABLE_ORDER: Tuple[str, ...] = (
    "a", "b", "c", "d", "e", "f",
    "r12", "r13", "r23",
    "k",
    "X", "Y", "Z",
    "u", "y", "z",
    "x",
)

# X = e^{-x} en la carta de grupo, u = e^{-x} en la local, k = q^b
INVERTIBLE_BASES = frozenset({"X", "u", "k"})

_SUFFIXED = re.compile(r"^([A-Za-z]+?)(\d+)$")


@lru_cache(maxsize=None)
def split_variable(name: str) -> Tuple[str, int]:
    """Separa 'X2' en ('X', 2); variables sin sufijo devuelven índice 0"""
    if name in VARIABLE_ORDER:
        return name, 0
    match = _SUFFIXED.match(name)
    if match and match.group(1) in VARIABLE_ORDER:
        return match.group(1), int(match.group(2))
    return name, 0


@lru_cache(maxsize=None)
def variable_key(name: str) -> Tuple[int, int, str]:
    """Clave de orden global: base conocida, luego copia tensorial, luego nombre"""
    base, index = split_variable(name)
    if base in VARIABLE_ORDER:
        return VARIABLE_ORDER.index(base), index, ""
    return len(VARIABLE_ORDER), 0, name


@lru_cache(maxsize=None)
def is_invertible(name: str) -> bool:
    """Solo X, u, k (y sus copias tensoriales) admiten exponentes negativos"""
    return split_variable(name)[0] in INVERTIBLE_BASES


def to_rational(value: object) -> Fraction:
    """
    Convierte enteros, Fractions y cadenas decimales a Fraction exacta

    Raises:
        ValidationException: Si el valor es float u otro tipo no exacto
    """
    if isinstance(value, bool):
        raise ValidationException("Un booleano no es un coeficiente racional")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationException(f"Racional inválido: '{value}'") from exc
    raise ValidationException(f"Coeficiente no exacto: {value!r} ({type(value).__name__})")


def _sort_monomial(items: Iterable[Tuple[str, int]]) -> Monomial:
    return tuple(sorted(items, key=lambda item: variable_key(item[0])))


def _check_monomial(mono: Monomial) -> None:
    for var, exp in mono:
        if exp < 0 and not is_invertible(var):
            raise NonInvertibleVariableException(var)


@lru_cache(maxsize=200_000)
def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for var, exp in m2:
        total = acc.get(var, 0) + exp
        if total:
            acc[var] = total
        else:
            del acc[var]
    return _sort_monomial(acc.items())


def _mono_degree(mono: Monomial, variables: Optional[frozenset] = None) -> int:
    return sum(exp for var, exp in mono if variables is None or var in variables)


class Poly:
    """
    Polinomio de Laurent disperso con coeficientes racionales exactos

    Inmutable: todas las operaciones devuelven instancias nuevas.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = to_rational(coeff)
            if coeff == 0:
                continue
            mono = _sort_monomial((v, e) for v, e in mono if e != 0)
            _check_monomial(mono)
            total = clean.get(mono, Fraction(0)) + coeff
            if total:
                clean[mono] = total
            else:
                clean.pop(mono, None)
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, Fraction]) -> "Poly":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    # ============================================
    # Constructores
    # ============================================

    @classmethod
    def const(cls, value: Scalar) -> "Poly":
        return cls({(): value})

    @classmethod
    def var(cls, name: str, exponent: int = 1) -> "Poly":
        return cls({((name, exponent),): 1})

    @classmethod
    def monomial(cls, coeff: Scalar = 1, **exponents: int) -> "Poly":
        return cls({tuple(exponents.items()): coeff})

    @staticmethod
    def coerce(value: Union["Poly", Scalar, str]) -> "Poly":
        """Convierte escalares a polinomios constantes"""
        if isinstance(value, Poly):
            return value
        return Poly.const(to_rational(value))

    # ============================================
    # Consultas
    # ============================================

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    @property
    def variables(self) -> Tuple[str, ...]:
        names = {var for mono in self._terms for var, _ in mono}
        return tuple(sorted(names, key=variable_key))

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coefficient(self, **exponents: int) -> Fraction:
        """Coeficiente del monomio indicado (0 si no aparece)"""
        mono = _sort_monomial((v, e) for v, e in exponents.items() if e != 0)
        return self._terms.get(mono, Fraction(0))

    def total_degree(self, variables: Optional[Iterable[str]] = None) -> int:
        """Grado total, opcionalmente restringido a un subconjunto de variables"""
        if not self._terms:
            return 0
        scope = frozenset(variables) if variables is not None else None
        return max(_mono_degree(mono, scope) for mono in self._terms)

    def min_exponent(self, variable: str) -> int:
        """Menor exponente de la variable (0 si no aparece en algún término)"""
        return min((dict(mono).get(variable, 0) for mono in self._terms), default=0)

    # ============================================
    # Aritmética de anillo
    # ============================================

    def __add__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = Poly.coerce(other)
        if not other._terms:
            return self
        result = dict(self._terms)
        for mono, coeff in other._terms.items():
            total = result.get(mono, 0) + coeff
            if total:
                result[mono] = total
            else:
                result.pop(mono, None)
        return Poly._from_clean(result)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._from_clean({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: Union["Poly", Scalar]) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other: Union["Poly", Scalar]) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if not isinstance(other, Poly):
            scalar = to_rational(other)
            if scalar == 0:
                return Poly()
            return Poly._from_clean({m: c * scalar for m, c in self._terms.items()})
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                total = result.get(mono, 0) + c1 * c2
                if total:
                    result[mono] = total
                else:
                    result.pop(mono, None)
        return Poly._from_clean(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Poly.const(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "Poly":
        """
        Inverso de un monomio sobre variables invertibles

        Raises:
            NonInvertibleVariableException: Si no es un monomio invertible
        """
        if len(self._terms) != 1:
            raise NonInvertibleVariableException(str(self))
        ((mono, coeff),) = self._terms.items()
        return Poly({tuple((v, -e) for v, e in mono): 1 / coeff})

    def __truediv__(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, Poly):
            return self * other.inverse()
        return self * (1 / to_rational(other))

    # ============================================
    # Cálculo
    # ============================================

    def partial(self, variable: str) -> "Poly":
        """
        Derivada parcial formal

        Para x (o xN) se aplica además la regla de la cadena sobre u = e^{-x}
        (resp. uN): d/dx u^n = -n u^n.
        """
        base, index = split_variable(variable)
        chained = f"u{index}" if index else "u"
        result: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            exps = dict(mono)
            contributions = []
            if variable in exps:
                new = dict(exps)
                n = new[variable]
                if n - 1:
                    new[variable] = n - 1
                else:
                    del new[variable]
                contributions.append((new, coeff * n))
            if base == "x" and chained in exps:
                contributions.append((exps, -coeff * exps[chained]))
            for new, value in contributions:
                key = _sort_monomial(new.items())
                total = result.get(key, 0) + value
                if total:
                    result[key] = total
                else:
                    result.pop(key, None)
        return Poly._from_clean(result)

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """
        Evaluación exacta en un punto racional

        Raises:
            ValidationException: Si falta el valor de alguna variable
            ZeroInvertibleValueException: Si una variable invertible vale 0
        """
        values = {name: to_rational(v) for name, v in assignment.items()}
        for name in self.variables:
            if name not in values:
                raise ValidationException(f"Falta el valor de la variable '{name}'")
            if values[name] == 0 and is_invertible(name):
                raise ZeroInvertibleValueException(name)
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            term = coeff
            for var, exp in mono:
                term *= values[var] ** exp
            total += term
        return total

    def evaluate_float(self, values: Mapping[str, float]) -> float:
        """Evaluación en coma flotante (solo para verificaciones numéricas)"""
        total = 0.0
        for mono, coeff in self._terms.items():
            term = float(coeff)
            for var, exp in mono:
                term *= float(values[var]) ** exp
            total += term
        return total

    def substitute(self, mapping: Mapping[str, Union["Poly", Scalar]]) -> "Poly":
        """
        Sustitución simultánea variable -> polinomio (homomorfismo de álgebras)

        Un exponente negativo exige que la imagen sea un monomio invertible.
        """
        images = {name: Poly.coerce(value) for name, value in mapping.items()}
        powers: Dict[Tuple[str, int], Poly] = {}
        result = Poly()
        for mono, coeff in self._terms.items():
            term = Poly.const(coeff)
            rest = []
            for var, exp in mono:
                if var not in images:
                    rest.append((var, exp))
                    continue
                key = (var, exp)
                if key not in powers:
                    powers[key] = images[var] ** exp
                term = term * powers[key]
            if rest:
                term = term * Poly({tuple(rest): 1})
            result = result + term
        return result

    def truncate(self, max_degree: int, variables: Iterable[str]) -> "Poly":
        """Descarta los términos de grado > max_degree en las variables dadas"""
        scope = frozenset(variables)
        return Poly._from_clean(
            {m: c for m, c in self._terms.items() if _mono_degree(m, scope) <= max_degree}
        )

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        """Renombrado de variables (p. ej. X -> X1); nombres fusionados suman exponentes"""
        result: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            key: Monomial = ()
            for var, exp in mono:
                key = _mono_mul(key, ((mapping.get(var, var), exp),))
            result[key] = result.get(key, 0) + coeff
        return Poly(result)

    # ============================================
    # Igualdad y representación
    # ============================================

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Términos en orden grlex descendente sobre el orden global"""
        universe = self.variables
        def key(item):
            exps = dict(item[0])
            return (-_mono_degree(item[0]), tuple(-exps.get(v, 0) for v in universe))
        return sorted(self._terms.items(), key=key)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for position, (mono, coeff) in enumerate(self.sorted_terms()):
            factors = "*".join(var if exp == 1 else f"{var}^{exp}" for var, exp in mono)
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = factors
            else:
                body = f"{magnitude}*{factors}"
            if position == 0:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def symbols(*names: str) -> Tuple[Poly, ...]:
    """Atajo: variables como polinomios"""
    return tuple(Poly.var(name) for name in names)


ZERO = Poly()
ONE = Poly.const(1)


class PolyMatrix:
    """Matriz densa de polinomios (inmutable)"""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries: Sequence[Sequence[Union[Poly, Scalar]]]):
        grid = tuple(tuple(Poly.coerce(value) for value in row) for row in entries)
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0
        if any(len(row) != self.cols for row in grid):
            raise DimensionMismatchException((self.rows, self.cols), tuple(len(r) for r in grid), "construcción")
        self._entries = grid

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "PolyMatrix":
        cols = rows if cols is None else cols
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries: Mapping[Tuple[int, int], Union[Poly, Scalar]]) -> "PolyMatrix":
        grid = [[ZERO] * cols for _ in range(rows)]
        for (i, j), value in entries.items():
            grid[i][j] = grid[i][j] + Poly.coerce(value)
        return cls(grid)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Poly:
        i, j = index
        return self._entries[i][j]

    def row(self, i: int) -> Tuple[Poly, ...]:
        return self._entries[i]

    def entries(self) -> Iterator[Tuple[int, int, Poly]]:
        for i, row in enumerate(self._entries):
            for j, value in enumerate(row):
                yield i, j, value

    def nonzero_entries(self) -> Iterator[Tuple[int, int, Poly]]:
        return ((i, j, p) for i, j, p in self.entries() if not p.is_zero)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for _, _, p in self.entries())

    def term_count(self) -> int:
        return sum(len(p) for _, _, p in self.entries())

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(p) for p in row] for row in self._entries])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self._entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def _check_same_shape(self, other: "PolyMatrix", operation: str) -> None:
        if self.shape != other.shape:
            raise DimensionMismatchException(self.shape, other.shape, operation)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shape(other, "suma")
        return PolyMatrix([[p + q for p, q in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shape(other, "resta")
        return PolyMatrix([[p - q for p, q in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)])

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda p: -p)

    def scale(self, factor: Union[Poly, Scalar]) -> "PolyMatrix":
        factor = Poly.coerce(factor)
        return self.map(lambda p: p * factor)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchException(self.shape, other.shape, "producto")
        # filas dispersas de la derecha para saltar ceros
        right_rows = [[(j, p) for j, p in enumerate(row) if not p.is_zero] for row in other._entries]
        grid = []
        for row in self._entries:
            acc: Dict[int, Poly] = {}
            for k, left in enumerate(row):
                if left.is_zero:
                    continue
                for j, right in right_rows[k]:
                    acc[j] = acc.get(j, ZERO) + left * right
            grid.append([acc.get(j, ZERO) for j in range(other.cols)])
        return PolyMatrix(grid)

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        """Producto de Kronecker por bloques fila-mayor: bloque (i,j) = A[i,j]·B"""
        rows, cols = self.rows * other.rows, self.cols * other.cols
        grid = [[ZERO] * cols for _ in range(rows)]
        for i, j, a in self.nonzero_entries():
            for k, l, b in other.nonzero_entries():
                grid[i * other.rows + k][j * other.cols + l] = a * b
        return PolyMatrix(grid)

    def commutator(self, other: "PolyMatrix") -> "PolyMatrix":
        return self @ other - other @ self

    def evaluate(self, assignment: Mapping[str, Scalar]) -> "PolyMatrix":
        return self.map(lambda p: Poly.const(p.evaluate(assignment)))

    def substitute(self, mapping: Mapping[str, Union[Poly, Scalar]]) -> "PolyMatrix":
        return self.map(lambda p: p.substitute(mapping))

    def variables(self) -> Tuple[str, ...]:
        names = {v for _, _, p in self.entries() for v in p.variables}
        return tuple(sorted(names, key=variable_key))

    def first_nonzero(self) -> Optional[Tuple[int, int, Poly]]:
        return next(self.nonzero_entries(), None)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._entries == other._entries

    __hash__ = None

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(p) for p in row) for row in self._entries)
        return f"PolyMatrix[{self.rows}x{self.cols}]({body})"
