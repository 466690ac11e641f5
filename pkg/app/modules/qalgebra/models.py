"""
Modelos del álgebra cuántica del grupo libro

Un NCPoly es un diccionario monomio normal -> coeficiente. Los monomios son
tuplas (generador, exponente) en orden normal X̂ < Ŷ < Ẑ (y ŷ < ẑ para el
plano cuántico); los generadores de la copia tensorial n llevan el sufijo n
(X1, Y2, ...) y conmutan con los de otras copias. Los coeficientes son
polinomios de Laurent en k = q^b.
"""
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from app.core.exceptions import NonInvertibleVariableException, ValidationException
from app.modules.exact_core.models import Poly, Scalar, split_variable

KAPPA = "k"

GENERATOR_ORDER: Tuple[str, ...] = ("X", "Y", "Z", "y", "z")
INVERTIBLE_GENERATORS = frozenset({"X"})

# h·g = k^w g·h para g anterior a h en el orden normal
COMMUTATION_WEIGHTS: Dict[Tuple[str, str], int] = {
    ("X", "Y"): 1,    # ŶX̂ = k X̂Ŷ
    ("X", "Z"): -1,   # ẐX̂ = k⁻¹ X̂Ẑ
    ("Y", "Z"): -1,   # ẐŶ = k⁻¹ ŶẐ
    ("y", "z"): -1,   # ẑŷ = k⁻¹ ŷẑ
}

Letter = Tuple[str, int]
NCMonomial = Tuple[Letter, ...]
NCWord = Tuple[Letter, ...]
Coefficient = Union[Poly, Scalar]


class RewriteStrategy(str, Enum):
    """Elección de la regla a aplicar cuando hay varias disponibles"""
    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"
    RANDOM = "random"


@lru_cache(maxsize=None)
def letter_key(name: str) -> Tuple[int, int]:
    """
    Clave de orden normal: copia tensorial y luego generador

    Raises:
        ValidationException: Si el nombre no es un generador cuántico
    """
    base, slot = split_variable(name)
    if base not in GENERATOR_ORDER:
        raise ValidationException(f"Generador no conmutativo desconocido: '{name}'")
    return slot, GENERATOR_ORDER.index(base)


@lru_cache(maxsize=None)
def swap_weight(first: str, second: str) -> int:
    """Exponente de k al pasar `first` a la izquierda de `second` (first < second)"""
    base_first, slot_first = split_variable(first)
    base_second, slot_second = split_variable(second)
    if slot_first != slot_second:
        return 0
    return COMMUTATION_WEIGHTS.get((base_first, base_second), 0)


def check_letter(name: str, exponent: int) -> None:
    """
    Raises:
        NonInvertibleVariableException: Exponente negativo en Ŷ, Ẑ, ŷ o ẑ
    """
    letter_key(name)
    if exponent < 0 and split_variable(name)[0] not in INVERTIBLE_GENERATORS:
        raise NonInvertibleVariableException(name)


@lru_cache(maxsize=200_000)
def monomial_product(left: NCMonomial, right: NCMonomial) -> Tuple[int, NCMonomial]:
    """
    Producto de dos monomios normales: (exponente de k, monomio normal)

    Cada letra de `right` cruza las letras posteriores de `left` una sola vez.
    """
    shift = 0
    for g, g_exp in right:
        g_key = letter_key(g)
        for h, h_exp in left:
            if letter_key(h) > g_key:
                shift += swap_weight(g, h) * g_exp * h_exp
    merged = dict(left)
    for g, g_exp in right:
        total = merged.get(g, 0) + g_exp
        if total:
            merged[g] = total
        else:
            del merged[g]
    return shift, tuple(sorted(merged.items(), key=lambda item: letter_key(item[0])))


def kappa_power(exponent: int) -> Poly:
    return Poly.var(KAPPA, exponent) if exponent else Poly.const(1)


def slot_letter(name: str, slot: int) -> str:
    base, _ = split_variable(name)
    return f"{base}{slot}" if slot else base


def _result_type(left: "NCPoly", right: "NCPoly") -> type:
    """El tipo más específico de los dos operandos (NCTensorPoly gana)"""
    return type(right) if issubclass(type(right), type(left)) else type(left)


class NCPoly:
    """
    Combinación de monomios en orden normal con coeficientes en Q[k, k⁻¹]

    Inmutable; el producto aplica las reglas de q-conmutación.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[NCMonomial, Coefficient]] = None):
        clean: Dict[NCMonomial, Poly] = {}
        for mono, coeff in (terms or {}).items():
            coeff = Poly.coerce(coeff)
            if coeff.is_zero:
                continue
            keys = [letter_key(name) for name, _ in mono]
            if any(a >= b for a, b in zip(keys, keys[1:])):
                raise ValidationException(f"Monomio fuera de orden normal: {mono}")
            for name, exponent in mono:
                if exponent == 0:
                    raise ValidationException(f"Exponente nulo en el monomio {mono}")
                check_letter(name, exponent)
            clean[mono] = clean[mono] + coeff if mono in clean else coeff
        self._terms = {m: c for m, c in clean.items() if not c.is_zero}

    @classmethod
    def _new(cls, terms: Dict[NCMonomial, Poly]) -> "NCPoly":
        obj = cls.__new__(cls)
        obj._terms = {m: c for m, c in terms.items() if not c.is_zero}
        return obj

    @classmethod
    def const(cls, value: Coefficient) -> "NCPoly":
        return cls({(): value})

    @classmethod
    def gen(cls, name: str, exponent: int = 1) -> "NCPoly":
        return cls({((name, exponent),): 1})

    @classmethod
    def kappa(cls, exponent: int = 1) -> "NCPoly":
        return cls.const(kappa_power(exponent))

    # ============================================
    # Acceso
    # ============================================

    @property
    def terms(self) -> Mapping[NCMonomial, Poly]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[NCMonomial, Poly]]:
        return iter(self.sorted_terms())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, mono: NCMonomial) -> Poly:
        return self._terms.get(mono, Poly())

    def sorted_terms(self) -> List[Tuple[NCMonomial, Poly]]:
        return sorted(
            self._terms.items(),
            key=lambda item: tuple((letter_key(name), -exp) for name, exp in item[0]),
        )

    # ============================================
    # Aritmética
    # ============================================

    def _coerce(self, other: Union["NCPoly", Coefficient]) -> "NCPoly":
        return other if isinstance(other, NCPoly) else NCPoly.const(other)

    def __add__(self, other: Union["NCPoly", Coefficient]) -> "NCPoly":
        other = self._coerce(other)
        result = dict(self._terms)
        for mono, coeff in other._terms.items():
            result[mono] = result[mono] + coeff if mono in result else coeff
        return _result_type(self, other)._new(result)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return type(self)._new({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Union["NCPoly", Coefficient]) -> "NCPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coefficient) -> "NCPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Union["NCPoly", Coefficient]) -> "NCPoly":
        other = self._coerce(other)
        result: Dict[NCMonomial, Poly] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                shift, mono = monomial_product(m1, m2)
                term = c1 * c2 * kappa_power(shift)
                result[mono] = result[mono] + term if mono in result else term
        return _result_type(self, other)._new(result)

    def __rmul__(self, other: Coefficient) -> "NCPoly":
        return self._coerce(other) * self

    def __pow__(self, exponent: int) -> "NCPoly":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = type(self).const(1)
        for _ in range(exponent):
            result = result * self
        return result

    def inverse(self) -> "NCPoly":
        """
        Inverso de un término c·k^n·m con m formado solo por X̂

        Raises:
            NonInvertibleVariableException: Si el término contiene Ŷ, Ẑ, ŷ o ẑ
            ValidationException: Si hay más de un término
        """
        if len(self._terms) != 1:
            raise ValidationException(f"Solo se invierten monomios, no {self}")
        (mono, coeff), = self._terms.items()
        inverse = type(self)._new({(): coeff.inverse()})
        for name, exponent in reversed(mono):
            inverse = inverse * type(self).gen(name, -exponent)
        return inverse

    def commutator(self, other: "NCPoly") -> "NCPoly":
        return self * other - other * self

    def in_slot(self, slot: int) -> "NCTensorPoly":
        """Copia del polinomio en el factor tensorial `slot`"""
        terms = {}
        for mono, coeff in self._terms.items():
            renamed = tuple((slot_letter(name, slot), exp) for name, exp in mono)
            terms[renamed] = coeff
        return NCTensorPoly(terms)

    # ============================================
    # Igualdad y representación
    # ============================================

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Poly)):
            return self._terms == NCPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            word = "*".join(name if exp == 1 else f"{name}^{exp}" for name, exp in mono)
            if not word:
                parts.append(f"({coeff})")
            elif coeff == 1:
                parts.append(word)
            else:
                parts.append(f"({coeff})*{word}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


class NCTensorPoly(NCPoly):
    """NCPoly sobre dos copias (X1,Y1,Z1 | X2,Y2,Z2, ...) que conmutan entre sí"""

    __slots__ = ()

    @classmethod
    def tensor(cls, left: NCPoly, right: NCPoly) -> "NCTensorPoly":
        """left ⊗ right"""
        return left.in_slot(1) * right.in_slot(2)

    @property
    def slots(self) -> Tuple[int, ...]:
        return tuple(sorted({split_variable(name)[1] for mono in self._terms for name, _ in mono}))


def generators(*names: str) -> Tuple[NCPoly, ...]:
    """Atajo: generadores como NCPoly"""
    return tuple(NCPoly.gen(name) for name in names)


def as_word(letters: Sequence[Union[str, Letter]]) -> NCWord:
    """Normaliza ('X', ('X', -1), ...) a una tupla de letras con exponente"""
    word = []
    for letter in letters:
        name, exponent = (letter, 1) if isinstance(letter, str) else letter
        check_letter(name, int(exponent))
        word.append((name, int(exponent)))
    return tuple(word)
