"""
Modelos del álgebra de Poisson-Hopf de funciones sobre el grupo libro
"""
from enum import Enum
from typing import Dict, Tuple

from app.modules.exact_core.models import Poly, PolyMatrix

# Un TensorPoly es un Poly sobre copias sufijadas (X1, Y1, Z1, X2, ...)
TensorPoly = Poly

GROUP_GENERATORS: Tuple[str, ...] = ("X", "Y", "Z")
LOCAL_GENERATORS: Tuple[str, ...] = ("x", "u", "y", "z")


class MatrixLayout(str, Enum):
    """
    Disposición de la matriz 3x3 del elemento de grupo

    classical: Y en la primera fila, Z en la segunda
    quantum:   Z en la primera fila, Y en la segunda
    """
    CLASSICAL = "classical"
    QUANTUM = "quantum"


def slot_name(base: str, slot: int) -> str:
    return f"{base}{slot}" if slot else base


def group_element(slot: int = 0, layout: MatrixLayout = MatrixLayout.CLASSICAL) -> PolyMatrix:
    """Matriz M = [[X,0,Y],[0,X,Z],[0,0,1]] (o su variante cuántica) sobre la copia `slot`"""
    X, Y, Z = (Poly.var(slot_name(name, slot)) for name in GROUP_GENERATORS)
    top, middle = (Y, Z) if layout == MatrixLayout.CLASSICAL else (Z, Y)
    return PolyMatrix([[X, 0, top], [0, X, middle], [0, 0, 1]])


def coproduct_images(slot: int, shift: int = 1) -> Dict[str, Poly]:
    """
    Imágenes de los generadores de la copia `slot` al aplicarles el coproducto

    La copia `slot` se desdobla en (slot, slot + shift).
    """
    X, Y, Z = (Poly.var(slot_name(n, slot)) for n in GROUP_GENERATORS)
    X2, Y2, Z2 = (Poly.var(slot_name(n, slot + shift)) for n in GROUP_GENERATORS)
    return {
        slot_name("X", slot): X * X2,
        slot_name("Y", slot): X * Y2 + Y,
        slot_name("Z", slot): X * Z2 + Z,
    }


def local_coproduct_images(slot: int, shift: int = 1) -> Dict[str, Poly]:
    """Coproducto en la carta local: x primitivo, u de tipo grupo"""
    x, u, y, z = (Poly.var(slot_name(n, slot)) for n in LOCAL_GENERATORS)
    x2, u2, y2, z2 = (Poly.var(slot_name(n, slot + shift)) for n in LOCAL_GENERATORS)
    return {
        slot_name("x", slot): x + x2,
        slot_name("u", slot): u * u2,
        slot_name("y", slot): u * y2 + y,
        slot_name("z", slot): u * z2 + z,
    }
