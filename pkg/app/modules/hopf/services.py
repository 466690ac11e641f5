"""
Servicios Poisson-Hopf: coproducto, corchete tensorial, coasociatividad,
counidad, antípoda y comprobación de que la multiplicación es un morfismo de Poisson
"""
from fractions import Fraction
from typing import Callable, Dict, List, Tuple, Union

from app.core.exceptions import ValidationException
from app.core.logging import get_logger
from app.modules.exact_core.models import Poly
from app.modules.hopf.models import (
    GROUP_GENERATORS,
    LOCAL_GENERATORS,
    MatrixLayout,
    TensorPoly,
    coproduct_images,
    group_element,
    local_coproduct_images,
    slot_name,
)
from app.modules.pl_bracket.models import ChartTag, PLParams, PoissonStructure, RationalFunction
from app.modules.pl_bracket.services import PLBracketService, poisson_bracket

logger = get_logger(__name__)

ImagesFn = Callable[[int], Dict[str, Poly]]


def _split_slot(p: Poly, slot: int, factors: int, images: ImagesFn, bases: Tuple[str, ...]) -> Poly:
    """Aplica el coproducto a la copia `slot` de un tensor de `factors` copias"""
    mapping: Dict[str, Poly] = dict(images(slot))
    for later in range(slot + 1, factors + 1):
        for base in bases:
            mapping[slot_name(base, later)] = Poly.var(slot_name(base, later + 1))
    return p.substitute(mapping)


def _to_slot(p: Poly, bases: Tuple[str, ...], slot: int = 1) -> Poly:
    return p.rename({base: slot_name(base, slot) for base in bases})


def _merge_slots(p: Poly, bases: Tuple[str, ...], factors: int = 2) -> Poly:
    """Multiplicación m: identifica todas las copias con la variable sin sufijo"""
    return p.rename({slot_name(base, k): base for base in bases for k in range(1, factors + 1)})


class HopfService:
    """Estructura de Hopf de las funciones sobre el grupo libro"""

    @staticmethod
    def coproduct(p: Poly) -> TensorPoly:
        """
        Homomorfismo Δ(X) = X1X2, Δ(Y) = X1Y2 + Y1, Δ(Z) = X1Z2 + Z1

        Args:
            p: Polinomio (Laurent en X) en la carta de grupo

        Returns:
            TensorPoly sobre (X1, Y1, Z1, X2, Y2, Z2)
        """
        return _split_slot(_to_slot(p, GROUP_GENERATORS), 1, 1, coproduct_images, GROUP_GENERATORS)

    @staticmethod
    def local_coproduct(p: Poly) -> TensorPoly:
        """Δ(x) = x1 + x2, Δ(u) = u1u2, Δ(y) = u1y2 + y1, Δ(z) = u1z2 + z1"""
        return _split_slot(_to_slot(p, LOCAL_GENERATORS), 1, 1, local_coproduct_images, LOCAL_GENERATORS)

    @staticmethod
    def iterated_coproduct(p: Poly, factors: int, nesting: str = "left") -> TensorPoly:
        """
        Δ^(N) por anidamiento izquierdo (Δ⊗id⊗...)∘...∘Δ o derecho

        Raises:
            ValidationException: Si N < 2 o el anidamiento es desconocido
        """
        if factors < 2:
            raise ValidationException(f"El coproducto iterado requiere N >= 2 (N = {factors})")
        if nesting not in ("left", "right"):
            raise ValidationException(f"Anidamiento desconocido: '{nesting}'")
        result = HopfService.coproduct(p)
        for current in range(2, factors):
            slot = 1 if nesting == "left" else current
            result = _split_slot(result, slot, current, coproduct_images, GROUP_GENERATORS)
        return result

    @staticmethod
    def tensor_bracket(structure: PoissonStructure, p: TensorPoly, q: TensorPoly, factors: int = 2) -> TensorPoly:
        """Corchete producto: cada factor con su copia de S, corchetes cruzados nulos"""
        return poisson_bracket(p, q, structure.tensor_power(factors))

    @staticmethod
    def poisson_map_residual(source: Union[PLParams, PoissonStructure]) -> List[TensorPoly]:
        """
        {Δw_i, Δw_j} - Δ{w_i, w_j} para los tres pares de generadores

        Acepta parámetros o una estructura arbitraria (controles negativos).
        """
        structure = source if isinstance(source, PoissonStructure) else PLBracketService.build_structure(source)
        product = structure.tensor_power(2)
        images = {w: HopfService.coproduct(Poly.var(w)) for w in GROUP_GENERATORS}
        residuals = []
        for v, w in (("X", "Y"), ("X", "Z"), ("Y", "Z")):
            lhs = poisson_bracket(images[v], images[w], product)
            rhs = HopfService.coproduct(structure.pair(v, w))
            residuals.append(lhs - rhs)
        logger.debug("Morfismo de Poisson: %s", [len(r) for r in residuals])
        return residuals

    @staticmethod
    def local_poisson_map_residual(params: PLParams) -> List[TensorPoly]:
        """Misma comprobación en la carta local (x, y, z) con u = e^{-x}"""
        structure = PLBracketService.build_structure(params, ChartTag.LOCAL)
        product = structure.tensor_power(2)
        coords = structure.coordinates
        images = {w: HopfService.local_coproduct(Poly.var(w)) for w in coords}
        residuals = []
        for i in range(3):
            for j in range(i + 1, 3):
                lhs = poisson_bracket(images[coords[i]], images[coords[j]], product)
                rhs = HopfService.local_coproduct(structure.fundamental(i, j))
                residuals.append(lhs - rhs)
        return residuals

    @staticmethod
    def coassociativity_residual() -> List[TensorPoly]:
        """(Δ⊗id)∘Δ - (id⊗Δ)∘Δ sobre X, Y, Z"""
        return [
            HopfService.iterated_coproduct(Poly.var(w), 3, "left")
            - HopfService.iterated_coproduct(Poly.var(w), 3, "right")
            for w in GROUP_GENERATORS
        ]

    @staticmethod
    def group_law_residual() -> List[TensorPoly]:
        """Δ(X), Δ(Y), Δ(Z) frente a las entradas de M1·M2"""
        product = group_element(1) @ group_element(2)
        return [
            HopfService.coproduct(Poly.var("X")) - product[0, 0],
            HopfService.coproduct(Poly.var("Y")) - product[0, 2],
            HopfService.coproduct(Poly.var("Z")) - product[1, 2],
        ]

    # ============================================
    # Counidad y antípoda
    # ============================================

    @staticmethod
    def counit(p: Poly) -> Poly:
        """Evaluación en la identidad X = 1, Y = Z = 0"""
        return p.substitute({"X": 1, "Y": 0, "Z": 0})

    @staticmethod
    def antipode(p: Poly) -> Poly:
        """Pullback de la inversión: S(X) = X^-1, S(Y) = -Y X^-1, S(Z) = -Z X^-1"""
        inverse = Poly.var("X", -1)
        return p.substitute({"X": inverse, "Y": -Poly.var("Y") * inverse, "Z": -Poly.var("Z") * inverse})

    @staticmethod
    def counit_and_antipode(p: Poly) -> Tuple[Union[Fraction, Poly], RationalFunction]:
        counit = HopfService.counit(p)
        value = counit.constant_term() if counit.is_constant else counit
        return value, RationalFunction.from_laurent(HopfService.antipode(p), "X")

    @staticmethod
    def antipode_axiom_residual() -> List[Poly]:
        """
        m∘(S⊗id)∘Δ - ε y m∘(id⊗S)∘Δ - ε sobre X, Y, Z

        Returns:
            Seis residuos: primero los tres de S⊗id, luego los de id⊗S
        """
        residuals = []
        for side in (1, 2):
            for w in GROUP_GENERATORS:
                tensor = HopfService.coproduct(Poly.var(w))
                inverse = Poly.var(slot_name("X", side), -1)
                tensor = tensor.substitute({
                    slot_name("X", side): inverse,
                    slot_name("Y", side): -Poly.var(slot_name("Y", side)) * inverse,
                    slot_name("Z", side): -Poly.var(slot_name("Z", side)) * inverse,
                })
                merged = _merge_slots(tensor, GROUP_GENERATORS)
                residuals.append(merged - HopfService.counit(Poly.var(w)))
        return residuals

    @staticmethod
    def is_algebra_map(p: Poly, q: Poly) -> bool:
        """Δ(pq) == Δ(p)Δ(q)"""
        return HopfService.coproduct(p * q) == HopfService.coproduct(p) * HopfService.coproduct(q)
