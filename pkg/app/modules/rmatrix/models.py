"""
Modelos del álgebra de Lie r3(1) y de los tensores antisimétricos sobre ella
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple, Union

from app.modules.exact_core.models import ZERO, Poly, PolyMatrix, Scalar

Vector = Tuple[Poly, Poly, Poly]


@dataclass(frozen=True)
class LieAlgebra3:
    """
    Álgebra de Lie 3D dada por constantes de estructura [e_i, e_j] = Σ_k c^k_ij e_k

    Índices 0-based; solo se guardan los pares i < j.
    """
    brackets: Mapping[Tuple[int, int], Vector]
    name: str = ""

    @classmethod
    def from_brackets(cls, table: Mapping[Tuple[int, int], Tuple[Union[Poly, Scalar], ...]], name: str = "") -> "LieAlgebra3":
        return cls({key: tuple(Poly.coerce(v) for v in value) for key, value in table.items()}, name)

    def structure_constant(self, k: int, i: int, j: int) -> Poly:
        """c^k_ij"""
        if i == j:
            return ZERO
        if i < j:
            return self.brackets.get((i, j), (ZERO, ZERO, ZERO))[k]
        return -self.brackets.get((j, i), (ZERO, ZERO, ZERO))[k]

    def bracket(self, i: int, j: int) -> Vector:
        return tuple(self.structure_constant(k, i, j) for k in range(3))

    def ad(self, i: int) -> PolyMatrix:
        """Matriz de ad(e_i): columna j = coordenadas de [e_i, e_j]"""
        return PolyMatrix([[self.structure_constant(k, i, j) for j in range(3)] for k in range(3)])

    def jacobi_residuals(self) -> List[Poly]:
        """Componentes de [[e_0,e_1],e_2] + cíclico"""
        residual = [ZERO, ZERO, ZERO]
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            inner = self.bracket(i, j)
            for m in range(3):
                if inner[m].is_zero:
                    continue
                for n in range(3):
                    residual[n] = residual[n] + inner[m] * self.structure_constant(n, m, k)
        return residual

    def killing_form(self) -> PolyMatrix:
        """K_ij = tr(ad e_i ad e_j)"""
        ads = [self.ad(i) for i in range(3)]
        grid = []
        for i in range(3):
            row = []
            for j in range(3):
                product = ads[i] @ ads[j]
                row.append(product[0, 0] + product[1, 1] + product[2, 2])
            grid.append(row)
        return PolyMatrix(grid)

    @property
    def is_abelian(self) -> bool:
        return all(c.is_zero for value in self.brackets.values() for c in value)


# [e1,e3] = e1, [e2,e3] = e2, [e1,e2] = 0
BOOK_ALGEBRA = LieAlgebra3.from_brackets(
    {(0, 1): (0, 0, 0), (0, 2): (1, 0, 0), (1, 2): (0, 1, 0)},
    name="r3(1)",
)


@dataclass(frozen=True)
class SkewBivector:
    """r = r12 e1∧e2 + r13 e1∧e3 + r23 e2∧e3"""
    r12: Poly = ZERO
    r13: Poly = ZERO
    r23: Poly = ZERO

    @classmethod
    def of(cls, r12: Union[Poly, Scalar] = 0, r13: Union[Poly, Scalar] = 0, r23: Union[Poly, Scalar] = 0) -> "SkewBivector":
        return cls(Poly.coerce(r12), Poly.coerce(r13), Poly.coerce(r23))

    @classmethod
    def symbolic(cls) -> "SkewBivector":
        return cls(Poly.var("r12"), Poly.var("r13"), Poly.var("r23"))

    def component(self, i: int, j: int) -> Poly:
        """r^{ij} del tensor antisimétrico completo (0-based)"""
        upper = {(0, 1): self.r12, (0, 2): self.r13, (1, 2): self.r23}
        if i == j:
            return ZERO
        if i < j:
            return upper[(i, j)]
        return -upper[(j, i)]

    @property
    def is_zero(self) -> bool:
        return self.r12.is_zero and self.r13.is_zero and self.r23.is_zero

    def as_dict(self) -> Dict[str, str]:
        return {"r12": str(self.r12), "r13": str(self.r13), "r23": str(self.r23)}


@dataclass(frozen=True)
class Trivector:
    """t e1∧e2∧e3 (Λ³ es unidimensional en dimensión 3)"""
    t: Poly = ZERO

    def component(self, i: int, j: int, k: int) -> Poly:
        """Componente del tensor totalmente antisimétrico"""
        if len({i, j, k}) < 3:
            return ZERO
        return self.t if _permutation_sign((i, j, k)) > 0 else -self.t

    @property
    def is_zero(self) -> bool:
        return self.t.is_zero


def _permutation_sign(indices: Tuple[int, ...]) -> int:
    sign = 1
    items = list(indices)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class VectorField:
    """Campo vectorial en la carta local: Σ_w V^w ∂_w con w en (x, y, z)"""
    components: Mapping[str, Poly]
    name: str = ""

    def __call__(self, f: Poly) -> Poly:
        result = ZERO
        for coord, coeff in self.components.items():
            if not coeff.is_zero:
                result = result + coeff * f.partial(coord)
        return result

    def lie_bracket(self, other: "VectorField") -> "VectorField":
        """[V, W]^w = V(W^w) - W(V^w)"""
        coords = sorted(set(self.components) | set(other.components))
        return VectorField({
            w: self(other.components.get(w, ZERO)) - other(self.components.get(w, ZERO))
            for w in coords
        })

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        coords = set(self.components) | set(other.components)
        return all(self.components.get(w, ZERO) == other.components.get(w, ZERO) for w in coords)

    def __neg__(self) -> "VectorField":
        return VectorField({w: -c for w, c in self.components.items()}, self.name)

    __hash__ = None
