"""Cohomology of the Chevalley-Eilenberg complex of a ruth, computed exactly."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .cochain import Cochain, CochainBasis, ce_differential, differential_matrix, pullback_cochain
from .graded import normalize
from .linalg import RationalMatrix, solve
from .linfty import DegreeCohomology
from .ruth import Ruth, RuthMorphism


class NotACocycle(ValueError):
    pass


class CohomologyGroup:
    def __init__(self, ruth: Ruth, degree: int):
        self.ruth = ruth
        self.degree = degree
        g, V = ruth.algebra, ruth.space
        self.basis = CochainBasis(g, V, degree)
        self.prev_basis = CochainBasis(g, V, degree - 1)
        self.next_basis = CochainBasis(g, V, degree + 1)
        self.d_in = differential_matrix(ruth, degree - 1, self.prev_basis, self.basis)
        self.d_out = differential_matrix(ruth, degree, self.basis, self.next_basis)
        self._h = DegreeCohomology(len(self.basis), self.d_in, self.d_out)

    @property
    def dim(self) -> int:
        return self._h.dim

    @property
    def cochain_dim(self) -> int:
        return len(self.basis)

    def representatives(self) -> list[Cochain]:
        return [self.basis.from_vector(v, f"h{k}") for k, v in enumerate(self._h.reps)]

    def is_cocycle(self, alpha: Cochain) -> bool:
        return not self.d_out.apply(self.basis.to_vector(alpha))

    def coordinates(self, alpha: Cochain) -> list:
        self._check(alpha)
        vec = self.basis.to_vector(alpha)
        if self.d_out.apply(vec):
            raise NotACocycle(f"{alpha.name} is not closed")
        return self._h.coordinates(vec)

    def class_of(self, alpha: Cochain) -> "CohomologyClass":
        return CohomologyClass(self, tuple(self.coordinates(alpha)), alpha)

    def primitive(self, alpha: Cochain) -> "PrimitiveResult":
        """beta with D beta = alpha, or a functional vanishing on coboundaries but not on alpha."""
        self._check(alpha)
        res = solve(self.d_in, self.basis.to_vector(alpha))
        if res.ok:
            return PrimitiveResult(self.prev_basis.from_vector(res.solution, "beta"), None)
        return PrimitiveResult(None, res.certificate)

    def _check(self, alpha: Cochain) -> None:
        if alpha.degree != self.degree or alpha.algebra is not self.ruth.algebra or alpha.space != self.ruth.space:
            raise ValueError("cochain does not belong to this complex")

    def __repr__(self) -> str:
        return f"H^{self.degree}({self.ruth.algebra.name}; {self.ruth.name}) of dimension {self.dim}"


@dataclass
class PrimitiveResult:
    primitive: Cochain | None
    certificate: dict | None

    @property
    def exact(self) -> bool:
        return self.primitive is not None


@dataclass
class CohomologyClass:
    group: CohomologyGroup
    coordinates: tuple
    representative: Cochain

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.group is other.group and self.coordinates == other.coordinates

    __hash__ = None


_CACHE: dict[tuple[int, int], CohomologyGroup] = {}


def cohomology(ruth: Ruth, degree: int) -> CohomologyGroup:
    key = (id(ruth), degree)
    grp = _CACHE.get(key)
    if grp is None or grp.ruth is not ruth:
        grp = CohomologyGroup(ruth, degree)
        _CACHE[key] = grp
    return grp


def cohomology_dimensions(ruth: Ruth, degrees) -> dict[int, int]:
    return {p: cohomology(ruth, p).dim for p in degrees}


@dataclass
class SameClassResult:
    same: bool
    primitive: Cochain | None
    certificate: dict | None


def same_class(ruth: Ruth, alpha: Cochain, beta: Cochain) -> SameClassResult:
    """Decide whether two cocycles are cohomologous; the witness is checked before returning."""
    grp = cohomology(ruth, alpha.degree)
    for x in (alpha, beta):
        if not grp.is_cocycle(x):
            raise NotACocycle(f"{x.name} is not closed")
    diff = alpha - beta
    res = grp.primitive(diff)
    if res.exact:
        assert ce_differential(ruth, res.primitive) == diff
        return SameClassResult(True, res.primitive, None)
    y = res.certificate
    assert not RationalMatrix.from_rows(1, grp.d_in.nrows, {0: y}).__matmul__(grp.d_in).rows
    return SameClassResult(False, None, y)


def induced_map(morphism: RuthMorphism, degree: int) -> RationalMatrix:
    """Matrix of the pullback H^p(target) -> H^p(source) in the representative bases."""
    tgt = cohomology(morphism.target, degree)
    src = cohomology(morphism.source, degree)
    cols = {}
    for k, rep in enumerate(tgt.representatives()):
        coords = src.coordinates(pullback_cochain(morphism, rep))
        cols[k] = {i: normalize(c) for i, c in enumerate(coords) if c}
    return RationalMatrix.from_columns(src.dim, tgt.dim, cols)


def theta_cocycle(mm, ruth: Ruth | None = None) -> tuple[Ruth, Cochain]:
    """The 3-bracket of a minimal 2-term model as a CE 3-cochain of its degree-0 Lie algebra.

    Coefficients are the degree -1 part placed in degree 0, acted on through the 2-bracket.
    Passing ``ruth`` from another model of the same algebra puts both cochains in one complex.
    """
    from .graded import GradedSpace
    from .linfty import LInftyAlgebra

    M = mm.algebra
    nk = mm.n_kernel
    coker = mm.coker_indices()
    cpos = {i: k for k, i in enumerate(coker)}
    kspace = GradedSpace(tuple(M.space.names[i] for i in coker), (0,) * len(coker))
    lam = {}
    for w, v in M.lam.items():
        if len(w) == 2 and all(i in cpos for i in w):
            lam[tuple(cpos[i] for i in w)] = {cpos[i]: c for i, c in v.items()}
    lie = LInftyAlgebra(kspace, lam, f"H0({M.name})")
    V = GradedSpace(tuple(M.space.names[i] for i in range(nk)), (0,) * nk)
    comps = {}
    for x in coker:
        m = {}
        for z in range(nk):
            val = M.bracket((x, z))
            if val:
                m[z] = dict(val)
        if m:
            comps[(cpos[x],)] = m
    if ruth is None:
        ruth = Ruth(lie, V, {}, comps, "D")
    elif ruth.algebra.lam != lie.lam or ruth.components != Ruth(lie, V, {}, comps).components:
        raise ValueError("models differ in their binary brackets")
    data = {tuple(cpos[i] for i in w): dict(v) for w, v in mm.theta.items()}
    return ruth, Cochain(ruth.algebra, V, 3, data, "theta")
