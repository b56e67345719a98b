"""Characteristic classes of extensions: f o K_h^{^k} and its cohomology class."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .cochain import (Cochain, ce_differential, cochain_product, pullback_cochain, tensor_pairing)
from .cohomology import CohomologyClass, cohomology, same_class
from .graded import GradedSpace, add_into, normalize, tensor_power_space
from .linalg import RationalMatrix, kernel
from .linfty import LInftyMorphism
from .poly import Poly
from .extension import (CurvatureFamily, LInftyExtension, PulledBackExtension, Section, curvature,
                        default_section, induced_action, pullback_extension)
from .report import Report
from .ruth import (Matrix, Ruth, RuthMorphism, mat_apply, mat_compose, pullback_ruth, skew_projector,
                   tensor_power_ruth, trivial_ruth, unit_space)
from .symcoalg import EMPTY


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass
class EquivariantHom:
    """f: (n[1])^{(x)k} -> V of degree ``degree``, factoring through the skew projector."""
    k: int
    degree: int
    factor: GradedSpace
    target: GradedSpace
    matrix: Matrix

    def __post_init__(self):
        src = self.source
        for j, col in self.matrix.items():
            for i in col:
                if self.target.degrees[i] != src.degrees[j] + self.degree:
                    raise ValueError("map is not homogeneous of the stated degree")

    @property
    def source(self) -> GradedSpace:
        return tensor_power_space(self.factor, self.k)

    def apply(self, vec: Mapping[int, object]) -> dict:
        return mat_apply(self.matrix, vec)

    def is_skew(self) -> bool:
        P = skew_projector(self.factor, self.k)
        return _matrix_eq(mat_compose(self.matrix, P), self.matrix)

    def combine(self, other: "EquivariantHom", a=1, b=1) -> "EquivariantHom":
        """a f + b other."""
        m: Matrix = {j: {i: a * c for i, c in col.items()} for j, col in self.matrix.items()}
        for j, col in other.matrix.items():
            add_into(m.setdefault(j, {}), col, b)
        return EquivariantHom(self.k, self.degree, self.factor, self.target, {j: c for j, c in m.items() if c})

    def compose_left(self, t: Matrix, target: GradedSpace, degree: int = 0) -> "EquivariantHom":
        """t o f."""
        return EquivariantHom(self.k, self.degree + degree, self.factor, target, mat_compose(t, self.matrix))


def make_hom(factor: GradedSpace, k: int, target: GradedSpace, degree: int, matrix: Matrix) -> EquivariantHom:
    return EquivariantHom(k, degree, factor, target, {j: dict(c) for j, c in matrix.items() if c})


def identity_hom(e: LInftyExtension) -> EquivariantHom:
    V = e.kernel_space
    return make_hom(V, 1, V, 0, {i: {i: 1} for i in range(V.dim)})


def _matrix_eq(a: Matrix, b: Matrix) -> bool:
    def norm(m):
        return {j: {i: normalize(c) for i, c in col.items() if c} for j, col in m.items() if any(col.values())}
    return norm(a) == norm(b)


# the equivariance system ----------------------------------------------------------

def _constraint_words(algebra, tmin, tmax, vmin, vmax, degree):
    # f(rho'(w) t) lands in degree |t| + 1 + |w| + |f|, so |w| >= vmin - tmax - |f| - 1
    lo = min(vmin - tmax - degree - 1, tmin - tmax - 1, vmin - vmax - 1)
    return [EMPTY] + algebra.words.words_in_degree_range(lo, -1)


def _equivariance_rows(source_ruth: Ruth, target_ruth: Ruth, degree: int, unknown, words, rows: list):
    """Rows of f o source(w) - (-1)^{|f|(1+|w|)} target(w) o f = 0, one per (w, t, i)."""
    S, V = source_ruth.space, target_ruth.space
    ws = source_ruth.algebra.words
    for w in words:
        op_s = source_ruth.operator(w)
        op_t = target_ruth.operator(w)
        if not op_s and not op_t:
            continue
        s = _sign(degree * (1 + ws.degree(w)))
        # entry (i, t): sum_t' f[i, t'] op_s[t', t] - s sum_j op_t[i, j] f[j, t]
        eqs: dict[tuple[int, int], dict] = {}
        for t, col in op_s.items():
            for t2, c in col.items():
                for i in range(V.dim):
                    u = unknown.get((i, t2))
                    if u is not None:
                        row = eqs.setdefault((i, t), {})
                        row[u] = row.get(u, 0) + c
        for j, col in op_t.items():
            for i, c in col.items():
                for t in range(S.dim):
                    u = unknown.get((j, t))
                    if u is not None:
                        row = eqs.setdefault((i, t), {})
                        row[u] = row.get(u, 0) - s * c
        for row in eqs.values():
            row = {u: c for u, c in row.items() if c}
            if row:
                rows.append(row)


def equivariant_homs(e: LInftyExtension, r: Ruth, k: int, degree: int, strong: bool = True,
                     section: Section | None = None) -> list[EquivariantHom]:
    """Basis of the skew maps (n[1])^{(x)k} -> V of the given degree intertwining the actions.

    ``strong`` imposes the condition over ghat (restricted adjoint against the pullback of r
    along pi); otherwise over g through the action induced by ``section``.
    """
    if r.algebra is not e.g:
        raise ValueError("ruth is not over the base of the extension")
    N = e.kernel_space
    V = r.space
    T = tensor_power_space(N, k)
    unknown = {}
    for t in range(T.dim):
        for i in V.indices_of_degree(T.degrees[t] + degree):
            unknown[(i, t)] = len(unknown)
    if not unknown:
        return []
    rows: list[dict] = []
    P = skew_projector(N, k)
    # skew: f o P - f = 0
    for t in range(T.dim):
        col = dict(P.get(t, {}))
        add_into(col, {t: 1}, -1)
        for i in range(V.dim):
            row = {}
            for t2, c in col.items():
                u = unknown.get((i, t2))
                if u is not None:
                    row[u] = row.get(u, 0) + c
            row = {u: c for u, c in row.items() if c}
            if row:
                rows.append(row)
    if strong:
        src = tensor_power_ruth(e.adjoint(), k)
        tgt = pullback_ruth(e.pi, r)
        alg = e.ghat
    else:
        h = section or default_section(e)
        src = tensor_power_ruth(induced_action(e, h), k)
        tgt = r
        alg = e.g
    tdeg = T.degrees or (0,)
    vdeg = V.degrees or (0,)
    words = _constraint_words(alg, min(tdeg), max(tdeg), min(vdeg), max(vdeg), degree)
    _equivariance_rows(src, tgt, degree, unknown, words, rows)
    m = RationalMatrix.from_rows(len(rows), len(unknown), dict(enumerate(rows)))
    inv = {u: key for key, u in unknown.items()}
    out = []
    for vec in kernel(m):
        mat: Matrix = {}
        for u, c in vec.items():
            i, t = inv[u]
            mat.setdefault(t, {})[i] = c
        out.append(make_hom(N, k, V, degree, mat))
    return out


def equivariance_defects(f: EquivariantHom, e: LInftyExtension, r: Ruth, strong: bool = True,
                         section: Section | None = None) -> Report:
    """Direct evaluation of the intertwining identity on every (word, tensor basis) input."""
    rep = Report(f"equivariance[k={f.k}]")
    if strong:
        src = tensor_power_ruth(e.adjoint(), f.k)
        tgt = pullback_ruth(e.pi, r)
        alg = e.ghat
    else:
        src = tensor_power_ruth(induced_action(e, section or default_section(e)), f.k)
        tgt = r
        alg = e.g
    T, V = f.source, f.target
    tdeg = T.degrees or (0,)
    vdeg = V.degrees or (0,)
    for w in _constraint_words(alg, min(tdeg), max(tdeg), min(vdeg), max(vdeg), f.degree):
        s = _sign(f.degree * (1 + alg.words.degree(w)))
        for t in range(T.dim):
            rep.checked += 1
            lhs = f.apply(src.act(w, {t: 1}))
            rhs = tgt.act(w, f.apply({t: 1}))
            diff = add_into(dict(lhs), rhs, -s)
            if diff:
                rep.add("equivariance", (" v ".join(alg.words.word_names(w)) or "1", T.names[t]), diff)
    P = skew_projector(f.factor, f.k)
    rep.checked += 1
    if not _matrix_eq(mat_compose(f.matrix, P), f.matrix):
        rep.add("skew", ("projector",), None)
    return rep


# curvature powers and the cocycle --------------------------------------------------

def unit_cochain(g, value=1) -> Cochain:
    return Cochain(g, unit_space(), 0, {EMPTY: {0: value}}, "1")


def curvature_wedge_power(K: Cochain, k: int) -> Cochain:
    """K ^_id ... ^_id K, left-associated, valued in the k-th tensor power."""
    if k < 0:
        raise ValueError("negative power")
    if k == 0:
        return unit_cochain(K.algebra)
    out = K
    for _ in range(k - 1):
        out = cochain_product(tensor_pairing(out.space, K.space), out, K)
    out.name = f"{K.name}^{k}"
    return out


def wedge_right(K: Cochain, k: int) -> Cochain:
    """K ^ (K ^ (... ^ K)), right-associated."""
    if k <= 1:
        return curvature_wedge_power(K, k)
    inner = wedge_right(K, k - 1)
    return cochain_product(tensor_pairing(K.space, inner.space, tensor_power_space(K.space, k)), K, inner)


def apply_hom(f: EquivariantHom, gamma: Cochain, name: str | None = None) -> Cochain:
    if gamma.space != f.source:
        raise ValueError("cochain values do not match the source of f")
    return gamma.map_values(f.apply, f.target, f.degree, name or "f(gamma)")


def cwl_cocycle(f: EquivariantHom, e: LInftyExtension, h: Section, r: Ruth | None = None,
                check: bool = True) -> Cochain:
    """f o K_h^{^k}, a cochain of degree k + |f|."""
    if check and r is not None:
        rep = equivariance_defects(f, e, r, strong=False, section=h)
        if not rep.ok:
            raise ValueError(f"f is not equivariant: {rep.violations[0].describe()}")
    K = curvature(e, h)
    return apply_hom(f, curvature_wedge_power(K, f.k), f"f(K[{h.name}])")


def cwl_class(f: EquivariantHom, e: LInftyExtension, r: Ruth, h: Section | None = None) -> CohomologyClass:
    h = h or default_section(e)
    z = cwl_cocycle(f, e, h, r)
    return cohomology(r, z.degree).class_of(z)


class CertificateError(AssertionError):
    pass


def independence_certificate(f: EquivariantHom, e: LInftyExtension, r: Ruth, h0: Section, h1: Section) -> Cochain:
    """beta with D beta = f(K_{h1}) - f(K_{h0}); rechecked before returning."""
    z0 = cwl_cocycle(f, e, h0, r)
    z1 = cwl_cocycle(f, e, h1, r)
    res = same_class(r, z1, z0)
    if not res.same:
        raise CertificateError("no primitive for the difference of the two cocycles")
    beta = res.primitive
    if ce_differential(r, beta) != z1 - z0:
        raise CertificateError("certificate failed its recheck")
    return beta


def transgression(f: EquivariantHom, e: LInftyExtension, h0: Section, h1: Section) -> Cochain:
    """(-1)^{|f|} k int_0^1 f(alpha ^ K_t^{^(k-1)}) dt with alpha = h1 - h0."""
    fam = CurvatureFamily(e, h0, h1)
    k = f.k
    if k == 0:
        return Cochain(e.g, f.target, f.degree - 1, {}, "transgression")
    alpha = fam.alpha
    Kt = fam.cochain
    if k == 1:
        prod = alpha
    else:
        power = curvature_wedge_power(Kt, k - 1)
        prod = cochain_product(tensor_pairing(alpha.space, power.space, f.source), alpha, power)
    val = apply_hom(f, prod)
    coeff = _sign(f.degree) * k
    data = {}
    for w, v in val.data.items():
        vv = {i: normalize(Fraction(coeff) * Fraction(Poly.lift(c).integrate())) for i, c in v.items()}
        vv = {i: c for i, c in vv.items() if c}
        if vv:
            data[w] = vv
    return Cochain(e.g, f.target, val.degree, data, "transgression")


# naturality --------------------------------------------------------------------------

@dataclass
class NaturalityResult:
    commutes: bool
    cochain_equal: bool
    certificate: Cochain | None
    pulled_back: Cochain
    transported: Cochain
    pullback: PulledBackExtension


def naturality_check(T: LInftyMorphism, t: Matrix, e: LInftyExtension, r: Ruth, f: EquivariantHom,
                     target_ruth: Ruth | None = None, h: Section | None = None,
                     hbar: Section | None = None) -> NaturalityResult:
    """Compare T*(f(K_h)) with (t o f)(K_hbar) on the pulled-back extension.

    ``r`` is the ruth of g on V; ``target_ruth`` is the ruth of the source of T on W with
    (T, t) a ruth morphism, defaulting to the pullback of r and t = id.  ``hbar`` defaults
    to the default section of the pulled-back extension; the transported section is used
    for the exact cochain-level comparison.
    """
    pb = pullback_extension(T, e)
    e2 = pb.extension
    W = target_ruth or pullback_ruth(T, r)
    m = RuthMorphism(T, t, W, r, "(T,t)")
    h = h or default_section(e)
    z = cwl_cocycle(f, e, h, r)
    pulled = pullback_cochain(m, z)
    tf = f.compose_left(t, W.space)
    transported_h = pb.transport(h)
    exact = cwl_cocycle(tf, e2, transported_h, W, check=False)
    hb = hbar or default_section(e2)
    other = cwl_cocycle(tf, e2, hb, W, check=False)
    res = same_class(W, pulled, other)
    return NaturalityResult(res.same, exact == pulled, res.primitive, pulled, other, pb)


def pulled_back_curvature_check(T: LInftyMorphism, e: LInftyExtension, h: Section) -> bool:
    """T*K_h = K_{hbar} for the transported section."""
    pb = pullback_extension(T, e)
    hb = pb.transport(h)
    K = curvature(e, h)
    ident = {i: {i: 1} for i in range(e.kernel_space.dim)}
    base = trivial_ruth(e.g, e.kernel_space)
    m = RuthMorphism(T, ident, trivial_ruth(T.source, e.kernel_space), base)
    return pullback_cochain(m, K) == curvature(pb.extension, hb)
