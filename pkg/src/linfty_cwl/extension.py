"""Extensions n -> ghat -> g of L-infinity algebras, sections, curvature and the induced action."""
from __future__ import annotations

from typing import Mapping

from .cochain import Cochain, ce_differential, cochain_words
from .graded import GradedSpace, add_into, normalize, shift
from .linalg import RationalMatrix, apply_left_inverse, kernel, left_inverse, solve
from .linfty import LInftyAlgebra, LInftyMorphism, check_jacobi, check_morphism
from .poly import Poly
from .report import Report
from .ruth import Matrix, NotAnIdeal, Ruth, mat_add, restricted_adjoint
from .symcoalg import EMPTY, Word, WordSpace


class LInftyExtension:
    def __init__(self, n: LInftyAlgebra, ghat: LInftyAlgebra, g: LInftyAlgebra,
                 iota: LInftyMorphism, pi: LInftyMorphism, name: str = "E"):
        if iota.source is not n or iota.target is not ghat or pi.source is not ghat or pi.target is not g:
            raise ValueError("morphisms do not match the algebras")
        if not iota.is_strict or not pi.is_strict:
            raise ValueError("extension maps must be strict")
        self.n, self.ghat, self.g = n, ghat, g
        self.iota, self.pi = iota, pi
        self.name = name
        self.iota_cols = [dict(iota.components.get((k,), {})) for k in range(n.dim)]
        self.pi_cols = {j: dict(pi.components.get((j,), {})) for j in range(ghat.dim)}
        self._inverse = left_inverse(self.iota_cols) if n.dim else {}
        self._adjoint: Ruth | None = None

    @property
    def kernel_space(self) -> GradedSpace:
        """n[1], the coefficients of the curvature."""
        return self.n.shifted

    def to_kernel(self, vec: Mapping[int, object]) -> dict:
        """Coordinates in n of a vector of ghat lying in the image of iota; raises otherwise."""
        out = apply_left_inverse(self._inverse, vec)
        back: dict = {}
        for k, c in out.items():
            add_into(back, self.iota_cols[k], c)
        if add_into(back, vec, -1):
            raise ValueError("vector is not in the image of the kernel")
        return out

    def project(self, vec: Mapping[int, object]) -> dict:
        out: dict = {}
        for j, c in vec.items():
            add_into(out, self.pi_cols.get(j, {}), c)
        return out

    def adjoint(self) -> Ruth:
        """ad restricted to n[1], a ruth of ghat."""
        if self._adjoint is None:
            self._adjoint = restricted_adjoint(self.ghat, self.n.space, dict(enumerate(self.iota_cols)),
                                               f"ad|{self.n.name}")
        return self._adjoint

    def __repr__(self) -> str:
        return f"LInftyExtension({self.name}: {self.n.name} -> {self.ghat.name} -> {self.g.name})"


def kernel_extension(ghat: LInftyAlgebra, g: LInftyAlgebra, pi: Mapping[int, Mapping[int, object]],
                     n_names: list[str] | None = None, name: str = "E") -> LInftyExtension:
    """Extension with n = ker pi, brackets restricted from ghat."""
    piF = LInftyMorphism.strict(ghat, g, pi, "pi")
    m = RationalMatrix.from_columns(g.dim, ghat.dim, piF.linear().cols)
    ker = kernel(m)
    degs = []
    for v in ker:
        ds = {ghat.space.degrees[i] for i in v}
        assert len(ds) == 1
        degs.append(ds.pop())
    names = tuple(n_names or [f"n{k}" for k in range(len(ker))])
    nspace = GradedSpace(names, tuple(degs))
    inv = left_inverse(ker) if ker else {}
    lam = {}
    nws = WordSpace(shift(nspace, 1))
    for k in range(1, ghat.max_arity() + 1):
        for w in nws.words_of_weight(k):
            val: dict = {EMPTY: 1}
            for u in w:
                val = ghat.words.mul(val, ghat.words.vector_to_element(ker[u]))
            out = ghat.apply(val)
            if out:
                lam[w] = apply_left_inverse(inv, out)
    n = LInftyAlgebra(nspace, lam, "n")
    iota = LInftyMorphism.strict(n, ghat, dict(enumerate(ker)), "iota")
    return LInftyExtension(n, ghat, g, iota, piF, name)


def check_extension(e: LInftyExtension) -> Report:
    rep = Report(f"extension[{e.name}]")
    for alg in (e.n, e.ghat, e.g):
        rep.extend(check_jacobi(alg))
    rep.extend(check_morphism(e.iota))
    rep.extend(check_morphism(e.pi))
    iota_m = RationalMatrix.from_columns(e.ghat.dim, e.n.dim, dict(enumerate(e.iota_cols)))
    pi_m = RationalMatrix.from_columns(e.g.dim, e.ghat.dim, e.pi_cols)
    for deg in sorted(set(e.n.space.degrees) | set(e.ghat.space.degrees) | set(e.g.space.degrees)):
        rep.checked += 1
        nn = e.n.space.indices_of_degree(deg)
        gh = e.ghat.space.indices_of_degree(deg)
        gg = e.g.space.indices_of_degree(deg)
        r_iota = _sub_rank(iota_m, gh, nn)
        r_pi = _sub_rank(pi_m, gg, gh)
        if r_iota != len(nn):
            rep.add("iota-injective", (deg,), f"rank {r_iota} < {len(nn)}")
        if r_pi != len(gg):
            rep.add("pi-surjective", (deg,), f"rank {r_pi} < {len(gg)}")
        if len(gh) - r_pi != r_iota:
            rep.add("exactness", (deg,), f"dim ker pi = {len(gh) - r_pi}, dim im iota = {r_iota}")
    rep.checked += 1
    comp = (pi_m @ iota_m)
    if not comp.is_zero():
        rep.add("pi-iota", ("composite",), "nonzero")
    if e.n.dim and iota_m.rank() == e.n.dim:
        try:
            e.adjoint()
        except NotAnIdeal as exc:
            rep.add("ideal", (" v ".join(exc.word), exc.element), "bracket leaves the kernel")
    return rep


def _sub_rank(m: RationalMatrix, rows: list[int], cols: list[int]) -> int:
    rpos = {r: k for k, r in enumerate(rows)}
    cpos = {c: k for k, c in enumerate(cols)}
    sub = {}
    for r in rows:
        row = m.rows.get(r, {})
        vals = {cpos[c]: v for c, v in row.items() if c in cpos}
        if vals:
            sub[rpos[r]] = vals
    return RationalMatrix.from_rows(len(rows), len(cols), sub).rank()


# sections -----------------------------------------------------------------

class Section:
    """A degree-0 linear right inverse of pi, extended to S(g[1]) as the strict map S(h)."""

    def __init__(self, e: LInftyExtension, cols: Mapping[int, Mapping[int, object]], name: str = "h",
                 check: bool = True):
        self.extension = e
        self.name = name
        self.cols = {j: {i: c for i, c in dict(col).items() if c} for j, col in cols.items()}
        if check:
            for j in range(e.g.dim):
                col = self.cols.get(j, {})
                for i in col:
                    if e.ghat.space.degrees[i] != e.g.space.degrees[j]:
                        raise ValueError(f"section column {e.g.space.names[j]} is not of degree 0")
                if {k: normalize(v) for k, v in e.project(col).items()} != {j: 1}:
                    raise ValueError(f"section is not a right inverse of pi at {e.g.space.names[j]}")
        self._cache: dict[Word, dict] = {}

    def image(self, word: Word) -> dict[Word, object]:
        """S(h)(word) in S(ghat[1])."""
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        ws = self.extension.ghat.words
        acc: dict = {EMPTY: 1}
        for x in word:
            col = self.cols.get(x)
            if not col:
                acc = {}
                break
            acc = ws.mul(acc, ws.vector_to_element(col))
        self._cache[word] = acc
        return acc

    def as_morphism(self) -> LInftyMorphism:
        e = self.extension
        return LInftyMorphism.strict(e.g, e.ghat, self.cols, self.name)

    def difference(self, other: "Section") -> Cochain:
        """(other - self) as a degree-0 cochain in C(g, n[1]) supported on single letters."""
        e = self.extension
        data = {}
        for j in range(e.g.dim):
            diff = add_into(dict(other.cols.get(j, {})), self.cols.get(j, {}), -1)
            if diff:
                data[(j,)] = e.to_kernel(diff)
        return Cochain(e.g, e.kernel_space, 0, data, f"{other.name}-{self.name}")

    def interpolate(self, other: "Section") -> "Section":
        """h_t = self + t (other - self) with polynomial entries."""
        t = Poly.t()
        cols = {}
        for j in range(self.extension.g.dim):
            col = {i: Poly.lift(c) for i, c in self.cols.get(j, {}).items()}
            for i, c in other.cols.get(j, {}).items():
                col[i] = col.get(i, Poly()) + t * c
            for i, c in self.cols.get(j, {}).items():
                col[i] = col[i] - t * c
            cols[j] = {i: c for i, c in col.items() if c}
        return Section(self.extension, cols, f"{self.name}~{other.name}", check=False)

    def at(self, value) -> "Section":
        cols = {j: {i: (c(value) if isinstance(c, Poly) else c) for i, c in col.items()}
                for j, col in self.cols.items()}
        return Section(self.extension, cols, f"{self.name}({value})")


def default_section(e: LInftyExtension, name: str = "h") -> Section:
    """Echelon-based right inverse of pi, one basis vector at a time."""
    pi_m = RationalMatrix.from_columns(e.g.dim, e.ghat.dim, e.pi_cols)
    cols = {}
    for j in range(e.g.dim):
        res = solve(pi_m, {j: 1})
        if not res.ok:
            raise ValueError(f"pi is not surjective at {e.g.space.names[j]}")
        cols[j] = res.solution
    return Section(e, cols, name)


def random_section(e: LInftyExtension, rng, lo: int = -3, hi: int = 3, name: str | None = None) -> Section:
    """Default section plus a random degree-0 map g -> n pushed through iota."""
    base = default_section(e)
    cols = {j: dict(c) for j, c in base.cols.items()}
    for j in range(e.g.dim):
        deg = e.g.space.degrees[j]
        for k in e.n.space.indices_of_degree(deg):
            c = rng.randint(lo, hi)
            if c:
                add_into(cols.setdefault(j, {}), e.iota_cols[k], c)
    return Section(e, cols, name or f"h{rng.randint(0, 999)}")


# curvature -------------------------------------------------------------------

def curvature(e: LInftyExtension, h: Section) -> Cochain:
    """K_h(w) = lambda_hat(S(h) w) - h(lambda(w)), as a degree-1 cochain in C(g, n[1])."""
    g = e.g
    V = e.kernel_space
    data = {}
    for w in cochain_words(g, V, 1):
        if not w:
            continue
        val = e.ghat.apply(h.image(w))
        for j, c in g.lam.get(w, {}).items():
            add_into(val, h.cols.get(j, {}), -c)
        if val:
            try:
                data[w] = e.to_kernel(val)
            except ValueError:
                raise AssertionError(f"curvature on {g.words.word_names(w)} leaves the kernel")
    # words outside the window must give zero: the window covers every degree of n[1]
    return Cochain(g, V, 1, data, f"K[{h.name}]", check=False)


def is_flat(e: LInftyExtension, h: Section) -> bool:
    return curvature(e, h).is_zero()


def induced_action(e: LInftyExtension, h: Section) -> Ruth:
    """h*(ad|n): rho(w (x) u) = lambda_hat(S(h)(w) v iota u); possibly not flat."""
    ad = e.adjoint()
    comps: dict[Word, Matrix] = {}
    V = e.kernel_space
    if V.dim:
        vmin, vmax = min(V.degrees), max(V.degrees)
        for w in e.g.words.words_in_degree_range(vmin - vmax - 1, -1):
            m: Matrix = {}
            for w2, c in h.image(w).items():
                op = ad.components.get(w2)
                if op:
                    m = mat_add(m, op, c)
            if m:
                comps[w] = m
    return Ruth(e.g, V, ad.partial, comps, f"rho[{h.name}]")


def bianchi(e: LInftyExtension, h: Section) -> Cochain:
    """D_rho K_h with the induced action; zero by the Bianchi identity."""
    return ce_differential(induced_action(e, h), curvature(e, h))


def bianchi_check(e: LInftyExtension, h: Section) -> bool:
    return bianchi(e, h).is_zero()


def curvature_symmetry_check(e: LInftyExtension, h: Section) -> bool:
    """K_h evaluated on permuted letters agrees with the Koszul-signed canonical value."""
    from itertools import permutations
    g = e.g
    K = curvature(e, h)
    ws = g.words
    for w, v in K.data.items():
        for p in set(permutations(range(len(w)))):
            raw = tuple(w[i] for i in p)
            val: dict = {}
            # evaluate the unsymmetrized formula on the permuted letters
            img: dict = {EMPTY: 1}
            for x in raw:
                img = e.ghat.words.mul(img, e.ghat.words.vector_to_element(h.cols.get(x, {})))
            add_into(val, e.ghat.apply(img))
            s, cw = ws.canonicalize(raw)
            for j, c in g.lam.get(cw, {}).items():
                add_into(val, h.cols.get(j, {}), -s * c)
            if {k: normalize(c) for k, c in e.to_kernel(val).items()} != {k: normalize(s * c) for k, c in v.items()}:
                return False
    return True


# one-parameter families ---------------------------------------------------------

class CurvatureFamily:
    """K_{h_t} for h_t = h0 + t (h1 - h0); entries are polynomials in t."""

    def __init__(self, e: LInftyExtension, h0: Section, h1: Section):
        self.extension = e
        self.h0, self.h1 = h0, h1
        self.section = h0.interpolate(h1)
        self.cochain = curvature(e, self.section)
        self.action = induced_action(e, self.section)
        self.alpha = h0.difference(h1)

    def at(self, value) -> Cochain:
        data = {}
        for w, v in self.cochain.data.items():
            vv = {i: (c(value) if isinstance(c, Poly) else c) for i, c in v.items()}
            vv = {i: c for i, c in vv.items() if c}
            if vv:
                data[w] = vv
        return Cochain(self.extension.g, self.cochain.space, 1, data, f"K(t={value})")

    def derivative(self) -> Cochain:
        data = {}
        for w, v in self.cochain.data.items():
            dv = {i: Poly.lift(c).derivative() for i, c in v.items()}
            dv = {i: c for i, c in dv.items() if c}
            if dv:
                data[w] = dv
        return Cochain(self.extension.g, self.cochain.space, 1, data, "dK/dt", check=False)

    def variation(self) -> Cochain:
        """D_{rho_t} alpha with alpha = h1 - h0."""
        return ce_differential(self.action, self.alpha)

    def max_degree(self) -> int:
        return max((Poly.lift(c).degree for v in self.cochain.data.values() for c in v.values()), default=0)


def _poly_normal(data) -> dict:
    out = {}
    for w, v in data.items():
        vv = {i: Poly.lift(c) for i, c in v.items() if c}
        if vv:
            out[w] = vv
    return out


def curvature_family(e: LInftyExtension, h0: Section, h1: Section) -> CurvatureFamily:
    return CurvatureFamily(e, h0, h1)


def variation_check(e: LInftyExtension, h0: Section, h1: Section) -> bool:
    fam = CurvatureFamily(e, h0, h1)
    return _poly_normal(fam.derivative().data) == _poly_normal(fam.variation().data)


# pullback along strict morphisms ---------------------------------------------------

class PulledBackExtension:
    def __init__(self, extension: LInftyExtension, T: LInftyMorphism, T_bullet: LInftyMorphism,
                 original: LInftyExtension, fiber: list[dict], inverse: dict):
        self.extension = extension
        self.fiber = fiber
        self.inverse = inverse
        self.T = T
        self.T_bullet = T_bullet
        self.original = original

    def transport(self, h: Section) -> Section:
        """hbar(y) = (y, h(T y)) in the fiber product."""
        e2 = self.extension
        T = self.T.linear()
        hdim = self.T.source.dim
        cols = {}
        for j in range(hdim):
            amb = {j: 1}
            for i, c in T.cols.get(j, {}).items():
                for k, x in h.cols.get(i, {}).items():
                    amb[hdim + k] = amb.get(hdim + k, 0) + c * x
            cols[j] = self._coords(amb)
        return Section(e2, cols, f"{h.name}~")

    def _coords(self, amb: Mapping[int, object]) -> dict:
        out = apply_left_inverse(self.inverse, amb)
        back: dict = {}
        for k, c in out.items():
            add_into(back, self.fiber[k], c)
        if add_into(back, amb, -1):
            raise AssertionError("vector outside the fiber product")
        return out


def pullback_extension(T: LInftyMorphism, e: LInftyExtension, name: str | None = None) -> PulledBackExtension:
    """Fiber product hhat = h x_g ghat with componentwise brackets."""
    if not T.is_strict:
        raise ValueError("pullbacks are implemented for strict morphisms only")
    if T.target is not e.g:
        raise ValueError("morphism does not land in the base of the extension")
    h, gh = T.source, e.ghat
    amb_names = h.space.names + tuple(f"{x}'" for x in gh.space.names)
    amb_degs = h.space.degrees + gh.space.degrees
    hd = h.dim
    Tl = T.linear()
    # [T, -pi] : h + ghat -> g
    cols = {}
    for j in range(hd):
        cols[j] = dict(Tl.cols.get(j, {}))
    for j in range(gh.dim):
        cols[hd + j] = {i: -c for i, c in e.pi_cols.get(j, {}).items()}
    fiber = kernel(RationalMatrix.from_columns(e.g.dim, len(amb_degs), cols))
    fiber = sorted(fiber, key=lambda v: (amb_degs[min(v)], min(v)))
    degs, names = [], []
    for k, v in enumerate(fiber):
        ds = {amb_degs[i] for i in v}
        assert len(ds) == 1
        degs.append(ds.pop())
        names.append(_fiber_name(amb_names, v, k))
    if len(set(names)) != len(names):
        names = [f"f{k}" for k in range(len(fiber))]
    fspace = GradedSpace(tuple(names), tuple(degs))
    inv = left_inverse(fiber) if fiber else {}
    fws = WordSpace(shift(fspace, 1))
    arity = max(h.max_arity(), gh.max_arity())
    lam = {}
    for k in range(1, arity + 1):
        for w in fws.words_of_weight(k):
            out: dict = {}
            parts_h: dict = {EMPTY: 1}
            parts_g: dict = {EMPTY: 1}
            for u in w:
                vh = {i: c for i, c in fiber[u].items() if i < hd}
                vg = {i - hd: c for i, c in fiber[u].items() if i >= hd}
                parts_h = h.words.mul(parts_h, h.words.vector_to_element(vh))
                parts_g = gh.words.mul(parts_g, gh.words.vector_to_element(vg))
            add_into(out, h.apply(parts_h))
            add_into(out, {hd + i: c for i, c in gh.apply(parts_g).items()})
            if out:
                coords = apply_left_inverse(inv, out)
                back: dict = {}
                for q, c in coords.items():
                    add_into(back, fiber[q], c)
                if add_into(back, out, -1):
                    raise AssertionError("fiber product is not closed under brackets")
                lam[w] = coords
    hhat = LInftyAlgebra(fspace, lam, f"{T.name}*{gh.name}")
    iota_cols = {}
    for k in range(e.n.dim):
        v = {hd + i: c for i, c in e.iota_cols[k].items()}
        iota_cols[k] = apply_left_inverse(inv, v)
    pi_cols = {q: {i: c for i, c in fiber[q].items() if i < hd} for q in range(len(fiber))}
    Tb_cols = {q: {i - hd: c for i, c in fiber[q].items() if i >= hd} for q in range(len(fiber))}
    iota = LInftyMorphism.strict(e.n, hhat, iota_cols, "iota")
    pi = LInftyMorphism.strict(hhat, h, pi_cols, "pi")
    Tb = LInftyMorphism.strict(hhat, gh, Tb_cols, f"{T.name}.")
    ext = LInftyExtension(e.n, hhat, h, iota, pi, name or f"{T.name}*{e.name}")
    return PulledBackExtension(ext, T, Tb, e, fiber, inv)


def _fiber_name(names: tuple[str, ...], v: Mapping[int, object], k: int) -> str:
    if len(v) == 1:
        (i, c), = v.items()
        if c == 1:
            return names[i]
    return f"f{k}"
