"""L-infinity algebras in the symmetric (shifted) convention, morphisms and crossed modules.

An algebra lives on a graded space ``g`` concentrated in degrees [-d, 0].
Its structure is a degree-1 word map ``lam`` on S(g[1]); the same basis
indices are used for g and g[1].  Brackets in the skew convention are
accepted and produced through :mod:`symcoalg`'s decalage.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .graded import (GradedSpace, HomogeneousMap, add_into, add_term, format_vector,
                     koszul_sign, normalize, scalar, shift, skew_sign)
from .linalg import RationalMatrix, Subspace, apply_left_inverse, kernel, left_inverse, rref
from .report import Report
from .symcoalg import (EMPTY, CoalgebraMap, Coderivation, Word, WordSpace, apply_word_map,
                       brackets_to_lambdas, lambdas_to_brackets, skew_bracket_value, unshuffles)


def _named_keys(space: GradedSpace, table: Mapping) -> dict:
    out = {}
    for key, val in table.items():
        idx = tuple(space.index(k) if isinstance(k, str) else k for k in key)
        vec = {}
        for t, c in val.items():
            c = scalar(c)
            if c:
                vec[space.index(t) if isinstance(t, str) else t] = c
        out[idx] = vec
    return out


class LInftyAlgebra:
    def __init__(self, space: GradedSpace, lam: Mapping[Word, Mapping[int, object]], name: str = "g"):
        if any(d > 0 for d in space.degrees):
            raise ValueError("L-infinity algebras must be concentrated in non-positive degrees")
        self.space = space
        self.name = name
        self.shifted = shift(space, 1)
        self.words = WordSpace(self.shifted)
        data: dict[Word, dict] = {}
        for w, v in lam.items():
            w = tuple(w)
            s, cw = self.words.canonicalize(w)
            if not s:
                if any(v.values()):
                    raise ValueError(f"value on the zero word {w}")
                continue
            vec = {i: s * scalar(c) for i, c in v.items() if scalar(c)}
            if cw in data and data[cw] != vec:
                raise ValueError(f"conflicting values on {self.words.word_names(cw)}")
            if vec:
                data[cw] = vec
        self.lam = data
        self.d = Coderivation(self.words, data)

    @classmethod
    def from_brackets(cls, space: GradedSpace, brackets: Mapping, name: str = "g") -> "LInftyAlgebra":
        """Build from skew brackets keyed by tuples of basis names or indices."""
        return cls(space, brackets_to_lambdas(space, _named_keys(space, brackets)), name)

    def brackets(self) -> dict[Word, dict]:
        return lambdas_to_brackets(self.space, self.lam)

    @property
    def depth(self) -> int:
        return -min(self.space.degrees) if self.space.dim else 0

    @property
    def dim(self) -> int:
        return self.space.dim

    def max_arity(self) -> int:
        return max((len(w) for w in self.lam), default=0)

    def apply(self, x: Mapping[Word, object]) -> dict[int, object]:
        """lambda applied to an element of S(g[1])."""
        return apply_word_map(self.lam, x)

    def bracket(self, raw: Sequence[int]) -> dict[int, object]:
        s, w = self.words.canonicalize(raw)
        if not s:
            return {}
        return {i: s * c for i, c in self.lam.get(w, {}).items()}

    def differential(self) -> HomogeneousMap:
        """lambda_1 as a degree-1 map on g."""
        cols = {w[0]: v for w, v in self.lam.items() if len(w) == 1}
        return HomogeneousMap(self.space, self.space, 1, cols)

    def validation_words(self, max_weight: int | None = None) -> list[Word]:
        """Words on which the Jacobiator can be nonzero.

        The Jacobiator on a word w has degree |w| + 2 in g[1], which lies in
        [-d-1, -1] only when |w| >= -d-3.  With ``max_weight`` every word of
        weight <= max_weight is returned instead.
        """
        if max_weight is not None:
            return self.words.words_up_to_weight(max_weight)[1:]
        return self.words.words_in_degree_range(-self.depth - 3, -1)

    def __repr__(self) -> str:
        return f"LInftyAlgebra({self.name}, dim={self.dim}, depth={self.depth})"


def zero_algebra(space: GradedSpace, name: str = "g") -> LInftyAlgebra:
    return LInftyAlgebra(space, {}, name)


def jacobiator(g: LInftyAlgebra, word: Word) -> dict[int, object]:
    """Evaluate the symmetric Jacobi sum on a canonical word via explicit unshuffles."""
    n = len(word)
    degs = [g.words.deg[x] for x in word]
    out: dict = {}
    for i in range(1, n + 1):
        for perm in unshuffles(i, n - i):
            inner = g.bracket([word[p] for p in perm[:i]])
            if not inner:
                continue
            eps = koszul_sign(perm, degs)
            rest = [word[p] for p in perm[i:]]
            for y, c in inner.items():
                add_into(out, g.bracket([y] + rest), eps * c)
    return out


def check_jacobi(g: LInftyAlgebra, max_weight: int | None = None) -> Report:
    rep = Report(f"jacobi[{g.name}]")
    for w in g.validation_words(max_weight):
        rep.checked += 1
        val = jacobiator(g, w)
        if val:
            rep.add("jacobi", (len(w), " v ".join(g.words.word_names(w))), format_vector(g.shifted, val))
    return rep


def check_square_zero(g: LInftyAlgebra, max_weight: int | None = None) -> Report:
    """Independent oracle: d_lambda composed with itself vanishes."""
    rep = Report(f"d-squared[{g.name}]")
    for w in g.validation_words(max_weight):
        rep.checked += 1
        dd = g.d.apply(g.d(w))
        if dd:
            rep.add("d^2", (len(w), " v ".join(g.words.word_names(w))), len(dd))
    return rep


def bracket_jacobiator(space: GradedSpace, table: Mapping[Word, Mapping[int, object]],
                       args: Sequence[int]) -> dict[int, object]:
    """Graded Jacobiator in the skew convention on the arguments ``args``."""
    n = len(args)
    degs = [space.degrees[a] for a in args]
    out: dict = {}
    for i in range(1, n + 1):
        j = n + 1 - i
        outer_sign = -1 if (i * (j - 1)) % 2 else 1
        for perm in unshuffles(i, n - i):
            chi = skew_sign(perm, degs)
            s1, inner = skew_bracket_value(space, table, [args[p] for p in perm[:i]])
            if not s1 or not inner:
                continue
            rest = [args[p] for p in perm[i:]]
            for y, c in inner.items():
                s2, val = skew_bracket_value(space, table, [y] + rest)
                if s2 and val:
                    add_into(out, val, outer_sign * chi * s1 * s2 * c)
    return out


def check_jacobi_brackets(g: LInftyAlgebra, max_weight: int | None = None) -> Report:
    """The Jacobi identity evaluated in the skew bracket convention."""
    table = g.brackets()
    rep = Report(f"skew-jacobi[{g.name}]")
    for w in g.validation_words(max_weight):
        rep.checked += 1
        val = bracket_jacobiator(g.space, table, w)
        if val:
            rep.add("skew-jacobi", (len(w), ", ".join(g.space.names[i] for i in w)), format_vector(g.space, val))
    return rep


# morphisms -----------------------------------------------------------------

class LInftyMorphism:
    """Coalgebra morphism S(g[1]) -> S(h[1]) given by its degree-0 corestriction."""

    def __init__(self, source: LInftyAlgebra, target: LInftyAlgebra,
                 components: Mapping[Word, Mapping[int, object]], name: str = "F"):
        self.source = source
        self.target = target
        self.name = name
        data: dict[Word, dict] = {}
        for w, v in components.items():
            s, cw = source.words.canonicalize(tuple(w))
            if not s:
                continue
            vec = {i: s * scalar(c) for i, c in v.items() if scalar(c)}
            if vec:
                add_into(data.setdefault(cw, {}), vec)
        self.components = {w: v for w, v in data.items() if v}
        self.map = CoalgebraMap(source.words, target.words, self.components)

    @classmethod
    def strict(cls, source: LInftyAlgebra, target: LInftyAlgebra,
               linear: HomogeneousMap | Mapping[int, Mapping[int, object]], name: str = "F"):
        cols = linear.cols if isinstance(linear, HomogeneousMap) else linear
        return cls(source, target, {(j,): col for j, col in cols.items()}, name)

    @classmethod
    def identity(cls, g: LInftyAlgebra) -> "LInftyMorphism":
        return cls.strict(g, g, {i: {i: 1} for i in range(g.dim)}, "id")

    @property
    def is_strict(self) -> bool:
        return all(len(w) == 1 for w in self.components)

    def linear(self) -> HomogeneousMap:
        cols = {w[0]: v for w, v in self.components.items() if len(w) == 1}
        return HomogeneousMap(self.source.space, self.target.space, 0, cols)

    def __call__(self, word: Word) -> dict[Word, object]:
        return self.map(word)

    def compose(self, other: "LInftyMorphism") -> "LInftyMorphism":
        """self o other."""
        if other.target is not self.source:
            raise ValueError("incompatible composition")
        comps = {}
        for w in _component_words(other.source, self.target.depth):
            v = apply_word_map(self.components, other(w))
            if v:
                comps[w] = v
        return LInftyMorphism(other.source, self.target, comps, f"{self.name}.{other.name}")


def _component_words(g: LInftyAlgebra, target_depth: int) -> list[Word]:
    # a degree-0 component on w lands in degree |w| >= -target_depth - 1
    return g.words.words_in_degree_range(-target_depth - 1, -1)


def morphism_defect(F: LInftyMorphism, word: Word) -> dict[int, object]:
    """Corestriction of F d_g - d_h F on a word."""
    lhs = apply_word_map(F.components, F.source.d(word))
    rhs = F.target.apply(F(word))
    return add_into(dict(lhs), rhs, -1)


def morphism_words(F: LInftyMorphism, max_weight: int | None = None) -> list[Word]:
    """Words where the morphism defect can be nonzero: degree >= -d_target - 2."""
    if max_weight is not None:
        return F.source.words.words_up_to_weight(max_weight)[1:]
    return F.source.words.words_in_degree_range(-F.target.depth - 2, -1)


def check_morphism(F: LInftyMorphism, max_weight: int | None = None) -> Report:
    rep = Report(f"morphism[{F.name}]")
    for w in morphism_words(F, max_weight):
        rep.checked += 1
        val = morphism_defect(F, w)
        if val:
            rep.add("morphism", (len(w), " v ".join(F.source.words.word_names(w))),
                    format_vector(F.target.shifted, val))
    return rep


# complexes and quasi-isomorphisms ----------------------------------------------

class DegreeCohomology:
    """Cohomology of one degree of a complex given by incoming and outgoing matrices."""

    def __init__(self, dim: int, d_in: RationalMatrix | None, d_out: RationalMatrix | None):
        self.n = dim
        if d_out is None or d_out.is_zero():
            cycles = [{i: 1} for i in range(dim)]
        else:
            cycles = kernel(d_out)
        self.boundaries = Subspace(d_in.columns().values() if d_in is not None else [])
        reduced = [self.boundaries.reduce(z) for z in cycles]
        pivots, order = rref(r for r in reduced if r)
        self.reps = [pivots[c] for c in order]
        self.rep_pivots = order

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coordinates(self, z: Mapping[int, object]) -> list:
        r = self.boundaries.reduce(z)
        coords = [normalize(r.get(c, 0)) for c in self.rep_pivots]
        rest = dict(r)
        for c, rep in zip(coords, self.reps):
            add_into(rest, rep, -c)
        if rest:
            raise ValueError("vector is not a cocycle")
        return coords

    def is_boundary(self, z: Mapping[int, object]) -> bool:
        return self.boundaries.contains(z)


def _local(space: GradedSpace, deg: int) -> list[int]:
    return space.indices_of_degree(deg)


def _block(m: HomogeneousMap, src: list[int], tgt: list[int]) -> RationalMatrix:
    tpos = {i: k for k, i in enumerate(tgt)}
    cols = {}
    for k, j in enumerate(src):
        col = m.cols.get(j, {})
        cols[k] = {tpos[i]: c for i, c in col.items() if i in tpos}
    return RationalMatrix.from_columns(len(tgt), len(src), cols)


def _complex_degrees(*spaces: GradedSpace) -> list[int]:
    degs = set()
    for s in spaces:
        degs.update(s.degrees)
    return sorted(degs)


def degree_cohomology(g: LInftyAlgebra, deg: int) -> tuple[list[int], DegreeCohomology]:
    dmap = g.differential()
    here = _local(g.space, deg)
    d_in = _block(dmap, _local(g.space, deg - 1), here)
    d_out = _block(dmap, here, _local(g.space, deg + 1))
    return here, DegreeCohomology(len(here), d_in, d_out)


def underlying_cohomology(g: LInftyAlgebra) -> dict[int, int]:
    """Dimensions of H(g, lambda_1) per degree of g."""
    return {deg: degree_cohomology(g, deg)[1].dim for deg in _complex_degrees(g.space)}


@dataclass
class QuasiIsoResult:
    is_quasi_iso: bool
    ranks: dict[int, tuple[int, int, int]]  # degree -> (dim source H, dim target H, rank)

    def __bool__(self) -> bool:
        return self.is_quasi_iso


def is_quasi_iso(F: LInftyMorphism) -> QuasiIsoResult:
    lin = F.linear()
    ranks = {}
    ok = True
    for deg in _complex_degrees(F.source.space, F.target.space):
        src_idx, hs = degree_cohomology(F.source, deg)
        tgt_idx, ht = degree_cohomology(F.target, deg)
        tpos = {i: k for k, i in enumerate(tgt_idx)}
        cols = {}
        for k, rep in enumerate(hs.reps):
            img = lin.apply({src_idx[j]: c for j, c in rep.items()})
            local = {tpos[i]: c for i, c in img.items()}
            cols[k] = dict(enumerate(ht.coordinates(local)))
        m = RationalMatrix.from_columns(ht.dim, hs.dim, cols)
        r = m.rank()
        ranks[deg] = (hs.dim, ht.dim, r)
        if not (hs.dim == ht.dim == r):
            ok = False
    return QuasiIsoResult(ok, ranks)


# crossed modules -------------------------------------------------------------

@dataclass
class CrossedModule:
    """Lie algebra map partial: low -> high with an action of high on low by derivations.

    Brackets and the action are keyed by pairs of basis names; values map names to
    rationals.  ``low`` sits in degree -1 and ``high`` in degree 0 of the resulting
    2-term algebra.
    """

    low: tuple[str, ...]
    high: tuple[str, ...]
    low_bracket: dict[tuple[str, str], dict[str, object]]
    high_bracket: dict[tuple[str, str], dict[str, object]]
    partial: dict[str, dict[str, object]]
    action: dict[tuple[str, str], dict[str, object]]  # (x in high, u in low) -> low

    def _table(self, table, names_a, names_b, names_out, skew: bool):
        out: dict[tuple[str, str], dict[str, object]] = {}
        for (a, b), v in table.items():
            if a not in names_a or b not in names_b:
                raise ValueError(f"unknown basis element in {(a, b)}")
            v = {k: scalar(c) for k, c in v.items() if scalar(c)}
            for k in v:
                if k not in names_out:
                    raise ValueError(f"unknown basis element {k}")
            out[(a, b)] = v
            if skew:
                neg = {k: -c for k, c in v.items()}
                if (b, a) in table and {k: scalar(c) for k, c in table[(b, a)].items() if scalar(c)} != neg:
                    raise ValueError(f"bracket not skew on {(a, b)}")
                out[(b, a)] = neg
        return out

    def brackets(self):
        lo = self._table(self.low_bracket, self.low, self.low, self.low, True)
        hi = self._table(self.high_bracket, self.high, self.high, self.high, True)
        act = self._table(self.action, self.high, self.low, self.low, False)
        part = {}
        for u, v in self.partial.items():
            if u not in self.low:
                raise ValueError(f"unknown basis element {u}")
            part[u] = {k: scalar(c) for k, c in v.items() if scalar(c)}
            for k in part[u]:
                if k not in self.high:
                    raise ValueError(f"unknown basis element {k}")
        return lo, hi, act, part

    def check(self) -> Report:
        lo, hi, act, part = self.brackets()
        rep = Report("crossed-module")

        def br(table, a, b):
            return table.get((a, b), {})

        def lin(fn, vec):
            out: dict = {}
            for k, c in vec.items():
                add_into(out, fn(k), c)
            return out

        def jac(names, table, tag):
            for a in names:
                for b in names:
                    for c in names:
                        rep.checked += 1
                        t1 = lin(lambda y: br(table, a, y), br(table, b, c))
                        t2 = lin(lambda y: br(table, b, y), br(table, c, a))
                        t3 = lin(lambda y: br(table, c, y), br(table, a, b))
                        tot = add_into(add_into(dict(t1), t2), t3)
                        if tot:
                            rep.add(tag, (a, b, c), tot)

        jac(self.low, lo, "jacobi-low")
        jac(self.high, hi, "jacobi-high")
        D = lambda x, vec: lin(lambda u: br(act, x, u), vec)
        dpart = lambda vec: lin(lambda u: part.get(u, {}), vec)
        for x in self.high:
            for y in self.high:
                for u in self.low:
                    rep.checked += 1
                    lhs = lin(lambda z: D(z, {u: 1}), br(hi, x, y))
                    rhs = add_into(D(x, D(y, {u: 1})), D(y, D(x, {u: 1})), -1)
                    if add_into(lhs, rhs, -1):
                        rep.add("action", (x, y, u))
            for u in self.low:
                for v in self.low:
                    rep.checked += 1
                    lhs = D(x, br(lo, u, v))
                    rhs = add_into(lin(lambda w: br(lo, w, v), D(x, {u: 1})),
                                   lin(lambda w: br(lo, u, w), D(x, {v: 1})))
                    if add_into(lhs, rhs, -1):
                        rep.add("derivation", (x, u, v))
            for u in self.low:
                rep.checked += 1
                if add_into(dpart(D(x, {u: 1})), lin(lambda y: br(hi, x, y), part.get(u, {})), -1):
                    rep.add("equivariance", (x, u))
        for u in self.low:
            for v in self.low:
                rep.checked += 1
                if add_into(D_vec(act, part.get(u, {}), v), br(lo, u, v), -1):
                    rep.add("peiffer", (u, v))
        return rep

    def space(self) -> GradedSpace:
        return GradedSpace(tuple(self.low) + tuple(self.high),
                           tuple([-1] * len(self.low) + [0] * len(self.high)))


def D_vec(act, xvec: Mapping[str, object], v: str) -> dict:
    out: dict = {}
    for x, c in xvec.items():
        add_into(out, act.get((x, v), {}), c)
    return out


def from_crossed_module(cm: CrossedModule, name: str = "g", validate: bool = True) -> LInftyAlgebra:
    if validate:
        rep = cm.check()
        if not rep.ok:
            raise ValueError(f"not a crossed module: {rep.violations[0].describe()}")
    lo, hi, act, part = cm.brackets()
    space = cm.space()
    table: dict = {}
    for u, v in part.items():
        if v:
            table[(u,)] = v
    for (x, y), v in hi.items():
        if v:
            table[(x, y)] = v
    for (x, u), v in act.items():
        if v:
            table[(x, u)] = v
    return LInftyAlgebra.from_brackets(space, table, name)


# minimal models -------------------------------------------------------------

@dataclass
class Splitting:
    """Choices for the minimal model: a lift of each cokernel basis vector and a
    preimage of each reduced basis vector of the image of the differential."""

    lift: dict[int, dict[int, object]]      # coker position -> vector in g_0 (global indices)
    preimage: dict[int, dict[int, object]]  # image pivot (global index) -> vector in g_{-1}


@dataclass
class TwoTermData:
    g: LInftyAlgebra
    low: list[int]
    high: list[int]
    image: Subspace          # im of the differential inside g_0 (global indices)
    kernel_basis: list[dict]  # ker of the differential in g_{-1} (global indices)
    complement: list[int]    # global indices of g_0 spanning a complement of the image

    def project(self, vec: Mapping[int, object]) -> dict[int, object]:
        """Coordinates in the cokernel of a vector in g_0."""
        r = self.image.reduce(vec)
        pos = {i: k for k, i in enumerate(self.complement)}
        return {pos[i]: c for i, c in r.items()}


def two_term_data(g: LInftyAlgebra) -> TwoTermData:
    if not set(g.space.degrees) <= {-1, 0}:
        raise ValueError("not a 2-term algebra")
    if any(len(w) > 2 for w in g.lam):
        raise ValueError("not a strict 2-term algebra (nonzero 3-bracket)")
    low = g.space.indices_of_degree(-1)
    high = g.space.indices_of_degree(0)
    dcols = {w[0]: v for w, v in g.lam.items() if len(w) == 1}
    image = Subspace([dcols[u] for u in low if u in dcols])
    lpos = {u: k for k, u in enumerate(low)}
    m = RationalMatrix.from_columns(g.dim, len(low), {lpos[u]: dcols.get(u, {}) for u in low})
    kb = [{low[k]: c for k, c in v.items()} for v in kernel(m)]
    pivots = set(image.order)
    complement = [b for b in high if b not in pivots]
    return TwoTermData(g, low, high, image, kb, complement)


def default_splitting(data: TwoTermData) -> Splitting:
    from .linalg import solve
    lift = {k: {b: 1} for k, b in enumerate(data.complement)}
    lpos = {u: k for k, u in enumerate(data.low)}
    dcols = {w[0]: v for w, v in data.g.lam.items() if len(w) == 1}
    m = RationalMatrix.from_columns(data.g.dim, len(data.low), {lpos[u]: dcols.get(u, {}) for u in data.low})
    pre = {}
    for c in data.image.order:
        res = solve(m, data.image.pivots[c])
        pre[c] = {data.low[k]: v for k, v in res.solution.items()}
    return Splitting(lift, pre)


def check_splitting(data: TwoTermData, sp: Splitting) -> Report:
    rep = Report("splitting")
    for k in range(len(data.complement)):
        rep.checked += 1
        v = sp.lift.get(k, {})
        if any(i not in data.high for i in v) or data.project(v) != {k: 1}:
            rep.add("lift", (k,))
    dcols = {w[0]: v for w, v in data.g.lam.items() if len(w) == 1}
    for c in data.image.order:
        rep.checked += 1
        v = sp.preimage.get(c, {})
        img: dict = {}
        for u, a in v.items():
            if u not in data.low:
                rep.add("preimage-degree", (c,))
            add_into(img, dcols.get(u, {}), a)
        if img != data.image.pivots[c]:
            rep.add("preimage", (c,))
    return rep


@dataclass
class MinimalModel:
    algebra: LInftyAlgebra
    morphism: LInftyMorphism
    theta: dict[Word, dict]
    data: TwoTermData
    splitting: Splitting
    n_kernel: int

    def coker_indices(self) -> list[int]:
        return list(range(self.n_kernel, self.algebra.dim))

    def kernel_indices(self) -> list[int]:
        return list(range(self.n_kernel))


def minimal_model_2term(g: LInftyAlgebra, splitting: Splitting | None = None) -> MinimalModel:
    """Minimal model on ker (degree -1) + coker (degree 0) with a weak quasi-isomorphism into g."""
    data = two_term_data(g)
    sp = splitting or default_splitting(data)
    rep = check_splitting(data, sp)
    if not rep.ok:
        raise ValueError(f"invalid splitting: {rep.violations[0].describe()}")
    nk = len(data.kernel_basis)
    names = [f"z{k}" for k in range(nk)] + [f"{g.space.names[b]}_bar" for b in data.complement]
    degs = [-1] * nk + [0] * len(data.complement)
    space = GradedSpace(tuple(names), tuple(degs))
    iota_cols = {k: v for k, v in enumerate(data.kernel_basis)}
    lift_cols = {nk + k: v for k, v in sp.lift.items()}
    linear = {**iota_cols, **lift_cols}
    ker_coords = left_inverse(data.kernel_basis) if nk else {}

    def to_kernel(vec: Mapping[int, object]) -> dict:
        out = apply_left_inverse(ker_coords, vec)
        check: dict = {}
        for k, c in out.items():
            add_into(check, data.kernel_basis[k], c)
        if check != {i: c for i, c in vec.items() if c}:
            raise AssertionError("value outside the kernel")
        return out

    def sigma(vec: Mapping[int, object]) -> dict:
        coords = data.image.coordinates(vec)
        if coords is None:
            raise AssertionError("curvature outside the image of the differential")
        out: dict = {}
        for c, a in zip(data.image.order, coords):
            add_into(out, sp.preimage[c], a)
        return out

    tmp = LInftyAlgebra(space, {}, "min")
    F1 = LInftyMorphism.strict(tmp, g, linear)
    lam: dict[Word, dict] = {}
    for w in tmp.words.words_of_weight(2):
        val = g.apply(F1(w))
        if not val:
            continue
        wd = tmp.words.degree(w)
        if wd == -3:
            out = to_kernel(val)
        elif wd == -2:
            out = {nk + k: c for k, c in data.project(val).items()}
        else:
            raise AssertionError("bracket outside the 2-term range")
        if out:
            lam[w] = out
    m2 = LInftyAlgebra(space, lam, "min")
    F1 = LInftyMorphism.strict(m2, g, linear)
    comps: dict[Word, dict] = {(i,): v for i, v in linear.items()}
    for w in m2.words.words_of_weight(2):
        if m2.words.degree(w) != -2:
            continue
        curv = add_into(g.apply(F1(w)), apply_word_map(F1.components, {x: c for x, c in m2.d(w).items()
                                                                          if len(x) == 1}), -1)
        if curv:
            comps[w] = {i: -c for i, c in sigma(curv).items()}
    F2 = LInftyMorphism(m2, g, comps)
    theta: dict[Word, dict] = {}
    for w in m2.words.words_of_weight(3):
        if m2.words.degree(w) != -3:
            continue
        defect = morphism_defect(F2, w)
        if defect:
            theta[w] = {i: -c for i, c in to_kernel(defect).items()}
    full = dict(lam)
    full.update(theta)
    minimal = LInftyAlgebra(space, full, f"min({g.name})")
    F = LInftyMorphism(minimal, g, comps, "F")
    return MinimalModel(minimal, F, theta, data, sp, nk)
