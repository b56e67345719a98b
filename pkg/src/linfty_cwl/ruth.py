"""Representations up to homotopy, stored split as a differential plus action components.

A ruth of g on V is ``partial`` (degree-1 endomorphism of V) together with
``components``: for each nonempty canonical word w over g[1] an endomorphism
of V of degree 1 + |w|.  Endomorphisms are column dicts ``j -> {i: c}``.
The full action is rho(1 (x) v) = partial(v) and rho(w (x) v) = components[w](v).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Mapping

from .graded import (GradedSpace, HomogeneousMap, add_into, add_term, format_vector, normalize,
                     scalar, shift, skew_sign, tensor_power_index, tensor_power_multi,
                     tensor_power_space, tensor_space)
from .linalg import apply_left_inverse, left_inverse
from .linfty import LInftyAlgebra, LInftyMorphism
from .report import Report
from .symcoalg import EMPTY, Word

Matrix = dict[int, dict[int, object]]


def _coerce(c):
    return scalar(c) if isinstance(c, (str, Fraction)) else c


def _clean_matrix(m: Mapping[int, Mapping[int, object]]) -> Matrix:
    out: Matrix = {}
    for j, col in m.items():
        col = {i: _coerce(c) for i, c in col.items() if c}
        col = {i: c for i, c in col.items() if c}
        if col:
            out[j] = col
    return out


def mat_apply(m: Matrix, vec: Mapping[int, object]) -> dict:
    out: dict = {}
    for j, c in vec.items():
        col = m.get(j)
        if col:
            add_into(out, col, c)
    return out


def mat_compose(a: Matrix, b: Matrix) -> Matrix:
    """a o b."""
    out: Matrix = {}
    for j, col in b.items():
        v = mat_apply(a, col)
        if v:
            out[j] = v
    return out


def mat_add(a: Matrix, b: Matrix, coeff=1) -> Matrix:
    out = {j: dict(col) for j, col in a.items()}
    for j, col in b.items():
        add_into(out.setdefault(j, {}), col, coeff)
    return {j: col for j, col in out.items() if col}


def mat_scale(a: Matrix, coeff) -> Matrix:
    if not coeff:
        return {}
    return {j: {i: coeff * c for i, c in col.items()} for j, col in a.items()}


def mat_degree(space: GradedSpace, m: Matrix) -> int | None:
    degs = {space.degrees[i] - space.degrees[j] for j, col in m.items() for i in col}
    if len(degs) > 1:
        raise ValueError("inhomogeneous endomorphism")
    return degs.pop() if degs else None


def graded_commutator(space: GradedSpace, a: Matrix, da: int, b: Matrix, db: int) -> Matrix:
    """[a, b] = ab - (-1)^{|a||b|} ba."""
    s = -1 if (da * db) % 2 else 1
    return mat_add(mat_compose(a, b), mat_compose(b, a), -s)


class Ruth:
    def __init__(self, algebra: LInftyAlgebra, space: GradedSpace,
                 partial: Mapping[int, Mapping[int, object]] | HomogeneousMap | None = None,
                 components: Mapping[Word, Mapping[int, Mapping[int, object]]] | None = None,
                 name: str = "rho"):
        self.algebra = algebra
        self.space = space
        self.name = name
        if isinstance(partial, HomogeneousMap):
            partial = partial.cols
        self.partial: Matrix = _clean_matrix(partial or {})
        for j, col in self.partial.items():
            for i in col:
                if space.degrees[i] != space.degrees[j] + 1:
                    raise ValueError(f"differential entry {space.names[j]} -> {space.names[i]} is not of degree 1")
        comps: dict[Word, Matrix] = {}
        ws = algebra.words
        for w, m in (components or {}).items():
            w = tuple(w)
            if not w:
                raise ValueError("use `partial` for the unit component")
            s, cw = ws.canonicalize(w)
            m = _clean_matrix(m)
            if not s:
                if m:
                    raise ValueError(f"action on the zero word {w}")
                continue
            deg = 1 + ws.degree(cw)
            for j, col in m.items():
                for i in col:
                    if space.degrees[i] != space.degrees[j] + deg:
                        raise ValueError(f"action of {ws.word_names(cw)} has wrong degree")
            if m:
                comps[cw] = mat_add(comps.get(cw, {}), m, s)
        self.components = {w: m for w, m in comps.items() if m}

    # evaluation -------------------------------------------------------------

    def operator(self, word: Word) -> Matrix:
        if not word:
            return self.partial
        return self.components.get(word, {})

    def act(self, word: Word, vec: Mapping[int, object]) -> dict:
        """rho(word (x) vec)."""
        return mat_apply(self.operator(word), vec)

    def act_element(self, x: Mapping[Word, object], vec: Mapping[int, object]) -> dict:
        out: dict = {}
        for w, c in x.items():
            add_into(out, self.act(w, vec), c)
        return out

    @property
    def vmin(self) -> int:
        return min(self.space.degrees) if self.space.dim else 0

    @property
    def vmax(self) -> int:
        return max(self.space.degrees) if self.space.dim else 0

    def component_words(self) -> list[Word]:
        """Nonempty words whose action can be nonzero: 1 + |w| >= vmin - vmax."""
        if not self.space.dim:
            return []
        return self.algebra.words.words_in_degree_range(self.vmin - self.vmax - 1, -1)

    def validation_words(self, max_weight: int | None = None) -> list[Word]:
        """Nonempty words where the ruth equation can fail: 2 + |w| >= vmin - vmax."""
        if max_weight is not None:
            return self.algebra.words.words_up_to_weight(max_weight)[1:]
        if not self.space.dim:
            return []
        return self.algebra.words.words_in_degree_range(self.vmin - self.vmax - 2, -1)

    def with_components(self, components, partial=None, name=None) -> "Ruth":
        return Ruth(self.algebra, self.space, self.partial if partial is None else partial,
                    components, name or self.name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ruth):
            return NotImplemented
        return (self.algebra is other.algebra and self.space == other.space
                and self.partial == other.partial and self.components == other.components)

    def __repr__(self) -> str:
        return f"Ruth({self.name}, dim V={self.space.dim}, {len(self.components)} components)"


def trivial_ruth(g: LInftyAlgebra, space: GradedSpace, name: str = "trivial") -> Ruth:
    return Ruth(g, space, {}, {}, name)


def unit_space(degree: int = 0, name: str = "1") -> GradedSpace:
    return GradedSpace((name,), (degree,))


# validation -------------------------------------------------------------

def maurer_cartan_defect(r: Ruth, word: Word) -> Matrix:
    """[partial, rbar(w)] + rbar(d w) + 1/2 sum (-1)^{|a|} [rbar(a), rbar(b)] over the reduced coproduct."""
    ws = r.algebra.words
    V = r.space
    dw = ws.degree(word)
    out = graded_commutator(V, r.partial, 1, r.operator(word), 1 + dw)
    for w2, c in r.algebra.d(word).items():
        out = mat_add(out, r.operator(w2), c)
    half: Matrix = {}
    for a, b, c in ws.reduced_coproduct(word):
        ra, rb = r.components.get(a), r.components.get(b)
        if not ra or not rb:
            continue
        da, db = ws.degree(a), ws.degree(b)
        s = -1 if da % 2 else 1
        half = mat_add(half, graded_commutator(V, ra, 1 + da, rb, 1 + db), s * c)
    out = mat_add(out, half, Fraction(1, 2))
    return {j: {i: normalize(v) for i, v in col.items()} for j, col in out.items()}


def check_ruth(r: Ruth, max_weight: int | None = None) -> Report:
    """Differential squares to zero and the Maurer-Cartan equation holds on every relevant word."""
    rep = Report(f"ruth[{r.name}]")
    sq = mat_compose(r.partial, r.partial)
    rep.checked += 1
    if sq:
        rep.add("partial^2", ("1",), len(sq))
    ws = r.algebra.words
    for w in r.validation_words(max_weight):
        rep.checked += 1
        m = maurer_cartan_defect(r, w)
        if m:
            rep.add("maurer-cartan", (len(w), " v ".join(ws.word_names(w))), _describe_matrix(r.space, m))
    return rep


def _describe_matrix(V: GradedSpace, m: Matrix) -> str:
    parts = []
    for j in sorted(m):
        parts.append(f"{V.names[j]} -> {format_vector(V, m[j])}")
    return "; ".join(parts)


def action_defect(r: Ruth, word: Word, j: int) -> dict:
    """rho(d w (x) v) + sum (-1)^{|a|} rho(a (x) rho(b (x) v)) over the full coproduct."""
    ws = r.algebra.words
    vec = {j: 1}
    out = r.act_element(r.algebra.d(word), vec)
    for a, b, c in ws.coproduct(word):
        inner = r.act(b, vec)
        if not inner:
            continue
        s = -1 if ws.degree(a) % 2 else 1
        add_into(out, r.act(a, inner), s * c)
    return out


def check_ruth_direct(r: Ruth, max_weight: int | None = None) -> Report:
    """Independent check of the ruth equation on all (word, basis vector) pairs."""
    rep = Report(f"ruth-direct[{r.name}]")
    ws = r.algebra.words
    for w in [EMPTY] + r.validation_words(max_weight):
        for j in range(r.space.dim):
            rep.checked += 1
            val = action_defect(r, w, j)
            if val:
                rep.add("ruth", (len(w), " v ".join(ws.word_names(w)) or "1", r.space.names[j]),
                        format_vector(r.space, val))
    return rep


# constructions -----------------------------------------------------------

def adjoint_ruth(g: LInftyAlgebra, name: str | None = None) -> Ruth:
    """ad(x (x) y) = lambda(x v y) on g[1]."""
    V = g.shifted
    partial = {w[0]: v for w, v in g.lam.items() if len(w) == 1}
    comps: dict[Word, Matrix] = {}
    vmin, vmax = min(V.degrees, default=0), max(V.degrees, default=0)
    for w in g.words.words_in_degree_range(vmin - vmax - 1, -1):
        m: Matrix = {}
        for y in range(V.dim):
            val = g.bracket(w + (y,))
            if val:
                m[y] = val
        if m:
            comps[w] = m
    return Ruth(g, V, partial, comps, name or f"ad[{g.name}]")


class NotAnIdeal(ValueError):
    def __init__(self, word: list[str], element: str):
        super().__init__(f"not an ideal: bracket of {word} with {element} leaves the subspace")
        self.word = word
        self.element = element


def restricted_adjoint(ghat: LInftyAlgebra, sub: GradedSpace, inclusion: Mapping[int, Mapping[int, object]],
                       name: str | None = None) -> Ruth:
    """Adjoint action of ghat restricted to the ideal spanned by the columns of ``inclusion``.

    ``sub`` is the unshifted subspace n; the result lives on n[1].
    """
    V = shift(sub, 1)
    cols = [dict(inclusion.get(k, {})) for k in range(sub.dim)]
    for k, col in enumerate(cols):
        for i in col:
            if ghat.space.degrees[i] != sub.degrees[k]:
                raise ValueError("inclusion is not of degree 0")
    if not sub.dim:
        return Ruth(ghat, V, {}, {}, name or "ad|0")
    coords = left_inverse(cols)

    def to_sub(vec: Mapping[int, object], witness: tuple) -> dict:
        out = apply_left_inverse(coords, vec)
        back: dict = {}
        for k, c in out.items():
            add_into(back, cols[k], c)
        if back != {i: c for i, c in vec.items() if c}:
            raise NotAnIdeal(*witness)
        return out

    def bracket_with(word: Word, k: int) -> dict:
        out: dict = {}
        for i, c in cols[k].items():
            add_into(out, ghat.bracket(word + (i,)), c)
        return out

    partial: Matrix = {}
    for k in range(sub.dim):
        v = to_sub(bracket_with((), k), (["1"], sub.names[k]))
        if v:
            partial[k] = v
    vmin, vmax = min(V.degrees), max(V.degrees)
    comps: dict[Word, Matrix] = {}
    for w in ghat.words.words_in_degree_range(vmin - vmax - 1, -1):
        m: Matrix = {}
        for k in range(sub.dim):
            v = to_sub(bracket_with(w, k), (ghat.words.word_names(w), sub.names[k]))
            if v:
                m[k] = v
        if m:
            comps[w] = m
    return Ruth(ghat, V, partial, comps, name or f"ad|{ghat.name}")


def is_ideal(ghat: LInftyAlgebra, sub: GradedSpace, inclusion) -> tuple[bool, NotAnIdeal | None]:
    try:
        restricted_adjoint(ghat, sub, inclusion)
    except NotAnIdeal as exc:
        return False, exc
    return True, None


def pullback_ruth(F: LInftyMorphism, r: Ruth, name: str | None = None) -> Ruth:
    """F* rho = rho o (F (x) id), a ruth of the source of F."""
    if F.target is not r.algebra:
        raise ValueError("ruth is not over the target of the morphism")
    g = F.source
    V = r.space
    comps: dict[Word, Matrix] = {}
    if V.dim:
        vmin, vmax = min(V.degrees), max(V.degrees)
        for w in g.words.words_in_degree_range(vmin - vmax - 1, -1):
            m: Matrix = {}
            for w2, c in F(w).items():
                op = r.components.get(w2)
                if op:
                    m = mat_add(m, op, c)
            if m:
                comps[w] = m
    return Ruth(g, V, r.partial, comps, name or f"{F.name}*{r.name}")


def tensor_ruth(r1: Ruth, r2: Ruth, name: str | None = None) -> Ruth:
    """rho(x (x) v (x) w) = rho1(x (x) v) (x) w + (-1)^{(|x|+1)|v|} v (x) rho2(x (x) w)."""
    if r1.algebra is not r2.algebra:
        raise ValueError("ruths over different algebras")
    V1, V2 = r1.space, r2.space
    V = tensor_space(V1, V2)
    n2 = V2.dim
    ws = r1.algebra.words

    def build(op1: Matrix, op2: Matrix, xdeg: int) -> Matrix:
        out: Matrix = {}
        for j1 in range(V1.dim):
            col1 = op1.get(j1, {})
            s = -1 if ((xdeg + 1) * V1.degrees[j1]) % 2 else 1
            for j2 in range(n2):
                col: dict = {}
                for i1, c in col1.items():
                    add_term(col, i1 * n2 + j2, c)
                for i2, c in op2.get(j2, {}).items():
                    add_term(col, j1 * n2 + i2, s * c)
                if col:
                    out[j1 * n2 + j2] = col
        return out

    partial = build(r1.partial, r2.partial, 0)
    comps = {}
    for w in sorted(set(r1.components) | set(r2.components), key=ws.sort_key):
        m = build(r1.components.get(w, {}), r2.components.get(w, {}), ws.degree(w))
        if m:
            comps[w] = m
    return Ruth(r1.algebra, V, partial, comps, name or f"({r1.name}*{r2.name})")


def tensor_power_ruth(r: Ruth, k: int, name: str | None = None) -> Ruth:
    if k < 0:
        raise ValueError("negative tensor power")
    if k == 0:
        return trivial_ruth(r.algebra, unit_space(), name or f"{r.name}^0")
    out = r
    for _ in range(k - 1):
        out = tensor_ruth(out, r)
    out.name = name or f"{r.name}^{k}"
    return out


def skew_projector(V: GradedSpace, k: int) -> Matrix:
    """Idempotent (1/k!) sum_sigma chi(sigma) onto the skew part of the k-th tensor power."""
    n = V.dim
    out: Matrix = {}
    if k == 0:
        return {0: {0: 1}}
    kf = factorial(k)
    perms = list(permutations(range(k)))
    for t in range(n ** k):
        multi = tensor_power_multi(t, n, k)
        degs = [V.degrees[i] for i in multi]
        col: dict = {}
        for p in perms:
            add_term(col, tensor_power_index([multi[i] for i in p], n), Fraction(skew_sign(p, degs), kf))
        col = {i: normalize(c) for i, c in col.items() if c}
        if col:
            out[t] = col
    return out


def exterior_basis(V: GradedSpace, k: int) -> list[tuple[int, ...]]:
    """Sorted multi-indices spanning the skew part: even-degree entries may not repeat."""
    from itertools import combinations_with_replacement
    order = sorted(range(V.dim), key=lambda i: (V.degrees[i], i))
    out = []
    for combo in combinations_with_replacement(order, k):
        if any(a == b and not V.degrees[a] % 2 for a, b in zip(combo, combo[1:])):
            continue
        out.append(combo)
    return out


def exterior_power_ruth(r: Ruth, k: int, name: str | None = None) -> tuple[Ruth, Matrix]:
    """Ruth on the skew part of the k-th tensor power, with its inclusion into that power.

    The basis vector for a multi-index t is the projection of e_t.
    """
    T = tensor_power_ruth(r, k)
    V = r.space
    P = skew_projector(V, k)
    basis = exterior_basis(V, k)
    n = V.dim
    incl = [P.get(tensor_power_index(t, n), {}) for t in basis]
    names = tuple("^".join(V.names[i] for i in t) for t in basis)
    degs = tuple(sum(V.degrees[i] for i in t) for t in basis)
    L = GradedSpace(names, degs)
    if not basis:
        return Ruth(r.algebra, L, {}, {}, name or f"L{k}{r.name}"), {}
    coords = left_inverse(incl)

    def restrict(op: Matrix) -> Matrix:
        out: Matrix = {}
        for b, vec in enumerate(incl):
            img = mat_apply(op, vec)
            loc = apply_left_inverse(coords, img)
            if loc:
                out[b] = loc
        return out

    comps = {w: restrict(op) for w, op in T.components.items()}
    ruth = Ruth(r.algebra, L, restrict(T.partial), comps, name or f"L{k}{r.name}")
    return ruth, dict(enumerate(incl))


# ruth morphisms ------------------------------------------------------------

class RuthMorphism:
    """(F, f): (V, rho) -> (V', rho') with F: g -> g' and f: V' -> V of degree 0."""

    def __init__(self, F: LInftyMorphism, f: Mapping[int, Mapping[int, object]] | HomogeneousMap,
                 source: Ruth, target: Ruth, name: str = "m"):
        if source.algebra is not F.source or target.algebra is not F.target:
            raise ValueError("ruths do not match the algebra morphism")
        if isinstance(f, HomogeneousMap):
            f = f.cols
        self.F = F
        self.f: Matrix = _clean_matrix(f)
        for j, col in self.f.items():
            for i in col:
                if source.space.degrees[i] != target.space.degrees[j]:
                    raise ValueError("coefficient map is not of degree 0")
        self.source = source
        self.target = target
        self.name = name

    @classmethod
    def identity(cls, r: Ruth) -> "RuthMorphism":
        return cls(LInftyMorphism.identity(r.algebra), {i: {i: 1} for i in range(r.space.dim)}, r, r, "id")

    def compose(self, other: "RuthMorphism") -> "RuthMorphism":
        """other o self: (G,g) o (F,f) = (G o F, f o g)."""
        if other.source is not self.target:
            raise ValueError("incompatible ruth morphisms")
        return RuthMorphism(other.F.compose(self.F), mat_compose(self.f, other.f),
                            self.source, other.target, f"{other.name}.{self.name}")


def ruth_morphism_defect(m: RuthMorphism, word: Word, j: int) -> dict:
    lhs = mat_apply(m.f, m.target.act_element(m.F(word), {j: 1}))
    rhs = m.source.act(word, m.f.get(j, {}))
    return add_into(lhs, rhs, -1)


def check_ruth_morphism(m: RuthMorphism, max_weight: int | None = None) -> Report:
    rep = Report(f"ruth-morphism[{m.name}]")
    V, Vp = m.source.space, m.target.space
    g = m.F.source
    if max_weight is not None:
        words = g.words.words_up_to_weight(max_weight)
    elif V.dim and Vp.dim:
        words = [EMPTY] + g.words.words_in_degree_range(min(V.degrees) - max(Vp.degrees) - 1, -1)
    else:
        words = []
    for w in words:
        for j in range(Vp.dim):
            rep.checked += 1
            val = ruth_morphism_defect(m, w, j)
            if val:
                rep.add("equivariance", (" v ".join(g.words.word_names(w)) or "1", Vp.names[j]),
                        format_vector(V, val))
    return rep
