"""Cochains of an L-infinity algebra with values in a graded vector space.

A p-cochain sends a canonical word w over g[1] to a vector of degree |w| + p.
Only finitely many words qualify because V is finite dimensional and g[1]
sits in negative degrees.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .graded import GradedSpace, add_into, add_term, format_vector, normalize, scalar
from .linalg import RationalMatrix
from .linfty import LInftyAlgebra, LInftyMorphism
from .report import Report
from .ruth import Matrix, Ruth, RuthMorphism, mat_apply
from .symcoalg import EMPTY, Word


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def _coerce_vec(vec: Mapping[int, object]) -> dict:
    out = {}
    for i, c in vec.items():
        if isinstance(c, (str, Fraction)):
            c = scalar(c)
        if c:
            out[i] = c
    return out


class Cochain:
    def __init__(self, algebra: LInftyAlgebra, space: GradedSpace, degree: int,
                 data: Mapping[Word, Mapping[int, object]] | None = None, name: str = "alpha",
                 check: bool = True):
        self.algebra = algebra
        self.space = space
        self.degree = degree
        self.name = name
        ws = algebra.words
        out: dict[Word, dict] = {}
        for w, vec in (data or {}).items():
            w = tuple(w)
            s, cw = ws.canonicalize(w) if w else (1, EMPTY)
            vec = _coerce_vec(vec)
            if not vec:
                continue
            if not s:
                raise ValueError(f"value on the zero word {w}")
            if check:
                want = ws.degree(cw) + degree
                for i in vec:
                    if space.degrees[i] != want:
                        raise ValueError(f"{name}({ws.word_names(cw)}) has a component of degree "
                                         f"{space.degrees[i]}, expected {want}")
            acc = out.setdefault(cw, {})
            add_into(acc, vec, s)
            if not acc:
                del out[cw]
        self.data = out

    def __call__(self, word: Word) -> dict:
        return self.data.get(word, {})

    def evaluate(self, x: Mapping[Word, object]) -> dict:
        out: dict = {}
        for w, c in x.items():
            v = self.data.get(w)
            if v:
                add_into(out, v, c)
        return out

    def _like(self, data, name=None, degree=None) -> "Cochain":
        return Cochain(self.algebra, self.space, self.degree if degree is None else degree, data,
                       name or self.name, check=False)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        data = {w: dict(v) for w, v in self.data.items()}
        for w, v in other.data.items():
            add_into(data.setdefault(w, {}), v)
        return self._like(data)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scaled(-1)

    def __neg__(self) -> "Cochain":
        return self.scaled(-1)

    def scaled(self, c) -> "Cochain":
        return self._like({w: {i: c * x for i, x in v.items()} for w, v in self.data.items()})

    __rmul__ = scaled

    def _compatible(self, other: "Cochain") -> None:
        if other.algebra is not self.algebra or other.space != self.space or other.degree != self.degree:
            raise ValueError("cochains live in different spaces")

    def is_zero(self) -> bool:
        return not any(self.data.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        if other.algebra is not self.algebra or other.space != self.space:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and _normal(self.data) == _normal(other.data)

    __hash__ = None

    def is_reduced(self) -> bool:
        return not self.data.get(EMPTY)

    def reduced(self) -> "Cochain":
        return self._like({w: v for w, v in self.data.items() if w})

    def map_values(self, fn, space: GradedSpace, degree_shift: int = 0, name=None) -> "Cochain":
        """Post-compose with a linear map ``fn`` on vectors, landing in ``space``."""
        data = {}
        for w, v in self.data.items():
            img = fn(v)
            if img:
                data[w] = img
        return Cochain(self.algebra, space, self.degree + degree_shift, data, name or self.name, check=False)

    def describe(self) -> list[str]:
        ws = self.algebra.words
        lines = []
        for w in sorted(self.data, key=ws.sort_key):
            lines.append(f"{' v '.join(ws.word_names(w)) or '1'} -> {format_vector(self.space, self.data[w])}")
        return lines

    def __repr__(self) -> str:
        return f"Cochain({self.name}, degree {self.degree}, {len(self.data)} words)"


def _normal(data):
    return {w: {i: normalize(c) for i, c in v.items() if c} for w, v in data.items() if any(v.values())}


def zero_cochain(g: LInftyAlgebra, V: GradedSpace, degree: int) -> Cochain:
    return Cochain(g, V, degree, {})


# bases --------------------------------------------------------------------

def cochain_words(g: LInftyAlgebra, V: GradedSpace, degree: int) -> list[Word]:
    """Words w (empty word included) with |w| + degree a degree of V."""
    out = []
    for vd in sorted(set(V.degrees)):
        wd = vd - degree
        if wd == 0:
            out.append(EMPTY)
        elif wd < 0:
            out.extend(g.words.words_of_degree(wd))
    return out


class CochainBasis:
    """Ordered basis (word, index) of the degree-p cochains."""

    def __init__(self, g: LInftyAlgebra, V: GradedSpace, degree: int, reduced: bool = False):
        self.algebra = g
        self.space = V
        self.degree = degree
        elems = []
        for w in cochain_words(g, V, degree):
            if reduced and not w:
                continue
            for i in V.indices_of_degree(g.words.degree(w) + degree):
                elems.append((w, i))
        self.elements = elems
        self.index = {e: n for n, e in enumerate(elems)}
        self.words = list(dict.fromkeys(w for w, _ in elems))

    def __len__(self) -> int:
        return len(self.elements)

    def to_vector(self, alpha: Cochain) -> dict[int, object]:
        out = {}
        for w, v in alpha.data.items():
            for i, c in v.items():
                k = self.index.get((w, i))
                if k is None:
                    raise ValueError("cochain has components outside the basis")
                out[k] = c
        return out

    def from_vector(self, vec: Mapping[int, object], name: str = "alpha") -> Cochain:
        data: dict[Word, dict] = {}
        for k, c in vec.items():
            if c:
                w, i = self.elements[k]
                data.setdefault(w, {})[i] = c
        return Cochain(self.algebra, self.space, self.degree, data, name, check=False)

    def label(self, k: int) -> str:
        w, i = self.elements[k]
        ws = self.algebra.words
        return f"{' v '.join(ws.word_names(w)) or '1'} -> {self.space.names[i]}"


def cochain_basis(g: LInftyAlgebra, V: GradedSpace, degree: int, reduced: bool = False) -> CochainBasis:
    return CochainBasis(g, V, degree, reduced)


# the Chevalley-Eilenberg differential --------------------------------------

def ce_differential(r: Ruth, alpha: Cochain) -> Cochain:
    """D alpha(w) = sum (-1)^{p|a|} rho(a (x) alpha(b)) - (-1)^p alpha(d w)."""
    g, V, p = r.algebra, r.space, alpha.degree
    if alpha.algebra is not g or alpha.space != V:
        raise ValueError("cochain does not match the ruth")
    ws = g.words
    sp = _sign(p)
    data = {}
    for w in cochain_words(g, V, p + 1):
        out: dict = {}
        for a, b, c in ws.coproduct(w):
            val = alpha.data.get(b)
            if val:
                add_into(out, r.act(a, val), c * _sign(p * ws.degree(a)))
        for w2, c in r.algebra.d(w).items():
            val = alpha.data.get(w2)
            if val:
                add_into(out, val, -sp * c)
        if out:
            data[w] = out
    return Cochain(g, V, p + 1, data, f"D{alpha.name}", check=False)


def differential_matrix(r: Ruth, degree: int, source: CochainBasis | None = None,
                        target: CochainBasis | None = None) -> RationalMatrix:
    """Matrix of D: C^p -> C^{p+1} in the bases of :func:`cochain_basis`."""
    g, V = r.algebra, r.space
    src = source or CochainBasis(g, V, degree)
    tgt = target or CochainBasis(g, V, degree + 1)
    ws = g.words
    sp = _sign(degree)
    rows: dict[int, dict] = {}
    src_words = set(src.words)
    for w in tgt.words:
        # column contributions for the target word w, keyed (source col, output index)
        contrib: dict[tuple[int, int], object] = {}
        for a, b, c in ws.coproduct(w):
            if b not in src_words:
                continue
            op = r.operator(a)
            if not op:
                continue
            s = c * _sign(degree * ws.degree(a))
            for j in V.indices_of_degree(ws.degree(b) + degree):
                col = op.get(j)
                if not col:
                    continue
                k = src.index[(b, j)]
                for i, x in col.items():
                    add_term(contrib, (k, i), s * x)
        for w2, c in g.d(w).items():
            if w2 not in src_words:
                continue
            for j in V.indices_of_degree(ws.degree(w2) + degree):
                add_term(contrib, (src.index[(w2, j)], j), -sp * c)
        for (k, i), x in contrib.items():
            row = tgt.index[(w, i)]
            rows.setdefault(row, {})[k] = x
    return RationalMatrix.from_rows(len(tgt), len(src), rows)


# pairings and products ------------------------------------------------------

@dataclass
class Pairing:
    """Degree-0 bilinear map left (x) right -> target given on basis pairs."""
    left: GradedSpace
    right: GradedSpace
    target: GradedSpace
    table: dict

    def __post_init__(self):
        for (i, j), v in self.table.items():
            for k in v:
                if self.target.degrees[k] != self.left.degrees[i] + self.right.degrees[j]:
                    raise ValueError("pairing is not of degree 0")

    def apply(self, x: Mapping[int, object], y: Mapping[int, object]) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                v = self.table.get((i, j))
                if v:
                    add_into(out, v, a * b)
        return out


def tensor_pairing(V1: GradedSpace, V2: GradedSpace, target: GradedSpace | None = None) -> Pairing:
    from .graded import tensor_space
    T = target or tensor_space(V1, V2)
    n2 = V2.dim
    return Pairing(V1, V2, T, {(i, j): {i * n2 + j: 1} for i in range(V1.dim) for j in range(n2)})


def gl_space(V: GradedSpace) -> GradedSpace:
    """End(V) with basis E_ij (sending e_j to e_i) at index i * dim V + j."""
    n = V.dim
    names = tuple(f"{V.names[i]}<{V.names[j]}" for i in range(n) for j in range(n))
    degs = tuple(V.degrees[i] - V.degrees[j] for i in range(n) for j in range(n))
    return GradedSpace(names, degs)


def matrix_to_gl(V: GradedSpace, m: Matrix) -> dict:
    n = V.dim
    return {i * n + j: c for j, col in m.items() for i, c in col.items() if c}


def gl_to_matrix(V: GradedSpace, vec: Mapping[int, object]) -> Matrix:
    n = V.dim
    out: Matrix = {}
    for k, c in vec.items():
        if c:
            i, j = divmod(k, n)
            out.setdefault(j, {})[i] = c
    return out


def evaluation_pairing(V: GradedSpace) -> Pairing:
    n = V.dim
    return Pairing(gl_space(V), V, V, {(i * n + j, j): {i: 1} for i in range(n) for j in range(n)})


def commutator_pairing(V: GradedSpace) -> Pairing:
    """[E_ij, E_kl] = delta_jk E_il - (-1)^{|E_ij||E_kl|} delta_li E_kj."""
    n = V.dim
    L = gl_space(V)
    table = {}
    for a in range(n * n):
        i, j = divmod(a, n)
        for b in range(n * n):
            k, l = divmod(b, n)
            v: dict = {}
            if j == k:
                add_term(v, i * n + l, 1)
            if l == i:
                add_term(v, k * n + j, -_sign(L.degrees[a] * L.degrees[b]))
            if v:
                table[(a, b)] = v
    return Pairing(L, L, L, table)


def cochain_product(m: Pairing, alpha: Cochain, beta: Cochain, name: str | None = None) -> Cochain:
    """(alpha ^_m beta)(w) = sum (-1)^{|beta||a|} m(alpha(a) (x) beta(b))."""
    if alpha.algebra is not beta.algebra:
        raise ValueError("cochains over different algebras")
    if alpha.space != m.left or beta.space != m.right:
        raise ValueError("pairing does not match the cochain values")
    g = alpha.algebra
    ws = g.words
    q = beta.degree
    data = {}
    for w in cochain_words(g, m.target, alpha.degree + beta.degree):
        out: dict = {}
        for a, b, c in ws.coproduct(w):
            x, y = alpha.data.get(a), beta.data.get(b)
            if x and y:
                add_into(out, m.apply(x, y), c * _sign(q * ws.degree(a)))
        if out:
            data[w] = out
    return Cochain(g, m.target, alpha.degree + beta.degree, data,
                   name or f"{alpha.name}^{beta.name}", check=False)


def compose_with_differential(alpha: Cochain) -> Cochain:
    """alpha o d, the dual of the coderivation."""
    g = alpha.algebra
    data = {}
    for w in cochain_words(g, alpha.space, alpha.degree + 1):
        out: dict = {}
        for w2, c in g.d(w).items():
            v = alpha.data.get(w2)
            if v:
                add_into(out, v, c)
        if out:
            data[w] = out
    return Cochain(g, alpha.space, alpha.degree + 1, data, f"{alpha.name}.d", check=False)


# dg Lie coefficients --------------------------------------------------------

@dataclass
class DglaCoefficients:
    space: GradedSpace
    bracket: Pairing
    differential: Matrix

    def d(self, vec: Mapping[int, object]) -> dict:
        return mat_apply(self.differential, vec)

    def br(self, x: Mapping[int, object], y: Mapping[int, object]) -> dict:
        return self.bracket.apply(x, y)

    def validate(self) -> Report:
        """Degrees, d^2 = 0, graded skew-symmetry, Jacobi and the derivation law on basis elements."""
        rep = Report("dgla")
        S = self.space
        n = S.dim
        deg = S.degrees
        for j, col in self.differential.items():
            for i in col:
                if deg[i] != deg[j] + 1:
                    rep.add("d-degree", (j, i))
        for a in range(n):
            rep.checked += 1
            if self.d(self.d({a: 1})):
                rep.add("d-squared", (a,))
        for a in range(n):
            for b in range(n):
                rep.checked += 2
                x, y = {a: 1}, {b: 1}
                if add_into(self.br(x, y), self.br(y, x), _sign(deg[a] * deg[b])):
                    rep.add("skew", (a, b))
                lhs = self.d(self.br(x, y))
                rhs = add_into(self.br(self.d(x), y), self.br(x, self.d(y)), _sign(deg[a]))
                if add_into(lhs, rhs, -1):
                    rep.add("derivation", (a, b))
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    rep.checked += 1
                    x, y, z = {a: 1}, {b: 1}, {c: 1}
                    # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
                    lhs = self.br(x, self.br(y, z))
                    rhs = add_into(self.br(self.br(x, y), z), self.br(y, self.br(x, z)), _sign(deg[a] * deg[b]))
                    if add_into(lhs, rhs, -1):
                        rep.add("jacobi", (a, b, c))
        return rep


def abelian_dgla(space: GradedSpace, differential: Matrix | None = None) -> DglaCoefficients:
    return DglaCoefficients(space, Pairing(space, space, space, {}), dict(differential or {}))


def gl_dgla(V: GradedSpace, partial: Matrix) -> DglaCoefficients:
    """End(V) with the commutator bracket and differential [partial, -]."""
    n = V.dim
    L = gl_space(V)
    br = commutator_pairing(V)
    pvec = matrix_to_gl(V, partial)
    diff: Matrix = {}
    for a in range(n * n):
        # partial has degree 1
        v: dict = {}
        for p, c in pvec.items():
            x = br.table.get((p, a))
            if x:
                add_into(v, x, c)
        if v:
            diff[a] = v
    return DglaCoefficients(L, br, diff)


def dgla_differential(L: DglaCoefficients, alpha: Cochain) -> Cochain:
    """d alpha - (-1)^{|alpha|} alpha o d."""
    own = alpha.map_values(L.d, L.space, 1)
    return own - compose_with_differential(alpha).scaled(_sign(alpha.degree))


def dgla_bracket(L: DglaCoefficients, alpha: Cochain, beta: Cochain) -> Cochain:
    return cochain_product(L.bracket, alpha, beta, f"[{alpha.name},{beta.name}]")


def curvature_of(L: DglaCoefficients, theta: Cochain) -> Cochain:
    """d theta + 1/2 [theta, theta] for a degree-1 element."""
    if theta.degree != 1:
        raise ValueError("curvature is defined for degree-1 elements")
    out = dgla_differential(L, theta) + dgla_bracket(L, theta, theta).scaled(Fraction(1, 2))
    out.name = f"curv({theta.name})"
    return out


def ruth_cochain(r: Ruth) -> Cochain:
    """The action components as a reduced degree-1 cochain with values in End(V)."""
    V = r.space
    data = {w: matrix_to_gl(V, m) for w, m in r.components.items()}
    return Cochain(r.algebra, gl_space(V), 1, data, f"bar{r.name}", check=False)


def ruth_from_cochain(g: LInftyAlgebra, V: GradedSpace, partial: Matrix, theta: Cochain,
                      name: str = "rho") -> Ruth:
    comps = {w: gl_to_matrix(V, v) for w, v in theta.data.items() if w}
    return Ruth(g, V, partial, comps, name)


def reduced_differential(theta: Cochain, partial: Matrix, alpha: Cochain) -> Cochain:
    """theta ^_ev alpha + partial o alpha - (-1)^{|alpha|} alpha o d, on reduced cochains."""
    V = alpha.space
    ev = evaluation_pairing(V)
    out = cochain_product(ev, theta, alpha)
    out = out + alpha.map_values(lambda v: mat_apply(partial, v), V, 1)
    out = out - compose_with_differential(alpha).scaled(_sign(alpha.degree))
    out = out.reduced()
    out.name = f"D{alpha.name}"
    return out


def evaluate_on(m: Pairing, omega: Cochain, alpha: Cochain) -> Cochain:
    return cochain_product(m, omega, alpha)


def pullback_cochain(morphism: RuthMorphism, alpha: Cochain, name: str | None = None) -> Cochain:
    """(F, f)^* alpha = f o alpha o F, a cochain on the source ruth."""
    tgt = morphism.target
    if alpha.algebra is not tgt.algebra or alpha.space != tgt.space:
        raise ValueError("cochain does not live on the target of the ruth morphism")
    src = morphism.source
    g = src.algebra
    data = {}
    for w in cochain_words(g, src.space, alpha.degree):
        img = alpha.evaluate(morphism.F(w))
        if img:
            v = mat_apply(morphism.f, img)
            if v:
                data[w] = v
    return Cochain(g, src.space, alpha.degree, data, name or f"{morphism.name}*{alpha.name}", check=False)


def pullback_along(F: LInftyMorphism, alpha: Cochain, name: str | None = None) -> Cochain:
    """alpha o F for an L-infinity morphism F into the algebra of alpha; values are unchanged."""
    if alpha.algebra is not F.target:
        raise ValueError("cochain does not live on the target of the morphism")
    h = F.source
    data = {}
    for w in cochain_words(h, alpha.space, alpha.degree):
        v = alpha.evaluate(F(w))
        if v:
            data[w] = v
    return Cochain(h, alpha.space, alpha.degree, data, name or f"{F.name}*{alpha.name}", check=False)


def pairing_from_map(V1: GradedSpace, V2: GradedSpace, target: GradedSpace, m: Matrix) -> Pairing:
    """Pairing given by a degree-0 map V1 (x) V2 -> target in the tensor basis i * dim V2 + j."""
    n2 = V2.dim
    table = {}
    for k, col in m.items():
        i, j = divmod(k, n2)
        v = {a: c for a, c in col.items() if c}
        if v:
            table[(i, j)] = v
    return Pairing(V1, V2, target, table)


def random_cochain(g: LInftyAlgebra, V: GradedSpace, degree: int, rng, lo: int = -3, hi: int = 3,
                   reduced: bool = False, density: float = 1.0) -> Cochain:
    basis = CochainBasis(g, V, degree, reduced)
    vec = {}
    for k in range(len(basis)):
        if rng.random() <= density:
            c = rng.randint(lo, hi)
            if c:
                vec[k] = c
    return basis.from_vector(vec, "random")
