"""Finite-dimensional example instances with recorded expected values.

Each instance bundles algebras, ruths, extensions, sections and morphisms under
string names, plus a list of expectations that the test suite re-verifies.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

from .extension import (LInftyExtension, Section, check_extension, default_section, induced_action,
                        kernel_extension, random_section)
from .graded import GradedSpace, add_into, normalize
from .linalg import RationalMatrix, Subspace, apply_left_inverse, left_inverse, solve
from .linfty import (CrossedModule, LInftyAlgebra, LInftyMorphism, Splitting, TwoTermData, check_jacobi,
                     check_morphism, default_splitting, from_crossed_module)
from .report import Report
from .ruth import (Ruth, adjoint_ruth, check_ruth, exterior_power_ruth, mat_apply, pullback_ruth, tensor_ruth,
                   trivial_ruth, unit_space)
from .symcoalg import EMPTY


@dataclass
class Expectation:
    key: str
    value: object
    how: str  # how the value was obtained independently of the code under test


@dataclass
class GalleryInstance:
    name: str
    algebras: dict[str, LInftyAlgebra] = field(default_factory=dict)
    ruths: dict[str, Ruth] = field(default_factory=dict)
    extensions: dict[str, LInftyExtension] = field(default_factory=dict)
    sections: dict[str, Section] = field(default_factory=dict)
    morphisms: dict[str, LInftyMorphism] = field(default_factory=dict)
    expectations: list[Expectation] = field(default_factory=list)
    crossed_module: CrossedModule | None = None
    queries: list[dict] = field(default_factory=list)  # extra CLI queries beyond the default ones
    template: object = None  # which random template produced the instance

    def expect(self, key: str):
        for e in self.expectations:
            if e.key == key:
                return e.value
        raise KeyError(key)

    def add_expectation(self, key: str, value, how: str) -> None:
        self.expectations.append(Expectation(key, value, how))

    def extension_name(self, e: LInftyExtension) -> str:
        for k, v in self.extensions.items():
            if v is e:
                return k
        raise KeyError("extension not registered")

    def validate(self) -> Report:
        rep = Report(f"gallery[{self.name}]")
        for alg in self.algebras.values():
            rep.extend(check_jacobi(alg))
        for r in self.ruths.values():
            rep.extend(check_ruth(r))
        for e in self.extensions.values():
            rep.extend(check_extension(e))
        for F in self.morphisms.values():
            rep.extend(check_morphism(F))
        return rep

    def register_extension(self, key: str, e: LInftyExtension) -> None:
        self.extensions[key] = e
        for alg in (e.n, e.ghat, e.g):
            if not any(a is alg for a in self.algebras.values()):
                base = alg.name
                name = base
                k = 1
                while name in self.algebras:
                    k += 1
                    name = f"{base}{k}"
                alg.name = name
                self.algebras[name] = alg
        self.morphisms.setdefault(f"{key}.iota", e.iota)
        self.morphisms.setdefault(f"{key}.pi", e.pi)


# building blocks ------------------------------------------------------------------

SL2_NAMES = ("e", "f", "h")
SL2_BRACKETS = {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}}
# trace form of the defining representation
SL2_FORM = {("e", "f"): 1, ("f", "e"): 1, ("h", "h"): 2}


def lie_algebra(names, brackets, name: str = "g") -> LInftyAlgebra:
    return LInftyAlgebra.from_brackets(GradedSpace(tuple(names), (0,) * len(names)), brackets, name)


def sl2(name: str = "sl2") -> LInftyAlgebra:
    return lie_algebra(SL2_NAMES, SL2_BRACKETS, name)


def abelian(names, name: str = "ab", degree: int = 0) -> LInftyAlgebra:
    return LInftyAlgebra(GradedSpace(tuple(names), (degree,) * len(names)), {}, name)


def _skew_table(brackets: Mapping) -> dict:
    out = {}
    for (a, b), v in brackets.items():
        out[(a, b)] = dict(v)
        out[(b, a)] = {k: -c for k, c in v.items()}
    return out


def _lin(table, a, vec):
    out: dict = {}
    for b, c in vec.items():
        add_into(out, table.get((a, b), {}), c)
    return out


def gl_brackets(n: int, prefix: str = "e") -> tuple[tuple[str, ...], dict]:
    names = tuple(f"{prefix}{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1))
    br = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    v: dict = {}
                    if j == k:
                        add_into(v, {f"{prefix}{i}{l}": 1})
                    if l == i:
                        add_into(v, {f"{prefix}{k}{j}": -1})
                    a, b = f"{prefix}{i}{j}", f"{prefix}{k}{l}"
                    if v and a < b:
                        br[(a, b)] = v
    return names, br


def crossed_module_from(high: tuple[str, ...], high_brackets: Mapping, ideal: list[Mapping[str, object]],
                        ideal_names: tuple[str, ...], module: tuple[str, ...] = (),
                        module_action: Mapping | None = None) -> CrossedModule:
    """Crossed module (ideal + module) -> high with partial = (inclusion, 0).

    The module is a representation of high that must vanish on the ideal; the low
    bracket is forced by the Peiffer identity.
    """
    hb = _skew_table(high_brackets)
    ideal = [{k: v for k, v in vec.items() if v} for vec in ideal]
    hpos = {n: i for i, n in enumerate(high)}
    ivecs = [{hpos[k]: v for k, v in vec.items()} for vec in ideal]
    inv = left_inverse(ivecs) if ivecs else {}

    def ideal_coords(vec: Mapping[str, object]) -> dict:
        loc = apply_left_inverse(inv, {hpos[k]: v for k, v in vec.items()})
        back: dict = {}
        for q, c in loc.items():
            add_into(back, ivecs[q], c)
        if add_into(back, {hpos[k]: v for k, v in vec.items()}, -1):
            raise ValueError("subspace is not an ideal")
        return {ideal_names[q]: c for q, c in loc.items()}

    act = module_action or {}
    action: dict = {}
    for x in high:
        for q, a in enumerate(ideal_names):
            v = ideal_coords(_lin(hb, x, ideal[q]))
            if v:
                action[(x, a)] = v
        for m in module:
            v = {k: c for k, c in act.get((x, m), {}).items() if c}
            if v:
                action[(x, m)] = v
    partial = {a: dict(ideal[q]) for q, a in enumerate(ideal_names)}
    low = tuple(ideal_names) + tuple(module)
    low_bracket = {}
    for u, v in combinations(low, 2):
        val: dict = {}
        for x, c in partial.get(u, {}).items():
            add_into(val, action.get((x, v), {}), c)
        if val:
            low_bracket[(u, v)] = val
    return CrossedModule(low, tuple(high), low_bracket, dict(high_brackets), partial, action)


def change_basis(g: LInftyAlgebra, cols: Mapping[int, Mapping[int, object]], name: str | None = None) -> LInftyAlgebra:
    """Same algebra in the basis b_k = sum_i cols[k][i] e_i (degree-homogeneous, invertible)."""
    vecs = [dict(cols[k]) for k in range(g.dim)]
    for k, v in enumerate(vecs):
        if any(g.space.degrees[i] != g.space.degrees[k] for i in v):
            raise ValueError("basis change must preserve degrees")
    inv = left_inverse(vecs)
    ws = g.words
    lam = {}
    for k in range(1, g.max_arity() + 1):
        for w in ws.words_of_weight(k):
            img: dict = {EMPTY: 1}
            for x in w:
                img = ws.mul(img, ws.vector_to_element(vecs[x]))
            val = g.apply(img)
            if val:
                lam[w] = apply_left_inverse(inv, val)
    return LInftyAlgebra(g.space, lam, name or g.name)


def random_basis_change(space: GradedSpace, rng: random.Random, spread: int = 2) -> dict[int, dict]:
    """Random unimodular change within each degree: unit upper triangular times a permutation-free lower one."""
    cols: dict[int, dict] = {}
    for d in sorted(set(space.degrees)):
        idx = space.indices_of_degree(d)
        n = len(idx)
        upper = [[1 if i == j else (rng.randint(-spread, spread) if j > i else 0) for j in range(n)] for i in range(n)]
        lower = [[1 if i == j else (rng.randint(-spread, spread) if j < i else 0) for j in range(n)] for i in range(n)]
        m = [[sum(upper[i][k] * lower[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        for j in range(n):
            cols[idx[j]] = {idx[i]: m[i][j] for i in range(n) if m[i][j]}
    return cols


def quotient_extension(ghat: LInftyAlgebra, ideal: list[Mapping[int, object]], n_names: list[str],
                       name: str = "E", g_name: str = "g") -> LInftyExtension:
    """0 -> ideal -> ghat -> ghat/ideal -> 0 with the quotient on the non-pivot basis vectors."""
    sub = Subspace(ideal)
    pivots = set(sub.order)
    comp = [i for i in range(ghat.dim) if i not in pivots]
    cpos = {i: k for k, i in enumerate(comp)}
    gspace = GradedSpace(tuple(ghat.space.names[i] for i in comp), tuple(ghat.space.degrees[i] for i in comp))

    def proj(vec: Mapping[int, object]) -> dict:
        r = sub.reduce(vec)
        return {cpos[i]: c for i, c in r.items()}

    pi = {j: proj({j: 1}) for j in range(ghat.dim)}
    ws = ghat.words
    from .symcoalg import WordSpace
    from .graded import shift
    gws = WordSpace(shift(gspace, 1))
    lam = {}
    for k in range(1, ghat.max_arity() + 1):
        for w in gws.words_of_weight(k):
            img: dict = {EMPTY: 1}
            for x in w:
                img = ws.mul(img, {(comp[x],): 1})
            val = proj(ghat.apply(img))
            if val:
                lam[w] = val
    g = LInftyAlgebra(gspace, lam, g_name)
    return kernel_extension(ghat, g, pi, n_names, name)


def _names_vec(space: GradedSpace, vec: Mapping[str, object]) -> dict:
    return {space.index(k): v for k, v in vec.items()}


def _coefficient_ruths(inst: GalleryInstance, e: LInftyExtension, key: str) -> Ruth:
    """Trivial ruth of the base on n[1] (a ruth since n[1] carries zero differential or not)."""
    V = e.kernel_space
    partial = {w[0]: v for w, v in e.n.lam.items() if len(w) == 1}
    r = Ruth(e.g, V, partial, {}, f"{key}.coeff")
    inst.ruths[f"{key}.coeff"] = r
    return r


# fixed instances ------------------------------------------------------------------------

def abelian_extension(g: LInftyAlgebra, cocycles: list[Mapping[tuple[str, str], object]],
                      center: list[str], name: str = "abelian_extension", seed: int = 0) -> GalleryInstance:
    """Central extension ghat = g + R^m with [x, y]^ = [x, y] + sum_i omega_i(x, y) c_i."""
    if set(g.space.degrees) - {0}:
        raise ValueError("abelian_extension expects an ordinary Lie algebra")
    names = g.space.names + tuple(center)
    space = GradedSpace(names, (0,) * len(names))
    table: dict = {}
    for w, v in g.brackets().items():
        table[tuple(g.space.names[i] for i in w)] = {g.space.names[i]: c for i, c in v.items()}
    for c_name, omega in zip(center, cocycles):
        for (a, b), c in omega.items():
            key = (a, b)
            if key not in table and (b, a) in table:
                key, c = (b, a), -c
            add_into(table.setdefault(key, {}), {c_name: c})
    ghat = LInftyAlgebra.from_brackets(space, table, "ghat")
    pi = {i: {i: 1} for i in range(g.dim)}
    e = kernel_extension(ghat, g, pi, list(center), "E")
    inst = GalleryInstance(name)
    inst.register_extension("E", e)
    _coefficient_ruths(inst, e, "E")
    inst.ruths["E.trivialR"] = trivial_ruth(g, unit_space(), "E.trivialR")
    inst.sections["h"] = default_section(e, "h")
    rng = random.Random(seed)
    inst.sections["h1"] = random_section(e, rng, name="h1")
    inst.sections["h2"] = random_section(e, rng, name="h2")
    return inst


def heisenberg() -> GalleryInstance:
    """0 -> R c -> h3 -> R^2 -> 0 with [a, b] = c, plus the split variant."""
    base = abelian(("a", "b"), "R2")
    inst = abelian_extension(base, [{("a", "b"): 1}], ["c"], "heisenberg", seed=11)
    split_base = base
    split = abelian(("a", "b", "c"), "R3")
    es = kernel_extension(split, split_base, {0: {0: 1}, 1: {1: 1}}, ["c"], "split")
    inst.register_extension("split", es)
    _coefficient_ruths(inst, es, "split")
    inst.sections["hs"] = default_section(es, "hs")
    auto = abelian(("u", "v"), "R2'")
    inst.algebras["R2'"] = auto
    inst.morphisms["A"] = LInftyMorphism.strict(auto, base, {0: {0: 2, 1: 1}, 1: {0: 1, 1: 1}}, "A")
    inst.queries.append({"command": "naturality", "morphism": "A", "extension": "E", "ruth": "E.coeff"})
    inst.add_expectation("E.curvature", {("a", "b"): {"c": 1}},
                         "single bracket lambda_2(a v b) = [a, b] = c, no decalage sign in degree 0")
    inst.add_expectation("E.cw_id.coordinates", (1,), "dense CE complex of R^2: H^2 is spanned by a^b")
    inst.add_expectation("E.H1.dim", 1, "Lambda^2 of a 2-dimensional space")
    inst.add_expectation("split.cw_id.coordinates", (0,), "split sequence has a flat section")
    inst.add_expectation("E.equivariant.k1.dim", 1, "central kernel imposes no condition on a 1x1 map")
    return inst


def central_r4() -> GalleryInstance:
    """Central extension of R^4 by R^2 with cocycles a^b + c^d and a^c; quadratic classes live in H^4."""
    base = abelian(("a", "b", "c", "d"), "R4")
    inst = abelian_extension(base, [{("a", "b"): 1, ("c", "d"): 1}, {("a", "c"): 1}], ["z1", "z2"],
                             "central_r4", seed=5)
    inst.add_expectation("E.cw.k2.rank", 1,
                         "omega1^2 = 2 a^b^c^d while omega1 omega2 = omega2^2 = 0")
    inst.add_expectation("E.equivariant.k2.dim", 3, "symmetric bilinear forms on R^2")
    inst.add_expectation("E.cw.k1.rank", 2, "omega1 and omega2 independent in H^2(R^4)")
    return inst


def string_algebra(level) -> LInftyAlgebra:
    """sl2 + R c (degree -1) with [x, y, z] = level <[x, y], z> c."""
    space = GradedSpace(("c",) + SL2_NAMES, (-1, 0, 0, 0))
    br: dict = dict(SL2_BRACKETS)
    full = _skew_table(SL2_BRACKETS)
    level = normalize(Fraction(level))
    for x, y, z in combinations(SL2_NAMES, 3):
        val = sum(c * SL2_FORM.get((k, z), 0) for k, c in full.get((x, y), {}).items())
        if val and level:
            br[(x, y, z)] = {"c": level * val}
    return LInftyAlgebra.from_brackets(space, br, f"string{level}")


def skeletal_string(level=1) -> GalleryInstance:
    S = string_algebra(level)
    base = sl2()
    e = kernel_extension(S, base, {1: {0: 1}, 2: {1: 1}, 3: {2: 1}}, ["c"], "E")
    inst = GalleryInstance(f"skeletal_string[{level}]")
    inst.register_extension("E", e)
    _coefficient_ruths(inst, e, "E")
    inst.ruths["E.trivialR"] = trivial_ruth(base, unit_space(), "E.trivialR")
    inst.sections["h"] = default_section(e, "h")
    rng = random.Random(7)
    inst.sections["h1"] = random_section(e, rng, name="h1")
    inst.add_expectation("jacobi", True, "Jacobi reduces to invariance of the trace form")
    inst.add_expectation("E.H1.dim", 1, "H^3(sl2) is one-dimensional (dense exterior complex)")
    inst.add_expectation("E.cw_id.nonzero", bool(level), "curvature is level times the Cartan 3-form")
    return inst


def sl2_product(rank: int = 4, seed: int = 2) -> GalleryInstance:
    """ghat = R^rank + sl2 (direct sum), n = sl2, base R^rank; random sections give curved actions."""
    names = tuple(f"x{i}" for i in range(1, rank + 1))
    ghat = lie_algebra(names + SL2_NAMES, SL2_BRACKETS, "ghat")
    base = abelian(names, f"R{rank}")
    e = kernel_extension(ghat, base, {i: {i: 1} for i in range(rank)}, list(SL2_NAMES), "E")
    inst = GalleryInstance(f"sl2_product[{rank}]")
    inst.register_extension("E", e)
    inst.ruths["E.trivialR"] = trivial_ruth(base, unit_space(), "E.trivialR")
    rng = random.Random(seed)
    inst.sections["h"] = default_section(e, "h")
    inst.sections["h1"] = random_section(e, rng, name="h1")
    inst.sections["h2"] = random_section(e, rng, name="h2")
    inst.add_expectation("E.h.flat", True, "the product section is a Lie map")
    inst.add_expectation("E.h1.action_flat", False, "ad of a random phi has nonzero commutators in sl2")
    inst.add_expectation("E.equivariant.k2.dim", 1, "invariant symmetric forms on simple sl2 are multiples of the trace form")
    inst.add_expectation("E.cw.k2.zero", True, "the 4-form factors through the 3-dimensional sl2")
    return inst


def _crossed_extension(cm: CrossedModule, ideal_names: list[str], n_names: list[str], name: str,
                       seed: int) -> GalleryInstance:
    ghat = from_crossed_module(cm, "ghat")
    ideal = [{ghat.space.index(k): 1} for k in ideal_names]
    e = quotient_extension(ghat, ideal, n_names, "E", "g")
    inst = GalleryInstance(name, crossed_module=cm)
    inst.register_extension("E", e)
    _coefficient_ruths(inst, e, "E")
    inst.ruths["E.trivialR"] = trivial_ruth(e.g, unit_space(), "E.trivialR")
    rng = random.Random(seed)
    inst.sections["h"] = default_section(e, "h")
    inst.sections["h1"] = random_section(e, rng, name="h1")
    inst.sections["h2"] = random_section(e, rng, name="h2")
    return inst


def crossed_heisenberg() -> GalleryInstance:
    """Identity crossed module on h3 modulo its center: a strict 2-term central extension."""
    high = ("x", "y", "z")
    cm = crossed_module_from(high, {("x", "y"): {"z": 1}}, [{"x": 1}, {"y": 1}, {"z": 1}], ("X", "Y", "Z"))
    inst = _crossed_extension(cm, ["Z", "z"], ["Zc", "zc"], "crossed_heisenberg", 13)
    inst.add_expectation("E.curvature.weight3", 0, "no 3-brackets in a strict 2-term algebra")
    inst.add_expectation("E.H1.dim", 0, "the kernel Zc -> zc is contractible, so coefficients are acyclic")
    inst.add_expectation("peiffer", True, "identity crossed module")
    return inst


def crossed_module_matrices(n: int = 2, kind: str = "identity", seed: int | None = None) -> GalleryInstance:
    """gl_n crossed modules: identity, sl_n -> gl_n inclusion, or center -> gl_n; optional random basis."""
    names, br = gl_brackets(n)
    if kind == "identity":
        ideal = [{x: 1} for x in names]
    elif kind == "inclusion":
        ideal = [{f"e{i}{j}": 1} for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        ideal += [{f"e{i}{i}": 1, f"e{i + 1}{i + 1}": -1} for i in range(1, n)]
    elif kind == "center":
        ideal = [{f"e{i}{i}": 1 for i in range(1, n + 1)}]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    low = tuple(f"U{k}" for k in range(len(ideal)))
    cm = crossed_module_from(names, br, ideal, low)
    g = from_crossed_module(cm, f"gl{n}:{kind}")
    inst = GalleryInstance(f"crossed_gl{n}_{kind}" + (f"[{seed}]" if seed is not None else ""), crossed_module=cm)
    if seed is not None:
        g = change_basis(g, random_basis_change(g.space, random.Random(seed)), g.name)
    inst.algebras[g.name] = g
    inst.ruths["ad"] = adjoint_ruth(g)
    inst.add_expectation("peiffer", True, "matrix commutator identities")
    dims = {"identity": {-1: 0, 0: 0}, "inclusion": {-1: 0, 0: 1}, "center": {-1: 0, 0: n * n - 1}}[kind]
    inst.add_expectation("underlying_cohomology", dims, "ker and coker of the inclusion")
    inst.add_expectation("jacobi", True, "crossed module axioms")
    if kind == "identity":
        ghat = from_crossed_module(cm, "ghat")
        ideal_idx = [{ghat.space.index("U0"): 1, ghat.space.index("U3"): 1},
                     {ghat.space.index("e11"): 1, ghat.space.index("e22"): 1}] if n == 2 else None
        if ideal_idx:
            e = quotient_extension(ghat, ideal_idx, ["Ic", "ic"], "E", "pgl2")
            inst.register_extension("E", e)
            _coefficient_ruths(inst, e, "E")
            inst.sections["h"] = default_section(e, "h")
            inst.sections["h1"] = random_section(e, random.Random(17), name="h1")
    return inst


# random families ------------------------------------------------------------------------------

def _aff2():
    return ("p", "q"), {("p", "q"): {"q": 1}}


def _h3():
    return ("x", "y", "z"), {("x", "y"): {"z": 1}}


def _random_module_matrix(rng: random.Random, k: int) -> list[list[int]]:
    return [[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)]


def _template(idx: int, rng: random.Random) -> CrossedModule:
    if idx == 0:
        return crossed_module_from(SL2_NAMES, SL2_BRACKETS, [{x: 1} for x in SL2_NAMES], ("E", "F", "H"))
    if idx == 1:
        high, br = _h3()
        return crossed_module_from(high, br, [{x: 1} for x in high], ("X", "Y", "Z"))
    if idx == 2:
        high, br = _h3()
        return crossed_module_from(high, br, [{"z": 1}], ("Z",))
    if idx == 3:
        high, br = _aff2()
        lam = rng.randint(-2, 2)
        return crossed_module_from(high, br, [{"q": 1}], ("Q",), ("m",), {("p", "m"): {"m": lam}})
    if idx == 4:
        k = rng.randint(1, 3)
        A = _random_module_matrix(rng, k)
        mods = tuple(f"m{i}" for i in range(k))
        act = {("t", mods[j]): {mods[i]: A[i][j] for i in range(k)} for j in range(k)}
        return crossed_module_from(("t",), {}, [], (), mods, act)
    if idx == 5:
        act = {("e", "v2"): {"v1": 1}, ("f", "v1"): {"v2": 1}, ("h", "v1"): {"v1": 1}, ("h", "v2"): {"v2": -1}}
        return crossed_module_from(SL2_NAMES, SL2_BRACKETS, [], (), ("v1", "v2"), act)
    if idx == 6:
        names, br = gl_brackets(2)
        return crossed_module_from(names, br, [{x: 1} for x in names], ("U11", "U12", "U21", "U22"))
    if idx == 7:
        names, br = gl_brackets(2)
        ideal = [{"e12": 1}, {"e21": 1}, {"e11": 1, "e22": -1}]
        return crossed_module_from(names, br, ideal, ("S12", "S21", "SH"))
    if idx == 8:
        high, br = _h3()
        lam = rng.randint(-2, 2)
        return crossed_module_from(high, br, [{"y": 1}, {"z": 1}], ("Y", "Z"), ("m",), {("x", "m"): {"m": lam}})
    raise IndexError(idx)


N_TEMPLATES = 9


def random_crossed_module(seed: int) -> tuple[CrossedModule, LInftyAlgebra]:
    """Seeded small crossed module (at most 4 + 4) in a random rational basis."""
    rng = random.Random(seed)
    cm = _template(rng.randrange(N_TEMPLATES), rng)
    g = from_crossed_module(cm, f"cm[{seed}]")
    g = change_basis(g, random_basis_change(g.space, rng), g.name)
    return cm, g


def string_crossed_module() -> CrossedModule:
    """Free 2-step nilpotent algebra on x1, x2, x3 covered by span(Y12, Y13, Y23) + R c.

    The action D_{x_i} Y_jk = eps_ijk c makes the minimal model carry a nonzero 3-bracket.
    """
    gens = ("x1", "x2", "x3")
    ys = {(1, 2): "y12", (1, 3): "y13", (2, 3): "y23"}
    high = gens + tuple(ys.values())
    br = {(f"x{i}", f"x{j}"): {n: 1} for (i, j), n in ys.items()}
    low = ("Y12", "Y13", "Y23", "c")
    partial = {"Y12": {"y12": 1}, "Y13": {"y13": 1}, "Y23": {"y23": 1}}
    eps = {(1, 2, 3): 1, (2, 1, 3): -1, (3, 1, 2): 1}
    action = {}
    for (i, j, k), s in eps.items():
        action[(f"x{i}", f"Y{j}{k}")] = {"c": s}
    return CrossedModule(low, high, {}, br, partial, action)


def random_strict_2term(seed: int) -> GalleryInstance:
    """Seeded strict 2-term algebra with nontrivial kernel and cokernel, in a random basis."""
    rng = random.Random(seed)
    choices = [2, 3, 4, 5, 8, "string"]
    pick = choices[seed % len(choices)]
    cm = string_crossed_module() if pick == "string" else _template(pick, rng)
    g = from_crossed_module(cm, f"strict[{seed}]")
    g = change_basis(g, random_basis_change(g.space, rng), g.name)
    inst = GalleryInstance(f"random_strict_2term[{seed}]", crossed_module=cm)
    inst.algebras[g.name] = g
    inst.ruths["trivialR"] = trivial_ruth(g, unit_space(), "trivialR")
    inst.template = pick
    inst.add_expectation("minimal_model.quasi_iso", True, "the model map is the inclusion of ker + coker")
    inst.add_expectation("jacobi", True, "crossed module axioms survive a change of basis")
    inst.add_expectation("theta.nonzero", pick == "string",
                         "only the nilpotent template has a non-exact 3-cocycle eps_ijk")
    return inst


def random_splitting(data: TwoTermData, rng: random.Random, spread: int = 2) -> Splitting:
    """Default splitting shifted by random image vectors (lifts) and kernel vectors (preimages)."""
    base = default_splitting(data)
    lift = {}
    for k, v in base.lift.items():
        v = dict(v)
        for c in data.image.order:
            add_into(v, data.image.pivots[c], rng.randint(-spread, spread))
        lift[k] = v
    pre = {}
    for c, v in base.preimage.items():
        v = dict(v)
        for kv in data.kernel_basis:
            add_into(v, kv, rng.randint(-spread, spread))
        pre[c] = v
    return Splitting(lift, pre)


def conjugate_ruth(r: Ruth, cols: Mapping[int, Mapping[int, object]], name: str | None = None) -> Ruth:
    """P^-1 rho P for a degree-preserving invertible P given by columns."""
    n = r.space.dim
    P = {j: dict(cols[j]) for j in range(n)}
    inv = left_inverse([P[j] for j in range(n)])

    def conj(m):
        out = {}
        for j in range(n):
            v = mat_apply(m, P[j])
            w = apply_left_inverse(inv, v) if v else {}
            if w:
                out[j] = w
        return out
    comps = {w: conj(m) for w, m in r.components.items()}
    return Ruth(r.algebra, r.space, conj(r.partial), comps, name or f"{r.name}^P")


def random_ruth(seed: int) -> Ruth:
    """A valid ruth built from a random crossed module, conjugated by a random basis change."""
    rng = random.Random(seed)
    _, g = random_crossed_module(seed)
    kind = rng.randrange(4)
    ad = adjoint_ruth(g)
    if kind == 0:
        r = ad
    elif kind == 1:
        r = tensor_ruth(ad, trivial_ruth(g, unit_space(rng.randint(-1, 1))))
    elif kind == 2:
        r = pullback_ruth(LInftyMorphism.identity(g), ad)
    else:
        r, _ = exterior_power_ruth(ad, 2) if ad.space.dim <= 5 else (ad, None)
    return conjugate_ruth(r, random_basis_change(r.space, rng, 1), f"random_ruth[{seed}]")


def perturb_ruth(r: Ruth, rng: random.Random) -> Ruth:
    """Add one random entry of the right degree to a random action component."""
    V = r.space
    words = [w for w in r.validation_words(2) if w]
    rng.shuffle(words)
    for w in words:
        d = 1 + r.algebra.words.degree(w)
        slots = [(i, j) for j in range(V.dim) for i in range(V.dim) if V.degrees[i] == V.degrees[j] + d]
        if slots:
            i, j = rng.choice(slots)
            comps = {k: {c: dict(col) for c, col in m.items()} for k, m in r.components.items()}
            m = comps.setdefault(w, {})
            add_into(m.setdefault(j, {}), {i: rng.choice([-2, -1, 1, 2])})
            comps[w] = {c: col for c, col in m.items() if col}
            return Ruth(r.algebra, V, r.partial, comps, f"{r.name}~")
    raise ValueError("no room to perturb this ruth")


# naturality scenarios ------------------------------------------------------------------------------

@dataclass
class NaturalityScenario:
    name: str
    T: LInftyMorphism
    t: dict
    extension: LInftyExtension
    ruth: Ruth
    quasi_iso: bool


def naturality_scenarios() -> list[NaturalityScenario]:
    out = []
    heis = heisenberg()
    e = heis.extensions["E"]
    r = heis.ruths["E.coeff"]
    ident = {0: {0: 1}}
    R2 = e.g
    out.append(NaturalityScenario("identity", LInftyMorphism.identity(R2), ident, e, r, True))
    auto = abelian(("u", "v"), "R2'")
    out.append(NaturalityScenario("automorphism", LInftyMorphism.strict(auto, R2, {0: {0: 2, 1: 1}, 1: {0: 1, 1: 1}}, "A"),
                                  ident, e, r, True))
    line = abelian(("s",), "R1")
    out.append(NaturalityScenario("line", LInftyMorphism.strict(line, R2, {0: {0: 1, 1: 3}}, "L"), ident, e, r, False))
    R3 = abelian(("p", "q", "w"), "R3")
    out.append(NaturalityScenario("projection", LInftyMorphism.strict(R3, R2, {0: {0: 1}, 1: {1: 1}, 2: {0: 1, 1: -1}}, "P"),
                                  ident, e, r, False))
    st = skeletal_string(1)
    es = st.extensions["E"]
    rs = st.ruths["E.coeff"]
    # sl2 + (R b -> R a) contractible, projecting onto sl2
    space = GradedSpace(("b",) + SL2_NAMES + ("a",), (-1, 0, 0, 0, 0))
    table = dict(SL2_BRACKETS)
    table[("b",)] = {"a": 1}
    big = LInftyAlgebra.from_brackets(space, table, "sl2+C")
    T = LInftyMorphism.strict(big, es.g, {1: {0: 1}, 2: {1: 1}, 3: {2: 1}}, "Q")
    out.append(NaturalityScenario("quasi-iso", T, ident, es, rs, True))
    return out


# registry ------------------------------------------------------------------------------------------

GALLERY: dict[str, Callable[[], GalleryInstance]] = {
    "heisenberg": heisenberg,
    "central_r4": central_r4,
    "skeletal_string": lambda: skeletal_string(1),
    "skeletal_string_0": lambda: skeletal_string(0),
    "sl2_product": lambda: sl2_product(4),
    "crossed_heisenberg": crossed_heisenberg,
    "crossed_gl2_identity": lambda: crossed_module_matrices(2, "identity"),
    "crossed_gl2_inclusion": lambda: crossed_module_matrices(2, "inclusion"),
}


def build(name: str) -> GalleryInstance:
    if name.startswith("random_strict_2term:"):
        return random_strict_2term(int(name.split(":", 1)[1]))
    try:
        return GALLERY[name]()
    except KeyError:
        raise KeyError(f"unknown gallery instance {name!r}; known: {', '.join(sorted(GALLERY))}") from None


def all_instances() -> list[GalleryInstance]:
    return [build(k) for k in GALLERY]
