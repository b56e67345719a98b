"""Exact graded linear algebra over the rationals.

Scalars are ``int`` or ``fractions.Fraction``; integral values are kept as
``int`` so that hot loops over integer structure constants stay cheap.
Vectors are sparse dicts ``index -> scalar`` with zero entries pruned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterable, Mapping, Sequence


def scalar(x) -> int | Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a normalized scalar."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        q = Fraction(x.strip())
        return q.numerator if q.denominator == 1 else q
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    raise TypeError(f"cannot interpret {x!r} as a rational scalar")


def normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def format_scalar(x) -> str:
    return str(normalize(x))


# sparse vectors ---------------------------------------------------------

def add_into(acc: dict, vec: Mapping, coeff=1) -> dict:
    """acc += coeff * vec, pruning zeros. Returns acc."""
    if not coeff:
        return acc
    for k, c in vec.items():
        v = acc.get(k, 0) + coeff * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


def add_term(acc: dict, key, c) -> None:
    if not c:
        return
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        del acc[key]


def scale(vec: Mapping, coeff) -> dict:
    if not coeff:
        return {}
    return {k: coeff * c for k, c in vec.items() if coeff * c}


def vec_sub(a: Mapping, b: Mapping) -> dict:
    return add_into(dict(a), b, -1)


def clean(vec: Mapping) -> dict:
    return {k: normalize(c) for k, c in vec.items() if c}


# signs ------------------------------------------------------------------

def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of the graded symmetric action sending v_1...v_n to v_perm(1)...v_perm(n).

    ``perm`` is 0-based: ``perm[i]`` is the original position placed at slot i.
    """
    n = len(perm)
    if len(degrees) != n:
        raise ValueError("perm and degrees differ in length")
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm!r} is not a permutation of 0..{n - 1}")
    parity = 0
    for i in range(n):
        a = perm[i]
        if not degrees[a] % 2:
            continue
        for j in range(i + 1, n):
            b = perm[j]
            if a > b and degrees[b] % 2:
                parity ^= 1
    return -1 if parity else 1


def permutation_sign(perm: Sequence[int]) -> int:
    n = len(perm)
    inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def skew_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of the skew action: each adjacent transposition contributes -(-1)^{|a||b|}."""
    return permutation_sign(perm) * koszul_sign(perm, degrees)


def compose_perms(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p o q)(i) = p[q[i]]."""
    return tuple(p[i] for i in q)


def all_permutations(n: int) -> list[tuple[int, ...]]:
    return list(permutations(range(n)))


# graded spaces ----------------------------------------------------------

@dataclass(frozen=True)
class GradedSpace:
    """Finite basis of named, integer-graded vectors."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be unique")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "GradedSpace":
        pairs = list(pairs)
        return cls(tuple(str(n) for n, _ in pairs), tuple(int(d) for _, d in pairs))

    @property
    def dim(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no basis element named {name!r}") from None

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def indices_of_degree(self, d: int) -> list[int]:
        return [i for i, e in enumerate(self.degrees) if e == d]

    @cached_property
    def degree_set(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.degrees)))

    def shift(self, k: int) -> "GradedSpace":
        return shift(self, k)

    def pairs(self) -> list[tuple[str, int]]:
        return list(zip(self.names, self.degrees))

    def is_homogeneous(self, vec: Mapping[int, object]) -> bool:
        return len({self.degrees[i] for i in vec}) <= 1

    def vector_degree(self, vec: Mapping[int, object]) -> int | None:
        degs = {self.degrees[i] for i in vec}
        if len(degs) > 1:
            raise ValueError("inhomogeneous vector")
        return degs.pop() if degs else None


def shift(space: GradedSpace, k: int) -> GradedSpace:
    """V[k]: every degree decreases by k."""
    return GradedSpace(space.names, tuple(d - k for d in space.degrees))


def zero_space() -> GradedSpace:
    return GradedSpace((), ())


def direct_sum(a: GradedSpace, b: GradedSpace) -> GradedSpace:
    return GradedSpace(a.names + b.names, a.degrees + b.degrees)


def tensor_space(a: GradedSpace, b: GradedSpace) -> GradedSpace:
    """Basis (i, j) flattened as i * dim(b) + j."""
    names = tuple(f"{x}*{y}" for x in a.names for y in b.names)
    degs = tuple(d + e for d in a.degrees for e in b.degrees)
    return GradedSpace(names, degs)


def tensor_power_space(a: GradedSpace, k: int) -> GradedSpace:
    if k == 0:
        return GradedSpace(("1",), (0,))
    out = a
    for _ in range(k - 1):
        out = tensor_space(out, a)
    return out


def tensor_power_index(multi: Sequence[int], dim: int) -> int:
    idx = 0
    for i in multi:
        idx = idx * dim + i
    return idx


def tensor_power_multi(idx: int, dim: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        idx, r = divmod(idx, dim)
        out.append(r)
    return tuple(reversed(out))


# homogeneous maps -------------------------------------------------------

class HomogeneousMap:
    """Sparse linear map of fixed degree, stored by columns: ``cols[j] = image of e_j``."""

    __slots__ = ("source", "target", "degree", "cols")

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int,
                 cols: Mapping[int, Mapping[int, object]] | None = None, check: bool = True):
        self.source = source
        self.target = target
        self.degree = degree
        self.cols = {}
        for j, col in (cols or {}).items():
            col = clean(col)
            if col:
                self.cols[j] = col
        if check:
            for j, col in self.cols.items():
                for i in col:
                    if target.degrees[i] != source.degrees[j] + degree:
                        raise ValueError(
                            f"entry {source.names[j]} -> {target.names[i]} breaks degree {degree}")

    @classmethod
    def identity(cls, space: GradedSpace) -> "HomogeneousMap":
        return cls(space, space, 0, {i: {i: 1} for i in range(space.dim)}, check=False)

    @classmethod
    def zero(cls, source: GradedSpace, target: GradedSpace, degree: int = 0) -> "HomogeneousMap":
        return cls(source, target, degree, {}, check=False)

    @classmethod
    def from_entries(cls, source, target, degree, entries: Mapping[tuple[int, int], object]):
        cols: dict[int, dict] = {}
        for (j, i), c in entries.items():
            add_term(cols.setdefault(j, {}), i, scalar(c))
        return cls(source, target, degree, cols)

    def entries(self) -> dict[tuple[int, int], object]:
        return {(j, i): c for j, col in self.cols.items() for i, c in col.items()}

    def column(self, j: int) -> dict:
        return self.cols.get(j, {})

    def apply(self, vec: Mapping[int, object]) -> dict:
        out: dict = {}
        for j, c in vec.items():
            col = self.cols.get(j)
            if col:
                add_into(out, col, c)
        return out

    __call__ = apply

    def compose(self, other: "HomogeneousMap") -> "HomogeneousMap":
        """self o other."""
        if other.target != self.source:
            raise ValueError("incompatible composition")
        cols = {j: self.apply(col) for j, col in other.cols.items()}
        return HomogeneousMap(other.source, self.target, self.degree + other.degree, cols, check=False)

    def __matmul__(self, other: "HomogeneousMap") -> "HomogeneousMap":
        return self.compose(other)

    def _combine(self, other: "HomogeneousMap", coeff) -> "HomogeneousMap":
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ValueError("maps live in different Hom spaces")
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, col in other.cols.items():
            add_into(cols.setdefault(j, {}), col, coeff)
        return HomogeneousMap(self.source, self.target, self.degree, cols, check=False)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c) -> "HomogeneousMap":
        return HomogeneousMap(self.source, self.target, self.degree,
                              {j: scale(col, c) for j, col in self.cols.items()}, check=False)

    def __rmul__(self, c):
        return self.scaled(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.degree == other.degree and self.cols == other.cols)

    def __hash__(self):
        return hash((self.source, self.target, self.degree, tuple(sorted(self.entries().items()))))

    def is_zero(self) -> bool:
        return not self.cols

    def __repr__(self) -> str:
        return f"HomogeneousMap(deg={self.degree}, {self.source.dim}->{self.target.dim}, nnz={len(self.entries())})"


def tensor_of_maps(f: HomogeneousMap, g: HomogeneousMap) -> HomogeneousMap:
    """(f (x) g)(v (x) w) = (-1)^{|g||v|} f(v) (x) g(w)."""
    src = tensor_space(f.source, g.source)
    tgt = tensor_space(f.target, g.target)
    nb, mb = g.source.dim, g.target.dim
    cols: dict[int, dict] = {}
    for j1, col1 in f.cols.items():
        sign = -1 if (g.degree * f.source.degrees[j1]) % 2 else 1
        for j2, col2 in g.cols.items():
            col: dict = {}
            for i1, a in col1.items():
                for i2, b in col2.items():
                    col[i1 * mb + i2] = sign * a * b
            cols[j1 * nb + j2] = col
    return HomogeneousMap(src, tgt, f.degree + g.degree, cols, check=False)


def named_vector(space: GradedSpace, vec: Mapping[int, object]) -> dict[str, str]:
    return {space.names[i]: format_scalar(c) for i, c in sorted(vec.items()) if c}


def format_vector(space: GradedSpace, vec: Mapping[int, object]) -> str:
    if not vec:
        return "0"
    parts = []
    for i, c in sorted(vec.items()):
        c = normalize(c)
        if c == 1:
            parts.append(f"+{space.names[i]}")
        elif c == -1:
            parts.append(f"-{space.names[i]}")
        else:
            s = str(c)
            parts.append(f"{s if s.startswith('-') else '+' + s}*{space.names[i]}")
    out = " ".join(parts)
    return out[1:] if out.startswith("+") else out
