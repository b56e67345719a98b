"""Symmetric words over a shifted basis and the coalgebra S(V).

A word is a tuple of basis indices of ``base`` sorted by (degree, index).
Signs are never stored in words; :meth:`WordSpace.canonicalize` returns them.
Elements of S(V) are dicts ``word -> scalar``; elements of S(V) (x) S(V) are
dicts ``(word, word) -> scalar``.  Maps out of S(V) ("word maps") are dicts
``word -> sparse vector``.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .graded import GradedSpace, add_into, add_term, koszul_sign, scalar, skew_sign

Word = tuple[int, ...]
EMPTY: Word = ()


def unshuffles(k: int, l: int) -> list[tuple[int, ...]]:
    """All (k,l)-unshuffles as 0-based permutations, increasing on both blocks."""
    if k < 0 or l < 0:
        raise ValueError("block sizes must be non-negative")
    n = k + l
    out = []
    for left in combinations(range(n), k):
        rest = tuple(i for i in range(n) if i not in left)
        out.append(left + rest)
    return out


class WordSpace:
    """Canonical symmetric words on the basis of ``base`` with cached coproducts."""

    def __init__(self, base: GradedSpace):
        self.base = base
        self.deg = base.degrees
        self.odd = tuple(d % 2 for d in base.degrees)
        order = sorted(range(base.dim), key=lambda i: (base.degrees[i], i))
        self.order = tuple(order)
        rank = [0] * base.dim
        for r, i in enumerate(order):
            rank[i] = r
        self.rank = tuple(rank)
        self._coproduct: dict[Word, tuple] = {}
        self._by_degree: dict[int, tuple[Word, ...]] = {}

    def __repr__(self) -> str:
        return f"WordSpace({self.base.dim} generators)"

    # words ---------------------------------------------------------------

    def degree(self, word: Sequence[int]) -> int:
        deg = self.deg
        return sum(deg[i] for i in word)

    def sort_key(self, word: Word):
        rank = self.rank
        return (len(word), tuple(rank[i] for i in word))

    def canonicalize(self, raw: Sequence[int]) -> tuple[int, Word | None]:
        """Sort generators; return (Koszul sign, word), or (0, None) for a zero word."""
        rank, odd = self.rank, self.odd
        n = len(raw)
        parity = 0
        for i in range(n):
            a = raw[i]
            if a < 0 or a >= len(rank):
                raise ValueError(f"generator {a} not in this space")
            if not odd[a]:
                continue
            ra = rank[a]
            for j in range(i + 1, n):
                b = raw[j]
                if odd[b]:
                    rb = rank[b]
                    if ra > rb:
                        parity ^= 1
                    elif ra == rb:
                        return 0, None
        word = tuple(sorted(raw, key=rank.__getitem__))
        return (-1 if parity else 1), word

    def word(self, names: Iterable[str]) -> tuple[int, Word | None]:
        return self.canonicalize([self.base.index(n) for n in names])

    def word_names(self, word: Word) -> list[str]:
        return [self.base.names[i] for i in word]

    def product(self, w1: Word, w2: Word) -> tuple[int, Word | None]:
        return self.canonicalize(w1 + w2)

    def coproduct(self, word: Word) -> tuple[tuple[Word, Word, int], ...]:
        """Terms (left, right, coeff) of the symmetric deconcatenation, units included."""
        hit = self._coproduct.get(word)
        if hit is not None:
            return hit
        n = len(word)
        odd = [self.odd[i] for i in word]
        acc: dict[tuple[Word, Word], int] = {}
        for mask in range(1 << n):
            left = []
            right = []
            parity = 0
            odd_right = 0
            for pos in range(n):
                if mask >> pos & 1:
                    left.append(word[pos])
                    if odd[pos]:
                        parity += odd_right
                else:
                    right.append(word[pos])
                    if odd[pos]:
                        odd_right += 1
            key = (tuple(left), tuple(right))
            acc[key] = acc.get(key, 0) + (-1 if parity % 2 else 1)
        terms = tuple(sorted(((l, r, c) for (l, r), c in acc.items() if c),
                             key=lambda t: (self.sort_key(t[0]), self.sort_key(t[1]))))
        self._coproduct[word] = terms
        return terms

    def reduced_coproduct(self, word: Word) -> tuple[tuple[Word, Word, int], ...]:
        return tuple(t for t in self.coproduct(word) if t[0] and t[1])

    # enumeration ---------------------------------------------------------

    def words_of_degree(self, degree: int) -> tuple[Word, ...]:
        """All nonzero canonical words of the given total degree (requires negative generators)."""
        hit = self._by_degree.get(degree)
        if hit is not None:
            return hit
        if degree > 0:
            return ()
        if any(d >= 0 for d in self.deg):
            raise ValueError("degree enumeration needs all generators in negative degree")
        gens = self.order
        out: list[Word] = []

        def rec(pos: int, remaining: int, current: list[int]):
            if remaining == 0:
                out.append(tuple(current))
                return
            if pos == len(gens):
                return
            g = gens[pos]
            d = self.deg[g]
            top = 1 if self.odd[g] else remaining // d
            for m in range(top, -1, -1):
                if m * d < remaining:
                    continue
                rec(pos + 1, remaining - m * d, current + [g] * m)

        rec(0, degree, [])
        words = tuple(sorted(set(out), key=self.sort_key))
        self._by_degree[degree] = words
        return words

    def words_in_degree_range(self, lo: int, hi: int) -> list[Word]:
        out: list[Word] = []
        for d in range(min(hi, 0), lo - 1, -1):
            out.extend(self.words_of_degree(d))
        return out

    def words_of_weight(self, n: int) -> list[Word]:
        out = []
        for combo in combinations_with_replacement(self.order, n):
            if any(self.odd[a] and a == b for a, b in zip(combo, combo[1:])):
                continue
            out.append(tuple(combo))
        return out

    def words_up_to_weight(self, n: int) -> list[Word]:
        out: list[Word] = []
        for k in range(n + 1):
            out.extend(self.words_of_weight(k))
        return out

    # elements ------------------------------------------------------------

    def mul(self, x: Mapping[Word, object], y: Mapping[Word, object]) -> dict[Word, object]:
        out: dict = {}
        for w1, a in x.items():
            for w2, b in y.items():
                s, w = self.canonicalize(w1 + w2)
                if s:
                    add_term(out, w, s * a * b)
        return out

    def coproduct_element(self, x: Mapping[Word, object]) -> dict[tuple[Word, Word], object]:
        out: dict = {}
        for w, a in x.items():
            for l, r, c in self.coproduct(w):
                add_term(out, (l, r), c * a)
        return out

    def vector_to_element(self, vec: Mapping[int, object]) -> dict[Word, object]:
        return {(i,): c for i, c in vec.items()}


def tensor_twist(ws: WordSpace, x: Mapping[tuple[Word, Word], object]) -> dict:
    """T(a (x) b) = (-1)^{|a||b|} b (x) a."""
    out: dict = {}
    for (a, b), c in x.items():
        s = -1 if (ws.degree(a) * ws.degree(b)) % 2 else 1
        add_term(out, (b, a), s * c)
    return out


def apply_word_map(wmap: Mapping[Word, Mapping[int, object]], x: Mapping[Word, object]) -> dict:
    """Evaluate a map S(V) -> W given on canonical words on an element of S(V)."""
    out: dict = {}
    for w, c in x.items():
        v = wmap.get(w)
        if v:
            add_into(out, v, c)
    return out


class Coderivation:
    """d = mu (lambda (x) id) Delta for a degree-1 word map lambda: S(V) -> V."""

    def __init__(self, ws: WordSpace, lam: Mapping[Word, Mapping[int, object]]):
        if EMPTY in lam and lam[EMPTY]:
            raise ValueError("curved structures (nonzero value on the unit) are not supported")
        for w, v in lam.items():
            for i in v:
                if ws.deg[i] != ws.degree(w) + 1:
                    raise ValueError(f"bracket on {ws.word_names(w)} has wrong degree")
        self.ws = ws
        self.lam = lam
        self._cache: dict[Word, dict] = {}

    def __call__(self, word: Word) -> dict[Word, object]:
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        ws, lam = self.ws, self.lam
        out: dict = {}
        for left, right, c in ws.coproduct(word):
            if not left:
                continue
            val = lam.get(left)
            if not val:
                continue
            for g, a in val.items():
                s, w = ws.canonicalize((g,) + right)
                if s:
                    add_term(out, w, s * c * a)
        self._cache[word] = out
        return out

    def apply(self, x: Mapping[Word, object]) -> dict:
        out: dict = {}
        for w, c in x.items():
            add_into(out, self(w), c)
        return out


def coderivation_from(ws: WordSpace, lam: Mapping[Word, Mapping[int, object]]) -> Coderivation:
    return Coderivation(ws, lam)


def set_partitions(n: int):
    """Unordered set partitions of range(n), blocks ordered by their first element."""
    if n == 0:
        yield []
        return
    for part in set_partitions(n - 1):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [n - 1]] + part[i + 1:]
        yield part + [[n - 1]]


class CoalgebraMap:
    """The coalgebra morphism S(V) -> S(W) with prescribed degree-0 corestriction."""

    def __init__(self, source: WordSpace, target: WordSpace,
                 components: Mapping[Word, Mapping[int, object]]):
        for w, v in components.items():
            if not w:
                raise ValueError("components must vanish on the unit")
            for i in v:
                if target.deg[i] != source.degree(w):
                    raise ValueError(f"component on {source.word_names(w)} is not of degree 0")
        self.source = source
        self.target = target
        self.components = components
        self.strict = all(len(w) == 1 for w in components)
        self._cache: dict[Word, dict] = {}

    def __call__(self, word: Word) -> dict[Word, object]:
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        tgt = self.target
        comps = self.components
        n = len(word)
        out: dict = {}
        if n == 0:
            out = {EMPTY: 1}
        elif self.strict:
            acc = {EMPTY: 1}
            for g in word:
                v = comps.get((g,))
                if not v:
                    acc = {}
                    break
                acc = tgt.mul(acc, tgt.vector_to_element(v))
            out = acc
        else:
            degs = [self.source.deg[g] for g in word]
            for part in set_partitions(n):
                perm = [p for block in part for p in block]
                sign = koszul_sign(perm, degs)
                acc = {EMPTY: sign}
                for block in part:
                    v = comps.get(tuple(word[p] for p in block))
                    if not v:
                        acc = {}
                        break
                    acc = tgt.mul(acc, tgt.vector_to_element(v))
                add_into(out, acc)
        self._cache[word] = out
        return out

    def apply(self, x: Mapping[Word, object]) -> dict:
        out: dict = {}
        for w, c in x.items():
            add_into(out, self(w), c)
        return out


def coalgebra_morphism_from(source: WordSpace, target: WordSpace,
                            components: Mapping[Word, Mapping[int, object]]) -> CoalgebraMap:
    return CoalgebraMap(source, target, components)


# decalage ----------------------------------------------------------------

def _decalage_sign(word: Sequence[int], degrees: Sequence[int]) -> int:
    k = len(word)
    parity = sum((k - 1 - i) * degrees[g] for i, g in enumerate(word)) % 2
    return -1 if parity else 1


def skew_canonical_brackets(space: GradedSpace,
                            brackets: Mapping[Sequence[int], Mapping[int, object]]) -> dict[Word, dict]:
    """Normalize a skew bracket table to keys sorted by (degree, index).

    Raises ValueError when two entries contradict graded skew-symmetry or when
    an entry is forced to vanish by it.
    """
    rank = {i: (space.degrees[i], i) for i in range(space.dim)}
    out: dict[Word, dict] = {}
    seen: dict[Word, dict] = {}
    for raw, val in brackets.items():
        raw = tuple(raw)
        if not raw:
            raise ValueError("brackets need at least one argument")
        val = {i: scalar(c) for i, c in val.items() if scalar(c)}
        perm = sorted(range(len(raw)), key=lambda p: rank[raw[p]])
        key = tuple(raw[p] for p in perm)
        degs = [space.degrees[g] for g in raw]
        if any(a == b and not space.degrees[a] % 2 for a, b in zip(key, key[1:])):
            if val:
                raise ValueError(f"bracket of {[space.names[g] for g in raw]} must vanish by skew-symmetry")
            continue
        s = skew_sign(perm, degs)
        canon = {i: s * c for i, c in val.items()}
        if key in seen and seen[key] != canon:
            raise ValueError(f"inconsistent skew entries for {[space.names[g] for g in key]}")
        seen[key] = canon
        k = len(key)
        for i in canon:
            if space.degrees[i] != sum(degs) + 2 - k:
                raise ValueError(f"bracket of {[space.names[g] for g in raw]} has wrong degree")
        if canon:
            out[key] = canon
    return out


def brackets_to_lambdas(space: GradedSpace,
                        brackets: Mapping[Sequence[int], Mapping[int, object]]) -> dict[Word, dict]:
    """Skew brackets on ``space`` to symmetric degree-1 brackets on ``space[1]``.

    lambda_k(s x_1 v ... v s x_k) = (-1)^{sum_i (k-i)|x_i|} s[x_1, ..., x_k].
    """
    canon = skew_canonical_brackets(space, brackets)
    return {w: {i: _decalage_sign(w, space.degrees) * c for i, c in v.items()}
            for w, v in canon.items()}


def lambdas_to_brackets(space: GradedSpace, lam: Mapping[Word, Mapping[int, object]]) -> dict[Word, dict]:
    """Inverse of :func:`brackets_to_lambdas`; keys are canonical sorted tuples."""
    return {w: {i: _decalage_sign(w, space.degrees) * c for i, c in v.items()}
            for w, v in lam.items() if v}


def skew_bracket_value(space: GradedSpace, table: Mapping[Word, Mapping[int, object]],
                       args: Sequence[int]) -> tuple[int, dict]:
    """Look up [args] in a canonical skew table; returns (sign, vector)."""
    perm = sorted(range(len(args)), key=lambda p: (space.degrees[args[p]], args[p]))
    key = tuple(args[p] for p in perm)
    if any(a == b and not space.degrees[a] % 2 for a, b in zip(key, key[1:])):
        return 0, {}
    s = skew_sign(perm, [space.degrees[g] for g in args])
    return s, table.get(key, {})


__all__ = [
    "Word", "EMPTY", "WordSpace", "unshuffles", "Coderivation", "CoalgebraMap",
    "coderivation_from", "coalgebra_morphism_from", "set_partitions", "tensor_twist",
    "apply_word_map", "brackets_to_lambdas", "lambdas_to_brackets", "skew_canonical_brackets",
    "skew_bracket_value",
]
