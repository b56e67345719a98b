"""Independent reference computations used to cross-check the package.

Nothing here calls the package's sign, coalgebra, or cochain code: the Jacobi
identity is evaluated in the skew convention over all permutations, and Lie
algebra cohomology is computed from the textbook exterior complex with sympy ranks.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial

import sympy


def bubble_sign(seq, degrees, skew: bool) -> int:
    """Sign of sorting ``seq`` by adjacent swaps; each swap of a, b costs (-1)^{|a||b|}, times -1 if skew."""
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                a, b = s[j], s[j + 1]
                t = -1 if degrees[a] * degrees[b] % 2 else 1
                sign *= -t if skew else t
                s[j], s[j + 1] = b, a
    return sign


def signature(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


class SkewTable:
    """Skew-symmetric multibrackets from a table keyed by sorted index tuples."""

    def __init__(self, degrees, table):
        self.degrees = list(degrees)
        self.table = {tuple(k): dict(v) for k, v in table.items()}

    def value(self, args) -> dict:
        args = list(args)
        key = tuple(sorted(args))
        for a, b in zip(key, key[1:]):
            if a == b and self.degrees[a] % 2 == 0:
                return {}
        v = self.table.get(key)
        if not v:
            return {}
        sign = bubble_sign(args, self.degrees, skew=True)
        return {i: sign * c for i, c in v.items()}

    def bracket(self, vectors) -> dict:
        """Multilinear extension to vectors given as {index: coeff}."""
        out: dict = {}

        def rec(k, args, coeff):
            if k == len(vectors):
                for i, c in self.value(args).items():
                    out[i] = out.get(i, 0) + coeff * c
                return
            for a, c in vectors[k].items():
                rec(k + 1, args + [a], coeff * c)
        rec(0, [], 1)
        return {i: c for i, c in out.items() if c}


def lada_markl_jacobiator(degrees, table: SkewTable, args, arities) -> dict:
    """sum_{i+j=n+1} sum_sigma chi(sigma) (-1)^{i(j-1)} l_j(l_i(x_sigma...), x_sigma...) / (i!(n-i)!)."""
    n = len(args)
    out: dict = {}
    for i in range(1, n + 1):
        j = n + 1 - i
        if i not in arities or j not in arities:
            continue
        for sigma in permutations(range(n)):
            s = bubble_sign(list(sigma), [degrees[a] for a in args], skew=True)
            inner = table.bracket([{args[p]: 1} for p in sigma[:i]])
            if not inner:
                continue
            val = table.bracket([inner] + [{args[p]: 1} for p in sigma[i:]])
            c = Fraction(s * (-1) ** (i * (j - 1)), factorial(i) * factorial(n - i))
            for k, v in val.items():
                out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def jacobi_holds(degrees, table: dict) -> bool:
    """Check the higher Jacobi identities on all multisets of basis arguments."""
    t = SkewTable(degrees, table)
    arities = {len(k) for k in table}
    if not arities:
        return True
    top = 2 * max(arities) - 1
    dim = len(degrees)
    for n in range(1, top + 1):
        for args in combinations_with_replacement(range(dim), n):
            if lada_markl_jacobiator(degrees, t, list(args), arities):
                return False
    return True


# classical Chevalley-Eilenberg complex ------------------------------------------

def classical_ce_matrix(dim, bracket, rep, p):
    """Matrix of d: Hom(Lambda^p g, V) -> Hom(Lambda^{p+1} g, V) for an ordinary Lie algebra.

    ``bracket[(a, b)]`` gives [e_a, e_b] as {c: coeff}; ``rep[a]`` is the matrix of e_a on V as
    a dense list of rows.  Basis: (subset, v) pairs in lexicographic order.
    """
    n = len(rep[0]) if rep else 1
    src = [(S, v) for S in combinations(range(dim), p) for v in range(n)]
    tgt = [(S, v) for S in combinations(range(dim), p + 1) for v in range(n)]
    sidx = {b: k for k, b in enumerate(src)}
    M = sympy.zeros(len(tgt), len(src))

    def omega_on(args, col):
        """Coefficient vector of the basis cochain ``col`` evaluated on an argument list of vectors."""
        S, v = col
        # args: list of dicts; alternating multilinear evaluation on the subset S
        total = 0
        for perm in permutations(range(p)):
            c = 1
            for slot, idx in enumerate(perm):
                c *= args[slot].get(S[idx], 0)
                if not c:
                    break
            if c:
                total += c * signature(perm)
        return total

    for r, (T, w) in enumerate(tgt):
        xs = list(T)
        for col_k, col in enumerate(src):
            S, v = col
            val = 0
            # sum_i (-1)^i rho(x_i) omega(x_0..^i..x_p)
            for i in range(p + 1):
                rest = [{x: 1} for k, x in enumerate(xs) if k != i]
                ev = omega_on(rest, col)
                if ev:
                    val += (-1) ** i * rep[xs[i]][w][v] * ev if rep else 0
            # sum_{i<j} (-1)^{i+j} omega([x_i, x_j], ...)
            for i in range(p + 1):
                for j in range(i + 1, p + 1):
                    br = bracket.get((xs[i], xs[j]), {})
                    if not br:
                        continue
                    rest = [br] + [{x: 1} for k, x in enumerate(xs) if k not in (i, j)]
                    ev = omega_on(rest, col)
                    if ev and w == v:
                        val += (-1) ** (i + j) * ev
            M[r, col_k] = val
    return M


def classical_cohomology_dims(dim, bracket, rep, degrees):
    n = len(rep[0]) if rep else 1
    out = {}
    for p in degrees:
        cp = len(list(combinations(range(dim), p))) * n if 0 <= p <= dim else 0
        d_out = classical_ce_matrix(dim, bracket, rep, p).rank() if 0 <= p < dim else 0
        d_in = classical_ce_matrix(dim, bracket, rep, p - 1).rank() if 1 <= p <= dim else 0
        out[p] = cp - d_out - d_in
    return out


def full_bracket(names, table):
    """Index-keyed skew table [e_a, e_b] for both orders from a name-keyed one-sided table."""
    pos = {n: i for i, n in enumerate(names)}
    out = {}
    for (a, b), v in table.items():
        vec = {pos[k]: c for k, c in v.items()}
        out[(pos[a], pos[b])] = vec
        out[(pos[b], pos[a])] = {k: -c for k, c in vec.items()}
    return out
