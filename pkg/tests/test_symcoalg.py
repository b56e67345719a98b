import random
from itertools import combinations
from math import comb

import pytest

from linfty_cwl.graded import GradedSpace
from linfty_cwl.symcoalg import (EMPTY, CoalgebraMap, Coderivation, WordSpace, brackets_to_lambdas,
                                 lambdas_to_brackets, unshuffles)
from oracles import bubble_sign

V = GradedSpace(("p", "q", "r", "s", "t"), (-1, -1, -2, -3, -2))


def test_unshuffles_count_and_shape():
    for k in range(4):
        for l in range(4):
            us = unshuffles(k, l)
            assert len(us) == comb(k + l, k)
            for u in us:
                assert list(u[:k]) == sorted(u[:k]) and list(u[k:]) == sorted(u[k:])


def test_canonicalize_sign_matches_bubble_sort():
    ws = WordSpace(V)
    rank = {g: r for r, g in enumerate(ws.order)}
    rng = random.Random(0)
    for _ in range(300):
        raw = [rng.randrange(V.dim) for _ in range(rng.randint(0, 5))]
        s, w = ws.canonicalize(raw)
        seq = [rank[g] for g in raw]
        degs = {rank[g]: V.degrees[g] for g in range(V.dim)}
        repeated_odd = any(raw.count(g) > 1 and V.degrees[g] % 2 for g in set(raw))
        if repeated_odd:
            assert s == 0 and w is None
        else:
            assert s == bubble_sign(seq, degs, skew=False)
            assert list(w) == sorted(raw, key=rank.__getitem__)


def test_symmetric_words_vanish_for_repeated_odd():
    ws = WordSpace(V)
    assert ws.canonicalize([0, 0]) == (0, None)
    assert ws.canonicalize([2, 2])[0] == 1


def test_coproduct_terms_are_unshuffle_signs():
    ws = WordSpace(V)
    word = ws.canonicalize([0, 1, 2, 3])[1]
    terms = {(l, r): c for l, r, c in ws.coproduct(word)}
    rank = {g: k for k, g in enumerate(word)}
    degs = {k: V.degrees[g] for k, g in enumerate(word)}
    count = 0
    for k in range(len(word) + 1):
        for left in combinations(range(len(word)), k):
            right = [i for i in range(len(word)) if i not in left]
            expect = bubble_sign(list(left) + right, degs, skew=False)
            key = (tuple(word[i] for i in left), tuple(word[i] for i in right))
            assert terms[key] == expect
            count += 1
    assert count == len(terms) == 16


def test_coproduct_counit_and_coassociativity():
    ws = WordSpace(V)
    for raw in ([0, 2, 2], [1, 3, 4], [0, 1, 2, 4]):
        _, w = ws.canonicalize(raw)
        terms = ws.coproduct(w)
        assert (EMPTY, w, 1) in terms and (w, EMPTY, 1) in terms
        left: dict = {}
        right: dict = {}
        for a, b, c in terms:
            for a1, a2, c2 in ws.coproduct(a):
                key = (a1, a2, b)
                left[key] = left.get(key, 0) + c * c2
            for b1, b2, c2 in ws.coproduct(b):
                key = (a, b1, b2)
                right[key] = right.get(key, 0) + c * c2
        assert {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}


def test_words_of_degree_enumeration():
    ws = WordSpace(V)
    for d in range(-6, 0):
        words = ws.words_of_degree(d)
        assert len(set(words)) == len(words)
        for w in words:
            assert ws.degree(w) == d
            assert ws.canonicalize(w) == (1, w)
    assert ws.words_of_degree(0) == (EMPTY,)


def test_decalage_round_trip_and_sign():
    space = GradedSpace(("c", "x", "y"), (-1, 0, 0))
    table = {(1, 2): {1: 1}, (0, 1): {0: 1}, (1, 2, 0): {}}
    lam = brackets_to_lambdas(space, table)
    assert lambdas_to_brackets(space, lam) == {(1, 2): {1: 1}, (0, 1): {0: 1}}
    # three degree-0 inputs: (-1)^{2*0 + 1*0} = 1; with a degree -1 input in first slot of a pair: (-1)^{|c|} = -1
    assert lam[(0, 1)] == {0: -1}


def test_coderivation_of_lie_algebra_squares_to_zero():
    space = GradedSpace(("e", "f", "h"), (-1, -1, -1))
    lam = brackets_to_lambdas(GradedSpace(("e", "f", "h"), (0, 0, 0)),
                              {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}})
    ws = WordSpace(space)
    d = Coderivation(ws, lam)
    for n in range(1, 4):
        for w in ws.words_of_weight(n):
            assert d.apply(d(w)) == {}


def test_coderivation_rejects_wrong_degree():
    ws = WordSpace(GradedSpace(("x",), (-1,)))
    with pytest.raises(ValueError):
        Coderivation(ws, {(0,): {0: 1}})


def test_strict_coalgebra_map_is_multiplicative():
    src = WordSpace(GradedSpace(("a", "b"), (-1, -2)))
    tgt = WordSpace(GradedSpace(("x", "y", "z"), (-1, -2, -2)))
    F = CoalgebraMap(src, tgt, {(0,): {0: 2}, (1,): {1: 1, 2: -1}})
    out = F((0, 1))
    assert out == tgt.mul({(0,): 2}, {(1,): 1, (2,): -1})
