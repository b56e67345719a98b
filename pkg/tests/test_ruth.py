import random

import pytest

from linfty_cwl import gallery as G
from linfty_cwl.cochain import curvature_of, gl_dgla, ruth_cochain
from linfty_cwl.graded import GradedSpace
from linfty_cwl.linfty import LInftyMorphism, from_crossed_module
from linfty_cwl.ruth import (NotAnIdeal, Ruth, RuthMorphism, adjoint_ruth, check_ruth, check_ruth_direct,
                             check_ruth_morphism, exterior_power_ruth, is_ideal, pullback_ruth,
                             restricted_adjoint, skew_projector, tensor_power_ruth, tensor_ruth, trivial_ruth,
                             unit_space, mat_compose)


def _all_agree(r):
    a = check_ruth(r).ok
    b = check_ruth_direct(r).ok
    c = curvature_of(gl_dgla(r.space, r.partial), ruth_cochain(r)).is_zero()
    return a, b, c


def test_sl2_adjoint_is_a_ruth():
    r = adjoint_ruth(G.sl2())
    assert _all_agree(r) == (True, True, True)


def test_adjoint_components_are_classical_ad():
    g = G.sl2()
    r = adjoint_ruth(g)
    # on degree 0 generators decalage signs are trivial: rho(e)(f) = [e, f] = h
    assert r.operator((0,))[1] == {2: 1}
    assert r.operator((2,))[0] == {0: 2}


@pytest.mark.parametrize("level", [0, 1])
def test_string_adjoint_is_a_ruth(level):
    r = adjoint_ruth(G.string_algebra(level))
    assert _all_agree(r) == (True, True, True)


def test_trivial_and_unit_ruths():
    g = G.sl2()
    assert check_ruth(trivial_ruth(g, unit_space())).ok
    assert unit_space(-2).degrees == (-2,)


def test_wrong_degree_component_rejected():
    g = G.sl2()
    V = GradedSpace(("v", "w"), (0, -1))
    with pytest.raises(ValueError):
        Ruth(g, V, {}, {(0,): {0: {1: 1}}})
    with pytest.raises(ValueError):
        Ruth(g, V, {0: {0: 1}}, {})


def test_tensor_powers_and_exterior_power():
    r = adjoint_ruth(G.sl2())
    assert check_ruth(tensor_ruth(r, r)).ok
    assert check_ruth(tensor_power_ruth(r, 3)).ok
    L2, incl = exterior_power_ruth(r, 2)
    # sl2[1] is odd, so the graded-skew square is the ordinary symmetric square
    assert L2.space.dim == 6
    assert check_ruth(L2).ok
    T0 = tensor_power_ruth(r, 0)
    assert T0.space.dim == 1 and not T0.components


def test_skew_projector_is_idempotent():
    V = GradedSpace(("a", "b", "c"), (-1, -2, -1))
    for k in (2, 3):
        P = skew_projector(V, k)
        PP = mat_compose(P, P)
        norm = lambda m: {j: {i: c for i, c in col.items() if c} for j, col in m.items() if any(col.values())}
        assert norm(PP) == norm(P)


def test_restricted_adjoint_and_ideal_detection():
    inst = G.heisenberg()
    e = inst.extensions["E"]
    assert check_ruth(e.adjoint()).ok
    ghat = e.ghat
    # the line through a is not an ideal of h3
    sub = GradedSpace(("a",), (0,))
    ok, exc = is_ideal(ghat, sub, {0: {0: 1}})
    assert not ok and isinstance(exc, NotAnIdeal)
    with pytest.raises(NotAnIdeal):
        restricted_adjoint(ghat, sub, {0: {0: 1}})


def test_pullback_ruth_is_a_ruth():
    cm, g = G.random_crossed_module(2)
    r = adjoint_ruth(g)
    F = LInftyMorphism.identity(g)
    assert check_ruth(pullback_ruth(F, r)).ok
    st = G.skeletal_string(1)
    e = st.extensions["E"]
    assert check_ruth(pullback_ruth(e.pi, st.ruths["E.trivialR"])).ok


@pytest.mark.parametrize("seed", range(10))
def test_random_and_perturbed_ruths(seed):
    r = G.random_ruth(seed)
    assert _all_agree(r) == (True, True, True)
    p = G.perturb_ruth(r, random.Random(seed))
    assert _all_agree(p) == (False, False, False)


def test_ruth_morphisms():
    r = adjoint_ruth(G.sl2())
    idm = RuthMorphism.identity(r)
    assert check_ruth_morphism(idm).ok
    assert check_ruth_morphism(idm.compose(idm)).ok
    bad = RuthMorphism(idm.F, {0: {0: 1}, 1: {1: 2}, 2: {2: 1}}, r, r)
    assert not check_ruth_morphism(bad).ok


def test_conjugated_ruth_is_isomorphic():
    r = adjoint_ruth(G.sl2())
    rng = random.Random(1)
    P = G.random_basis_change(r.space, rng)
    c = G.conjugate_ruth(r, P)
    assert check_ruth(c).ok
    # f: target -> source, and f o (P^-1 rho P) = rho o f for f = P
    m = RuthMorphism(LInftyMorphism.identity(r.algebra), P, r, c)
    assert check_ruth_morphism(m).ok
