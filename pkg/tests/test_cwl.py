import itertools
import random
from fractions import Fraction

import pytest
import sympy

from linfty_cwl import gallery as G
from linfty_cwl.cochain import ce_differential, cochain_product, tensor_pairing
from linfty_cwl.cohomology import cohomology, induced_map
from linfty_cwl.cwl import (apply_hom, curvature_wedge_power, cwl_class, cwl_cocycle, equivariance_defects,
                            equivariant_homs, identity_hom, independence_certificate, make_hom,
                            naturality_check, pulled_back_curvature_check, transgression, wedge_right)
from linfty_cwl.extension import curvature, default_section, random_section
from linfty_cwl.linalg import rank
from linfty_cwl.ruth import RuthMorphism, mat_apply, pullback_ruth


def _hand_equivariant(f, e, r):
    """f(x.t) = pi(x).f(t) for degree-0 elements x of ghat, with the tensor action assembled by Leibniz."""
    ad = e.adjoint()
    d = e.kernel_space.dim
    for x in e.ghat.space.indices_of_degree(0):
        op = ad.operator((x,))
        opV = {}
        for j, c in e.project({x: 1}).items():
            for col, vec in r.operator((j,)).items():
                for i, v in vec.items():
                    opV.setdefault(col, {})
                    opV[col][i] = opV[col].get(i, 0) + c * v
        for t in itertools.product(range(d), repeat=f.k):
            acted = {}
            for pos in range(f.k):
                for u, c in op.get(t[pos], {}).items():
                    t2 = t[:pos] + (u,) + t[pos + 1:]
                    idx = 0
                    for a in t2:
                        idx = idx * d + a
                    acted[idx] = acted.get(idx, 0) + c
            idx = 0
            for a in t:
                idx = idx * d + a
            lhs = f.apply(acted)
            rhs = mat_apply(opV, f.apply({idx: 1}))
            diff = {i: lhs.get(i, 0) - rhs.get(i, 0) for i in set(lhs) | set(rhs)}
            if any(diff.values()):
                return False
    return True


def test_heisenberg_equivariant_maps_are_scalars():
    inst = G.heisenberg()
    e = inst.extensions["E"]
    homs = equivariant_homs(e, inst.ruths["E.coeff"], 1, 0)
    assert len(homs) == 1
    assert homs[0].matrix == {0: {0: homs[0].matrix[0][0]}}


def test_constant_maps_in_weight_zero():
    inst = G.sl2_product()
    e = inst.extensions["E"]
    homs = equivariant_homs(e, inst.ruths["E.trivialR"], 0, 0)
    assert len(homs) == 1 and homs[0].matrix == {0: {0: 1}}


@pytest.mark.parametrize("name,ruth,k,degree,dim", [
    ("sl2_product", "E.trivialR", 2, 2, 1),
    ("sl2_product", "E.trivialR", 1, 1, 0),
    ("central_r4", "E.trivialR", 2, 2, 3),
    ("central_r4", "E.coeff", 1, 0, 4),
    ("heisenberg", "E.trivialR", 1, 1, 1),
])
def test_solver_output_passes_brute_force_check(name, ruth, k, degree, dim):
    inst = G.build(name)
    e = inst.extensions["E"]
    r = inst.ruths[ruth]
    homs = equivariant_homs(e, r, k, degree)
    assert len(homs) == dim
    for f in homs:
        assert _hand_equivariant(f, e, r)
        assert equivariance_defects(f, e, r).ok
        assert f.is_skew()


def test_killing_form_is_found():
    inst = G.sl2_product()
    e = inst.extensions["E"]
    (f,) = equivariant_homs(e, inst.ruths["E.trivialR"], 2, 2)
    d = 3
    vals = {(i, j): f.apply({i * d + j: 1}).get(0, 0) for i in range(d) for j in range(d)}
    e_, f_, h_ = 0, 1, 2
    assert vals[(e_, f_)] != 0
    assert vals[(h_, h_)] == 2 * vals[(e_, f_)]
    assert vals[(e_, e_)] == vals[(e_, h_)] == 0


def test_wedge_power_basics():
    inst = G.central_r4()
    e = inst.extensions["E"]
    K = curvature(e, inst.sections["h1"])
    assert curvature_wedge_power(K, 1) == K
    assert curvature_wedge_power(K, 0).data == {(): {0: 1}}
    left = curvature_wedge_power(K, 3)
    right = wedge_right(K, 3)
    assert left.space == right.space and left.data == right.data


def test_wedge_square_hand_expansion():
    inst = G.central_r4()
    e = inst.extensions["E"]
    K = curvature(e, inst.sections["h"])
    # a v b -> z1, c v d -> z1, a v c -> z2
    KK = curvature_wedge_power(K, 2)
    assert KK.data == {(0, 1, 2, 3): {0: 2}}


def test_cocycle_is_closed_and_vanishes_for_flat_sections():
    inst = G.sl2_product()
    e = inst.extensions["E"]
    r = inst.ruths["E.trivialR"]
    (f,) = equivariant_homs(e, r, 2, 2)
    for key in ("h", "h1", "h2"):
        z = cwl_cocycle(f, e, inst.sections[key], r)
        assert z.degree == 4
        assert ce_differential(r, z).is_zero()
    assert cwl_cocycle(f, e, inst.sections["h"], r).is_zero()
    assert cwl_class(f, e, r).is_zero


def test_non_equivariant_map_is_rejected():
    inst = G.sl2_product()
    e = inst.extensions["E"]
    r = inst.ruths["E.trivialR"]
    f = make_hom(e.kernel_space, 1, r.space, 1, {0: {0: 1}})
    with pytest.raises(ValueError, match="equivariance"):
        cwl_cocycle(f, e, inst.sections["h1"], r)


def test_class_is_linear_in_the_map():
    inst = G.central_r4()
    e = inst.extensions["E"]
    r = inst.ruths["E.coeff"]
    f, g = equivariant_homs(e, r, 1, 0)[:2]
    a, b = Fraction(3, 2), -2
    lhs = cwl_class(f.combine(g, a, b), e, r).coordinates
    cf, cg = cwl_class(f, e, r).coordinates, cwl_class(g, e, r).coordinates
    assert list(lhs) == [a * x + b * y for x, y in zip(cf, cg)]


def test_split_and_heisenberg_classes():
    inst = G.heisenberg()
    es = inst.extensions["split"]
    assert cwl_class(identity_hom(es), es, inst.ruths["split.coeff"]).is_zero
    e = inst.extensions["E"]
    assert cwl_class(identity_hom(e), e, inst.ruths["E.coeff"]).coordinates == (1,)


@pytest.mark.parametrize("level,nonzero", [(1, True), (2, True), (0, False)])
def test_string_class(level, nonzero):
    inst = G.skeletal_string(level)
    e = inst.extensions["E"]
    r = inst.ruths["E.coeff"]
    f = identity_hom(e)
    z = cwl_cocycle(f, e, inst.sections["h"], r)
    assert {len(w) for w in z.data} <= {3}
    assert (not cwl_class(f, e, r).is_zero) == nonzero


@pytest.mark.parametrize("name", ["heisenberg", "central_r4", "sl2_product", "skeletal_string"])
def test_certificates_between_sections(name):
    inst = G.build(name)
    e = inst.extensions["E"]
    r = inst.ruths.get("E.coeff") or inst.ruths["E.trivialR"]
    k, degree = (1, 0) if "E.coeff" in inst.ruths else (2, 2)
    homs = equivariant_homs(e, r, k, degree)
    assert homs
    sections = [s for s in inst.sections.values() if s.extension is e][:3]
    for f in homs:
        for h0, h1 in itertools.combinations(sections, 2):
            beta = independence_certificate(f, e, r, h0, h1)
            assert ce_differential(r, beta) == cwl_cocycle(f, e, h1, r) - cwl_cocycle(f, e, h0, r)


@pytest.mark.parametrize("name", ["heisenberg", "central_r4", "sl2_product"])
def test_transgression_formula(name):
    inst = G.build(name)
    e = inst.extensions["E"]
    r = inst.ruths["E.trivialR"]
    rng = random.Random(1)
    h0, h1 = random_section(e, rng, name="a"), random_section(e, rng, name="b")
    for k, degree in ((1, 1), (2, 2)):
        for f in equivariant_homs(e, r, k, degree):
            tr = transgression(f, e, h0, h1)
            diff = cwl_cocycle(f, e, h1, r) - cwl_cocycle(f, e, h0, r)
            assert ce_differential(r, tr) == diff


def test_central_r4_ranks():
    inst = G.central_r4()
    e = inst.extensions["E"]
    r = inst.ruths["E.trivialR"]
    for k, expected in ((1, 2), (2, 1)):
        coords = [list(cwl_class(f, e, r).coordinates) for f in equivariant_homs(e, r, k, k)]
        assert sympy.Matrix(coords).rank() == expected


@pytest.mark.parametrize("scenario", G.naturality_scenarios(), ids=lambda s: s.name)
def test_naturality(scenario):
    s = scenario
    f = identity_hom(s.extension)
    res = naturality_check(s.T, s.t, s.extension, s.ruth, f)
    assert res.commutes and res.cochain_equal
    assert pulled_back_curvature_check(s.T, s.extension, default_section(s.extension))
    if s.quasi_iso:
        m = RuthMorphism(s.T, s.t, pullback_ruth(s.T, s.ruth), s.ruth)
        for p in range(4):
            M = induced_map(m, p)
            assert M.nrows == M.ncols == rank(M)
