"""Every gallery instance validates and meets each of its recorded expectations."""
import pytest
import sympy

from linfty_cwl import gallery as G
from linfty_cwl.cohomology import cohomology, theta_cocycle
from linfty_cwl.cwl import cwl_class, equivariant_homs, identity_hom
from linfty_cwl.extension import curvature, is_flat
from linfty_cwl.linfty import check_jacobi, is_quasi_iso, minimal_model_2term, underlying_cohomology
from linfty_cwl.ruth import check_ruth
from linfty_cwl.extension import induced_action

NAMES = list(G.GALLERY) + [f"random_strict_2term:{s}" for s in range(6)]


def _named_curvature(e, K):
    return {tuple(e.g.space.names[i] for i in w): {e.n.space.names[k]: c for k, c in v.items()}
            for w, v in K.data.items()}


def evaluate(inst, key):
    """Recompute the quantity named by an expectation key."""
    parts = key.split(".")
    if key == "jacobi":
        return all(check_jacobi(a).ok for a in inst.algebras.values())
    if key == "peiffer":
        return inst.crossed_module.check().ok
    if key == "underlying_cohomology":
        return underlying_cohomology(inst.ruths["ad"].algebra)
    if key in ("minimal_model.quasi_iso", "theta.nonzero"):
        (g,) = inst.algebras.values()
        mm = minimal_model_2term(g)
        if key == "minimal_model.quasi_iso":
            return is_quasi_iso(mm.morphism).is_quasi_iso
        r, theta = theta_cocycle(mm)
        return any(cohomology(r, 3).coordinates(theta))
    ext, rest = parts[0], parts[1:]
    e = inst.extensions[ext]
    if rest == ["curvature"]:
        return _named_curvature(e, curvature(e, G.default_section(e)))
    if rest == ["curvature", "weight3"]:
        return sum(len(w) == 3 for h in inst.sections.values() if h.extension is e
                   for w in curvature(e, h).data)
    if rest == ["H1", "dim"]:
        return cohomology(inst.ruths[f"{ext}.coeff"], 1).dim
    if rest[0] == "cw_id":
        cls = cwl_class(identity_hom(e), e, inst.ruths[f"{ext}.coeff"])
        return cls.coordinates if rest[1] == "coordinates" else not cls.is_zero
    if rest[0] in ("equivariant", "cw"):
        k = int(rest[1][1:])
        r = inst.ruths[f"{ext}.trivialR"]
        homs = equivariant_homs(e, r, k, k)
        if rest[0] == "equivariant":
            return len(homs)
        coords = [list(cwl_class(f, e, r).coordinates) for f in homs]
        if rest[2] == "rank":
            return sympy.Matrix(coords).rank() if coords and coords[0] else 0
        return not any(any(c) for c in coords)
    if rest[1] == "flat":
        return is_flat(e, inst.sections[rest[0]])
    if rest[1] == "action_flat":
        return check_ruth(induced_action(e, inst.sections[rest[0]])).ok
    raise KeyError(f"no evaluator for {key}")


@pytest.mark.parametrize("name", NAMES)
def test_instance_validates(name):
    rep = G.build(name).validate()
    assert rep.ok, str(rep)


@pytest.mark.parametrize("name", NAMES)
def test_expectations(name):
    inst = G.build(name)
    assert inst.expectations
    for exp in inst.expectations:
        assert exp.how
        assert evaluate(inst, exp.key) == exp.value, exp.key


def test_unknown_instance_lists_known_names():
    with pytest.raises(KeyError, match="heisenberg"):
        G.build("nope")


def test_random_basis_change_preserves_structure():
    for seed in range(5):
        inst = G.crossed_module_matrices(2, "inclusion", seed=seed)
        assert inst.validate().ok
        (g,) = inst.algebras.values()
        assert underlying_cohomology(g) == inst.expect("underlying_cohomology")
