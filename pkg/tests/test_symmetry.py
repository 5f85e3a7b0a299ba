import math

import numpy as np
import pytest

from lagflow.families import eta_evaluator, eval_jet, grid_points, make_instance
from lagflow.symmetry import (
    KINDS,
    all_elements,
    broken_x9,
    element,
    point_image,
    transform,
    verify_symmetry,
)


def test_twelve_elements():
    els = all_elements(0.7, "eta^2")
    assert len(els) == 12
    assert {e.kind for e in els} == set(KINDS)


def test_x1_requires_phi():
    with pytest.raises(ValueError):
        element("X1", 0.5)


def test_unknown_element():
    with pytest.raises(ValueError):
        element("X11", 0.5)


def test_all_elements_preserve_structure_on_all_families(catalog):
    for inst in catalog.values():
        for g in all_elements(0.7, "eta^2"):
            rep = verify_symmetry(inst, g, grid=(3, 3, 3))
            worst = max(i.max_residual for i in rep.items)
            assert worst < 1e-8, (inst.family, g.kind, worst)


def test_identity_element_matches_untransformed(catalog):
    inst = catalog["C4"]
    g = element("X9", 0.0)
    ev = transform(eta_evaluator(inst), g)
    for (t, xi, sg) in grid_points(inst, (2, 2, 2)):
        eta = inst.eta_of_c2(sg)
        direct = eval_jet(inst, t, xi, sg)
        wrapped = ev(t, xi, eta)
        assert np.allclose(wrapped.coeff, direct.coeff, atol=1e-12)


def test_rotation_by_half_pi(catalog):
    inst = catalog["A"]
    ev = eta_evaluator(inst)
    rotated = transform(ev, element("X8", math.pi / 2))
    z = ev(0.4, 0.2, 0.7).value
    assert rotated(0.4, 0.2, 0.7).value == pytest.approx(1j * z)
    rep = verify_symmetry(inst, element("X8", math.pi / 2))
    assert max(i.max_residual for i in rep.items) < 1e-9


def test_time_reversal_flips_shear(catalog):
    reversed_a = transform(eta_evaluator(catalog["A"]), element("time_reversal"))
    flipped = make_instance("A", S="-eta")
    for (t, xi, eta) in grid_points(catalog["A"], (3, 2, 2)):
        assert reversed_a(t, xi, eta).value == pytest.approx(
            eval_jet(flipped, t, xi, eta).value, abs=1e-14)


def test_inverse_composition_pointwise(catalog):
    rng = np.random.default_rng(11)
    inst = catalog["C2"]
    ev = eta_evaluator(inst)
    for g in all_elements(0.7, "eta^2"):
        roundtrip = transform(transform(ev, g), g.inverse())
        for _ in range(5):
            t, xi = rng.uniform(-1, 1, 2)
            sg = rng.uniform(*inst.grid_box[2])
            eta = inst.eta_of_c2(float(sg))
            assert abs(roundtrip(t, xi, eta).value - ev(t, xi, eta).value) < 1e-12, g.kind


def test_x2_respects_domains(catalog):
    # shifting eta out of family B's table range must surface a domain error
    from lagflow.families import DomainError
    shifted = transform(eta_evaluator(catalog["B"]), element("X2", 10.0))
    with pytest.raises(DomainError):
        shifted(0.0, 0.0, 1.0)  # inner eta = -9, outside [0, 2]


def test_broken_x9_fails_loudly(catalog):
    inst = catalog["C4"]
    ev = broken_x9(eta_evaluator(inst), 0.7)
    rep = verify_symmetry(inst, element("X9", 0.7), _evaluator=ev)
    assert max(i.max_residual for i in rep.items) > 1e-3
    assert not rep.passed


def test_point_image_inverts_inner_map(catalog):
    inst = catalog["C4"]
    ev = eta_evaluator(inst)
    for g in all_elements(0.7, "eta^2"):
        wrapped = transform(ev, g)
        t, xi, sg = 0.3, -0.4, 0.8
        eta = inst.eta_of_c2(sg)
        tt, txi, teta = point_image(g, t, xi, eta)
        j = wrapped(tt, txi, teta)  # must evaluate the inner map at (t, xi, eta)
        assert j.base[0] == pytest.approx(tt, abs=1e-12)
        assert j.base[1] == pytest.approx(txi, abs=1e-12)
        # the eta slot may carry sigma-chart roundtrip noise
        assert j.base[2] == pytest.approx(teta, abs=1e-9)


def test_x1_chain_rule_against_instance(catalog):
    """z(t, xi + a phi(eta), eta) evaluated by the wrapper must match a direct
    evaluation of the inner instance at the shifted point, including the
    eta-derivative picked up through phi."""
    inst = catalog["C4"]
    a, phi = 0.31, "eta^2"
    wrapped = transform(eta_evaluator(inst), element("X1", a, phi))
    t, xi, sg = 0.25, -0.15, 0.6
    eta = inst.eta_of_c2(sg)
    j = wrapped(t, xi, eta)
    inner = eval_jet(inst, t, xi + a * eta * eta, sg)
    assert j.value == pytest.approx(inner.value, abs=1e-13)
    assert j.deriv(1, 0, 0) == pytest.approx(inner.deriv(1, 0, 0), abs=1e-13)
    assert j.deriv(0, 1, 0) == pytest.approx(inner.deriv(0, 1, 0), abs=1e-13)
    # d/deta z' = z_xi * a phi' + z_eta
    expected = inner.deriv(0, 1, 0) * a * 2 * eta + inner.deriv(0, 0, 1)
    assert j.deriv(0, 0, 1) == pytest.approx(expected, abs=1e-12)
