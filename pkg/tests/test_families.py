import math

import numpy as np
import pytest

from lagflow import expr
from lagflow.families import (
    DomainError,
    FamilyError,
    FamilyId,
    eta_of_sigma,
    eval_jet,
    eval_jet_native,
    family_b_integrate,
    grid_points,
    make_instance,
    passive_residuals,
    sigma_of_eta,
    structure_residuals,
)


# -- construction -----------------------------------------------------------

def test_catalog_has_eight_families(catalog):
    assert sorted(catalog) == ["A", "B", "C1", "C2", "C3", "C4", "C5", "C6"]


def test_c2_default_domain(catalog):
    dom = catalog["C2"].c2_domain
    assert dom.open_lo and dom.lo == 0.0 and dom.hi == 2.0


def test_c3_constraint():
    with pytest.raises(FamilyError):
        make_instance("C3", k=1.0)
    with pytest.raises(FamilyError):
        make_instance("C3", k=-0.5)
    assert make_instance("C3", k=0.0).k == 0.0


def test_c5_constraints():
    with pytest.raises(FamilyError):
        make_instance("C5", theta=math.pi / 2, sigma_domain=(-0.5, 0.5))  # cos(2 theta) = 0
    with pytest.raises(FamilyError):
        make_instance("C5", theta=0.4)  # explicit theta needs a domain
    inst = make_instance("C5", theta=0.4, sigma_domain=(-0.5, 0.5))
    assert inst.k == pytest.approx(math.cos(0.4))


def test_c5_rejects_domain_with_sign_change():
    # eta_sigma vanishes where sin(4 theta + 4 sigma sin(theta) cos(2 theta)) = 0
    with pytest.raises(FamilyError):
        make_instance("C5", theta=math.pi / 6, sigma_domain=(-3.0, 3.0))


def test_c6_constraint():
    with pytest.raises(FamilyError):
        make_instance("C6", theta=math.pi / 2)  # sin(2 theta) = 0
    assert make_instance("C6", theta=0.3).m == 1.0


def test_a_requires_shear():
    with pytest.raises(FamilyError):
        make_instance("A")
    assert make_instance("A", S="eta").family is FamilyId.A


def test_b_seed_validation():
    with pytest.raises(FamilyError):
        make_instance("B", N="1", S0=0.0)
    with pytest.raises(FamilyError):
        make_instance("B", N="1", eta0=5.0, eta_range=(0.0, 2.0))


# -- family B integration ----------------------------------------------------

def test_b_constant_n_matches_closed_form():
    table = family_b_integrate(expr.parse("1"), 0.0, 1.0, (0.0, 4.0))
    s, _ = table(4.0)
    assert s == pytest.approx(3.0, abs=1e-9)  # S = sqrt(1 + 2 eta)
    for eta in (0.3, 1.7, 3.9):
        s, sp = table(eta)
        assert s == pytest.approx(math.sqrt(1 + 2 * eta), abs=1e-9)
        assert s * sp * 1.0 == pytest.approx(1.0, abs=1e-12)  # S S' N^2 = 1


def test_b_seed_slope():
    table = family_b_integrate(expr.parse("2"), 0.5, 1.5, (0.0, 1.0))
    s, sp = table(0.5)
    assert s == pytest.approx(1.5, abs=1e-12)
    assert sp == pytest.approx(1.0 / (1.5 * 4.0), abs=1e-12)


def test_b_singularity_detected():
    # for constant N = 1, S = sqrt(1 + 2 eta) hits zero at eta = -1/2
    with pytest.raises(FamilyError):
        family_b_integrate(expr.parse("1"), 0.0, 1.0, (-0.75, 0.5))


def test_b_vanishing_n_detected():
    with pytest.raises(FamilyError):
        family_b_integrate(expr.parse("eta"), 0.4, 1.0, (-0.5, 0.5))  # N(0) = 0


# -- closed-form spot values ---------------------------------------------------

def test_a_value(catalog):
    j = eval_jet(catalog["A"], 1.0, 2.0, 3.0)
    assert j.value == pytest.approx(5.0 + 2.5j)


def test_c1_derivatives_at_origin(catalog):
    j = eval_jet(catalog["C1"], 0.0, 0.0, 0.0)
    assert j.value == 0.0
    assert j.deriv(2, 0, 0) == pytest.approx(1j)
    assert j.deriv(3, 0, 0) == pytest.approx(1.0)
    assert j.deriv(4, 0, 0) == pytest.approx(0.0)


def test_c2_value_at_origin_limit(catalog):
    # sigma = 0 itself is outside the open domain (eta_sigma vanishes there)
    j = eval_jet_native(catalog["C2"], 0.0, 0.0, 1e-9)
    assert j.value == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(DomainError):
        eval_jet(catalog["C2"], 0.0, 0.0, 0.0)


# -- chart maps ----------------------------------------------------------------

def test_c1_sigma_map(catalog):
    assert eta_of_sigma(catalog["C1"], 1.5) == -3.0
    assert sigma_of_eta(catalog["C1"], 4.0) == pytest.approx(-2.0, abs=1e-11)


def test_c2_eta_near_zero(catalog):
    assert eta_of_sigma(catalog["C2"], 1e-12) == pytest.approx(0.5, abs=1e-9)


def test_c4_sigma_map(catalog):
    assert eta_of_sigma(catalog["C4"], 1.0) == pytest.approx(6.0)
    assert sigma_of_eta(catalog["C4"], 6.0) == pytest.approx(1.0, abs=1e-10)


def test_sigma_roundtrip_all_c(catalog):
    rng = np.random.default_rng(2)
    for name, inst in catalog.items():
        if not inst.family.is_c:
            continue
        lo, hi = inst.grid_box[2]
        for sigma in rng.uniform(lo, hi, 10):
            eta = eta_of_sigma(inst, float(sigma))
            back = sigma_of_eta(inst, eta)
            assert eta_of_sigma(inst, back) == pytest.approx(eta, abs=1e-11 * (1 + abs(eta)))


def test_sigma_of_eta_outside_image(catalog):
    with pytest.raises(DomainError):
        sigma_of_eta(catalog["C1"], 100.0)  # image of [-2, 2] is [-4, 4]


def test_eta_chart_rejects_a_b(catalog):
    with pytest.raises(FamilyError):
        sigma_of_eta(catalog["A"], 1.0)


# -- structure equations and passive systems -----------------------------------

def test_structure_equations_on_default_grids(catalog):
    for inst in catalog.values():
        for (t, xi, c2) in grid_points(inst):
            r1, r2 = structure_residuals(eval_jet(inst, t, xi, c2))
            assert r1 < 1e-9 and r2 < 1e-9, (inst.family, t, xi, c2, r1, r2)


def test_passive_systems_on_default_grids(catalog):
    for inst in catalog.values():
        for (t, xi, c2) in grid_points(inst):
            res = passive_residuals(inst, t, xi, c2)
            assert max(res.values()) < 1e-9, (inst.family, t, xi, c2, res)


def test_c1_invariant_i_is_minus_two(catalog):
    inst = catalog["C1"]
    for (t, xi, sg) in grid_points(inst, (3, 3, 3)):
        jn = eval_jet_native(inst, t, xi, sg)
        z_tt, z_ttt = jn.deriv(2, 0, 0), jn.deriv(3, 0, 0)
        i_val = (1j * (z_tt * z_ttt.conjugate() - z_tt.conjugate() * z_ttt)
                 - 2 * inst.k * z_tt * z_tt.conjugate()).real
        assert i_val == pytest.approx(-2.0, abs=1e-12)
        assert inst.eta_sigma(sg) == -2.0


def test_c4_invariant_i_matches_eta_sigma(catalog):
    inst = catalog["C4"]
    for (t, xi, sg) in grid_points(inst, (3, 3, 3)):
        jn = eval_jet_native(inst, t, xi, sg)
        z_tt, z_ttt = jn.deriv(2, 0, 0), jn.deriv(3, 0, 0)
        i_val = (1j * (z_tt * z_ttt.conjugate() - z_tt.conjugate() * z_ttt)
                 - 2 * inst.k * z_tt * z_tt.conjugate()).real
        assert i_val == pytest.approx(4.0 * (sg + 1.0), abs=1e-9)


def test_b_passive_system_with_varying_n():
    inst = make_instance("B", N="1+eta/4", eta0=0.0, S0=1.0, eta_range=(0.0, 2.0))
    for (t, xi, eta) in grid_points(inst, (3, 3, 3)):
        assert max(passive_residuals(inst, t, xi, eta).values()) < 1e-9
        r1, r2 = structure_residuals(eval_jet(inst, t, xi, eta))
        assert r1 < 1e-9 and r2 < 1e-9


def test_out_of_domain_evaluation(catalog):
    with pytest.raises(DomainError):
        eval_jet(catalog["C2"], 0.0, 0.0, 5.0)
    with pytest.raises(DomainError):
        eval_jet(catalog["B"], 0.0, 0.0, 7.0)
