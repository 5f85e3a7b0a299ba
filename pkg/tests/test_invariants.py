import numpy as np
import pytest

from lagflow import expr
from lagflow.families import eval_jet, grid_points, make_instance
from lagflow.invariants import (
    DegenerateInvariantsError,
    conservation_residuals,
    conservation_residuals_of_jet,
    constancy_residuals,
    eq8_residual,
    invariant_set,
    lemma_residuals,
    omega_residual,
    wedge,
)
from lagflow.jets import CJet, SHAPE, constant, jet_add, jet_mul, jet_scale, t_jet, xi_jet


def test_wedge_examples():
    assert wedge((1, 0), (0, 1)) == 1
    assert wedge((2, 3), (4, 5)) == -2
    assert wedge((2 + 1j, 3), (2 + 1j, 3)) == 0


def test_alpha_is_one_everywhere(catalog):
    for inst in catalog.values():
        for (t, xi, c2) in grid_points(inst, (3, 3, 3)):
            s = invariant_set(eval_jet(inst, t, xi, c2), kt="optional")
            assert abs(s.alpha - 1.0) < 1e-9


def test_family_a_beta(catalog):
    s = invariant_set(eval_jet(catalog["A"], 0.4, -0.3, 0.8))
    assert s.beta == pytest.approx(-1.0, abs=1e-12)  # vorticity = -S' = -1


def test_family_c2_kt(catalog):
    for (t, xi, c2) in grid_points(catalog["C2"], (3, 3, 3)):
        s = invariant_set(eval_jet(catalog["C2"], t, xi, c2))
        assert s.K == pytest.approx(0.5, abs=1e-9)
        assert s.T == pytest.approx(0.0, abs=1e-9)


def test_c_families_kt_constant(catalog):
    for name, inst in catalog.items():
        if not inst.family.is_c:
            continue
        for (t, xi, c2) in grid_points(inst, (3, 3, 3)):
            s = invariant_set(eval_jet(inst, t, xi, c2))
            assert s.K == pytest.approx(inst.k, abs=1e-9), name
            assert s.T == pytest.approx(inst.k ** 2 + inst.m, abs=1e-9), name


def test_family_b_varying_n_kt():
    inst = make_instance("B", N="1+eta/4", eta0=0.0, S0=1.0, eta_range=(0.0, 2.0))
    for eta in (0.2, 0.9, 1.7):
        s = invariant_set(eval_jet(inst, 0.3, -0.6, eta))
        n = expr.eval_d2(inst.n_tree, eta)[0]
        assert s.K == pytest.approx(n, abs=1e-9)
        assert s.T == pytest.approx(n * n, abs=1e-9)


def test_degenerate_strata_raise():
    # constant shear: z_t v z = -S' = 0, so gamma - beta^2 = 0
    a0 = make_instance("A", S="0")
    with pytest.raises(DegenerateInvariantsError):
        invariant_set(eval_jet(a0, 0.4, 0.1, 0.5))
    # constant N is the other degenerate stratum
    b = make_instance("B", N="1", eta0=0.0, S0=1.0, eta_range=(0.0, 2.0))
    with pytest.raises(DegenerateInvariantsError):
        invariant_set(eval_jet(b, 0.4, 0.1, 0.5))
    s = invariant_set(eval_jet(b, 0.4, 0.1, 0.5), kt="optional")
    assert s.K is None and s.T is None


def test_delta1_zero_on_degenerate_a():
    a0 = make_instance("A", S="0")
    s = invariant_set(eval_jet(a0, 0.7, -0.2, 0.3), kt="optional")
    assert s.delta1 == pytest.approx(0.0, abs=1e-14)


def test_lemma_residuals_on_families(catalog):
    for name in ("C2", "B"):
        for (t, xi, c2) in grid_points(catalog[name], (3, 3, 3)):
            vec_res, d1_res = lemma_residuals(eval_jet(catalog[name], t, xi, c2))
            assert vec_res < 1e-8, name
            assert d1_res < 1e-8, name


def test_omega_and_eq8_on_all_families(catalog):
    for inst in catalog.values():
        for (t, xi, c2) in grid_points(inst):
            j = eval_jet(inst, t, xi, c2)
            assert omega_residual(j) < 1e-7
            assert eq8_residual(j) < 1e-7


def test_conservation_on_families(catalog):
    for (t, xi, c2) in grid_points(catalog["A"], (3, 3, 3)):
        assert max(conservation_residuals(catalog["A"], t, xi, c2)) < 1e-10
    rng = np.random.default_rng(8)
    inst = catalog["C4"]
    (t0, t1), (x0, x1), (c0, c1) = inst.grid_box
    for _ in range(10):
        t, xi = rng.uniform(t0, t1), rng.uniform(x0, x1)
        c2 = rng.uniform(c0, c1)
        assert max(conservation_residuals(inst, t, xi, c2)) < 1e-8


def test_constancy_of_invariants(catalog):
    for inst in catalog.values():
        for (t, xi, c2) in grid_points(inst, (3, 3, 3)):
            res = constancy_residuals(eval_jet(inst, t, xi, c2))
            assert max(res.values()) < 1e-8, (inst.family, res)


def _perturbed(j: CJet, amount=0.1):
    """j plus amount * t^3 * xi, a non-solution deformation."""
    tj = t_jet(j.base)
    pert = jet_scale(jet_mul(jet_mul(jet_mul(tj, tj), tj), xi_jet(j.base)), amount)
    return jet_add(j, pert)


def test_perturbed_jet_trips_conservation(catalog):
    j = _perturbed(eval_jet(catalog["A"], 0.8, 0.6, 0.3))
    assert max(conservation_residuals_of_jet(j)) > 1e-3


def test_omega_holds_even_off_solution(catalog):
    """The Omega combination vanishes for any smooth vector field, so a jet
    satisfying only the z_xi = i z_tt substitution (not a solution: its
    Jacobian is nowhere one) keeps it near zero.  The conservation laws
    also survive, since they follow from the substitution rule alone; only
    perturbations breaking z_xi = i z_tt trip them (previous test)."""
    rng = np.random.default_rng(9)
    c = np.zeros(SHAPE, dtype=complex)
    # a polynomial z with z_xi = i z_tt wired in up to the caps, eta-axis free
    c[:, 0, :] = rng.normal(size=(SHAPE[0], SHAPE[2])) * 0.3 \
        + 1j * rng.normal(size=(SHAPE[0], SHAPE[2])) * 0.3
    for b in range(1, SHAPE[1]):
        for a in range(SHAPE[0] - 2):
            c[a, b, :] = 1j * (a + 2) * (a + 1) * c[a + 2, b - 1, :] / b
    j = CJet(c, (0.0, 0.0, 0.0))
    not_a_solution = abs(invariant_set(j, kt="optional").alpha - 1.0)
    assert not_a_solution > 1e-3
    assert omega_residual(j) < 1e-7
