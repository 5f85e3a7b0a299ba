"""Curvature and shape diagnostics of the material curves eta = const.

A curve eta = const is a candidate rigid wall (or free boundary at eta = 0)
when its shape is carried unchanged by the flow.  Shape is captured by the
curvature as a function of arc length; the preservation condition in the
(t, xi) parametrization reads::

    kappa_t (kappa_xi / |z_xi|)_xi - kappa_xi (kappa_xi / |z_xi|)_t = 0

with kappa computed from the structure relation z_xi = i z_tt as::

    kappa = (z_tt conj(z_tttt) + conj(z_tt) z_tttt) / (2 |z_tt|^3)

and arc rate s_xi = |z_xi| = |z_tt|.  For the A and B families kappa
depends on eta alone (kappa = 0 and kappa = -N^2/|z_tt| respectively), so
kappa_s = kappa_t = 0.  For the C families kappa_s = -(2k/|z_tt|) kappa_t,
so the shape is preserved whenever k != 0 or m = 0, which covers every
normalized catalog case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .families import FamilyId, SolutionInstance, eval_jet, sigma_of_eta
from .jets import CJet, jet_add, jet_conj, jet_dt, jet_dt_n, jet_dxi, jet_mul, jet_pow, jet_scale


class CurvatureError(ArithmeticError):
    """Curvature undefined where z_tt vanishes."""


@dataclass(frozen=True)
class CurvatureSample:
    kappa: float
    kappa_t: float
    kappa_s: float
    s_xi: float
    shape_residual: float


def _kappa_jet(j: CJet) -> tuple[CJet, CJet]:
    """(kappa, |z_tt|^2) as jets; raises when z_tt vanishes at the point."""
    z_tt = jet_dt_n(j, 2)
    z_t4 = jet_dt_n(j, 4)
    m = jet_mul(z_tt, jet_conj(z_tt))
    if abs(m.value) < 1e-24:
        raise CurvatureError("z_tt vanishes; curvature undefined")
    num = jet_add(jet_mul(z_tt, jet_conj(z_t4)), jet_mul(jet_conj(z_tt), z_t4))
    return jet_mul(jet_scale(num, 0.5), jet_pow(m, -1.5)), m


def curvature(j: CJet) -> CurvatureSample:
    """Curvature data of the eta = const curve through the jet's base point."""
    kap, m = _kappa_jet(j)
    kappa = kap.value.real
    kappa_t = kap.deriv(1, 0, 0).real
    kappa_xi = kap.deriv(0, 1, 0).real

    z_xi = jet_dxi(j)
    w = jet_mul(z_xi, jet_conj(z_xi))  # |z_xi|^2 as a jet
    s_xi = abs(w.value) ** 0.5
    if s_xi == 0.0:
        raise CurvatureError("z_xi vanishes; arc rate undefined")

    # g = kappa_xi / |z_xi| as a jet, then the shape condition
    g = jet_mul(jet_dxi(kap), jet_pow(w, -0.5))
    g_xi = g.deriv(0, 1, 0).real
    g_t = g.deriv(1, 0, 0).real
    shape = kappa_t * g_xi - kappa_xi * g_t
    return CurvatureSample(kappa, kappa_t, kappa_xi / s_xi, s_xi, shape)


def curvature_xy(j: CJet) -> float:
    """Curvature from the raw (x, y) determinant form, as a cross-check.

    Uses the jet's own xi-axis instead of the z_xi = i z_tt substitution.
    """
    z_xi = j.deriv(0, 1, 0)
    z_xixi = j.deriv(0, 2, 0)
    x1, y1 = z_xi.real, z_xi.imag
    x2, y2 = z_xixi.real, z_xixi.imag
    denom = (x1 * x1 + y1 * y1) ** 1.5
    if denom == 0.0:
        raise CurvatureError("z_xi vanishes; curvature undefined")
    return (x1 * y2 - y1 * x2) / denom


def wall_relation_residual(inst: SolutionInstance, point: tuple[float, float, float]) -> float:
    """How far the family's wall relation is from holding at ``point``.

    C families: |kappa_s + (2k/|z_tt|) kappa_t|.  A and B: max(|kappa_s|,
    |kappa_t|), both of which vanish.
    """
    t, xi, c2 = point
    j = eval_jet(inst, t, xi, c2)
    sample = curvature(j)
    if inst.family.is_c:
        z_tt_abs = abs(j.deriv(2, 0, 0))
        return abs(sample.kappa_s + 2.0 * inst.k * sample.kappa_t / z_tt_abs)
    return max(abs(sample.kappa_s), abs(sample.kappa_t))


def boundary_curve(inst: SolutionInstance, eta: float, t: float,
                   xi_range: tuple[float, float], n: int) -> np.ndarray:
    """Sample the curve eta = const at time t: rows (x, y, kappa, s).

    Arc length s accumulates |z_xi| by the trapezoid rule from the first
    sample.
    """
    if n < 2:
        raise ValueError("need at least two samples")
    c2 = sigma_of_eta(inst, eta) if inst.family.is_c else eta
    xs = np.linspace(xi_range[0], xi_range[1], n)
    rows = np.empty((n, 4))
    s = 0.0
    prev_rate = None
    for i, xi in enumerate(xs):
        j = eval_jet(inst, t, float(xi), c2)
        z = j.value
        sample = curvature(j)
        if prev_rate is not None:
            s += 0.5 * (prev_rate + sample.s_xi) * (xs[i] - xs[i - 1])
        prev_rate = sample.s_xi
        rows[i] = (z.real, z.imag, sample.kappa, s)
    return rows
