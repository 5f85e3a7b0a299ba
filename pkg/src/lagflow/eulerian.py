"""Physical fields (u, v, p, vorticity) and checks of the Eulerian system.

The Lagrangian map takes labels (xi, eta) to positions (x, y) = (Re z,
Im z) with velocity (u, v) = (Re z_t, Im z_t) and pressure p = eta.  The
map has unit Jacobian, so Eulerian space derivatives follow from label
derivatives through the adjugate::

    F_x = (F_xi y_eta - F_eta y_xi) / det,   F_y = (F_eta x_xi - F_xi x_eta) / det

The vorticity v_x - u_y computed this way must agree with the invariant
beta, and since beta depends on eta = p alone, vorticity and pressure are
functionally related along the flow.

``euler_residuals`` checks the original free system directly: both momentum
equations, incompressibility and pressure transport, with every Eulerian
partial taken by Richardson-extrapolated central differences of the
composite fields-after-inversion map, so the test shares no algebra with
the evaluators it targets.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .families import DomainError, SolutionInstance, eval_jet, eval_jet_native
from .invariants import InvariantJets
from .jets import CJet


class InversionError(RuntimeError):
    """Newton inversion of the position map failed to converge."""


@dataclass(frozen=True)
class FieldSample:
    x: float
    y: float
    u: float
    v: float
    p: float
    omega: float
    jac: float
    beta: float  # invariant cross-check; equals omega on solutions


def worker_count() -> int:
    """Parallelism cap from LAGFLOW_THREADS (default: sequential)."""
    raw = os.environ.get("LAGFLOW_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def fields_at(inst: SolutionInstance, t: float, xi: float, c2: float) -> FieldSample:
    """All physical fields at one Lagrangian point (c2 in the native chart)."""
    j = eval_jet(inst, t, xi, c2)
    return _fields_from_jet(inst, j, c2)


def _fields_from_jet(inst: SolutionInstance, j: CJet, c2: float) -> FieldSample:
    z = j.value
    z_t = j.deriv(1, 0, 0)
    z_xi = j.deriv(0, 1, 0)
    z_eta = j.deriv(0, 0, 1)
    z_txi = j.deriv(1, 1, 0)
    z_teta = j.deriv(1, 0, 1)

    x_xi, y_xi = z_xi.real, z_xi.imag
    x_eta, y_eta = z_eta.real, z_eta.imag
    det = x_xi * y_eta - x_eta * y_xi

    u_xi, v_xi = z_txi.real, z_txi.imag
    u_eta, v_eta = z_teta.real, z_teta.imag
    # omega = v_x - u_y via the adjugate of the label-to-position Jacobian
    omega = ((v_xi * y_eta - v_eta * y_xi) + (u_xi * x_eta - u_eta * x_xi)) / det

    beta = InvariantJets(j).t_deriv("beta", 0)
    return FieldSample(x=z.real, y=z.imag, u=z_t.real, v=z_t.imag,
                       p=inst.eta_of_c2(c2), omega=omega, jac=det, beta=beta)


def invert_position(inst: SolutionInstance, t: float, x: float, y: float,
                    guess: tuple[float, float], *, max_iter: int = 50) -> tuple[float, float]:
    """Solve (Re z, Im z)(xi, c2) = (x, y) at time t by Newton iteration.

    Uses the analytic Jacobian from the jet; converges when the update norm
    drops below 1e-12 and the returned point reproduces (x, y) to 1e-10.
    """
    xi, c2 = float(guess[0]), float(guess[1])
    dom = inst.c2_domain
    pad = 1e-9 * max(1.0, abs(dom.hi - dom.lo)) if dom.open_lo else 0.0
    lo = dom.lo + pad
    scale = max(1.0, abs(x), abs(y))

    def residual(xi_, c2_):
        z = eval_jet_native(inst, t, xi_, c2_).value
        return math.hypot(z.real - x, z.imag - y)

    f_norm = residual(xi, c2)
    for _ in range(max_iter):
        j = eval_jet_native(inst, t, xi, c2)
        z = j.value
        fx, fy = z.real - x, z.imag - y
        z_xi = j.deriv(0, 1, 0)
        z_c2 = j.deriv(0, 0, 1)
        a, b = z_xi.real, z_c2.real
        c, d = z_xi.imag, z_c2.imag
        det = a * d - b * c
        if abs(det) < 1e-14 * scale:
            raise InversionError(f"singular position Jacobian at (xi={xi}, c2={c2})")
        dxi = (d * fx - b * fy) / det
        dc2 = (-c * fx + a * fy) / det
        # backtrack while the full step worsens the residual (far seeds)
        step = 1.0
        for _ in range(30):
            xi_new = xi - step * dxi
            c2_new = min(max(c2 - step * dc2, lo), dom.hi)
            f_new = residual(xi_new, c2_new)
            if f_new <= f_norm or f_norm == 0.0:
                break
            step *= 0.5
        else:
            raise InversionError(f"no descent for (x={x}, y={y}) at t={t}")
        xi, c2, f_norm = xi_new, c2_new, f_new
        if step * math.hypot(dxi, dc2) < 1e-12:
            if f_norm > 1e-10:
                break
            return xi, c2
    raise InversionError(f"no convergence for (x={x}, y={y}) at t={t}")


def eulerian_fields_fn(inst: SolutionInstance,
                       guess: tuple[float, float]) -> Callable[[float, float, float], FieldSample]:
    """Fields as a function of (t, x, y), tracking a running Newton seed."""
    state = {"seed": tuple(guess)}

    def fields(t: float, x: float, y: float) -> FieldSample:
        xi, c2 = invert_position(inst, t, x, y, state["seed"])
        state["seed"] = (xi, c2)
        return fields_at(inst, t, xi, c2)

    return fields


def _richardson(f, axis_delta, h: float):
    """First derivative by central differences with one Richardson level."""
    def diff(step):
        return (f(*axis_delta(step)) - f(*axis_delta(-step))) / (2.0 * step)
    d_h = diff(h)
    d_h2 = diff(h / 2.0)
    return (4.0 * d_h2 - d_h) / 3.0


def euler_residuals(inst: SolutionInstance, t: float, x: float, y: float,
                    h: float = 1e-3,
                    guess: tuple[float, float] | None = None,
                    fields: Callable[[float, float, float], np.ndarray] | None = None,
                    ) -> tuple[float, float, float, float]:
    """Residuals of the four Eulerian equations at (t, x, y)::

        u_t + u u_x + v u_y + p_x
        v_t + u v_x + v v_y + p_y
        u_x + v_y
        p_t + u p_x + v p_y

    All partials are finite differences (step h, one Richardson level) of
    the composite fields-after-inversion map.  ``fields`` may override the
    field function (negative controls); it must return (u, v, p) triples.
    """
    if fields is None:
        if guess is None:
            guess = _coarse_seed(inst, t, x, y)
        base = eulerian_fields_fn(inst, guess)

        def fields(tt, xx, yy):
            s = base(tt, xx, yy)
            return np.array([s.u, s.v, s.p])

    f0 = fields(t, x, y)
    u, v = float(f0[0]), float(f0[1])
    d_t = _richardson(fields, lambda s: (t + s, x, y), h)
    d_x = _richardson(fields, lambda s: (t, x + s, y), h)
    d_y = _richardson(fields, lambda s: (t, x, y + s), h)
    r1 = d_t[0] + u * d_x[0] + v * d_y[0] + d_x[2]
    r2 = d_t[1] + u * d_x[1] + v * d_y[1] + d_y[2]
    r3 = d_x[0] + d_y[1]
    r4 = d_t[2] + u * d_x[2] + v * d_y[2]
    return float(r1), float(r2), float(r3), float(r4)


def _coarse_seed(inst: SolutionInstance, t: float, x: float, y: float,
                 n: int = 21) -> tuple[float, float]:
    """Best (xi, c2) over a coarse lattice of the grid box, by distance."""
    (_, _), (x0, x1), (c0, c1) = inst.grid_box
    best = None
    for xi in np.linspace(x0, x1, n):
        for c2 in np.linspace(c0, c1, n):
            z = eval_jet_native(inst, t, float(xi), float(c2)).value
            d = (z.real - x) ** 2 + (z.imag - y) ** 2
            if best is None or d < best[0]:
                best = (d, float(xi), float(c2))
    return best[1], best[2]


def interior_points(inst: SolutionInstance, count: int, seed: int = 0,
                    inset: float = 0.25) -> list[tuple[float, float, float]]:
    """Random Lagrangian points from the shrunken grid box (reproducible)."""
    rng = np.random.default_rng(seed)
    (t0, t1), (x0, x1), (c0, c1) = inst.grid_box
    out = []
    for _ in range(count):
        ft, fx, fc = rng.uniform(inset, 1.0 - inset, 3)
        out.append((t0 + ft * (t1 - t0), x0 + fx * (x1 - x0), c0 + fc * (c1 - c0)))
    return out


def field_grid(inst: SolutionInstance, t: float, bbox: tuple[float, float, float, float],
               nx: int, ny: int) -> list[tuple[float, float, FieldSample | None]]:
    """Sample fields on a regular (x, y) grid; unreachable nodes yield None.

    A sequential seeding sweep marches the bottom row (coarse search, then
    left-neighbor seeds); each column then walks upward independently,
    seeding every node from the node below.  Columns share nothing, so they
    may run in a thread pool (LAGFLOW_THREADS) with output identical to the
    sequential order.
    """
    xs = np.linspace(bbox[0], bbox[1], nx)
    ys = np.linspace(bbox[2], bbox[3], ny)

    def solve(x, y, seed):
        try:
            if seed is None:
                seed = _coarse_seed(inst, t, x, y)
            xi, c2 = invert_position(inst, t, x, y, seed)
            return (xi, c2), fields_at(inst, t, xi, c2)
        except (InversionError, DomainError):
            return None, None

    row0: list[tuple[float, float, FieldSample | None]] = []
    seeds0: list[tuple[float, float] | None] = []
    carry = None
    for x in xs:
        solved, sample = solve(float(x), float(ys[0]), carry)
        if solved is not None:
            carry = solved
        seeds0.append(solved)
        row0.append((float(x), float(ys[0]), sample))

    def column(jcol: int) -> list[tuple[float, float, FieldSample | None]]:
        seed = seeds0[jcol]
        out = []
        for y in ys[1:]:
            solved, sample = solve(float(xs[jcol]), float(y), seed)
            if solved is not None:
                seed = solved
            out.append((float(xs[jcol]), float(y), sample))
        return out

    if ny == 1:
        return row0
    n_workers = worker_count()
    if n_workers > 1 and nx > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            cols = list(pool.map(column, range(nx)))
    else:
        cols = [column(j) for j in range(nx)]
    cells = row0
    for i in range(ny - 1):
        cells.extend(cols[j][i] for j in range(nx))
    return cells


def trajectories(inst: SolutionInstance, particles: list[tuple[float, float]],
                 t0: float, t1: float, dt: float) -> list[np.ndarray]:
    """Particle paths: one array of rows (t, x, y, u, v, p) per particle.

    Particles are fixed labels (xi, c2); pressure is constant along each
    path by construction.
    """
    if dt <= 0 or t1 < t0:
        raise ValueError("need dt > 0 and t1 >= t0")
    n_steps = int(math.floor((t1 - t0) / dt + 1e-12)) + 1
    times = [t0 + i * dt for i in range(n_steps)]

    def path(label):
        xi, c2 = label
        rows = np.empty((len(times), 6))
        for i, t in enumerate(times):
            s = fields_at(inst, t, xi, c2)
            rows[i] = (t, s.x, s.y, s.u, s.v, s.p)
        return rows

    n_workers = worker_count()
    if n_workers > 1 and len(particles) > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            return list(pool.map(path, particles))
    return [path(p) for p in particles]
