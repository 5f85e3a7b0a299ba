"""Catalog of exact solutions of the Lagrangian system z_xi = i z_tt with
unit Jacobian, as jet-producing evaluators.

Eight closed-form families are provided.  A and B live directly in the
(t, xi, eta) chart; the six C families are written in an auxiliary chart
(t, xi, sigma) in which their defining system is linear, with eta recovered
from a monotone map eta(sigma)::

    A   z = xi + S(eta) t + i (eta - t^2/2)             arbitrary shear S
    B   z = S(eta) exp(i (N(eta) t - N(eta)^2 xi)),  S S' N^2 = 1
    C1  z = t^3/6 - xi + i (t^2/2 + t xi + 2 sigma)            k=0, m=0
    C2  z = exp(i t - i xi + sigma) - xi + i (t^2/2 + sigma)   k=1/2, m=-1/4
    C3  two-mode exponential ("Ptolemaic" twin rotation)       m=-1, k>=0, k!=1
    C4  z = (t - 2 xi - 2 i sigma) exp(i (t - xi))             k=1, m=0
    C5  oblique two-mode exponential, k=cos(theta), m=sin(theta)^2
    C6  growing/decaying pair, k=m=1

C2 is the trochoidal Gerstner wave, minus gravity (hence the extra t^2/2).

Every family satisfies z_xi = i z_tt and the unit-Jacobian condition; the
verification modules re-check this numerically rather than trusting the
formulas.  Evaluators return :class:`~lagflow.jets.CJet` values whose third
axis is eta: for C families the native sigma-partials are divided by
eta_sigma on extraction, which is exact because eta_sigma depends on sigma
alone.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import expr
from .expr import ExprTree
from .jets import SHAPE, CJet, jet_exp, t_jet, w_jet, xi_jet


class FamilyError(ValueError):
    """Invalid parameters or construction failure."""


class DomainError(ValueError):
    """Evaluation point outside the instance's validated domain."""


class FamilyId(enum.Enum):
    A = "A"
    B = "B"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"

    @property
    def is_c(self) -> bool:
        return self.value.startswith("C")


def _family_id(family) -> FamilyId:
    if isinstance(family, FamilyId):
        return family
    return FamilyId(str(family))


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    open_lo: bool = False

    def __contains__(self, x: float) -> bool:
        if self.open_lo:
            return self.lo < x <= self.hi
        return self.lo <= x <= self.hi

    def __repr__(self) -> str:
        left = "(" if self.open_lo else "["
        return f"{left}{self.lo:g}, {self.hi:g}]"


@dataclass(frozen=True)
class BTable:
    """Dense-output integral of S' = 1/(S N^2) on a uniform eta grid."""

    eta: np.ndarray  # nodes, ascending
    s: np.ndarray    # S at nodes
    sp: np.ndarray   # S' at nodes

    def __call__(self, eta: float) -> tuple[float, float]:
        """Cubic-Hermite S(eta) and the exact-slope S'(eta) = 1/(S N^2)."""
        grid = self.eta
        if not (grid[0] <= eta <= grid[-1]):
            raise DomainError(f"eta={eta} outside table range [{grid[0]}, {grid[-1]}]")
        i = min(int((eta - grid[0]) / (grid[1] - grid[0])), len(grid) - 2)
        h = grid[i + 1] - grid[i]
        u = (eta - grid[i]) / h
        h00 = (1 + 2 * u) * (1 - u) ** 2
        h10 = u * (1 - u) ** 2
        h01 = u * u * (3 - 2 * u)
        h11 = u * u * (u - 1)
        s = h00 * self.s[i] + h10 * h * self.sp[i] + h01 * self.s[i + 1] + h11 * h * self.sp[i + 1]
        sp = self._slope(u, h, i)
        return float(s), float(sp)

    def _slope(self, u, h, i):
        d00 = 6 * u * (u - 1) / h
        d10 = (1 - u) * (1 - 3 * u)
        d01 = -d00
        d11 = u * (3 * u - 2)
        return d00 * self.s[i] + d10 * self.sp[i] + d01 * self.s[i + 1] + d11 * self.sp[i + 1]


@dataclass(frozen=True)
class SolutionInstance:
    """One member of the catalog with validated parameters and chart data.

    ``chart`` is "eta" for A and B, "sigma" for the C families; ``c2_domain``
    constrains the second Lagrangian coordinate in that chart.  ``grid_box``
    is the default verification box ((t_lo, t_hi), (xi_lo, xi_hi),
    (c2_lo, c2_hi)) chosen so that all identities hold at absolute
    tolerances without magnitudes blowing up.
    """

    family: FamilyId
    chart: str
    c2_domain: Interval
    grid_box: tuple[tuple[float, float], tuple[float, float], tuple[float, float]]
    params: dict = field(default_factory=dict)
    # family payloads (not all populated)
    s_tree: ExprTree | None = None
    n_tree: ExprTree | None = None
    b_table: BTable | None = None
    k: float | None = None
    m: float | None = None
    theta: float | None = None

    def __repr__(self) -> str:
        ps = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"SolutionInstance({self.family.value}{', ' + ps if ps else ''})"

    # chart helpers --------------------------------------------------------

    def eta_sigma(self, sigma: float) -> float:
        """d eta / d sigma of the chart map (C families only)."""
        return _eta_sigma(self, sigma)

    def eta_of_c2(self, c2: float) -> float:
        return eta_of_sigma(self, c2) if self.family.is_c else c2


# --------------------------------------------------------------------------
# construction

_T_BOX = (-1.0, 1.0)
_XI_BOX = (-1.0, 1.0)


def make_instance(family, *, S=None, N=None, eta0: float = 0.0, S0: float = 1.0,
                  eta_range: tuple[float, float] = (0.0, 2.0), k: float | None = None,
                  theta: float | None = None,
                  sigma_domain: tuple[float, float] | None = None) -> SolutionInstance:
    """Build a validated catalog instance.

    Parameters are family specific: A takes ``S`` (grammar text or tree);
    B takes ``N`` plus the seed (eta0, S0 != 0) and an eta_range to
    integrate over; C3 takes ``k >= 0, k != 1``; C5 takes ``theta`` with
    sin(theta) cos(2 theta) != 0 and a required ``sigma_domain``;
    C6 takes ``theta`` with sin(2 theta) != 0.  C-family sigma domains are
    validated by sampling eta_sigma for sign-constant nonvanishing values.
    """
    fam = _family_id(family)
    if fam is FamilyId.A:
        if S is None:
            raise FamilyError("family A requires a shear profile S")
        tree = expr.as_tree(S)
        return SolutionInstance(fam, "eta", Interval(-math.inf, math.inf),
                                (_T_BOX, _XI_BOX, (-1.0, 1.0)),
                                params={"S": expr.pretty(tree)}, s_tree=tree)
    if fam is FamilyId.B:
        if N is None:
            raise FamilyError("family B requires a rotation profile N")
        tree = expr.as_tree(N)
        lo, hi = float(eta_range[0]), float(eta_range[1])
        if not lo < hi:
            raise FamilyError("eta_range must be a nonempty interval")
        if not lo <= eta0 <= hi:
            raise FamilyError("eta0 must lie inside eta_range")
        if S0 == 0.0:
            raise FamilyError("S0 must be nonzero")
        table = family_b_integrate(tree, eta0, S0, (lo, hi))
        pad = 0.05 * (hi - lo)
        return SolutionInstance(fam, "eta", Interval(lo, hi),
                                (_T_BOX, _XI_BOX, (lo + pad, hi - pad)),
                                params={"N": expr.pretty(tree), "eta0": eta0, "S0": S0,
                                        "eta_range": [lo, hi]},
                                n_tree=tree, b_table=table)

    # C families
    if fam is FamilyId.C1:
        dom = Interval(*(sigma_domain or (-2.0, 2.0)))
        box = (max(dom.lo, -1.0), min(dom.hi, 1.0))
        inst = SolutionInstance(fam, "sigma", dom, (_T_BOX, _XI_BOX, box),
                                k=0.0, m=0.0)
    elif fam is FamilyId.C2:
        dom = Interval(*(sigma_domain or (0.0, 2.0)), open_lo=sigma_domain is None)
        box = (max(dom.lo + 0.2, dom.lo + 0.1 * (dom.hi - dom.lo)), dom.hi)
        inst = SolutionInstance(fam, "sigma", dom, (_T_BOX, _XI_BOX, box), k=0.5, m=-0.25)
    elif fam is FamilyId.C3:
        kk = 0.5 if k is None else float(k)
        if kk < 0.0 or kk == 1.0:
            raise FamilyError("family C3 requires k >= 0 and k != 1")
        sigma_star = _c3_sigma_star(kk)
        if sigma_domain is None:
            dom = Interval(sigma_star, sigma_star + 1.0, open_lo=True)
        else:
            dom = Interval(*sigma_domain)
        box = (dom.lo + 0.1 * (dom.hi - dom.lo), min(dom.hi, dom.lo + 0.8 * (dom.hi - dom.lo)))
        inst = SolutionInstance(fam, "sigma", dom, (_T_BOX, _XI_BOX, box),
                                params={"k": kk, "sigma_star": sigma_star}, k=kk, m=-1.0)
    elif fam is FamilyId.C4:
        dom = Interval(*(sigma_domain or (-1.0 + 1e-6, 2.0)))
        box = (max(dom.lo, -0.9), dom.hi)
        inst = SolutionInstance(fam, "sigma", dom, (_T_BOX, _XI_BOX, box), k=1.0, m=0.0)
    elif fam is FamilyId.C5:
        th = math.pi / 6 if theta is None else float(theta)
        if abs(math.sin(th) * math.cos(2 * th)) < 1e-12:
            raise FamilyError("family C5 requires sin(theta) cos(2 theta) != 0")
        if sigma_domain is None:
            if theta is not None:
                raise FamilyError("family C5 requires an explicit sigma_domain")
            sigma_domain = (-1.5, 0.5)  # valid for the default theta = pi/6
        dom = Interval(*sigma_domain)
        box = (dom.lo + 0.05 * (dom.hi - dom.lo), dom.hi - 0.05 * (dom.hi - dom.lo))
        inst = SolutionInstance(fam, "sigma", dom, (_T_BOX, _XI_BOX, box),
                                params={"theta": th}, theta=th,
                                k=math.cos(th), m=math.sin(th) ** 2)
    elif fam is FamilyId.C6:
        th = math.pi / 4 if theta is None else float(theta)
        if abs(math.sin(2 * th)) < 1e-12:
            raise FamilyError("family C6 requires sin(2 theta) != 0")
        dom = Interval(*(sigma_domain or (-0.3, 0.7)))
        box = (max(dom.lo, -0.1), dom.hi)
        inst = SolutionInstance(fam, "sigma", dom, (_T_BOX, _XI_BOX, box),
                                params={"theta": th}, theta=th, k=1.0, m=1.0)
    else:
        raise FamilyError(f"unknown family {family!r}")

    _validate_sigma_domain(inst)
    return inst


def _validate_sigma_domain(inst: SolutionInstance, samples: int = 1000) -> None:
    lo, hi = inst.c2_domain.lo, inst.c2_domain.hi
    if not lo < hi:
        raise FamilyError("sigma domain must be a nonempty interval")
    eps = (hi - lo) * 1e-9 if inst.c2_domain.open_lo else 0.0
    pts = np.linspace(lo + eps if inst.c2_domain.open_lo else lo, hi, samples)
    vals = np.array([_eta_sigma(inst, s) for s in pts])
    if np.any(vals == 0.0) or np.any(np.sign(vals) != np.sign(vals[0])):
        raise FamilyError(
            f"eta_sigma changes sign or vanishes on the sigma domain {inst.c2_domain}")


def _c3_sigma_star(k: float) -> float:
    """Unique zero of eta_sigma for C3, found by bisection."""
    a2, b2 = (k + 1.0) ** 2, (k - 1.0) ** 2

    def f(s):
        return 2 * a2 ** 2 * math.exp(4 * a2 * s) - 2 * b2 ** 2 * math.exp(-4 * b2 * s)

    lo, hi = -1.0, 1.0
    while f(lo) > 0:
        lo *= 2
    while f(hi) < 0:
        hi *= 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def catalog_defaults() -> list[SolutionInstance]:
    """The eight canonical instances used by the verification suite."""
    return [
        make_instance(FamilyId.A, S="eta"),
        make_instance(FamilyId.B, N="1", eta0=0.0, S0=1.0, eta_range=(0.0, 2.0)),
        make_instance(FamilyId.C1),
        make_instance(FamilyId.C2),
        make_instance(FamilyId.C3),
        make_instance(FamilyId.C4),
        make_instance(FamilyId.C5),
        make_instance(FamilyId.C6),
    ]


# --------------------------------------------------------------------------
# family-B integration


def family_b_integrate(N: ExprTree, eta0: float, S0: float,
                       rng: tuple[float, float]) -> BTable:
    """Integrate S' = 1/(S N^2) across ``rng`` from the seed (eta0, S0).

    Fixed-step RK4 with step <= 1e-3 * span; raises :class:`FamilyError`
    if N vanishes at a sample point or S approaches zero (the closed form
    S^2 = S0^2 + 2 (eta - eta0)/N^2 for constant N goes singular there).
    """
    lo, hi = rng
    span = hi - lo
    n_steps = max(int(math.ceil(span / (1e-3 * span))), 4)  # 1000 by default
    h = span / n_steps
    if not lo <= eta0 <= hi:
        raise FamilyError("eta0 outside the integration range")

    def n2(eta):
        v = expr.eval_d2(N, eta)[0]
        if abs(v) < 1e-12:
            raise FamilyError(f"N vanishes at eta={eta}")
        return v * v

    def rhs(eta, s):
        if abs(s) < 1e-9 * abs(S0):
            raise FamilyError(f"S reaches zero near eta={eta}")
        return 1.0 / (s * n2(eta))

    # integrate on the uniform grid that contains eta0 as closely as possible
    grid = np.linspace(lo, hi, n_steps + 1)
    i0 = int(round((eta0 - lo) / h))
    s_nodes = np.empty(n_steps + 1)

    def rk4_step(eta, s, step):
        k1 = rhs(eta, s)
        k2 = rhs(eta + step / 2, s + step * k1 / 2)
        k3 = rhs(eta + step / 2, s + step * k2 / 2)
        k4 = rhs(eta + step, s + step * k3)
        return s + step * (k1 + 2 * k2 + 2 * k3 + k4) / 6

    # seed may sit between nodes; march to the nearest node first
    s_at_i0 = S0
    off = grid[i0] - eta0
    if off != 0.0:
        s_at_i0 = rk4_step(eta0, S0, off)
    s_nodes[i0] = s_at_i0
    s = s_at_i0
    for i in range(i0, n_steps):
        s = rk4_step(grid[i], s, h)
        _check_sign(s, S0, grid[i + 1])
        s_nodes[i + 1] = s
    s = s_at_i0
    for i in range(i0, 0, -1):
        s = rk4_step(grid[i], s, -h)
        _check_sign(s, S0, grid[i - 1])
        s_nodes[i - 1] = s

    sp_nodes = np.array([1.0 / (s_nodes[i] * n2(grid[i])) for i in range(n_steps + 1)])
    for arr in (grid, s_nodes, sp_nodes):
        arr.flags.writeable = False
    return BTable(grid, s_nodes, sp_nodes)


def _check_sign(s, S0, eta):
    if s == 0.0 or math.copysign(1.0, s) != math.copysign(1.0, S0):
        raise FamilyError(f"S reaches zero near eta={eta}")


# --------------------------------------------------------------------------
# chart maps eta(sigma) for the C families


def eta_of_sigma(inst: SolutionInstance, sigma: float) -> float:
    if not inst.family.is_c:
        raise FamilyError(f"family {inst.family.value} has no sigma chart")
    if sigma not in inst.c2_domain:
        raise DomainError(f"sigma={sigma} outside domain {inst.c2_domain}")
    return _eta_of_sigma_raw(inst, sigma)


def _eta_of_sigma_raw(inst: SolutionInstance, sigma: float) -> float:
    fam = inst.family
    if fam is FamilyId.C1:
        return -2.0 * sigma
    if fam is FamilyId.C2:
        return math.exp(2 * sigma) / 2 - sigma
    if fam is FamilyId.C3:
        a2, b2 = (inst.k + 1.0) ** 2, (inst.k - 1.0) ** 2
        return (a2 * math.exp(4 * a2 * sigma) + b2 * math.exp(-4 * b2 * sigma)) / 2
    if fam is FamilyId.C4:
        return 2.0 * (sigma * sigma + 2.0 * sigma)
    if fam is FamilyId.C5:
        th = inst.theta
        st, s2t, c2t = math.sin(th), math.sin(2 * th), math.cos(2 * th)
        return math.exp(-4 * sigma * st * s2t) * math.cos(2 * th + 4 * sigma * st * c2t)
    if fam is FamilyId.C6:
        return 2.0 * math.exp(-8 * sigma) * math.sin(2 * inst.theta)
    raise FamilyError(f"no sigma chart for {fam}")


def _eta_sigma(inst: SolutionInstance, sigma: float) -> float:
    fam = inst.family
    if fam is FamilyId.C1:
        return -2.0
    if fam is FamilyId.C2:
        return math.exp(2 * sigma) - 1.0
    if fam is FamilyId.C3:
        a2, b2 = (inst.k + 1.0) ** 2, (inst.k - 1.0) ** 2
        return 2 * a2 ** 2 * math.exp(4 * a2 * sigma) - 2 * b2 ** 2 * math.exp(-4 * b2 * sigma)
    if fam is FamilyId.C4:
        return 4.0 * sigma + 4.0
    if fam is FamilyId.C5:
        th = inst.theta
        st, s2t, c2t = math.sin(th), math.sin(2 * th), math.cos(2 * th)
        e = math.exp(-4 * sigma * st * s2t)
        psi = 2 * th + 4 * sigma * st * c2t
        return -4 * st * e * (s2t * math.cos(psi) + c2t * math.sin(psi))
    if fam is FamilyId.C6:
        return -16.0 * math.exp(-8 * sigma) * math.sin(2 * inst.theta)
    raise FamilyError(f"no sigma chart for {fam}")


def sigma_of_eta(inst: SolutionInstance, eta: float, *, max_iter: int = 100) -> float:
    """Invert the monotone chart map by safeguarded Newton with bisection.

    Converges to |eta(sigma) - eta| < 1e-12 (1 + |eta|).
    """
    if not inst.family.is_c:
        raise FamilyError(f"family {inst.family.value} has no sigma chart")
    dom = inst.c2_domain
    lo = dom.lo + (1e-12 * max(1.0, abs(dom.lo)) if dom.open_lo else 0.0)
    hi = dom.hi
    f_lo = _eta_of_sigma_raw(inst, lo) - eta
    f_hi = _eta_of_sigma_raw(inst, hi) - eta
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise DomainError(f"eta={eta} outside the image of the sigma domain {dom}")
    tol = 1e-12 * (1.0 + abs(eta))
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = _eta_of_sigma_raw(inst, x) - eta
        if abs(fx) < tol:
            return x
        if math.copysign(1.0, fx) == math.copysign(1.0, f_lo):
            lo = x
        else:
            hi = x
        d = _eta_sigma(inst, x)
        step_ok = d != 0.0
        if step_ok:
            x_new = x - fx / d
            step_ok = lo < x_new < hi
        x = x_new if step_ok else 0.5 * (lo + hi)
    raise DomainError(f"sigma_of_eta did not converge for eta={eta}")


# --------------------------------------------------------------------------
# jet evaluation


def eval_jet_native(inst: SolutionInstance, t: float, xi: float, c2: float) -> CJet:
    """Jet in the instance's native chart (w-axis = eta for A/B, sigma for C)."""
    if c2 not in inst.c2_domain:
        raise DomainError(f"{inst.chart}={c2} outside domain {inst.c2_domain}")
    base = (t, xi, c2)
    fam = inst.family
    if fam is FamilyId.A:
        return _jet_a(inst, base)
    if fam is FamilyId.B:
        return _jet_b(inst, base)
    return _jet_c(inst, base)


def eval_jet(inst: SolutionInstance, t: float, xi: float, c2: float) -> CJet:
    """Jet whose w-axis carries eta-partials (chain rule through eta(sigma)).

    ``c2`` is the native chart coordinate: eta for A/B, sigma for C.
    """
    j = eval_jet_native(inst, t, xi, c2)
    if not inst.family.is_c:
        return j
    scale = 1.0 / _eta_sigma(inst, c2)
    coeff = j.coeff.copy()
    coeff[:, :, 1] *= scale
    return CJet(coeff, (t, xi, _eta_of_sigma_raw(inst, c2)))


def eval_eta_jet(inst: SolutionInstance, t: float, xi: float, eta: float) -> CJet:
    """Eta-chart evaluation: accepts eta directly for every family."""
    if inst.family.is_c:
        return eval_jet(inst, t, xi, sigma_of_eta(inst, eta))
    return eval_jet(inst, t, xi, eta)


def eta_evaluator(inst: SolutionInstance):
    """The instance as a plain (t, xi, eta) -> CJet callable."""
    def evaluate(t: float, xi: float, eta: float) -> CJet:
        return eval_eta_jet(inst, t, xi, eta)
    return evaluate


def _eta_profile_jet(tree: ExprTree, base) -> CJet:
    """First-order jet of a profile function of eta at the base point."""
    v, d1, _ = expr.eval_d2(tree, base[2])
    c = np.zeros(SHAPE, dtype=np.complex128)
    c[0, 0, 0] = v
    c[0, 0, 1] = d1
    return CJet(c, base)


def _jet_a(inst: SolutionInstance, base) -> CJet:
    t = t_jet(base)
    xi = xi_jet(base)
    eta = w_jet(base)
    s = _eta_profile_jet(inst.s_tree, base)
    return xi + s * t + 1j * (eta - 0.5 * t * t)


def _jet_b(inst: SolutionInstance, base) -> CJet:
    t = t_jet(base)
    xi = xi_jet(base)
    n = _eta_profile_jet(inst.n_tree, base)
    s_val, sp_val = inst.b_table(base[2])
    c = np.zeros(SHAPE, dtype=np.complex128)
    c[0, 0, 0] = s_val
    c[0, 0, 1] = sp_val
    s = CJet(c, base)
    phase = n * t - (n * n) * xi
    return s * jet_exp(1j * phase)


def _jet_c(inst: SolutionInstance, base) -> CJet:
    t = t_jet(base)
    xi = xi_jet(base)
    sg = w_jet(base)
    fam = inst.family
    if fam is FamilyId.C1:
        return (t * t * t) * (1 / 6) - xi + 1j * (0.5 * t * t + t * xi + 2 * sg)
    if fam is FamilyId.C2:
        return jet_exp(1j * t - 1j * xi + sg) - xi + 1j * (0.5 * t * t + sg)
    if fam is FamilyId.C3:
        a, b = inst.k + 1.0, inst.k - 1.0
        e1 = jet_exp(1j * a * t - (a * a) * (1j * xi - 2 * sg))
        e2 = jet_exp(1j * b * t - (b * b) * (1j * xi + 2 * sg))
        return e1 + e2
    if fam is FamilyId.C4:
        return (t - 2 * xi - 2j * sg) * jet_exp(1j * (t - xi))
    if fam is FamilyId.C5:
        th = inst.theta
        cis1, cis2 = complex(math.cos(th), math.sin(th)), complex(math.cos(2 * th), math.sin(2 * th))
        st = math.sin(th)
        e1 = jet_exp(1j * cis1 * t - 1j * cis2 * (xi - 2 * st * sg))
        e2 = jet_exp(1j * cis1.conjugate() * t - 1j * cis2.conjugate() * (xi + 2 * st * sg))
        return e1 + e2
    if fam is FamilyId.C6:
        th = inst.theta
        e1 = jet_exp(1j * (t - th) - 4 * sg - t + 2 * xi)
        e2 = jet_exp(1j * (t + th) - 4 * sg + t - 2 * xi)
        return e1 + e2
    raise FamilyError(f"no jet evaluator for {fam}")


# --------------------------------------------------------------------------
# residual helpers shared by the verification suite


def structure_residuals(j: CJet) -> tuple[float, float]:
    """|z_xi - i z_tt| and |unit Jacobian - 1| at the jet's base point."""
    r1 = abs(j.deriv(0, 1, 0) - 1j * j.deriv(2, 0, 0))
    z_xi = j.deriv(0, 1, 0)
    z_eta = j.deriv(0, 0, 1)
    jac = 0.5j * (z_xi * z_eta.conjugate() - z_xi.conjugate() * z_eta)
    return r1, abs(jac - 1.0)


def passive_residuals(inst: SolutionInstance, t: float, xi: float, c2: float) -> dict[str, float]:
    """Residuals of the family's defining passive system at one point."""
    out: dict[str, float] = {}
    fam = inst.family
    if fam is FamilyId.A:
        j = eval_jet(inst, t, xi, c2)
        out["z_ttt"] = abs(j.deriv(3, 0, 0))
        out["z_tteta"] = abs(j.deriv(2, 0, 1))
        return out
    if fam is FamilyId.B:
        j = eval_jet(inst, t, xi, c2)
        n_val, n_eta, _ = expr.eval_d2(inst.n_tree, c2)
        out["z_ttt"] = abs(j.deriv(3, 0, 0) - 1j * n_val * j.deriv(2, 0, 0))
        out["z_teta"] = abs(j.deriv(1, 0, 1) - 1j * n_val * j.deriv(0, 0, 1)
                            + 1j * n_eta / n_val ** 2 * j.deriv(2, 0, 0))
        return out
    jn = eval_jet_native(inst, t, xi, c2)
    kk, mm = inst.k, inst.m
    out["z_tttt"] = abs(jn.deriv(4, 0, 0) - 2j * kk * jn.deriv(3, 0, 0)
                        - (kk * kk + mm) * jn.deriv(2, 0, 0))
    out["z_sigma"] = abs(jn.deriv(0, 0, 1) - 2 * (1j * jn.deriv(3, 0, 0) + kk * jn.deriv(2, 0, 0)))
    z_tt = jn.deriv(2, 0, 0)
    z_ttt = jn.deriv(3, 0, 0)
    i_invariant = (1j * (z_tt * z_ttt.conjugate() - z_tt.conjugate() * z_ttt)
                   - 2 * kk * (z_tt * z_tt.conjugate())).real
    out["eta_sigma"] = abs(_eta_sigma(inst, c2) - i_invariant)
    return out


def grid_points(inst: SolutionInstance, shape: tuple[int, int, int] = (5, 5, 5)):
    """Default verification lattice over the instance's grid box."""
    (t0, t1), (x0, x1), (c0, c1) = inst.grid_box
    for t in np.linspace(t0, t1, shape[0]):
        for xi in np.linspace(x0, x1, shape[1]):
            for c2 in np.linspace(c0, c1, shape[2]):
                yield float(t), float(xi), float(c2)
