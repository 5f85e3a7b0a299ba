"""Algebraic invariants of the solution vector (z_xi, z_eta).

The skew form a v b = a1 b2 - a2 b1 applied to the vector field
Z = (z_xi, z_eta) and its conjugate produces five real scalars::

    alpha = (i/2) Z v conj(Z)                 (= 1 by the unit Jacobian)
    beta  = binomial 1-pattern  (= vorticity)
    gamma, delta, epsilon = binomial 2-, 3-, 4-patterns

Everything downstream is built from the t- and xi-derivatives of these:
four conservation-law combinations alpha_xi + beta_t, ..., delta_xi +
epsilon_t that vanish on solutions; the Delta_1..Delta_5 coefficients of
the second-order linear relation Delta1 Z_tt + (Delta2 + i Delta3) Z_t +
(Delta4 + i Delta5) Z = 0; the bare multilinear identity Omega = 0; the
scalar constraint (beta^2 - gamma) eps + delta^2 + gamma_t^2 -
2 beta gamma delta + gamma^3 = 0 that holds once alpha = 1; and on the
nondegenerate stratum (gamma != beta^2) the two coefficients::

    K = (delta - beta gamma) / (4 (gamma - beta^2))
    T = (beta delta - gamma^2) / (4 (gamma - beta^2))

which are the rotation rate and squared-frequency data of Z_tt = 2iK Z_t +
T Z.  The invariants are computed as truncated jets so that their t- and
xi-derivatives come from coefficients, not finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import SolutionInstance, eval_jet
from .jets import CJet, jet_add, jet_conj, jet_dt, jet_dt_n, jet_dw, jet_dxi, jet_mul, jet_scale

# relative ceiling on the imaginary residue of nominally real quantities
_IMAG_TOL = 1e-12


class DegenerateInvariantsError(ArithmeticError):
    """K and T are undefined where gamma - beta^2 vanishes."""


class RealnessError(AssertionError):
    """A nominally real invariant carried a large imaginary part."""


@dataclass(frozen=True)
class InvariantSet:
    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float
    delta1: float
    delta2: float
    delta3: float
    delta4: float
    delta5: float
    omega: float
    K: float | None
    T: float | None


def wedge(a: tuple[complex, complex], b: tuple[complex, complex]) -> complex:
    """The 2x2 determinant form a v b = a1 b2 - a2 b1."""
    return a[0] * b[1] - a[1] * b[0]


def _wedge_jet(a: tuple[CJet, CJet], b: tuple[CJet, CJet]) -> CJet:
    return jet_add(jet_mul(a[0], b[1]), jet_scale(jet_mul(a[1], b[0]), -1.0))


def _real(z: complex, scale: float, what: str) -> float:
    if abs(z.imag) > _IMAG_TOL * scale:
        raise RealnessError(f"{what} has imaginary residue {z.imag:.3e} at scale {scale:.3e}")
    return z.real


class InvariantJets:
    """The five invariants of one solution jet, kept as jets.

    Coefficient reads replace analytic t-differentiation: ``self.alpha[n]``
    is d^n alpha / dt^n, ``self.alpha_xi(n)`` is the mixed d/dxi d^n/dt^n.
    Imaginary residues are checked against the working scale and dropped.
    """

    def __init__(self, j: CJet):
        z1 = jet_dxi(j)
        z2 = jet_dw(j)
        vec = [(jet_dt_n(z1, n), jet_dt_n(z2, n)) for n in range(5)]
        cvec = [(jet_conj(a), jet_conj(b)) for (a, b) in vec]
        w = {(i, k): _wedge_jet(vec[i], cvec[k]) for i in range(5) for k in range(5 - i)}

        self.scale = max(1.0, max(abs(z1.value), abs(z2.value),
                                  abs(vec[1][0].value), abs(vec[1][1].value)) ** 2)
        self.alpha_jet = jet_scale(w[0, 0], 0.5j)
        self.beta_jet = jet_scale(jet_add(w[1, 0], jet_scale(w[0, 1], -1.0)), 0.5)
        self.gamma_jet = jet_scale(
            jet_add(jet_add(w[2, 0], jet_scale(w[1, 1], -2.0)), w[0, 2]), -0.5j)
        self.delta_jet = jet_scale(
            jet_add(jet_add(w[3, 0], jet_scale(w[2, 1], -3.0)),
                    jet_add(jet_scale(w[1, 2], 3.0), jet_scale(w[0, 3], -1.0))), -0.5)
        self.epsilon_jet = jet_scale(
            jet_add(jet_add(jet_add(w[4, 0], jet_scale(w[3, 1], -4.0)),
                            jet_add(jet_scale(w[2, 2], 6.0), jet_scale(w[1, 3], -4.0))),
                    w[0, 4]), 0.5j)
        self.vec = vec
        self.wedge_t_z = _wedge_jet(vec[1], vec[0]).value  # Z_t v Z, unconjugated

    def t_deriv(self, which: str, n: int) -> float:
        jet: CJet = getattr(self, which + "_jet")
        return _real(jet.deriv(n, 0, 0), self.scale, f"d^{n}_t {which}")

    def xi_deriv(self, which: str) -> float:
        jet: CJet = getattr(self, which + "_jet")
        return _real(jet.deriv(0, 1, 0), self.scale, f"d_xi {which}")


def _deltas(iv: InvariantJets) -> tuple[float, float, float, float, float]:
    a0, a1, a2, a3 = (iv.t_deriv("alpha", n) for n in range(4))
    b0, b1, b2 = (iv.t_deriv("beta", n) for n in range(3))
    g0, g1 = iv.t_deriv("gamma", 0), iv.t_deriv("gamma", 1)
    d0 = iv.t_deriv("delta", 0)
    delta1 = -4.0 * (a0 * a2 - a1 * a1 + a0 * g0 - b0 * b0)
    delta2 = 2.0 * (a0 * a3 - a1 * a2 + a0 * g1 + g0 * a1 - 2.0 * b0 * b1)
    delta3 = 2.0 * (b0 * a2 - 2.0 * a1 * b1 + a0 * b2 + a0 * d0 - b0 * g0)
    delta4 = -a1 * a3 + a2 * a2 - a1 * g1 + b0 * b2 + b0 * d0 - g0 * g0
    delta5 = -b0 * a3 + 2.0 * b1 * a2 - a1 * b2 - a1 * d0 + 2.0 * g0 * b1 - b0 * g1
    return delta1, delta2, delta3, delta4, delta5


def _omega(iv: InvariantJets) -> float:
    a0, a1, a2, a3, a4 = (iv.t_deriv("alpha", n) for n in range(5))
    b0, b1, b2 = (iv.t_deriv("beta", n) for n in range(3))
    g0, g1, g2 = (iv.t_deriv("gamma", n) for n in range(3))
    d0 = iv.t_deriv("delta", 0)
    e0 = iv.t_deriv("epsilon", 0)
    return ((a4 + 2.0 * g2 + e0) * (b0 * b0 - a0 * (g0 + a2) + a1 * a1)
            + (a2 + g0) * (4.0 * b1 * b1 + (a2 - g0) ** 2)
            + a0 * (b2 + d0) ** 2
            + a0 * (a3 + g1) ** 2
            + 2.0 * (b2 + d0) * (a2 * b0 - 2.0 * a1 * b1 - b0 * g0)
            + 2.0 * (a3 + g1) * (a1 * g0 - a2 * a1 - 2.0 * b1 * b0))


def kt_coefficients(beta: float, gamma: float, delta: float) -> tuple[float, float]:
    """K and T from the constant-in-t reductions of the invariants."""
    den = gamma - beta * beta
    if abs(den) <= 1e-10 * max(1.0, abs(gamma), beta * beta):
        raise DegenerateInvariantsError(
            f"gamma - beta^2 = {den:.3e} vanishes; K and T are undefined")
    return (delta - beta * gamma) / (4.0 * den), (beta * delta - gamma * gamma) / (4.0 * den)


def invariant_set(j: CJet, *, kt: str = "require") -> InvariantSet:
    """All invariants of a solution jet at its base point.

    ``kt="require"`` raises :class:`DegenerateInvariantsError` on the
    stratum gamma = beta^2 (e.g. constant-N members of family B);
    ``kt="optional"`` reports K = T = None there instead.
    """
    iv = InvariantJets(j)
    alpha = iv.t_deriv("alpha", 0)
    beta = iv.t_deriv("beta", 0)
    gamma = iv.t_deriv("gamma", 0)
    delta = iv.t_deriv("delta", 0)
    epsilon = iv.t_deriv("epsilon", 0)
    d1, d2, d3, d4, d5 = _deltas(iv)
    omega = _omega(iv)
    try:
        K, T = kt_coefficients(beta, gamma, delta)
    except DegenerateInvariantsError:
        if kt == "require":
            raise
        K = T = None
    return InvariantSet(alpha, beta, gamma, delta, epsilon, d1, d2, d3, d4, d5, omega, K, T)


def lemma_residuals(j: CJet) -> tuple[float, float]:
    """Residuals of the second-order linear relation and its leading factor.

    Returns (max over components of |Delta1 Z_tt + (Delta2 + i Delta3) Z_t
    + (Delta4 + i Delta5) Z|,  |Delta1 - 4 |Z_t v Z|^2|).
    """
    iv = InvariantJets(j)
    d1, d2, d3, d4, d5 = _deltas(iv)
    vec0, vec1, vec2 = iv.vec[0], iv.vec[1], iv.vec[2]
    res = 0.0
    for comp in range(2):
        r = (d1 * vec2[comp].value + (d2 + 1j * d3) * vec1[comp].value
             + (d4 + 1j * d5) * vec0[comp].value)
        res = max(res, abs(r))
    w = iv.wedge_t_z
    return res, abs(d1 - 4.0 * (w * w.conjugate()).real)


def omega_residual(j: CJet) -> float:
    """|Omega|: zero for any twice-differentiable vector field, by multilinearity."""
    return abs(_omega(InvariantJets(j)))


def eq8_residual(j: CJet) -> float:
    """|(beta^2 - gamma) epsilon + delta^2 + gamma_t^2 - 2 beta gamma delta + gamma^3|.

    An identity on solution points, where alpha = 1.
    """
    iv = InvariantJets(j)
    b0 = iv.t_deriv("beta", 0)
    g0, g1 = iv.t_deriv("gamma", 0), iv.t_deriv("gamma", 1)
    d0 = iv.t_deriv("delta", 0)
    e0 = iv.t_deriv("epsilon", 0)
    return abs((b0 * b0 - g0) * e0 + d0 * d0 + g1 * g1 - 2.0 * b0 * g0 * d0 + g0 ** 3)


def conservation_residuals_of_jet(j: CJet) -> tuple[float, float, float, float]:
    """The four conservation-law combinations, from the jet's own axes."""
    iv = InvariantJets(j)
    return (abs(iv.xi_deriv("alpha") + iv.t_deriv("beta", 1)),
            abs(iv.xi_deriv("beta") + iv.t_deriv("gamma", 1)),
            abs(iv.xi_deriv("gamma") + iv.t_deriv("delta", 1)),
            abs(iv.xi_deriv("delta") + iv.t_deriv("epsilon", 1)))


def conservation_residuals(inst: SolutionInstance, t: float, xi: float,
                           c2: float) -> tuple[float, float, float, float]:
    """Conservation-law residuals of a catalog instance at one point."""
    return conservation_residuals_of_jet(eval_jet(inst, t, xi, c2))


def constancy_residuals(j: CJet) -> dict[str, float]:
    """|d/dt| and |d/dxi| of beta, gamma, delta, epsilon (all vanish on solutions)."""
    iv = InvariantJets(j)
    out = {}
    for name in ("beta", "gamma", "delta", "epsilon"):
        out[name + "_t"] = abs(iv.t_deriv(name, 1))
        out[name + "_xi"] = abs(iv.xi_deriv(name))
    return out
