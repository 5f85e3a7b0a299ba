"""Truncated Taylor arithmetic for complex fields of three real coordinates.

A :class:`CJet` stores the Taylor coefficients of a complex-valued function
z(t, xi, w) about a base point, where w is the second Lagrangian coordinate
of whatever chart the producer used (eta directly, or sigma for the
reparametrized families).  Coefficients live in a dense complex array::

    coeff[a, b, d] = d^a/dt^a  d^b/dxi^b  d^d/dw^d  z / (a! b! d!)

with caps a <= 8, b <= 2, d <= 1 (54 coefficients).  The t-cap of 8 covers
the worst consumer: two xi-derivatives of curvature, each xi-derivative
costing two t-orders under the structure relation z_xi = i z_tt.  One
w-order suffices for every quantity built from z_eta.

Sums, products (truncated Leibniz convolution), exp/log/powers and the
coefficient-shift derivatives are exact for closed-form inputs within the
caps; there is no truncation error below the caps, only rounding.  Jets are
immutable values (the coefficient array is frozen) and safe to share.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

CAP_T = 8
CAP_XI = 2
CAP_W = 1
SHAPE = (CAP_T + 1, CAP_XI + 1, CAP_W + 1)
_NCOEFF = SHAPE[0] * SHAPE[1] * SHAPE[2]

# total degree cap bounds the nilpotency order of a zero-constant jet
_MAX_TOTAL = CAP_T + CAP_XI + CAP_W


class JetError(ValueError):
    pass


def _conv_table() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flat index triples (i, j, k) with monomial(i) * monomial(j) = monomial(k)."""
    flat = []
    for a1 in range(SHAPE[0]):
        for b1 in range(SHAPE[1]):
            for d1 in range(SHAPE[2]):
                for a2 in range(SHAPE[0] - a1):
                    for b2 in range(SHAPE[1] - b1):
                        for d2 in range(SHAPE[2] - d1):
                            i = (a1 * SHAPE[1] + b1) * SHAPE[2] + d1
                            j = (a2 * SHAPE[1] + b2) * SHAPE[2] + d2
                            k = ((a1 + a2) * SHAPE[1] + (b1 + b2)) * SHAPE[2] + (d1 + d2)
                            flat.append((i, j, k))
    arr = np.array(flat, dtype=np.intp)
    return arr[:, 0], arr[:, 1], arr[:, 2]


_CONV_I, _CONV_J, _CONV_K = _conv_table()

_FACT = np.array([math.factorial(n) for n in range(max(SHAPE))], dtype=float)


class CJet:
    """Immutable truncated Taylor expansion at a base point (t, xi, w)."""

    __slots__ = ("coeff", "base")

    def __init__(self, coeff: np.ndarray, base: tuple[float, float, float]):
        coeff = np.ascontiguousarray(coeff, dtype=np.complex128)
        if coeff.shape != SHAPE:
            raise JetError(f"coefficient array must have shape {SHAPE}")
        coeff.flags.writeable = False
        self.coeff = coeff
        self.base = (float(base[0]), float(base[1]), float(base[2]))

    # -- access ------------------------------------------------------------

    def deriv(self, a: int, b: int, d: int) -> complex:
        """The mixed partial d^a_t d^b_xi d^d_w z at the base point."""
        if not (0 <= a <= CAP_T and 0 <= b <= CAP_XI and 0 <= d <= CAP_W):
            raise JetError(f"derivative order ({a},{b},{d}) outside caps {(CAP_T, CAP_XI, CAP_W)}")
        return complex(self.coeff[a, b, d]) * _FACT[a] * _FACT[b] * _FACT[d]

    @property
    def value(self) -> complex:
        return complex(self.coeff[0, 0, 0])

    def __repr__(self) -> str:
        return f"CJet(value={self.value:.6g}, base={self.base})"

    # -- arithmetic (operators defer to the module functions) ---------------

    def __add__(self, other):
        return jet_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return jet_add(self, jet_scale(_as_jet(other, self.base), -1.0))

    def __rsub__(self, other):
        return jet_add(_as_jet(other, self.base), jet_scale(self, -1.0))

    def __mul__(self, other):
        if isinstance(other, CJet):
            return jet_mul(self, other)
        return jet_scale(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return jet_scale(self, -1.0)

    def __truediv__(self, other):
        if isinstance(other, CJet):
            return jet_mul(self, jet_pow(other, -1))
        return jet_scale(self, 1.0 / other)


def _as_jet(x, base: tuple[float, float, float]) -> CJet:
    if isinstance(x, CJet):
        return x
    return constant(complex(x), base)


def _check_base(a: CJet, b: CJet) -> None:
    if a.base != b.base:
        raise JetError(f"base point mismatch: {a.base} vs {b.base}")


# --------------------------------------------------------------------------
# constructors


def constant(value: complex, base: tuple[float, float, float]) -> CJet:
    c = np.zeros(SHAPE, dtype=np.complex128)
    c[0, 0, 0] = value
    return CJet(c, base)


def variable(axis: int, base: tuple[float, float, float]) -> CJet:
    """The coordinate function of the given axis (0=t, 1=xi, 2=w) as a jet."""
    c = np.zeros(SHAPE, dtype=np.complex128)
    c[0, 0, 0] = base[axis]
    idx = [0, 0, 0]
    idx[axis] = 1
    c[tuple(idx)] = 1.0
    return CJet(c, base)


def t_jet(base):
    return variable(0, base)


def xi_jet(base):
    return variable(1, base)


def w_jet(base):
    return variable(2, base)


# --------------------------------------------------------------------------
# arithmetic


def jet_add(a: CJet, b) -> CJet:
    b = _as_jet(b, a.base)
    _check_base(a, b)
    return CJet(a.coeff + b.coeff, a.base)


def jet_scale(a: CJet, s: complex) -> CJet:
    return CJet(a.coeff * complex(s), a.base)


def jet_mul(a: CJet, b: CJet) -> CJet:
    _check_base(a, b)
    prod = a.coeff.reshape(_NCOEFF)[_CONV_I] * b.coeff.reshape(_NCOEFF)[_CONV_J]
    out = np.bincount(_CONV_K, weights=prod.real, minlength=_NCOEFF).astype(np.complex128)
    out += 1j * np.bincount(_CONV_K, weights=prod.imag, minlength=_NCOEFF)
    return CJet(out.reshape(SHAPE), a.base)


def jet_conj(a: CJet) -> CJet:
    """Jet of the complex conjugate field (coordinates are real)."""
    return CJet(np.conj(a.coeff), a.base)


def jet_exp(a: CJet) -> CJet:
    """exp of a jet: exp(c0) times the series exp of the nilpotent part."""
    u = a.coeff.copy()
    c0 = u[0, 0, 0]
    u[0, 0, 0] = 0.0
    u_jet = CJet(u, a.base)
    acc = constant(1.0, a.base)
    term = constant(1.0, a.base)
    for n in range(1, _MAX_TOTAL + 1):
        term = jet_scale(jet_mul(term, u_jet), 1.0 / n)
        if not term.coeff.any():
            break
        acc = jet_add(acc, term)
    return jet_scale(acc, cmath.exp(c0))


def jet_log(a: CJet) -> CJet:
    """Principal log of a jet; the base value must be nonzero."""
    c0 = a.value
    if c0 == 0:
        raise JetError("log of a jet with zero base value")
    u = jet_add(jet_scale(a, 1.0 / c0), constant(-1.0, a.base))
    acc = constant(0.0, a.base)
    term = constant(-1.0, a.base)  # builds (-1)^(n+1) u^n / n
    for n in range(1, _MAX_TOTAL + 1):
        term = jet_scale(jet_mul(term, u), -1.0)
        if not term.coeff.any():
            break
        acc = jet_add(acc, jet_scale(term, 1.0 / n))
    return jet_add(acc, constant(cmath.log(c0), a.base))


def jet_pow(a: CJet, p: float) -> CJet:
    """Real power via exp(p log a); integer powers of small modulus are exact-ish.

    For negative or fractional p the base value must avoid the branch cut at 0.
    """
    if p == 0:
        return constant(1.0, a.base)
    if p == 1:
        return a
    if isinstance(p, int) and p > 1 and p <= _MAX_TOTAL:
        out = a
        for _ in range(p - 1):
            out = jet_mul(out, a)
        return out
    return jet_exp(jet_scale(jet_log(a), p))


def jet_sqrt(a: CJet) -> CJet:
    return jet_pow(a, 0.5)


def jet_real(a: CJet) -> CJet:
    """Jet of Re z = (z + conj z)/2."""
    return jet_scale(jet_add(a, jet_conj(a)), 0.5)


# --------------------------------------------------------------------------
# derivatives (coefficient shifts; the shifted-out top order becomes unknown
# and is zero-filled, so consumers must stay within the reduced caps)


def jet_dt(a: CJet) -> CJet:
    c = np.zeros(SHAPE, dtype=np.complex128)
    c[:-1] = a.coeff[1:] * np.arange(1, SHAPE[0], dtype=float)[:, None, None]
    return CJet(c, a.base)


def jet_dxi(a: CJet) -> CJet:
    c = np.zeros(SHAPE, dtype=np.complex128)
    c[:, :-1] = a.coeff[:, 1:] * np.arange(1, SHAPE[1], dtype=float)[None, :, None]
    return CJet(c, a.base)


def jet_dw(a: CJet) -> CJet:
    c = np.zeros(SHAPE, dtype=np.complex128)
    c[:, :, :-1] = a.coeff[:, :, 1:] * np.arange(1, SHAPE[2], dtype=float)[None, None, :]
    return CJet(c, a.base)


def jet_dt_n(a: CJet, n: int) -> CJet:
    out = a
    for _ in range(n):
        out = jet_dt(out)
    return out


def zvector(j: CJet) -> tuple[CJet, CJet]:
    """The solution vector (z_xi, z_eta) as a pair of jets.

    Meaningful when the jet's w-axis is eta (the producers guarantee this
    for catalog jets).
    """
    return jet_dxi(j), jet_dw(j)
