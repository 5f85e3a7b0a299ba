#!/usr/bin/env python3
"""The algebraic invariants that classify the flows.

From the vector (z_xi, z_eta) and the skew form a v b = a1 b2 - a2 b1 one
builds five real invariants alpha..epsilon.  On solutions alpha = 1, beta
is the vorticity, and beta, gamma, delta, epsilon depend on the pressure
label eta alone.  When gamma != beta^2 two derived coefficients

    K = (delta - beta gamma) / (4 (gamma - beta^2))
    T = (beta delta - gamma^2) / (4 (gamma - beta^2))

are constants (k, k^2 + m) on the C families and (N(eta), N(eta)^2) on
family B with a genuinely varying rotation profile.
"""

from lagflow import expr
from lagflow.families import catalog_defaults, eval_jet, make_instance
from lagflow.invariants import invariant_set

print(f"{'family':7s} {'alpha':>8s} {'beta':>10s} {'gamma':>10s} "
      f"{'delta':>10s} {'K':>10s} {'T':>10s}")
for inst in catalog_defaults():
    c_lo, c_hi = inst.grid_box[2]
    s = invariant_set(eval_jet(inst, 0.3, 0.2, 0.5 * (c_lo + c_hi)), kt="optional")
    k = "undef" if s.K is None else f"{s.K:.6f}"
    t = "undef" if s.T is None else f"{s.T:.6f}"
    print(f"{inst.family.value:7s} {s.alpha:8.4f} {s.beta:10.5f} {s.gamma:10.5f} "
          f"{s.delta:10.5f} {k:>10s} {t:>10s}")

print()
print("Family B with constant N sits on the degenerate stratum gamma = beta^2,")
print("so K and T are undefined there.  With a varying profile they track N:")
inst = make_instance("B", N="1+eta/4", eta0=0.0, S0=1.0, eta_range=(0.0, 2.0))
for eta in (0.25, 1.0, 1.75):
    s = invariant_set(eval_jet(inst, 0.3, 0.2, eta))
    n = expr.eval_d2(inst.n_tree, eta)[0]
    print(f"  eta = {eta:4.2f}:  K = {s.K:.9f}  vs  N(eta) = {n:.9f}"
          f"   T = {s.T:.9f}  vs  N^2 = {n * n:.9f}")
