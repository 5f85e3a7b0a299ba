"""lagflow: exact 2D ideal-fluid flows with pressure-invariant particles.

A catalog of closed-form solutions of the Lagrangian free-boundary system
(z_xi = i z_tt with unit Jacobian), jet arithmetic to differentiate them
exactly, their algebraic invariants, curvature and symmetry diagnostics,
Eulerian field reconstruction, and an exact rational-arithmetic kernel for
the compatibility-sequence counterexample.  See README.md for a tour.
"""

from .families import FamilyId, SolutionInstance, catalog_defaults, make_instance
from .jets import CJet
from .report import CheckItem, VerifyReport
from .verify import run_verification

__all__ = [
    "FamilyId",
    "SolutionInstance",
    "catalog_defaults",
    "make_instance",
    "CJet",
    "CheckItem",
    "VerifyReport",
    "run_verification",
]

__version__ = "0.1.0"
