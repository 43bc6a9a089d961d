"""Shared numerical conventions.

Every tolerance-sensitive decision in the package draws from the ladder
below instead of inventing its own constant.  Reports emitted by the
CLI embed CONVENTION_TAGS so that numbers can be compared across runs.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class ToleranceLadder:
    algebraic: float = 1e-12   # group-law / unit-norm drift
    derived: float = 1e-10     # identities derived from exact algebra
    rank: float = 1e-8         # singular value thresholds, rank decisions


TOL = ToleranceLadder()

# Default residual gate for accepting a representation's relators.
RELATOR_TOL = 1e-9

CONVENTION_TAGS = {
    "metric": "ijk-orthonormal",
    "exp": "exp(X) = (cos|X|, sin|X| X/|X|); Ad(exp(X)) rotates by 2|X|",
    "torsion_orientation": "odd-position maps to numerator",
    "phase": "exp(2*pi*i*k*cs)",
    "cup_product": "(u~v)(a,b) = <u(a), Ad(a) v(b)> on the relator 2-chain",
}

SCHEMA_VERSION = 1
