"""Classification pipeline: candidate enumeration, exclusion certificates,
numerical feasibility, and the closed-form walk families."""

from .prop7 import build_prop7_walk, bcc_generating_set, weyl_walk

__all__ = [
    "build_prop7_walk",
    "bcc_generating_set",
    "weyl_walk",
]
