"""Run configuration shared by the CLI and the heavier test suites."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    """Engine knobs.

    cyclotomic_order: order N of the coefficient field Q(zeta_N).
    depth_a, depth_b: the weight window a*alpha + b*beta kept by the
        lowering-subalgebra normal forms (a <= depth_a, b <= depth_b).
    oracle_margin: extra slices, in each simple-root direction beyond the
        deepest singular-vector weight, checked by the direct-sum oracle.
    """

    cyclotomic_order: int = 12
    depth_a: int = 9
    depth_b: int = 6
    oracle_margin: int = 3

    def __post_init__(self):
        if self.cyclotomic_order < 1:
            raise ValueError("cyclotomic_order must be >= 1")
        if self.depth_a < 1 or self.depth_b < 1 or self.oracle_margin < 0:
            raise ValueError("depths must be positive")


DEFAULT = Config()
