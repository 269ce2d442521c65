"""Physical constants used throughout the model."""

import math
from dataclasses import dataclass

__all__ = ["PhysicalConstants", "DEFAULT_CONSTANTS", "BOLTZMANN"]

#: Boltzmann constant as used in the reference simulation setup (J/K).
BOLTZMANN = 1.38e-23


@dataclass(frozen=True)
class PhysicalConstants:
    """Boltzmann constant and the energy-per-bit factor derived from it.

    Parameters
    ----------
    k_B : float
        Boltzmann constant in J/K.  Defaults to the rounded value
        ``1.38e-23`` used by the simulation preset, not CODATA.
    """

    k_B: float = BOLTZMANN

    def __post_init__(self):
        if not (math.isfinite(self.k_B) and self.k_B > 0):
            raise ValueError(f"k_B must be positive and finite, got {self.k_B!r}")

    @property
    def bit_factor(self) -> float:
        """Entropy carried by one bit of freedom, ``k_B * ln 2`` (J/K)."""
        return self.k_B * math.log(2.0)


DEFAULT_CONSTANTS = PhysicalConstants()
