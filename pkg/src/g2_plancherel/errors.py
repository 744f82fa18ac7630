"""
Exception hierarchy for g2-plancherel.

Every domain failure derives from ``G2PlancherelError`` so callers (the CLI in
particular) can catch the whole family, while still subclassing the built-in
type that best describes it:

- ValueError subclasses: bad inputs (poles, resonances, walls, regions)
- RuntimeError subclasses: numerical results that failed a check
"""

from __future__ import annotations


class G2PlancherelError(Exception):
    """Base mixin for all package errors."""


# ==================== INPUT ERRORS ====================

class UnknownRootSystemError(G2PlancherelError, ValueError):
    """Raised when a root-system kind is not one of the supported tags."""


class NotARootError(G2PlancherelError, ValueError):
    """Raised when a vector passed as a root is not in the root system."""


class PoleError(G2PlancherelError, ValueError):
    """
    Raised when log-Gamma is requested too close to a pole.

    Attributes:
        pole: The nonpositive integer closest to the evaluation point.
    """

    def __init__(self, z: complex, pole: int):
        self.z = z
        self.pole = pole
        super().__init__(f"Gamma has a pole at {pole}; got z={z!r}")


class PoleMismatchError(G2PlancherelError, ValueError):
    """Raised when a Gamma quotient has no finite limit and one was required."""


class ResonanceError(G2PlancherelError, ValueError):
    """Raised when λ lies on (or within tolerance of) a resonance hyperplane."""


class ChamberError(G2PlancherelError, ValueError):
    """Raised for points on walls or outside the required Weyl chamber."""


class SingularRegionError(G2PlancherelError, ValueError):
    """Raised when a contour shift would cross singularities of c(-λ)^{-1}."""


# ==================== NUMERICAL FAILURES ====================

class TailBoundError(G2PlancherelError, RuntimeError):
    """Raised when the series truncation bound exceeds the requested tolerance."""


class QuadratureError(G2PlancherelError, RuntimeError):
    """Raised when a quadrature error or truncation estimate misses its target."""


class ToleranceError(G2PlancherelError, RuntimeError):
    """Raised when two independent evaluations of an identity disagree."""


class ProviderError(G2PlancherelError, RuntimeError):
    """Raised when spherical values are needed but no provider can supply them."""


class InfeasibilityViolation(G2PlancherelError, RuntimeError):
    """
    Raised when the discrete-series lattice search finds a feasible point.

    A feasible point would contradict the absence of discrete series with the
    K-type π₂, so it is reported rather than swallowed.
    """

    def __init__(self, chamber: int, coefficients: tuple[int, int]):
        self.chamber = chamber
        self.coefficients = coefficients
        super().__init__(
            f"feasible point c={coefficients} found in chamber {chamber}"
        )
