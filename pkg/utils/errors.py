"""Exceptions raised by the spectrum pipeline.

The CLI maps each family to an exit code:
convergence/bracket failures -> 1, malformed input -> 2, domain errors -> 3.
"""


class DipoleSpectrumError(Exception):
    """Base class for every error raised by this project"""


class ConvergenceError(DipoleSpectrumError):
    """Truncation doubling stopped before successive estimates agreed"""

    def __init__(self, message: str, previous: float, last: float):
        super().__init__(f"{message} (previous={previous!r}, last={last!r})")
        self.previous = previous
        self.last = last


class BracketNotFoundError(DipoleSpectrumError):
    """A root or eigenvalue bracket could not be established"""


class DomainError(DipoleSpectrumError):
    """Request lies outside the physical domain"""


class NoBoundStateError(DomainError):
    """E_theta > 0: the dipole moment exceeds the critical value for this m"""

    def __init__(self, m: int, D: float, E_theta: float):
        super().__init__(
            f"no bound state for m={m} at D={D:g} "
            f"(E_theta={E_theta:.6g} > 0, dipole above critical value)"
        )
        self.m = m
        self.D = D
        self.E_theta = E_theta


class SingularPointError(DomainError):
    """Potential evaluated on top of a charge or at the origin"""


class ZeroPotentialError(DomainError):
    """Relative error requested where the exact potential vanishes"""


class ClusterFormatError(DipoleSpectrumError, ValueError):
    """Cluster JSON does not follow the expected schema"""
