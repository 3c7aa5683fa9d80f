"""Exception hierarchy shared by all modules."""


class CosmicDiracError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(CosmicDiracError, ValueError):
    """An input parameter is outside its admissible range."""


class DomainError(CosmicDiracError, ValueError):
    """A derived quantity would leave its real domain (e.g. E**2 < k**2)."""


class DegenerateTransformError(CosmicDiracError, ValueError):
    """The coupling-diagonalization matrix is singular (gamma*rho == j)."""


class StateError(CosmicDiracError, ValueError):
    """A wavefunction was requested for an inadmissible energy level."""


class NormalizationUndefinedError(CosmicDiracError, ValueError):
    """The relativistic norm needs 1 + lambda**2, which diverges at k = 0."""


class NoBoundStateError(CosmicDiracError, ValueError):
    """The Coulomb coupling does not bind (alpha <= 0 or no negative eigenvalue)."""


class NumericError(CosmicDiracError, ArithmeticError):
    """Non-finite samples met during a numerical procedure."""


class DiscretizationError(CosmicDiracError, ValueError):
    """A grid is too coarse or not of a supported spacing."""


class UnsupportedBranchError(CosmicDiracError, ValueError):
    """A closed form was requested outside the domain where it is valid."""
