"""Exception types shared across the package."""


class LadderError(Exception):
    """Base class for all errors raised by susy_ladder."""


class ContextMismatch(LadderError):
    """Two exponential-polynomial values with different (a, b) contexts were mixed."""


class DomainError(LadderError):
    """A function was evaluated outside its domain (rho <= 0)."""


class DivergentIntegral(LadderError):
    """A closed-form integral has a non-integrable power or a non-decaying rate."""


class NoBoundStates(LadderError):
    """Bound-state quantities requested in a regime with no bound spectrum (p_z * k <= 0)."""


class DegenerateDenominator(LadderError):
    """Eigenvector component ratio is 0/0; the printed closed form does not apply."""


class SingularXi(LadderError):
    """The eigenvector matrix is singular at a sample radius."""


class NegativeRadicand(LadderError):
    """Relativistic energy radicand is negative; parameters are outside the physical regime."""


class GridTooCoarse(LadderError):
    """Refining the grid moved an eigenvalue by more than the stability threshold."""


class TailNotDecayed(LadderError):
    """Quadrature requested on a grid that does not capture the exponential tail."""
