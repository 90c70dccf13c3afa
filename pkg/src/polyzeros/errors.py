"""Exception types raised by the polyzeros library."""


class PolyzerosError(Exception):
    """Base class for every error raised by this package."""


class ZeroPolynomialError(PolyzerosError):
    """An operation received an identically zero (empty) polynomial."""


class DerivativeUnderflowError(PolyzerosError):
    """f'(lambda) vanished below the underflow guard; the quotient f/(-f')
    would overflow. The caller should perturb lambda."""


class HalleyDenominatorError(PolyzerosError):
    """The Halley denominator 1 + p(lambda) q(lambda) vanished."""


class OriginSeedError(PolyzerosError):
    """A test-polynomial iteration was seeded too close to the origin, where
    the lambda factor in the step makes zero a spurious fixed point. Shift
    the polynomial by lambda -> lambda + c and retry."""


class TaylorRejectionError(PolyzerosError):
    """The Taylor ladder rejected a candidate multiplicity.

    Attributes
    ----------
    failed_at_k : int
        First derivative order whose zero/nonzero condition failed.
    """

    def __init__(self, message, failed_at_k):
        super().__init__(message)
        self.failed_at_k = failed_at_k


class NoMultiplicityError(PolyzerosError):
    """No probe converged; the seed is too far from a root."""


class AmbiguousMultiplicityError(PolyzerosError):
    """Probes converged to distinct roots that cannot be told apart.

    Attributes
    ----------
    candidates : tuple of (int, complex)
        The (multiplicity, root) pairs in conflict.
    """

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = tuple(candidates)


class FlatSecantError(PolyzerosError):
    """The secant slope between the bracket endpoints is zero."""


class RealScanError(PolyzerosError):
    """A real-axis scan was requested for a polynomial with genuinely
    complex coefficients."""


class InterpolationValueError(PolyzerosError):
    """Interpolation values collided or clustered below the separation
    threshold.

    Attributes
    ----------
    indices : tuple of int
        Offending row indices.
    """

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class EvolutionCollisionError(InterpolationValueError):
    """Main values collided during an evolution step; the roots are
    clustered and multiplicity probing should be used instead."""


class RayleighDenominatorError(PolyzerosError):
    """S_2(lambda) vanished in a list iteration."""


class NotAnEigenvalueError(PolyzerosError):
    """No pivot fell below the tolerance: the value passed to eigenvector
    extraction is not an eigenvalue at this tolerance."""


class SampleConditioningError(PolyzerosError):
    """Determinant samples are unusable (non-finite or badly scaled); try a
    different sample radius."""


class ProblemFormatError(PolyzerosError):
    """A problem file failed to parse or carried inconsistent dimensions."""
