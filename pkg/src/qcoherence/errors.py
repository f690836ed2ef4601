"""Exception types raised across the package."""


class QCoherenceError(Exception):
    """Base class for all package errors."""


class NotHermitian(QCoherenceError, ValueError):
    pass


class ConvergenceFailure(QCoherenceError, RuntimeError):
    pass


class InvalidP(QCoherenceError, ValueError):
    pass


class IndexOutOfRange(QCoherenceError, IndexError):
    pass


class NotFinite(QCoherenceError, ValueError):
    pass


class NotSquare(QCoherenceError, ValueError):
    pass


class DimensionMismatch(QCoherenceError, ValueError):
    pass


class NotAState(QCoherenceError, ValueError):
    """Input fails one of the density-matrix invariants."""


class NotPowerOfTwo(QCoherenceError, ValueError):
    pass


class InvalidRank(QCoherenceError, ValueError):
    pass


class BlochOutOfBall(QCoherenceError, ValueError):
    pass


class SupportViolation(QCoherenceError, ArithmeticError):
    """The quantity is +inf because supp(rho) is not contained in supp(sigma)."""


class InvalidAlpha(QCoherenceError, ValueError):
    pass


class NotPSD(QCoherenceError, ValueError):
    pass


class ZeroTrace(QCoherenceError, ValueError):
    pass


class BasisNotOrthonormal(QCoherenceError, ValueError):
    pass


class ParameterOutOfRange(QCoherenceError, ValueError):
    pass


class NotTracePreserving(QCoherenceError, ValueError):
    pass


class NotUnital(QCoherenceError, ValueError):
    pass


class AngleOutOfRange(QCoherenceError, ValueError):
    pass


class GridTooLarge(QCoherenceError, ValueError):
    """Tensor quadrature would need more evaluations than allowed."""
