"""Exception types shared across the package.

Division by zero in a field raises the builtin ZeroDivisionError.
"""


class NotPrime(ValueError):
    """Characteristic is not a prime number."""


class Reducible(ValueError):
    """Supplied modulus polynomial is reducible."""


class DegreeMismatch(ValueError):
    """Polynomial degree does not match the declared field degree."""


class SpecMismatch(ValueError):
    """Operands belong to different field specs."""


class NotASubfield(ValueError):
    """The claimed base field does not embed into the extension."""


class SingularBasis(ValueError):
    """Supplied basis vectors are linearly dependent."""


class AmbientMismatch(ValueError):
    """Group elements live in different ambient groups."""


class TooLarge(ValueError):
    """Requested object exceeds a hard size budget."""


class CapExceeded(RuntimeError):
    """Enumeration or closure exceeded the configured cap."""

    def __init__(self, cap, message=None):
        self.cap = cap
        super().__init__(message or f"closure exceeded cap {cap}")


class NotAnAction(ValueError):
    """Element does not act on the given point domain."""


class OddAction(ValueError):
    """Base action contains an odd permutation, image leaves Alt(n)."""


class CubeTooLarge(ValueError):
    """Cube point count exceeds the supported budget."""


class SeparabilityViolated(ValueError):
    """Too many direct factors for the ring-generator recipe to separate."""


class TooLargeForDense(ValueError):
    """Graph too large for a dense eigensolve."""


class TooLargeForExact(ValueError):
    """Graph too large for exhaustive subset scans."""


class Disconnected(RuntimeError):
    """Operation requires a connected graph."""


class NoConvergence(RuntimeError):
    """Iterative eigensolver did not reach the residual tolerance."""

    def __init__(self, iterations, residual):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no convergence after {iterations} iterations (residual={residual:.3e})"
        )


class NotCovered(RuntimeError):
    """Product of the factor sequence never covered the target group."""

    def __init__(self, rounds, coverage):
        self.rounds = rounds
        self.coverage = coverage
        super().__init__(f"not covered after {rounds} rounds (coverage={coverage:.4f})")
