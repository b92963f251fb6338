"""Exception types shared across the package."""


class CGFError(Exception):
    """Base class for all package errors."""


class ParseError(CGFError, ValueError):
    """Malformed operator-expression text.

    ``offset`` is the byte offset into the input where parsing failed and
    ``expected`` the set of token descriptions that would have been accepted.
    """

    def __init__(self, message, offset=0, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class DomainError(CGFError):
    """A numeric or algebraic precondition failed."""


class Degenerate(DomainError):
    """The su(1,1) disentangling match is singular at this time argument."""


class PoleOnPath(DomainError):
    """A closed-form denominator vanishes at the evaluation point."""


class SingularSystem(DomainError):
    """The truncated resolvent system has no unique solution."""


class SeriesDivergence(DomainError):
    """The geometric series in the inner time integral does not converge."""


class PoleHit(DomainError):
    """A series term sits on a pole of the energy denominator."""


class NonRealResult(DomainError):
    """An energy that must be real came out with a sizeable imaginary part."""


class QuadratureStall(DomainError):
    """The adaptive quadrature could not reach its tolerance within budget."""
