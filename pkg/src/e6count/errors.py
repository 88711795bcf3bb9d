"""Exception types shared across the package.

Rejections (expected, data-dependent outcomes) and invariant violations
(always implementation bugs) are kept in separate branches of the hierarchy
so callers can catch one without masking the other.
"""

from __future__ import annotations


class E6CountError(Exception):
    """Base class for every error raised by this package."""


class DomainError(E6CountError):
    """An argument lies outside the mathematical domain of the operation."""


class OutOfRegion(DomainError):
    """The xi-monomial height bound xi^(2,3,4,3,4,5,6) <= B fails."""


class Rejection(E6CountError):
    """A well-formed input that is legitimately not accepted."""


class RejectOffSurface(Rejection):
    """The integer quadruple does not satisfy x1*x2^2 + x2*x0^2 + x3^3 = 0."""


class RejectOnLine(Rejection):
    """The point lies on the excluded locus: the line x2 = x3 = 0, or the
    isolated point (0,0,1,0) (the only rational point of the open subset
    with two vanishing coordinates, excluded from all counts so that the
    four counted point families partition the total)."""


class NotOnTorsor(Rejection):
    """Torsor coordinates violate tauL*xiL^3*xi4^2*xi5 + tau2^2*xi2 + tau1^3*xi1^2*xi3 = 0."""


class NotT1(Rejection):
    """Coordinates fail the first coprimality scheme."""


class NotT2(Rejection):
    """Coordinates fail the second coprimality scheme."""


class NonUnitInput(DomainError):
    """A residue argument is not a unit modulo the given prime power."""


class PreconditionViolated(E6CountError):
    """A documented caller-side precondition does not hold."""


class InternalInvariantViolation(E6CountError):
    """A condition that valid inputs can never trigger; signals a bug here,
    never bad data."""
