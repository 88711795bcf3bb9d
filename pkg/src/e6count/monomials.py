"""Exponent vectors for monomials in the seven torsor coordinates.

Torsor coordinate tuples are ordered (xi1, xi2, xi3, xiL, xi4, xi5, xi6)
throughout the package; an exponent vector pairs with such a tuple to form
the monomial prod xi_i^{n_i}.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ExponentVector:
    """Non-negative exponents for a monomial in (xi1,xi2,xi3,xiL,xi4,xi5,xi6)."""

    n1: int
    n2: int
    n3: int
    nL: int
    n4: int
    n5: int
    n6: int

    def __post_init__(self) -> None:
        if any(n < 0 for n in self.as_tuple()):
            raise ValueError("exponents must be non-negative")

    def as_tuple(self) -> tuple[int, int, int, int, int, int, int]:
        return (self.n1, self.n2, self.n3, self.nL, self.n4, self.n5, self.n6)


def xi_pow(xi: tuple[int, ...], exps: ExponentVector | tuple[int, ...]) -> int:
    """The monomial prod xi_i^{n_i}, exactly, in arbitrary precision."""
    ns = exps.as_tuple() if isinstance(exps, ExponentVector) else exps
    out = 1
    for base, n in zip(xi, ns):
        if n:
            out *= base**n
    return out


# The four substitution monomials and the height monomial.  x1 = tauL needs
# no xi-monomial.  HEIGHT doubles as the x2 coordinate itself.
X0_MONO = ExponentVector(1, 2, 2, 0, 1, 2, 3)
HEIGHT = ExponentVector(2, 3, 4, 3, 4, 5, 6)
X3_MONO = ExponentVector(2, 2, 3, 1, 2, 3, 4)
# Coefficient monomials of the torsor equation tauL*Q0 + tau2^2*xi2 + tau1^3*CUBIC = 0.
Q0_MONO = ExponentVector(0, 0, 0, 3, 2, 1, 0)
CUBIC_MONO = ExponentVector(2, 0, 1, 0, 0, 0, 0)
