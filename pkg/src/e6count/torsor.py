"""Universal-torsor coordinates and the bijections onto rational points.

A TorsorPoint carries seven positive xi coordinates in the fixed index order
(1, 2, 3, L, 4, 5, 6), three tau coordinates, and a scheme tag.  Scheme T1 is
what the constructive lift from a rational point produces; scheme T2 is the
shape the enumerator counts.  The two exponent-shuffling maps between them
move prime powers between xi6 and the variables of the cubic monomial
tau1^3 xi1^2 xi3 without changing the image point on the surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import factorize, mobius
from .errors import (
    DomainError,
    InternalInvariantViolation,
    NotOnTorsor,
    NotT1,
    NotT2,
    PreconditionViolated,
)
from .monomials import HEIGHT, X0_MONO, X3_MONO, xi_pow
from .surface import SurfacePoint, canonicalize

_SCHEMES = ("T1", "T2")


@dataclass(frozen=True)
class TorsorPoint:
    """xi in index order (1,2,3,L,4,5,6); tau2 is positive on valid points
    but only shape is enforced at construction so that validate() can report
    semantic violations (including tau2 <= 0) instead of refusing to build."""

    xi: tuple[int, int, int, int, int, int, int]
    tau1: int
    tau2: int
    tauL: int
    scheme: str

    def __post_init__(self) -> None:
        if self.scheme not in _SCHEMES:
            raise DomainError(f"scheme must be one of {_SCHEMES}")
        if len(self.xi) != 7 or not all(
            isinstance(x, int) and x >= 1 for x in self.xi
        ):
            raise DomainError("xi must be 7 positive integers")
        for name in ("tau1", "tau2", "tauL"):
            if not isinstance(getattr(self, name), int):
                raise DomainError(f"{name} must be an integer")
        if self.tau1 == 0 or self.tauL == 0:
            raise DomainError("tau1 and tauL must be nonzero")

    def equation_lhs(self) -> int:
        x1, x2, x3, xL, x4, x5, _x6 = self.xi
        return (
            self.tauL * xL**3 * x4**2 * x5
            + self.tau2**2 * x2
            + self.tau1**3 * x1**2 * x3
        )


def validate(t: TorsorPoint) -> tuple[bool, list[str]]:
    """Check the torsor equation and every coprimality / squarefreeness
    condition of t.scheme; returns (ok, list of violated conditions)."""
    x1, x2, x3, xL, x4, x5, x6 = t.xi
    bad: list[str] = []
    if t.equation_lhs() != 0:
        bad.append(f"torsor equation fails: lhs = {t.equation_lhs()}")
    if t.tau2 <= 0:
        bad.append("tau2 must be a positive integer")
    if t.scheme == "T1":
        if mobius(x1 * x2 * x3 * x4 * x5) == 0:
            bad.append("xi1*xi2*xi3*xi4*xi5 is not squarefree")
        if math.gcd(t.tau1, x2 * xL * x4 * x5) != 1:
            bad.append("gcd(tau1, xi2*xiL*xi4*xi5) != 1")
        if math.gcd(t.tau2, x1 * x3) != 1:
            bad.append("gcd(tau2, xi1*xi3) != 1")
        if math.gcd(t.tauL, x4 * x5 * x6) != 1:
            bad.append("gcd(tauL, xi4*xi5*xi6) != 1")
    else:
        if mobius(x2 * x3 * x4 * x5) == 0:
            bad.append("xi2*xi3*xi4*xi5 is not squarefree")
        if math.gcd(x1, x2) != 1:
            bad.append("gcd(xi1, xi2) != 1")
        if math.gcd(t.tau1, x2 * x3 * xL * x4 * x5 * x6) != 1:
            bad.append("gcd(tau1, xi2*xi3*xiL*xi4*xi5*xi6) != 1")
        if math.gcd(t.tau2, x1 * x3) != 1:
            bad.append("gcd(tau2, xi1*xi3) != 1")
        if math.gcd(t.tauL, x4 * x5 * x6) != 1:
            bad.append("gcd(tauL, xi4*xi5*xi6) != 1")
        if math.gcd(x1, x2 * xL * x4 * x5) != 1:
            bad.append("gcd(xi1, xi2*xiL*xi4*xi5) != 1")
        if math.gcd(xL, x2 * x3) != 1:
            bad.append("gcd(xiL, xi2*xi3) != 1")
    return (not bad, bad)


def psi(t: TorsorPoint) -> SurfacePoint:
    """Substitute torsor coordinates into the four coordinate monomials and
    canonicalize (valid T1/T2 points are already primitive)."""
    if t.equation_lhs() != 0:
        raise NotOnTorsor(f"torsor equation fails: lhs = {t.equation_lhs()}")
    x0 = xi_pow(t.xi, X0_MONO) * t.tau2
    x1 = t.tauL
    x2 = xi_pow(t.xi, HEIGHT)
    x3 = xi_pow(t.xi, X3_MONO) * t.tau1
    return canonicalize(x0, x1, x2, x3)


def _exact_div(num: int, den: int, step: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise InternalInvariantViolation(f"inexact division at {step}: {num}/{den}")
    return q


def _split_square(n: int) -> tuple[int, int]:
    """n = root^2 * rest with rest squarefree; returns (root, rest)."""
    root = rest = 1
    for p, e in factorize(n):
        root *= p ** (e // 2)
        if e % 2:
            rest *= p
    return root, rest


def lift_T1(p: SurfacePoint) -> TorsorPoint:
    """Constructive lift of a rational point with all coordinates nonzero
    (x0 > 0) to scheme-T1 torsor coordinates.  Every division in the chain
    is exact when the input is such a point; exactness is asserted."""
    x0, x1, x2, x3 = p.coords()
    if x0 <= 0 or x1 == 0 or x3 == 0:
        raise PreconditionViolated(
            "lift_T1 expects all coordinates nonzero and x0 > 0"
        )
    # split x2 = y1 * y2^2 * y3^3 by exponent mod 3
    y1 = y2 = y3 = 1
    for q, e in factorize(x2):
        r = e % 3
        if r == 1:
            y1 *= q
        elif r == 2:
            y2 *= q
        y3 *= q ** (e // 3)
    z = _exact_div(x3, y1 * y2 * y3, "z = x3/(y1*y2*y3)")
    w = _exact_div(x0, y1 * y2, "w = x0/(y1*y2)")
    z = _exact_div(z, y2, "z' = z/y2")
    y3 = _exact_div(y3, y1, "y3' = y3/y1")
    a = math.gcd(y3, abs(z))
    y3 = _exact_div(y3, a, "y3'' = y3'/a")
    z = _exact_div(z, a, "z'' = z'/a")
    xi6, xi2 = _split_square(a)
    w = _exact_div(w, xi6**3 * xi2**2, "w' = w/(xi6^3*xi2^2)")
    xi5 = math.gcd(y3, w)
    xiL = _exact_div(y3, xi5, "xiL = y3''/xi5")
    w = _exact_div(w, xi5, "w'' = w'/xi5")
    xi1 = _exact_div(y2, xi5, "xi1 = y2/xi5")
    xi3 = math.gcd(w, y1)
    tau2 = _exact_div(w, xi3, "tau2 = w''/xi3")
    xi4 = _exact_div(y1, xi3, "xi4 = y1/xi3")
    tau1 = _exact_div(z, xi3, "tau1 = z''/xi3")
    return TorsorPoint((xi1, xi2, xi3, xiL, xi4, xi5, xi6), tau1, tau2, x1, "T1")


def _valuation(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _rebuild(n: int, p: int, old: int, new: int) -> int:
    return n // p**old * p**new


def phi_T1_to_T2(t: TorsorPoint) -> TorsorPoint:
    """Exponent shuffle T1 -> T2.  Per prime p, with (m1, m3, m6, n1) the
    exponents of p in (xi1, xi3, xi6, |tau1|) and k = min(m6, floor(n1/2)),
    exactly one of five patterns applies; primes dividing none of
    xi1*xi3*xi6 match the identity pattern and are skipped.  Signs of tau1
    and tauL are preserved; all other coordinates are untouched."""
    if t.scheme != "T1":
        raise NotT1("phi_T1_to_T2 expects a scheme-T1 point")
    ok, bad = validate(t)
    if not ok:
        raise NotT1("; ".join(bad))
    xi1, xi2, xi3, xiL, xi4, xi5, xi6 = t.xi
    a1 = abs(t.tau1)
    sign1 = 1 if t.tau1 > 0 else -1
    for p, _ in factorize(xi1 * xi3 * xi6):
        m1 = _valuation(xi1, p)
        m3 = _valuation(xi3, p)
        m6 = _valuation(xi6, p)
        n1 = _valuation(a1, p)
        k = min(m6, n1 // 2)
        odd_tail = n1 == 2 * k + 1 and m6 >= k + 1
        low6 = n1 > 2 * k and m6 == k
        cases = (
            odd_tail and m3 == 0,
            (odd_tail and m3 == 1) or (low6 and m3 == 1),
            (low6 and m3 == 0) or (n1 == 2 * k and m6 >= k),
        )
        if sum(cases) != 1:
            raise InternalInvariantViolation(
                f"case selection not unique at p={p}: {(m1, m3, m6, n1)}"
            )
        if cases[0]:
            new = (m1 + 3 * k + 1, 1, m6 - k - 1, n1 - 2 * k - 1)
        elif cases[1]:
            new = (m1 + 3 * k + 2, 0, m6 - k, n1 - 2 * k - 1)
        else:
            new = (m1 + 3 * k, m3, m6 - k, n1 - 2 * k)
        xi1 = _rebuild(xi1, p, m1, new[0])
        xi3 = _rebuild(xi3, p, m3, new[1])
        xi6 = _rebuild(xi6, p, m6, new[2])
        a1 = _rebuild(a1, p, n1, new[3])
    return TorsorPoint(
        (xi1, xi2, xi3, xiL, xi4, xi5, xi6), sign1 * a1, t.tau2, t.tauL, "T2"
    )


def phi_T2_to_T1(t: TorsorPoint) -> TorsorPoint:
    """Inverse exponent shuffle T2 -> T1.  Per prime p the case is read off
    (m1' mod 3, m3') with k = floor of the matching case pattern; primes not
    dividing xi1 match the identity pattern and are skipped."""
    if t.scheme != "T2":
        raise NotT2("phi_T2_to_T1 expects a scheme-T2 point")
    ok, bad = validate(t)
    if not ok:
        raise NotT2("; ".join(bad))
    xi1, xi2, xi3, xiL, xi4, xi5, xi6 = t.xi
    a1 = abs(t.tau1)
    sign1 = 1 if t.tau1 > 0 else -1
    for p, _ in factorize(xi1):
        m1 = _valuation(xi1, p)
        m3 = _valuation(xi3, p)
        m6 = _valuation(xi6, p)
        n1 = _valuation(a1, p)
        r = m1 % 3
        cases = (
            r in (1, 2) and m3 == 1,
            r == 2 and m3 == 0,
            (r == 1 and m3 == 0) or r == 0,
        )
        if sum(cases) != 1:
            raise InternalInvariantViolation(
                f"case selection not unique at p={p}: {(m1, m3, m6, n1)}"
            )
        if cases[0]:
            k = (m1 - 1) // 3
            new = (m1 - 3 * k - 1, 0, m6 + k + 1, n1 + 2 * k + 1)
        elif cases[1]:
            k = m1 // 3
            new = (0, 1, m6 + k, n1 + 2 * k + 1)
        else:
            k = m1 // 3
            new = (m1 - 3 * k, m3, m6 + k, n1 + 2 * k)
        xi1 = _rebuild(xi1, p, m1, new[0])
        xi3 = _rebuild(xi3, p, m3, new[1])
        xi6 = _rebuild(xi6, p, m6, new[2])
        a1 = _rebuild(a1, p, n1, new[3])
    return TorsorPoint(
        (xi1, xi2, xi3, xiL, xi4, xi5, xi6), sign1 * a1, t.tau2, t.tauL, "T1"
    )
