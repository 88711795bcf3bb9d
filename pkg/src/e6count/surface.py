"""The cubic surface x1*x2^2 + x2*x0^2 + x3^3 = 0: point primitives, the
exact naive counters used as ground-truth oracles, the three degenerate
point families with exact closed-form counts, and projective point counts
mod p.

Counting conventions.  Points are counted as canonical primitive integer
quadruples with x2 > 0 (every counted point has x2 != 0, because x2 = 0 on
the surface forces x3 = 0, which is the excluded line x2 = x3 = 0).  The
excluded locus is that line together with the single point (0,0,1,0): the
one rational point with two vanishing coordinates, which belongs to none of
the four counted classes (all-nonzero stratum, x3 = 0 conic, x0 = 0, x1 = 0)
and is left out so that those classes partition every counted point.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import product

import numpy as np

from .arith import Q_coprime, factorize
from .errors import (
    DomainError,
    InternalInvariantViolation,
    RejectOffSurface,
    RejectOnLine,
)

_METHODS = ("naive", "torsor-direct", "torsor-residue")

# int64 grids hold values up to ~2 B^3; keep well inside 2^63.
_NAIVE_LIMIT = 200_000


def eval_surface(x0: int, x1: int, x2: int, x3: int) -> int:
    """x1*x2^2 + x2*x0^2 + x3^3, exactly (arbitrary precision)."""
    return x1 * x2 * x2 + x2 * x0 * x0 + x3**3


def icbrt(n: int) -> int:
    """floor(n^(1/3)) for n >= 0, in pure integer arithmetic."""
    if n < 0:
        raise DomainError("icbrt expects n >= 0")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


@dataclass(frozen=True)
class SurfacePoint:
    """Canonical primitive point: on the surface, gcd 1, x2 > 0."""

    x0: int
    x1: int
    x2: int
    x3: int

    def __post_init__(self) -> None:
        if eval_surface(self.x0, self.x1, self.x2, self.x3) != 0:
            raise DomainError(f"{self.coords()} is not on the surface")
        if self.x2 <= 0:
            raise DomainError(f"{self.coords()} violates the sign convention x2 > 0")
        if math.gcd(self.x0, self.x1, self.x2, self.x3) != 1:
            raise DomainError(f"{self.coords()} is not primitive")

    def coords(self) -> tuple[int, int, int, int]:
        return (self.x0, self.x1, self.x2, self.x3)

    def height(self) -> int:
        return max(abs(c) for c in self.coords())


def canonicalize(x0: int, x1: int, x2: int, x3: int) -> SurfacePoint:
    """Reduce to the canonical representative: divide by the gcd, flip the
    sign so x2 > 0.  Rejects points off the surface and points on the
    excluded locus (the line x2 = x3 = 0 and the point (0,0,1,0))."""
    if x0 == x1 == x2 == x3 == 0:
        raise DomainError("the zero quadruple is not a projective point")
    if eval_surface(x0, x1, x2, x3) != 0:
        raise RejectOffSurface(f"({x0},{x1},{x2},{x3}) is not on the surface")
    g = math.gcd(x0, x1, x2, x3)
    x0, x1, x2, x3 = x0 // g, x1 // g, x2 // g, x3 // g
    if x2 == 0:
        # on the surface x2 = 0 forces x3^3 = 0
        raise RejectOnLine(f"({x0},{x1},{x2},{x3}) lies on the line x2 = x3 = 0")
    if x2 < 0:
        x0, x1, x2, x3 = -x0, -x1, -x2, -x3
    if x0 == 0 and x3 == 0:
        raise RejectOnLine("(0,0,1,0) is on the excluded locus by convention")
    return SurfacePoint(x0, x1, x2, x3)


def height(p: SurfacePoint) -> int:
    return p.height()


@dataclass(frozen=True)
class CountReport:
    """Exact count of canonical points of height <= B, split by class."""

    B: int
    e_count: int
    conic_count: int
    x0zero_count: int
    x1zero_count: int
    total: int
    method: str
    elapsed: float

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise DomainError(f"unknown method {self.method!r}")
        if self.total != 2 * self.e_count + self.conic_count + self.x0zero_count + self.x1zero_count:
            raise DomainError("class counts do not add up to the total")


def enumerate_E(B: int):
    """Yield the canonical points with all four coordinates nonzero, x0 > 0
    and height <= B, by the literal scan: x2 in [1,B], x0 in [1,B], x3 over
    the exact integer cube-root interval with |x2*x0^2 + x3^3| <= B*x2^2,
    keeping x3 when x2^2 divides that value and the resulting x1 is a
    nonzero integer with |x1| <= B and the quadruple is primitive.

    Only the x3-interval test is vectorized; the loop structure and every
    acceptance decision are exact integer arithmetic.
    """
    if B < 1:
        raise DomainError("enumerate_E expects B >= 1")
    if B > _NAIVE_LIMIT:
        raise DomainError(f"naive scan supports B <= {_NAIVE_LIMIT}")
    for x2 in range(1, B + 1):
        q = x2 * x2
        bound = B * q
        for x0 in range(1, B + 1):
            base = x2 * x0 * x0
            # x3^3 in [-(bound+base), bound-base], |x3| <= B, x3 != 0
            lo = max(-B, -icbrt(bound + base))
            if bound >= base:
                hi = min(B, icbrt(bound - base))
            else:
                c = icbrt(base - bound)
                if c * c * c != base - bound:
                    c += 1
                hi = -c
            if hi < lo:
                continue
            arr = np.arange(lo, hi + 1, dtype=np.int64)
            vals = base + arr**3
            for x3 in arr[vals % q == 0]:
                x3 = int(x3)
                if x3 == 0:
                    continue
                v = base + x3 * x3 * x3
                x1 = -(v // q)
                if x1 == 0 or abs(x1) > B:
                    continue
                if math.gcd(x0, x1, x2, x3) != 1:
                    continue
                yield SurfacePoint(x0, x1, x2, x3)


def _naive_class_counts(B: int) -> tuple[int, int, int, int]:
    """Core of count_naive: (e, conic, x0zero, x1zero) class counts.

    Full enumeration over canonical representatives: x2 in [1,B], x0 in
    [0,B] (negative x0 accounted by weight 2, since the surface form is even
    in x0 and both signs give canonical points with identical x1, x2, x3),
    x3 over both signs in the exact cube-root interval.  For each x2 the x3
    candidates with x2^2 | x2*x0^2 + x3^3 are located by matching residues
    of x3^3 and -x2*x0^2 mod x2^2 (argsort/searchsorted); every located
    candidate is then re-verified by exact integer divisibility, so the
    residue index is an index, never an arbiter.
    """
    e = conic = x0zero = x1zero = 0
    for x2 in range(1, B + 1):
        q = x2 * x2
        X3 = min(B, icbrt(B * q + x2 * B * B))
        cubes = np.arange(-X3, X3 + 1, dtype=np.int64) ** 3
        r3 = cubes % q
        order = np.argsort(r3, kind="stable")
        r3s = r3[order]
        x0s = np.arange(0, B + 1, dtype=np.int64)
        targets = (q - (x2 * x0s * x0s) % q) % q
        lo = np.searchsorted(r3s, targets, side="left")
        hi = np.searchsorted(r3s, targets, side="right")
        for i in np.nonzero(hi > lo)[0]:
            x0 = int(x0s[i])
            base = x2 * x0 * x0
            for j in range(int(lo[i]), int(hi[i])):
                x3 = int(order[j]) - X3
                v = base + x3 * x3 * x3
                if v % q:
                    raise InternalInvariantViolation(
                        "residue index produced a non-divisible candidate"
                    )
                x1 = -(v // q)
                if abs(x1) > B:
                    continue
                if x0 == 0 and x3 == 0:
                    continue  # excluded locus: the point (0,0,1,0)
                if math.gcd(x0, x1, x2, x3) != 1:
                    continue
                if x3 == 0:
                    conic += 2  # x0 != 0 here, both signs of x0
                elif x0 == 0:
                    x0zero += 1
                elif x1 == 0:
                    x1zero += 2
                else:
                    e += 1  # x0 > 0: exactly the E(B) representative
    return e, conic, x0zero, x1zero


def count_naive(B: int) -> CountReport:
    """Exact N(B): every canonical point of height <= B off the excluded
    locus, counted by full enumeration (ground-truth oracle)."""
    if B < 1:
        raise DomainError("count_naive expects B >= 1")
    if B > _NAIVE_LIMIT:
        raise DomainError(f"naive scan supports B <= {_NAIVE_LIMIT}")
    t0 = time.perf_counter()
    e, conic, x0zero, x1zero = _naive_class_counts(B)
    total = 2 * e + conic + x0zero + x1zero
    return CountReport(
        B=B,
        e_count=e,
        conic_count=conic,
        x0zero_count=x0zero,
        x1zero_count=x1zero,
        total=total,
        method="naive",
        elapsed=time.perf_counter() - t0,
    )


def family_counts(B: int) -> tuple[int, int, int]:
    """Exact counts of the three degenerate families of height <= B.

    conic (x3 = 0): points (+-a*b, -a^2, b^2, 0), coprime a, b >= 1; height
    <= B iff a, b <= floor(sqrt(B)), giving 2*Q(floor(sqrt(B))).
    x0 = 0: points (0, a^3, b^3, -a*b^2), a nonzero, b >= 1 coprime; height
    <= B iff |a|, b <= floor(B^(1/3)), giving 2*Q(floor(B^(1/3))).
    x1 = 0: points (+-a^3, 0, b^3, -a^2*b), same count 2*Q(floor(B^(1/3))).
    """
    if B < 1:
        raise DomainError("family_counts expects B >= 1")
    conic = 2 * Q_coprime(math.isqrt(B))
    cube = 2 * Q_coprime(icbrt(B))
    return conic, cube, cube


def count_mod_p(p: int) -> int:
    """Number of projective points of the surface over F_p, by brute force
    over normalized representatives (first nonzero coordinate = 1)."""
    fac = factorize(p)
    if len(fac) != 1 or fac[0][1] != 1:
        raise DomainError(f"{p} is not prime")

    def f(x0: int, x1: int, x2: int, x3: int) -> int:
        return (x1 * x2 * x2 + x2 * x0 * x0 + x3 * x3 * x3) % p

    count = 0
    for x1, x2, x3 in product(range(p), repeat=3):
        if f(1, x1, x2, x3) == 0:
            count += 1
    for x2, x3 in product(range(p), repeat=2):
        if f(0, 1, x2, x3) == 0:
            count += 1
    for x3 in range(p):
        if f(0, 0, 1, x3) == 0:
            count += 1
    if f(0, 0, 0, 1) == 0:
        count += 1
    return count
