"""Number-theoretic kernels.

Multiplicative helpers (mu, phi-star, phi-prime), coprime-pair counts, cubic
exponential sums, exact congruence interval counts with the sawtooth
correction, the coprimality weight theta on 7-tuples, the main-term density
delta(n), local Euler factors of the associated Dirichlet series in closed
and brute-force form, and real zeta with Euler-Maclaurin tails.

All multiplicative helpers return exact Fractions so that downstream sums
are bit-stable; conversion to float happens once, at the outermost caller.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .monomials import HEIGHT, xi_pow

_TRIAL_LIMIT = 10**6


# ---------------------------------------------------------------------------
# factorization and multiplicative basics
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...) sorted by p.

    Deterministic trial division up to 1e6; anything surviving with a
    cofactor above 1e12 falls back to a general-purpose library
    factorization (unreachable at the integer sizes this package counts).
    """
    if n < 1:
        raise DomainError(f"factorize expects n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # wheel over numbers coprime to 30
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d <= _TRIAL_LIMIT:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        if n <= _TRIAL_LIMIT**2:
            out.append((n, 1))  # no factor <= 1e6, so n is prime
        else:
            from sympy import factorint

            out.extend(sorted(factorint(n).items()))
    out.sort()
    return tuple(out)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def mobius(n: int) -> int:
    """The Mobius function: (-1)^k on squarefree n with k prime factors, else 0."""
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def phi_star(n: int) -> Fraction:
    """prod_{p | n} (1 - 1/p), exactly."""
    out = Fraction(1)
    for p, _ in factorize(n):
        out *= Fraction(p - 1, p)
    return out


def phi_prime(n: int) -> Fraction:
    """prod_{p | n} (1 + 1/p)^{-1}, exactly."""
    out = Fraction(1)
    for p, _ in factorize(n):
        out *= Fraction(p, p + 1)
    return out


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as int64."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def mobius_sieve(limit: int) -> np.ndarray:
    """mu(0..limit) as an int8 array (mu(0) set to 0)."""
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    if limit == 0:
        return mu
    prod = np.ones(limit + 1, dtype=np.int64)
    for p in primes_up_to(math.isqrt(limit)):
        p = int(p)
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
        pk = p
        while pk <= limit:
            prod[pk::pk] *= p
            pk *= p
    # Numbers with a prime factor q > sqrt(limit) (at most one, and to the
    # first power) still need the flip for q; q is present exactly when the
    # small-prime part tracked in prod falls short of n.
    n = np.arange(limit + 1, dtype=np.int64)
    big_factor = prod != n
    big_factor[0] = False
    mu[big_factor] *= -1
    return mu


def Q_coprime(Y: int) -> int:
    """#{(a, b) in [1,Y]^2 : gcd(a,b) = 1}, by Mobius inversion."""
    if Y < 0:
        raise DomainError("Q_coprime expects Y >= 0")
    if Y == 0:
        return 0
    mu = mobius_sieve(Y)
    total = 0
    for d in range(1, Y + 1):
        m = int(mu[d])
        if m:
            total += m * (Y // d) ** 2
    return total


# ---------------------------------------------------------------------------
# cubic exponential sums
# ---------------------------------------------------------------------------


def T_q(a: int, b: int, q: int) -> complex:
    """Complete cubic sum sum_{x mod q} e_q(a x^3 + b x^2)."""
    if q < 1:
        raise DomainError("T_q expects q >= 1")
    x = np.arange(q, dtype=np.int64)
    e = (a % q * (x**3 % q) + b % q * (x**2 % q)) % q
    return complex(np.exp(2j * np.pi * e / q).sum())


def S_q(a: int, b: int, q: int) -> complex:
    """Restricted cubic sum over x mod q with gcd(x, q) = 1."""
    if q < 1:
        raise DomainError("S_q expects q >= 1")
    x = np.arange(q, dtype=np.int64)
    mask = np.gcd(x, q) == 1
    x = x[mask]
    e = (a % q * (x**3 % q) + b % q * (x**2 % q)) % q
    return complex(np.exp(2j * np.pi * e / q).sum())


# ---------------------------------------------------------------------------
# congruence interval counts and the sawtooth identity
# ---------------------------------------------------------------------------


def psi_sawtooth(t: float) -> float:
    """psi(t) = {t} - 1/2."""
    return (t - math.floor(t)) - 0.5


def count_in_class(t1: float, t2: float, a: int, q: int) -> int:
    """#{n in (t1, t2] : n == a (mod q)}, by exact floor arithmetic."""
    if q <= 0:
        raise DomainError("count_in_class expects q > 0")
    if t2 < t1:
        raise DomainError("count_in_class expects t2 >= t1")
    return math.floor((t2 - a) / q) - math.floor((t1 - a) / q)


def r_term(t1: float, t2: float, a: int, q: int) -> float:
    """psi((t1-a)/q) - psi((t2-a)/q): the sawtooth correction making
    count_in_class = (t2-t1)/q + r_term an identity."""
    if q <= 0:
        raise DomainError("r_term expects q > 0")
    return psi_sawtooth((t1 - a) / q) - psi_sawtooth((t2 - a) / q)


# ---------------------------------------------------------------------------
# the coprimality weight theta and the density delta(n)
# ---------------------------------------------------------------------------


def in_F(xi: tuple[int, ...]) -> bool:
    """Membership in the xi-support set: xi2*xi3*xi4*xi5 squarefree,
    gcd(xi1, xi2*xiL*xi4*xi5) = 1 and gcd(xiL, xi2*xi3) = 1."""
    x1, x2, x3, xL, x4, x5, _x6 = xi
    if mobius(x2 * x3 * x4 * x5) == 0:
        return False
    if math.gcd(x1, x2 * xL * x4 * x5) != 1:
        return False
    return math.gcd(xL, x2 * x3) == 1


def theta(xi: tuple[int, ...]) -> Fraction:
    """Coprimality density weight of a xi-tuple; zero off the support set."""
    if any(x < 1 for x in xi):
        raise DomainError("theta expects positive coordinates")
    if not in_F(xi):
        return Fraction(0)
    x1, x2, x3, xL, x4, x5, x6 = xi
    val = phi_star(x2 * x3 * xL * x4 * x5 * x6)
    val *= phi_star(x4 * x5 * x6)
    val *= phi_star(x1 * x3)
    val /= phi_star(math.gcd(x6, x1 * x2 * x3))
    return val


_H = HEIGHT.as_tuple()


@lru_cache(maxsize=1 << 16)
def _height_tails(n: int, i: int) -> tuple[tuple[int, ...], ...]:
    """All tuples (xi_i, ..., xi_6) with prod_j xi_j^{H_j} = n, fixed order."""
    if i == 7:
        return ((),) if n == 1 else ()
    e = _H[i]
    out: list[tuple[int, ...]] = []
    x = 1
    while x**e <= n:
        if n % (x**e) == 0:
            for tail in _height_tails(n // x**e, i + 1):
                out.append((x,) + tail)
        x += 1
    return tuple(out)


def delta(n: int) -> float:
    """delta(n) = n^{1/6} * sum over height-monomial decompositions of n of
    theta(xi) / prod(xi)."""
    if n < 1:
        raise DomainError("delta expects n >= 1")
    acc = Fraction(0)
    for xi in _height_tails(n, 0):
        t = theta(xi)
        if t:
            acc += t / math.prod(xi)
    return float(n) ** (1 / 6) * float(acc)


def delta_weights(B: int) -> dict[int, Fraction]:
    """Exact weights W[n] = sum_{xi: height-monomial = n} theta(xi)/prod(xi)
    for every n <= B with at least one decomposition of nonzero weight, found
    by a single sweep over xi-tuples (delta(n) = n^{1/6} W[n])."""
    if B < 1:
        raise DomainError("delta_weights expects B >= 1")
    weights: dict[int, Fraction] = {}

    def rec(i: int, prod_h: int, xi: list[int]) -> None:
        if i == 7:
            t = theta(tuple(xi))
            if t:
                weights[prod_h] = weights.get(prod_h, Fraction(0)) + t / math.prod(xi)
            return
        e = _H[i]
        x = 1
        while prod_h * x**e <= B:
            xi.append(x)
            rec(i + 1, prod_h * x**e, xi)
            xi.pop()
            x += 1

    rec(0, 1, [])
    return weights


def main_term_sum(B: int) -> float:
    """2 B^{5/6} sum_{n <= B} delta(n) g3((n/B)^{1/2}): the smooth main term
    of the all-coordinates-nonzero stratum times two, for side-by-side
    empirical comparison with 2 #E(B) (their difference is a linear-order
    correction plus lower-order terms).  Not an asymptotic claim at desk
    scale.

    The g3 argument is the alpha parameter of the block with height
    monomial n, i.e. (n/B)^{1/2}: the per-block main term is
    theta(xi) * X1 * X2 / q0 * g3(alpha), and X1*X2/q0 = B^{5/6} n^{1/6} /
    prod(xi), which is how delta(n) absorbs everything but g3(alpha)."""
    from .region import g3

    if B < 1:
        raise DomainError("main_term_sum expects B >= 1")
    total = 0.0
    for n, w in sorted(delta_weights(B).items()):
        total += float(n) ** (1 / 6) * float(w) * g3(math.sqrt(n / B))
    return 2.0 * float(B) ** (5 / 6) * total


# ---------------------------------------------------------------------------
# local Euler factors of the xi-sum Dirichlet series
# ---------------------------------------------------------------------------


def local_factor_F(p: int, s: float) -> float:
    """Closed form of the local factor at p of the Dirichlet series
    sum_xi theta(xi) n(xi)^{-s} / prod(xi), where n(xi) is the height
    monomial.  Valid for s > -1/6 (all denominators positive)."""
    if s <= -1 / 6:
        raise DomainError("local factor defined for s > -1/6")
    t2 = float(p) ** (2 * s + 1)
    t3 = float(p) ** (3 * s + 1)
    t4 = float(p) ** (4 * s + 1)
    t5 = float(p) ** (5 * s + 1)
    t6 = float(p) ** (6 * s + 1)
    om = 1.0 - 1.0 / p
    bracket = (
        t2 / (t2 - 1.0)
        + t2 * t6 / (t4 * (t2 - 1.0))
        + t6 / (om * t3)
        + 1.0 / (t3 - 1.0)
        + t3 * t6 / (t4 * (t3 - 1.0))
        + t3 * t6 / (t5 * (t3 - 1.0))
    )
    return 1.0 + om * om / (t6 - 1.0) * bracket + om / (t2 - 1.0) + om / (t3 - 1.0)


def local_factor_brute(p: int, s: float, cap: int) -> float:
    """Truncated direct summation of the same local factor: all xi-tuples
    supported on powers of p with exponents <= cap.  Exponents of
    xi2,xi3,xi4,xi5 are looped only over {0,1} because any higher power
    makes xi2*xi3*xi4*xi5 non-squarefree, hence theta = 0 by definition."""
    if s <= -1 / 6:
        raise DomainError("local factor defined for s > -1/6")
    if cap < 1:
        raise DomainError("cap must be >= 1")
    logp = math.log(p)
    total = 0.0
    for e1 in range(cap + 1):
        for e2 in range(2):
            for e3 in range(2):
                for eL in range(cap + 1):
                    for e4 in range(2):
                        for e5 in range(2):
                            xi_small = (p**e1, p**e2, p**e3, p**eL, p**e4, p**e5, 1)
                            if not in_F(xi_small):
                                continue
                            for e6 in range(cap + 1):
                                xi = xi_small[:6] + (p**e6,)
                                t = theta(xi)
                                if not t:
                                    continue
                                exps = (e1, e2, e3, eL, e4, e5, e6)
                                w = sum(e * (h * s + 1) for e, h in zip(exps, _H))
                                total += float(t) * math.exp(-logp * w)
    return total


# ---------------------------------------------------------------------------
# real zeta and the two auxiliary zeta products
# ---------------------------------------------------------------------------

# B_{2k} / (2k)! for k = 1..7
_EM_COEFFS = (
    Fraction(1, 12),
    Fraction(-1, 720),
    Fraction(1, 30240),
    Fraction(-1, 1209600),
    Fraction(1, 47900160),
    Fraction(-691, 1307674368000),
    Fraction(1, 74724249600),
)


def zeta_real(s: float) -> float:
    """zeta(s) for real s > 1: Dirichlet partial sum to N = 32 plus the
    Euler-Maclaurin tail, absolute error far below 1e-10 on (1, inf)."""
    if s <= 1.0 + 1e-12:
        raise DomainError("zeta_real expects real s > 1")
    N = 32
    total = sum(n ** (-s) for n in range(1, N))
    total += N ** (1.0 - s) / (s - 1.0)
    total += 0.5 * N ** (-s)
    # correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    poch = s
    power = N ** (-s - 1.0)
    for k, coeff in enumerate(_EM_COEFFS, start=1):
        total += float(coeff) * poch * power
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        power /= N * N
    return total


_E1_EXPONENTS = ((2, 1), (3, 2), (4, 2), (5, 1), (6, 1))


def E1(s: float) -> float:
    """zeta(2s+1) zeta(3s+1)^2 zeta(4s+1)^2 zeta(5s+1) zeta(6s+1), the
    dominant zeta block of the xi-sum Dirichlet series in the shifted
    variable (every argument must exceed 1, i.e. s > 0)."""
    out = 1.0
    for lam, e in _E1_EXPONENTS:
        out *= zeta_real(lam * s + 1) ** e
    return out


def E2(s: float) -> float:
    """zeta(13s+3)^5 zeta(14s+3)^2 / (zeta(7s+2)^4 zeta(8s+2)^4
    zeta(9s+2)^2 zeta(10s+2) zeta(19s+4)^2): the bounded correction block,
    in the same shifted variable."""
    num = zeta_real(13 * s + 3) ** 5 * zeta_real(14 * s + 3) ** 2
    den = (
        zeta_real(7 * s + 2) ** 4
        * zeta_real(8 * s + 2) ** 4
        * zeta_real(9 * s + 2) ** 2
        * zeta_real(10 * s + 2)
        * zeta_real(19 * s + 4) ** 2
    )
    return num / den
