"""Assembly of the conjectural leading constant and comparison reports.

The constant splits into an exact rational factor, an archimedean density
(computed in the region module by two independent routes), and an Euler
product over all primes.  The Euler product converges slowly term by term;
here the local factor is factored through zeta values so that the per-prime
corrections are O(p^-6) and the tail after the last prime used is bounded
explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .arith import main_term_sum, primes_up_to
from .errors import DomainError, InternalInvariantViolation
from .region import omega_inf_g3
from .surface import family_counts

_LAMBDA = (2, 3, 4, 3, 4, 5, 6)

# (1-x)^7 (1+7x+x^2) = prod_k (1-x^k)^{e_k} with integer e_k; the k <= 5
# part is pulled out as zeta factors and the remainder per prime is
# 1 + O(p^-6) (e_6 = 17325)
_ZETA_EXPONENTS = ((2, 27), (3, -105), (4, 540), (5, -3024))
# |log remaining factor| <= _TAIL_C / p^6 for p > 100 (geometric ratio of
# the e_k is about 6.855, so the k >= 7 terms add under 10 percent there)
_TAIL_C = 23000


@dataclass(frozen=True)
class ConstantReport:
    """All ingredients of the conjectural leading coefficient."""

    alpha: Fraction
    omega_inf: float
    euler_product: float
    euler_tail: float
    leading_coeff: float
    prime_limit: int

    def __post_init__(self) -> None:
        want = float(self.alpha) * self.omega_inf * self.euler_product
        if not math.isclose(self.leading_coeff, want, rel_tol=1e-12):
            raise InternalInvariantViolation(
                "leading_coeff must equal alpha * omega_inf * euler_product"
            )


def alpha_const() -> Fraction:
    """The exact rational factor 1/(6! * prod of the seven height
    exponents)."""
    return Fraction(1, math.factorial(6) * math.prod(_LAMBDA))


def omega_p(p: int) -> Fraction:
    """The p-adic density 1 + 7/p + 1/p^2, exactly."""
    return 1 + Fraction(7, p) + Fraction(1, p * p)


def _euler_factor_tail(p, exponents):
    """The per-prime factor left after dividing the k <= 5 zeta part out of
    (1-1/p)^7 omega_p; equals 1 + O(p^-6)."""
    x = 1 / mp.mpf(p)
    fac = (1 - x) ** 7 * (1 + 7 * x + x * x)
    for k, e in exponents:
        fac *= (1 - x**k) ** (-e)
    return fac


def euler_product(prime_limit: int) -> tuple[float, float]:
    """The full product over all primes of (1-1/p)^7 (1+7/p+1/p^2):
    zeta-factor part times the corrections for p <= prime_limit, plus an
    explicit bound on the error from the primes beyond the limit."""
    if prime_limit < 100:
        raise DomainError("euler_product expects prime_limit >= 100")
    with mp.workdps(30):
        value = mp.mpf(1)
        for k, e in _ZETA_EXPONENTS:
            value *= mp.zeta(k) ** (-e)
        for p in primes_up_to(prime_limit):
            value *= _euler_factor_tail(int(p), _ZETA_EXPONENTS)
        log_tail = mp.mpf(_TAIL_C) / (5 * mp.mpf(prime_limit) ** 5)
        tail = value * mp.expm1(log_tail)
        return float(value), float(tail)


@lru_cache(maxsize=None)
def leading_coefficient(
    prime_limit: int = 10**5, quad_tol: float = 1e-5
) -> ConstantReport:
    """The conjectural coefficient of B (log B)^6: exact rational factor
    times archimedean density times Euler product."""
    alpha = alpha_const()
    omega = omega_inf_g3(tol=quad_tol)
    value, tail = euler_product(prime_limit)
    return ConstantReport(
        alpha=alpha,
        omega_inf=omega,
        euler_product=value,
        euler_tail=tail,
        leading_coeff=float(alpha) * omega * value,
        prime_limit=prime_limit,
    )


@dataclass(frozen=True)
class FitRow:
    """One row of the count-versus-prediction table.

    Not an asymptotic test: the prediction keeps only the top coefficient
    of a degree-6 polynomial in log B, so the ratio drifts at desk scale
    and only its trend is meaningful."""

    B: int
    N: int
    predicted: float
    ratio: float
    e_count: int
    smooth_half_sum: float
    e_ratio: float


def fit_report(counts: list[tuple[int, int]]) -> list[FitRow]:
    """Compare counts N(B) against c B (log B)^6, and the all-nonzero
    stratum #E(B) against half the smooth main-term sum, one row per
    input pair."""
    if len(counts) < 2:
        raise DomainError("fit_report expects at least two (B, N) pairs")
    coeff = leading_coefficient().leading_coeff
    rows = []
    for B, N in sorted(counts):
        if B < 1:
            raise DomainError("fit_report expects B >= 1")
        predicted = coeff * B * math.log(B) ** 6
        e_count = (N - sum(family_counts(B))) // 2
        half_sum = main_term_sum(B) / 2.0
        rows.append(
            FitRow(
                B=B,
                N=N,
                predicted=predicted,
                ratio=N / predicted if predicted > 0 else math.inf,
                e_count=e_count,
                smooth_half_sum=half_sum,
                e_ratio=e_count / half_sum if half_sum > 0 else math.inf,
            )
        )
    return rows
