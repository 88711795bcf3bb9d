"""Real height-region geometry: the one-variable boundary function g1, the
slice-length functions g21/g22/g2, their u-integral g3, the region
parameters (alpha, X1, X2) that bound the torsor-coordinate loops, and two
independent computations of the archimedean density factor.

The underlying region lives in (t, u, v) space:

    |t^2 + u^3| <= 1,   0 <= t*v^3 <= 1,   0 <= v <= 1,   |u*v^4| <= 1.

After rescaling a slice, the t-measure at fixed (u, v) with constraint
0 <= t*v <= 1 has the closed form g2(u, v), supported on g1(v) <= u <= 1;
g3(v) integrates it over u, and g3(v^3) is exactly the area of the region's
section at height v.  The archimedean factor is 12 times the volume,
computed once as 4*int_0^1 v^(-2/3) g3(v) dv (= 12*int_0^1 g3(v^3) dv) and
once directly from the 3-D region with a different slicing order, so each
value is an oracle for the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .errors import DomainError, OutOfRegion
from .monomials import HEIGHT, Q0_MONO, xi_pow

# ---------------------------------------------------------------------------
# slice-length closed forms
# ---------------------------------------------------------------------------


def g1(v: float) -> float:
    """-(min{1/v^4, 1 + 1/v^2})^(1/3): lower u-edge of the g2 support.

    Defined for 0 < v <= 1; v = 0 returns -inf (the support is unbounded
    below there and callers must handle it)."""
    if v < 0.0 or v > 1.0:
        raise DomainError("g1 expects v in [0,1]")
    if v == 0.0:
        return -math.inf
    return -min(1.0 / v**4, 1.0 + 1.0 / v**2) ** (1.0 / 3.0)


def g21(u: float, v: float | None = None) -> float:
    """sqrt(-1-u^3) for u <= -1, else 0 (v is unused, kept for symmetry)."""
    return math.sqrt(max(0.0, -1.0 - u**3))


def g22(u: float, v: float) -> float:
    """sqrt(1-u^3) when -(1/v^2-1)^(1/3) <= u <= 1, else 1/v; equivalently
    sqrt(min{1/v^2, 1-u^3}) for u <= 1."""
    if v < 0.0 or v > 1.0:
        raise DomainError("g22 expects v in [0,1]")
    if u > 1.0:
        raise DomainError("g22 expects u <= 1")
    hi2 = 1.0 - u**3
    if v > 0.0:
        hi2 = min(hi2, 1.0 / (v * v))
    return math.sqrt(hi2)


def g2(u: float, v: float) -> float:
    """Length of {t : 0 <= t*v <= 1, |t^2 + u^3| <= 1} for (u, v) in the
    support {g1(v) <= u <= 1, 0 <= v <= 1}; zero outside by definition.

    On the support the value is sqrt(min{1/v^2, 1-u^3}) - sqrt(max{0, -1-u^3}).
    The support boundary u = g1(v) is included; when v^2 + v^4 <= 1 (the
    branch where g1 is cut by the constraint |t^2+u^3| <= 1 itself) the
    boundary value vanishes identically and is returned as an exact 0.0, so
    the vanishing g2(g1(v), v) = 0 holds without floating-point noise."""
    if v < 0.0 or v > 1.0 or u > 1.0:
        return 0.0
    if v == 0.0:
        gl = -math.inf
    else:
        gl = g1(v)
    vv = v * v
    if vv * (vv + 1.0) <= 1.0:
        # g1(v) = -(1+1/v^2)^(1/3): the slice length is exactly 0 at the edge
        if u <= gl:
            return 0.0
    else:
        # g1(v) = -v^(-4/3): the edge carries a positive slice length
        if u < gl:
            return 0.0
    u3 = u * u * u
    lo2 = max(0.0, -1.0 - u3)
    cap2 = math.inf if v == 0.0 else 1.0 / vv
    hi2 = min(1.0 - u3, cap2)
    if hi2 <= lo2:
        return 0.0
    if lo2 == 0.0:
        return math.sqrt(hi2)
    # difference of square roots rationalized; the numerator is formed
    # without cancellation (it is exactly 2 on the sqrt branch)
    diff = 2.0 if 1.0 - u3 <= cap2 else cap2 + 1.0 + u3
    return diff / (math.sqrt(hi2) + math.sqrt(lo2))


def _solve_increasing(c: float, target: float) -> float:
    """The t >= 0 with t^2 + c = target, located by bisection only.

    The predicate is arranged as t^2 < target - c: the subtraction of the
    two exact inputs is correctly rounded, so the comparison stays
    resolvable even where t^2 is far below the rounding grain of c."""
    gap = target - c
    lo, hi = 0.0, 1.0
    while hi * hi < gap:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * mid < gap:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def g2_numeric(u: float, v: float) -> float:
    """Oracle for g2 on its support: evaluates the defining t-measure
    directly.  The constraint set {t >= 0 : |t^2 + u^3| <= 1} is an interval
    whose endpoints are located by bisection on t^2 + u^3 = +-1 (no use of
    the closed-form square roots); its intersection with [0, 1/v] is
    measured."""
    if not 0.0 < v <= 1.0:
        raise DomainError("g2_numeric expects 0 < v <= 1")
    c = u**3
    if c > 1.0:
        return 0.0
    hi = _solve_increasing(c, 1.0)
    lo = _solve_increasing(c, -1.0) if c < -1.0 else 0.0
    return max(0.0, min(hi, 1.0 / v) - lo)


def g3(v: float, tol: float = 1e-8) -> float:
    """int_{g1(v)}^{1} g2(u, v) du by adaptive quadrature, split at the
    piecewise breakpoints of g2 (u = g1(v), -(1/v^2-1)^(1/3), -1, 0).

    For v below 1e-5 the two branches of the inner min{} differ by less than
    one ulp near u = g1(v), so the piecewise route is numerically ill posed;
    there the value is computed instead as the v -> 0 limit minus the far
    tail int_{-inf}^{g1(v)} of the limit integrand (the neglected sliver
    between the branch points contributes less than v^4)."""
    if not 0.0 < v <= 1.0:
        raise DomainError("g3 expects 0 < v <= 1")
    if v < 1e-5:
        ya = (-g1(v)) ** -0.5
        cut, _ = quad(
            lambda y: 4.0 / (math.sqrt(1.0 + y**6) + math.sqrt(1.0 - y**6)),
            0.0,
            ya,
            epsabs=1e-12,
        )
        return _g3_at_zero() - cut
    lo = g1(v)
    pts = {lo, 1.0}
    if v < 1.0:
        pts.add(-((1.0 / (v * v) - 1.0) ** (1.0 / 3.0)))
    for p in (-8.0, -1.0, 0.0):
        pts.add(p)
    knots = sorted(p for p in pts if lo <= p <= 1.0)
    total = 0.0
    eps = tol / max(1, len(knots) - 1)
    for a, b in zip(knots, knots[1:]):
        if b <= a:
            continue
        if b - a <= 1e-9 * max(1.0, abs(a)):
            # sliver between near-coincident breakpoints: adaptive quadrature
            # chokes on it and its contribution is below double precision
            total += 0.5 * (g2(a, v) + g2(b, v)) * (b - a)
            continue
        if b <= -8.0:
            # far pieces: u = -1/y^2 maps them to short smooth y-intervals
            val, _ = quad(
                lambda y: g2(-1.0 / (y * y), v) * 2.0 / y**3,
                (-a) ** -0.5,
                (-b) ** -0.5,
                epsabs=eps,
                epsrel=1e-9,
                limit=200,
            )
        else:
            val, _ = quad(g2, a, b, args=(v,), epsabs=eps, epsrel=1e-9, limit=200)
        total += val
    return total


# ---------------------------------------------------------------------------
# archimedean factor, two ways
# ---------------------------------------------------------------------------

_G3_AT_ZERO: float | None = None


def _g3_at_zero() -> float:
    """Continuous extension of g3 to v = 0: the t-cap 1/v disappears, so
    the u-integral runs from -inf with integrand sqrt(1-u^3) -
    sqrt(max(0,-1-u^3)); the far tail is mapped to s = -1/u."""
    global _G3_AT_ZERO
    if _G3_AT_ZERO is None:
        head = 0.0
        for a, b in ((-1.0, 0.0), (0.0, 1.0)):
            val, _ = quad(lambda u: math.sqrt(1.0 - u**3), a, b, epsabs=1e-11)
            head += val
        # tail integrand rationalized and substituted s = y^2: smooth, bounded
        tail, _ = quad(
            lambda y: 4.0 / (math.sqrt(1.0 + y**6) + math.sqrt(1.0 - y**6)),
            0.0,
            1.0,
            epsabs=1e-11,
            limit=200,
        )
        _G3_AT_ZERO = head + tail
    return _G3_AT_ZERO


def omega_inf_g3(tol: float = 1e-5) -> float:
    """The archimedean factor via the slice functions: 4 * int_0^1
    v^(-2/3) g3(v) dv, by nested adaptive quadrature (the outer integral
    with its algebraic endpoint weight handled by a weighted rule).

    The weight comes from stacking the slice areas of the 3-D region: the
    section at height v has area g3(v^3), and substituting w^3 = v in
    12*int_0^1 g3(v^3) dv gives this integral.  A plain unweighted
    12*int_0^1 g3(v) dv is NOT the same quantity (it differs by about 17%);
    see omega_inf_3d for the independent cross-check."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    inner_tol = min(1e-8, tol * 1e-3)
    # the weighted rule evaluates the smooth factor AT the singular endpoint
    integrand = lambda v: g3(min(v, 1.0), tol=inner_tol) if v > 0.0 else _g3_at_zero()
    val, _ = quad(
        integrand,
        0.0,
        1.0,
        weight="alg",
        wvar=(-2.0 / 3.0, 0.0),
        epsabs=tol / 4.0,
        epsrel=1e-9,
        limit=200,
    )
    return 4.0 * val


def _tu_slice(u: float) -> float:
    """int over t of min(1, t^(-1/3), |u|^(-1/4)) on {t >= 0, |t^2+u^3| <= 1}.

    For fixed (t, u) the admissible v-range is [0, min(1, t^(-1/3),
    |u|^(-1/4))], so this is the (t, v)-volume above the point u.  The t-set
    is the interval [sqrt(max(0, -1-u^3)), sqrt(1-u^3)]; the integrand is
    piecewise a power of t, integrated in closed form per subsegment, so the
    only quadrature in omega_inf_3d is the final one over u."""
    c = u**3
    if c > 1.0:
        return 0.0
    b = math.sqrt(1.0 - c)
    a = math.sqrt(max(0.0, -1.0 - c))
    if b <= a:
        return 0.0
    u_cap = math.inf if u == 0.0 else abs(u) ** (-0.25)
    cuts = {a, b}
    if a < 1.0 < b:
        cuts.add(1.0)
    if u != 0.0:
        w = abs(u) ** 0.75  # where t^(-1/3) crosses |u|^(-1/4)
        if a < w < b:
            cuts.add(w)
    knots = sorted(cuts)
    total = 0.0
    for t0, t1 in zip(knots, knots[1:]):
        tm = 0.5 * (t0 + t1)
        one, cube, cap = 1.0, tm ** (-1.0 / 3.0), u_cap
        m = min(one, cube, cap)
        if m == one:
            total += t1 - t0
        elif m == cube:
            total += 1.5 * (t1 ** (2.0 / 3.0) - t0 ** (2.0 / 3.0))
        else:
            total += u_cap * (t1 - t0)
    return total


def omega_inf_3d(tol: float = 1e-3) -> float:
    """12 * volume of {|t^2+u^3| <= 1, 0 <= t*v^3 <= 1, 0 <= v <= 1,
    |u*v^4| <= 1}, sliced over u with the (t, v)-volume of each slice in
    closed form.  Independent of g1/g2/g3 in both slicing order and code
    path; target relative error tol."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    eps = tol / 12.0
    # u-breakpoints: the slice's t-interval or integrand branch changes at
    # u = -phi^(2/3) (t-cut w meets the lower endpoint), -2^(1/3) (lower
    # endpoint crosses t = 1), -1 (lower endpoint leaves 0), 0.
    phi = 0.5 * (1.0 + math.sqrt(5.0))
    seams = [-2.0, -(phi ** (2.0 / 3.0)), -(2.0 ** (1.0 / 3.0)), -1.0, 0.0, 1.0]
    total = 0.0
    for a, b in zip(seams, seams[1:]):
        val, _ = quad(_tu_slice, a, b, epsabs=eps, epsrel=tol / 10.0, limit=200)
        total += val
    # tail u < -2 via s = -1/u, regular up to s = 0 (integrand tends to 1)
    val, _ = quad(
        lambda s: _tu_slice(-1.0 / s) / (s * s), 0.0, 0.5, epsabs=eps, epsrel=tol / 10.0, limit=200
    )
    total += val
    return 12.0 * total


# ---------------------------------------------------------------------------
# loop-bounding parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegionParams:
    """Floating-point loop bounds for one block of torsor coordinates.

    alpha^2 = xi^(2,3,4,3,4,5,6)/B, X1^3 = B*q0/(xi1^2*xi3) and
    X2^2 = B*q0/xi2 with q0 = xiL^3*xi4^2*xi5.  These floats bound loops
    only; acceptance of any point is decided by exact integer comparisons
    elsewhere."""

    B: int
    alpha: float
    X1: float
    X2: float

    def __post_init__(self) -> None:
        if self.B < 1:
            raise DomainError("B must be a positive integer")
        if not 0.0 <= self.alpha:
            raise DomainError("alpha must be >= 0")
        if not (self.X1 > 0.0 and self.X2 > 0.0):
            raise DomainError("X1 and X2 must be positive")


def region_params(xi: tuple[int, ...], B: int) -> RegionParams:
    """Region parameters for a height-admissible xi block.

    The admissibility test xi^(2,3,4,3,4,5,6) <= B (equivalently alpha <= 1)
    is performed in exact integer arithmetic; OutOfRegion if it fails."""
    if len(xi) != 7 or any(x < 1 for x in xi):
        raise DomainError("xi must be 7 positive integers")
    if B < 1:
        raise DomainError("B must be a positive integer")
    m2 = xi_pow(xi, HEIGHT)
    if m2 > B:
        raise OutOfRegion(f"height monomial {m2} exceeds B={B}")
    x1, x2, _x3, _xL, _x4, _x5, _x6 = xi
    q0 = xi_pow(xi, Q0_MONO)
    alpha = math.sqrt(m2 / B)
    X1 = (B * q0 / (x1 * x1 * _x3)) ** (1.0 / 3.0)
    X2 = math.sqrt(B * q0 / x2)
    return RegionParams(B=B, alpha=alpha, X1=X1, X2=X2)
