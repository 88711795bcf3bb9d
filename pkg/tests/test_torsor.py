"""Torsor coordinates: the image map onto the surface, the constructive
lift, the two exponent-transfer maps between coprimality schemes, and the
validator."""

import pytest

from e6count import torsor as to
from e6count.errors import (
    DomainError,
    NotOnTorsor,
    NotT1,
    NotT2,
    PreconditionViolated,
)
from e6count.surface import SurfacePoint, enumerate_E

ONES = (1, 1, 1, 1, 1, 1, 1)


def _tp(xi, tau1, tau2, tauL, scheme):
    return to.TorsorPoint(xi=xi, tau1=tau1, tau2=tau2, tauL=tauL, scheme=scheme)


def test_construction_guards():
    with pytest.raises(DomainError):
        _tp(ONES, 1, 1, -2, "T3")
    with pytest.raises(DomainError):
        _tp(ONES, 0, 1, -2, "T1")
    with pytest.raises(DomainError):
        _tp(ONES, 1, 1, 0, "T1")
    with pytest.raises(DomainError):
        _tp((1, 1, 1, 1, 1, 1), 1, 1, -2, "T1")
    with pytest.raises(DomainError):
        _tp((1, 1, 0, 1, 1, 1, 1), 1, 1, -2, "T1")
    assert _tp(ONES, 1, 1, -2, "T1").equation_lhs() == 0


def test_validate():
    ok, bad = to.validate(_tp((1, 2, 1, 1, 1, 1, 1), 1, 1, -3, "T2"))
    assert ok and bad == []
    ok, bad = to.validate(_tp(ONES, 1, 1, -2, "T1"))
    assert ok
    # non-squarefree xi2, equation arranged to hold
    ok, bad = to.validate(_tp((1, 4, 1, 1, 1, 1, 1), 1, 1, -5, "T2"))
    assert not ok and any("squarefree" in m for m in bad)
    ok, bad = to.validate(_tp((4, 1, 1, 1, 1, 1, 1), 1, 1, -17, "T1"))
    assert not ok and any("squarefree" in m for m in bad)
    # equation failure
    ok, bad = to.validate(_tp(ONES, 1, 1, -1, "T1"))
    assert not ok and any("equation" in m for m in bad)
    # tau2 must be positive (buildable, flagged by the validator)
    ok, bad = to.validate(_tp(ONES, 1, 0, -1, "T2"))
    assert not ok and any("tau2" in m for m in bad)
    # shared-prime violations in the T2 scheme
    ok, bad = to.validate(_tp((3, 1, 1, 1, 1, 1, 1), 1, 3, -18, "T2"))
    assert not ok and any("gcd(tau2, xi1*xi3)" in m for m in bad)


def test_image_map_examples():
    assert to.psi(_tp(ONES, 1, 1, -2, "T1")).coords() == (1, -2, 1, 1)
    assert to.psi(_tp((1, 2, 1, 1, 1, 1, 1), 1, 1, -3, "T1")).coords() == (4, -3, 8, 4)
    assert to.psi(_tp(ONES, 2, 1, -9, "T1")).coords() == (1, -9, 1, 2)
    with pytest.raises(NotOnTorsor):
        to.psi(_tp(ONES, 1, 1, -1, "T1"))


def test_lift_examples():
    t = to.lift_T1(SurfacePoint(1, -2, 1, 1))
    assert (t.xi, t.tau1, t.tau2, t.tauL, t.scheme) == (ONES, 1, 1, -2, "T1")
    t = to.lift_T1(SurfacePoint(4, -3, 8, 4))
    assert (t.xi, t.tau1, t.tau2, t.tauL) == ((1, 2, 1, 1, 1, 1, 1), 1, 1, -3)
    t = to.lift_T1(SurfacePoint(1, -9, 1, 2))
    assert (t.xi, t.tau1, t.tau2, t.tauL) == (ONES, 2, 1, -9)


def test_lift_preconditions():
    with pytest.raises(PreconditionViolated):
        to.lift_T1(SurfacePoint(-1, -2, 1, 1))  # x0 < 0
    with pytest.raises(PreconditionViolated):
        to.lift_T1(SurfacePoint(1, 0, 1, -1))  # x1 = 0
    with pytest.raises(PreconditionViolated):
        to.lift_T1(SurfacePoint(1, -1, 1, 0))  # x3 = 0


def test_transfer_prime_rule_examples():
    # exponents (in xi1, xi3, xi6, tau1) at p=2 move (0,0,1,2) -> (3,0,0,0)
    t1 = _tp((1, 1, 1, 1, 1, 1, 2), -4, 1, 63, "T1")
    assert to.validate(t1)[0]
    t2 = to.phi_T1_to_T2(t1)
    assert t2 == _tp((8, 1, 1, 1, 1, 1, 1), -1, 1, 63, "T2")
    assert to.validate(t2)[0]
    assert to.psi(t2) == to.psi(t1)
    assert to.phi_T2_to_T1(t2) == t1

    # exponents (0,1,0,1) at p=2 move to (2,0,0,0)
    t1 = _tp((1, 1, 2, 1, 1, 1, 1), 2, 1, -17, "T1")
    assert to.validate(t1)[0]
    t2 = to.phi_T1_to_T2(t1)
    assert t2 == _tp((4, 1, 1, 1, 1, 1, 1), 1, 1, -17, "T2")
    assert to.validate(t2)[0]
    assert to.psi(t2) == to.psi(t1)
    assert to.phi_T2_to_T1(t2) == t1

    # no prime appears in xi1, xi3, xi6 or tau1: both transfers are identity
    t1 = _tp((1, 2, 1, 1, 1, 1, 1), 1, 1, -3, "T1")
    t2 = to.phi_T1_to_T2(t1)
    assert (t2.xi, t2.tau1, t2.tau2, t2.tauL) == (t1.xi, t1.tau1, t1.tau2, t1.tauL)


def test_transfer_guards():
    good_t2 = _tp((1, 2, 1, 1, 1, 1, 1), 1, 1, -3, "T2")
    with pytest.raises(NotT1):
        to.phi_T1_to_T2(good_t2)  # wrong scheme tag
    good_t1 = _tp((1, 2, 1, 1, 1, 1, 1), 1, 1, -3, "T1")
    with pytest.raises(NotT2):
        to.phi_T2_to_T1(good_t1)
    with pytest.raises(NotT1):
        to.phi_T1_to_T2(_tp((4, 1, 1, 1, 1, 1, 1), 1, 1, -17, "T1"))


def test_round_trip_through_both_schemes():
    pts = list(enumerate_E(100))
    assert len(pts) == 653
    images = set()
    for p in pts:
        t1 = to.lift_T1(p)
        ok, bad = to.validate(t1)
        assert ok, (p, bad)
        assert t1.scheme == "T1"
        assert to.psi(t1) == p
        t2 = to.phi_T1_to_T2(t1)
        ok, bad = to.validate(t2)
        assert ok, (p, bad)
        assert t2.scheme == "T2"
        assert to.psi(t2) == p
        assert to.phi_T2_to_T1(t2) == t1
        images.add((t2.xi, t2.tau1, t2.tau2, t2.tauL))
    # distinct points lift to distinct torsor coordinates
    assert len(images) == len(pts)
