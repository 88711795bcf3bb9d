"""The fast counter for the all-coordinates-nonzero stratum: modular square
roots, the tau2 congruence solver, both scan strategies, parallel merge, and
the stream of accepted torsor points."""

import math

import pytest

from e6count import enumerator as en
from e6count.errors import DomainError, NonUnitInput, PreconditionViolated
from e6count.surface import count_naive, enumerate_E
from e6count.torsor import psi, validate


def _sqrt_brute(c, q):
    return {x for x in range(q) if (x * x - c) % q == 0}


def test_sqrt_mod_prime_power_examples():
    assert en.sqrt_mod_prime_power(2, 7, 1) == {3, 4}
    assert en.sqrt_mod_prime_power(1, 2, 3) == {1, 3, 5, 7}
    assert en.sqrt_mod_prime_power(3, 5, 1) == set()
    assert en.sqrt_mod_prime_power(1, 2, 4) == {1, 7, 9, 15}
    assert en.sqrt_mod_prime_power(3, 2, 4) == set()  # 3 % 8 != 1


def test_sqrt_mod_prime_power_exhaustive():
    for p in (2, 3, 5, 7, 13):
        for k in range(1, 5):
            q = p**k
            for c in range(1, min(q, 60)):
                if c % p == 0:
                    continue
                assert en.sqrt_mod_prime_power(c, p, k) == _sqrt_brute(c, q), (c, p, k)


def test_sqrt_mod_prime_power_guards():
    with pytest.raises(NonUnitInput):
        en.sqrt_mod_prime_power(49, 7, 2)
    with pytest.raises(NonUnitInput):
        en.sqrt_mod_prime_power(4, 2, 3)
    with pytest.raises(DomainError):
        en.sqrt_mod_prime_power(1, 7, 0)


def test_tau2_congruence_solver():
    assert en.solve_tau2_congruence((1,) * 7, 1, 1) == {0}
    assert en.solve_tau2_congruence((1, 1, 1, 2, 1, 1, 1), 1, 8) == set()
    assert en.solve_tau2_congruence((1, 1, 1, 1, 1, 5, 1), 1, 5) == {2, 3}
    # completeness against brute force on composite moduli
    for xi, tau1 in [
        ((1, 1, 1, 3, 2, 5, 1), 1),
        ((1, 1, 1, 3, 2, 5, 1), 7),
        ((1, 2, 1, 5, 1, 1, 1), -3),
        ((2, 3, 1, 7, 1, 1, 1), 5),
    ]:
        x1, x2, x3, xL, x4, x5, _ = xi
        q0 = xL**3 * x4**2 * x5
        c = -(tau1**3) * x1 * x1 * x3
        expect = {r for r in range(q0) if (x2 * r * r - c) % q0 == 0}
        assert en.solve_tau2_congruence(xi, tau1, q0) == expect
    with pytest.raises(PreconditionViolated):
        en.solve_tau2_congruence((1, 1, 1, 2, 1, 1, 1), 2, 8)
    with pytest.raises(DomainError):
        en.solve_tau2_congruence((1,) * 7, 1, 0)


def test_stratum_count_examples():
    assert en.count_E_torsor(1) == 0
    assert en.count_E_torsor(2) == 1
    got = {s: en.count_E_torsor(100, strategy=s) for s in ("direct", "residue")}
    assert got["direct"] == got["residue"] == 653
    assert 653 == sum(1 for _ in enumerate_E(100))
    with pytest.raises(DomainError):
        en.count_E_torsor(0)
    with pytest.raises(DomainError):
        en.count_E_torsor(10, strategy="magic")


def test_strategy_equivalence_small():
    for B in range(1, 61):
        assert en.count_E_torsor(B, "direct") == en.count_E_torsor(B, "residue")
    assert en.count_E_torsor(137, "direct") == en.count_E_torsor(137, "residue")
    assert en.count_E_torsor(500, "direct") == en.count_E_torsor(500, "residue") == 5073


def test_accepted_stream_bijects_onto_stratum():
    pts = list(en.iter_accepted(300))
    assert len(pts) == en.count_E_torsor(300)
    seen = set()
    for t in pts:
        ok, bad = validate(t)
        assert ok and t.scheme == "T2", bad
        key = (t.xi, t.tau1, t.tau2, t.tauL)
        assert key not in seen
        seen.add(key)
    assert {psi(t).coords() for t in pts} == {p.coords() for p in enumerate_E(300)}


def test_float_slack_widening_is_invariant(monkeypatch):
    base = {
        (B, s): en.count_E_torsor(B, s)
        for B in (50, 137, 500)
        for s in ("direct", "residue")
    }
    monkeypatch.setattr(en, "_SLACK", 3)
    for (B, s), expect in base.items():
        assert en.count_E_torsor(B, s) == expect


def test_scalar_path_matches_vectorized(monkeypatch):
    expect = en.count_E_torsor(137)
    monkeypatch.setattr(en, "_VECTOR_B_MAX", 0)
    assert en.count_E_torsor(137) == expect


def test_parallel_merge():
    assert en.count_E_torsor(500, workers=2) == 5073
    rep = en.count_total(500, workers=2)
    assert rep.total == 10884


def test_total_report():
    rep = en.count_total(100)
    assert rep.total == 1476
    assert rep.e_count == 653
    assert (rep.conic_count, rep.x0zero_count, rep.x1zero_count) == (126, 22, 22)
    assert rep.method == "torsor-residue"
    assert rep.elapsed >= 0.0
    assert en.count_total(40, strategy="direct").method == "torsor-direct"
    assert rep.total == count_naive(100).total
