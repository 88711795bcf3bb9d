"""Command-line surface: counting runs, verification sweeps, constant
reports, and machine-readable output for scripts.

Exit codes: 0 success, 1 property or internal-invariant failure, 2 usage
error.  Environment variables E6COUNT_THREADS and E6COUNT_QUAD_TOL set
defaults for the corresponding flags; explicit flags win.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .arith import T_q, S_q, delta_weights, factorize
from .constants import leading_coefficient
from .enumerator import count_E_torsor, count_total
from .errors import DomainError, E6CountError, InternalInvariantViolation
from .region import g1, g2, g2_numeric, omega_inf_3d, omega_inf_g3
from .surface import _NAIVE_LIMIT, count_naive, enumerate_E
from .torsor import lift_T1, phi_T1_to_T2, phi_T2_to_T1, psi, validate

_FORMATS = ("text", "json", "csv")
_SWEEP_HEADER = "B,N,e_count,conic,x0zero,x1zero,predicted,ratio,seconds"


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs of one CLI invocation."""

    command: str
    B: int | None = None
    B_list: tuple[int, ...] | None = None
    method: str = "torsor"
    strategy: str = "residue"
    prime_limit: int = 10**5
    quad_tol: float = 1e-5
    threads: int = 1
    fmt: str = "text"
    out: str | None = None

    def __post_init__(self) -> None:
        if self.B is not None and self.B < 1:
            raise DomainError("B must be >= 1")
        if self.B_list is not None:
            if len(self.B_list) < 2:
                raise DomainError("need at least two B values")
            if any(b < 1 for b in self.B_list):
                raise DomainError("every B must be >= 1")
        if self.prime_limit < 100:
            raise DomainError("prime_limit must be >= 100")
        if self.threads < 1:
            raise DomainError("thread count must be >= 1")
        if not 0.0 < self.quad_tol <= 0.5:
            raise DomainError("quadrature tolerance must be in (0, 0.5]")
        if self.fmt not in _FORMATS:
            raise DomainError(f"format must be one of {_FORMATS}")


def _real(x: float) -> float:
    # 12 significant digits in every output format
    return float(f"{x:.12g}")


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _json_ready(obj):
    if isinstance(obj, float):
        return _real(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    return obj


def _count_row(report, predicted: float) -> str:
    ratio = report.total / predicted if predicted > 0 else math.inf
    cells = (
        report.B,
        report.total,
        report.e_count,
        report.conic_count,
        report.x0zero_count,
        report.x1zero_count,
        predicted,
        ratio,
        report.elapsed,
    )
    return ",".join(_fmt(c) for c in cells)


def cmd_count(cfg: RunConfig) -> int:
    if cfg.method == "naive":
        report = count_naive(cfg.B)
    else:
        report = count_total(cfg.B, cfg.strategy, cfg.threads)
    if cfg.fmt == "json":
        _emit(json.dumps(_json_ready(dataclasses.asdict(report)), indent=2), cfg.out)
    elif cfg.fmt == "csv":
        coeff = leading_coefficient(cfg.prime_limit, cfg.quad_tol).leading_coeff
        predicted = coeff * cfg.B * math.log(cfg.B) ** 6
        _emit(_SWEEP_HEADER + "\n" + _count_row(report, predicted), cfg.out)
    else:
        lines = [
            f"B        {report.B}",
            f"total    {report.total}",
            f"e_count  {report.e_count}",
            f"conic    {report.conic_count}",
            f"x0zero   {report.x0zero_count}",
            f"x1zero   {report.x1zero_count}",
            f"method   {report.method}",
            f"seconds  {_fmt(report.elapsed)}",
        ]
        _emit("\n".join(lines), cfg.out)
    return 0


def _verify_roundtrip(B: int) -> tuple[bool, str]:
    n = 0
    for pt in enumerate_E(B):
        t1 = lift_T1(pt)
        ok, why = validate(t1)
        if not ok or psi(t1) != pt:
            return False, f"lift of {pt.coords()} invalid: {why or 'psi mismatch'}"
        t2 = phi_T1_to_T2(t1)
        ok, why = validate(t2)
        if not ok or psi(t2) != pt:
            return False, f"forward map of {pt.coords()} invalid: {why or 'psi mismatch'}"
        if phi_T2_to_T1(t2) != t1:
            return False, f"inverse map not identity at {pt.coords()}"
        n += 1
    return True, f"{n} points round-tripped"


def _verify_counts(B: int, strategy: str, threads: int) -> tuple[bool, str]:
    checkpoints = list(range(1, min(B, 200) + 1))
    if B not in checkpoints and B <= _NAIVE_LIMIT:
        checkpoints.append(B)
    for b in checkpoints:
        nv = count_naive(b).total
        tt = count_total(b, strategy, threads).total
        if nv != tt:
            return False, f"B={b}: naive {nv} != torsor {tt}"
    return True, f"{len(checkpoints)} bounds agree"


def _verify_strategies(B: int) -> tuple[bool, str]:
    top = min(B, 100)
    for b in range(1, top + 1):
        d = count_E_torsor(b, "direct")
        r = count_E_torsor(b, "residue")
        if d != r:
            return False, f"B={b}: direct {d} != residue {r}"
    return True, f"direct = residue up to {top}"


def _verify_region() -> tuple[bool, str]:
    for i in range(1, 40):
        v = i / 40 * 2**-0.5
        val = g2(g1(v), v)
        if val != 0.0:
            return False, f"g2(g1({v:.6f})) = {val!r}, want 0"
    for u, v in ((-1.5, 0.3), (-0.5, 0.6), (0.4, 0.5), (-3.0, 0.2)):
        a, b = g2(u, v), g2_numeric(u, v)
        if abs(a - b) > 1e-9:
            return False, f"g2({u},{v}) = {a!r} vs numeric {b!r}"
    o3, og = omega_inf_3d(), omega_inf_g3()
    if abs(o3 / og - 1.0) > 1e-3:
        return False, f"density routes disagree: {o3!r} vs {og!r}"
    return True, f"boundary zeros, slice oracle, densities {_fmt(o3)}/{_fmt(og)}"


def cmd_verify(cfg: RunConfig) -> int:
    B = cfg.B if cfg.B is not None else 200
    checks = (
        ("torsor-roundtrip", lambda: _verify_roundtrip(B)),
        ("naive-vs-torsor", lambda: _verify_counts(B, cfg.strategy, cfg.threads)),
        ("strategy-equivalence", lambda: _verify_strategies(B)),
        ("region-identities", _verify_region),
    )
    failures = 0
    for name, run in checks:
        ok, detail = run()
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failures += 0 if ok else 1
    return 1 if failures else 0


def cmd_constants(cfg: RunConfig) -> int:
    rep = leading_coefficient(cfg.prime_limit, cfg.quad_tol)
    o3d = omega_inf_3d()
    payload = {
        "alpha": str(rep.alpha),
        "omega_inf": rep.omega_inf,
        "omega_inf_3d": o3d,
        "omega_agreement": o3d / rep.omega_inf,
        "euler_product": rep.euler_product,
        "euler_tail": rep.euler_tail,
        "leading_coeff": rep.leading_coeff,
        "prime_limit": rep.prime_limit,
    }
    if cfg.fmt == "json":
        _emit(json.dumps(_json_ready(payload), indent=2), cfg.out)
    else:
        width = max(len(k) for k in payload)
        _emit("\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in payload.items()), cfg.out)
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    coeff = leading_coefficient(cfg.prime_limit, cfg.quad_tol).leading_coeff
    rows = []
    for B in sorted(cfg.B_list):
        if cfg.method == "naive":
            report = count_naive(B)
        else:
            report = count_total(B, cfg.strategy, cfg.threads)
        predicted = coeff * B * math.log(B) ** 6
        rows.append((report, predicted))
    if cfg.fmt == "json":
        payload = [
            dict(
                dataclasses.asdict(r),
                predicted=p,
                ratio=r.total / p if p > 0 else math.inf,
            )
            for r, p in rows
        ]
        _emit(json.dumps(_json_ready(payload), indent=2), cfg.out)
    else:
        lines = [_SWEEP_HEADER] + [_count_row(r, p) for r, p in rows]
        _emit("\n".join(lines), cfg.out)
    return 0


def cmd_expsum(cfg: RunConfig, q: int, a: int, b: int) -> int:
    if q < 1:
        raise DomainError("q must be >= 1")
    s = S_q(a, b, q)
    t = T_q(a, b, q)
    payload = {
        "q": q,
        "a": a,
        "b": b,
        "S_re": s.real,
        "S_im": s.imag,
        "S_abs": abs(s),
        "T_re": t.real,
        "T_im": t.imag,
        "T_abs": abs(t),
    }
    # prime-power bound 2 p^{l/2} gcd(b, p^l) applies when gcd(a, b, p) = 1;
    # for composite q the factor bounds multiply through twisted
    # multiplicativity
    fac = factorize(q)
    if q == 1 or all(math.gcd(math.gcd(a, b), p) == 1 for p, _ in fac):
        bound = 1.0
        for p, e in fac:
            bound *= 2.0 * p ** (e / 2) * math.gcd(b, p**e)
        payload["bound"] = bound
        payload["within_bound"] = abs(t) <= bound + 1e-9
    if cfg.fmt == "json":
        _emit(json.dumps(_json_ready(payload), indent=2), cfg.out)
    else:
        width = max(len(k) for k in payload)
        _emit("\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in payload.items()), cfg.out)
    return 0


def cmd_delta(cfg: RunConfig, x: int) -> int:
    if x < 1:
        raise DomainError("x must be >= 1")
    weights = delta_weights(x)
    rows = []
    running = 0.0
    for n in sorted(weights):
        d = float(n) ** (1 / 6) * float(weights[n])
        running += d
        rows.append({"n": n, "delta": d, "M": running})
    if cfg.fmt == "json":
        _emit(json.dumps(_json_ready(rows), indent=2), cfg.out)
    elif cfg.fmt == "csv":
        lines = ["n,delta,M"] + [
            f"{r['n']},{_fmt(r['delta'])},{_fmt(r['M'])}" for r in rows
        ]
        _emit("\n".join(lines), cfg.out)
    else:
        lines = [f"{'n':>10}  {'delta':>18}  {'M':>18}"] + [
            f"{r['n']:>10}  {_fmt(r['delta']):>18}  {_fmt(r['M']):>18}" for r in rows
        ]
        lines.append(f"nonzero terms: {len(rows)}; M({x}) = {_fmt(running)}")
        _emit("\n".join(lines), cfg.out)
    return 0


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    env_threads = int(os.environ.get("E6COUNT_THREADS", "1"))
    env_tol = float(os.environ.get("E6COUNT_QUAD_TOL", "1e-5"))
    top = argparse.ArgumentParser(
        prog="e6count",
        description="exact point counts and the conjectural constant "
        "for the cubic surface x1*x2^2 + x2*x0^2 + x3^3 = 0",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, fmt_csv=True):
        p.add_argument("--threads", type=int, default=env_threads)
        p.add_argument("--json", action="store_true")
        if fmt_csv:
            p.add_argument("--csv", action="store_true")
        p.add_argument("--out", default=None, help="write output to this file")

    p = sub.add_parser("count", help="count rational points of height <= B")
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--method", choices=("naive", "torsor"), default="torsor")
    p.add_argument("--strategy", choices=("direct", "residue"), default="residue")
    common(p)

    p = sub.add_parser("verify", help="run the property suites up to B")
    p.add_argument("--B", type=int, default=200)
    p.add_argument("--strategy", choices=("direct", "residue"), default="residue")
    p.add_argument("--threads", type=int, default=env_threads)

    p = sub.add_parser("constants", help="report the leading-constant factors")
    p.add_argument("--prime-limit", type=int, default=10**5)
    p.add_argument("--quad-tol", type=float, default=env_tol)
    common(p, fmt_csv=False)

    p = sub.add_parser("sweep", help="count over a list of B values, CSV out")
    p.add_argument("--Bs", type=_int_list, required=True)
    p.add_argument("--method", choices=("naive", "torsor"), default="torsor")
    p.add_argument("--strategy", choices=("direct", "residue"), default="residue")
    p.add_argument("--prime-limit", type=int, default=10**5)
    p.add_argument("--quad-tol", type=float, default=env_tol)
    common(p)

    p = sub.add_parser("expsum", help="evaluate the cubic exponential sums")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=0)
    common(p, fmt_csv=False)

    p = sub.add_parser("delta", help="print the height-density terms up to x")
    p.add_argument("--x", type=int, required=True)
    common(p)

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    fmt = "json" if getattr(args, "json", False) else (
        "csv" if getattr(args, "csv", False) else "text"
    )
    if args.command == "sweep" and fmt == "text":
        fmt = "csv"
    try:
        cfg = RunConfig(
            command=args.command,
            B=getattr(args, "B", None),
            B_list=getattr(args, "Bs", None),
            method=getattr(args, "method", "torsor"),
            strategy=getattr(args, "strategy", "residue"),
            prime_limit=getattr(args, "prime_limit", 10**5),
            quad_tol=getattr(args, "quad_tol", 1e-5),
            threads=getattr(args, "threads", 1),
            fmt=fmt,
            out=getattr(args, "out", None),
        )
        if cfg.command == "count":
            return cmd_count(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        if cfg.command == "constants":
            return cmd_constants(cfg)
        if cfg.command == "sweep":
            return cmd_sweep(cfg)
        if cfg.command == "expsum":
            return cmd_expsum(cfg, args.q, args.a, args.b)
        if cfg.command == "delta":
            return cmd_delta(cfg, args.x)
        raise DomainError(f"unknown command {cfg.command!r}")
    except InternalInvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 1
    except E6CountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
