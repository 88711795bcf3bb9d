"""End-to-end command-line behaviour via in-process main(argv)."""

import json
import math

import pytest

from e6count.cli import main

_SWEEP_HEADER = "B,N,e_count,conic,x0zero,x1zero,predicted,ratio,seconds"


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_naive_text(capsys):
    code, out, err = _run(capsys, ["count", "--B", "1", "--method", "naive"])
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert "total    6" in lines
    assert "method   naive" in lines


def test_count_torsor_json(capsys):
    code, out, _ = _run(capsys, ["count", "--B", "100", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert sorted(payload) == [
        "B",
        "conic_count",
        "e_count",
        "elapsed",
        "method",
        "total",
        "x0zero_count",
        "x1zero_count",
    ]
    assert payload["total"] == 1476
    assert payload["e_count"] == 653
    assert payload["method"] == "torsor-residue"


def test_count_csv(capsys):
    code, out, _ = _run(capsys, ["count", "--B", "100", "--csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == _SWEEP_HEADER
    assert lines[1].startswith("100,1476,653,126,22,22,")


def test_count_bad_bound(capsys):
    code, _, err = _run(capsys, ["count", "--B", "0"])
    assert code == 2
    assert "error:" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["count", "--B", "10", "--method", "psychic"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--Bs", "10,x"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_verify_small(capsys):
    code, out, _ = _run(capsys, ["verify", "--B", "60"])
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4
    assert all(line.startswith("PASS ") for line in lines)
    names = [line.split()[1].rstrip(":") for line in lines]
    assert names == [
        "torsor-roundtrip",
        "naive-vs-torsor",
        "strategy-equivalence",
        "region-identities",
    ]


def test_constants_json(capsys):
    code, out, _ = _run(capsys, ["constants", "--json", "--prime-limit", "1000"])
    assert code == 0
    payload = json.loads(out)
    assert sorted(payload) == [
        "alpha",
        "euler_product",
        "euler_tail",
        "leading_coeff",
        "omega_agreement",
        "omega_inf",
        "omega_inf_3d",
        "prime_limit",
    ]
    assert payload["alpha"] == "1/6220800"
    assert abs(payload["omega_agreement"] - 1.0) <= 1e-3
    assert payload["prime_limit"] == 1000


def test_constants_bad_knobs(capsys):
    code, _, err = _run(capsys, ["constants", "--quad-tol", "0.9"])
    assert code == 2 and "error:" in err
    code, _, err = _run(capsys, ["constants", "--prime-limit", "50"])
    assert code == 2 and "error:" in err


def test_sweep_csv(capsys):
    argv = ["sweep", "--Bs", "200,100", "--prime-limit", "1000"]
    code, out, _ = _run(capsys, argv)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == _SWEEP_HEADER
    assert lines[1].startswith("100,1476,653,126,22,22,")
    assert lines[2].startswith("200,")
    first_n = [line.split(",")[1] for line in lines[1:]]
    # rerun is deterministic in every column except the timing one
    code, out, _ = _run(capsys, argv)
    assert code == 0
    again = [line.split(",")[1] for line in out.splitlines()[1:]]
    assert again == first_n


def test_sweep_needs_two_bounds(capsys):
    code, _, err = _run(capsys, ["sweep", "--Bs", "100"])
    assert code == 2 and "error:" in err


def test_sweep_out_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = _run(
        capsys,
        ["sweep", "--Bs", "100,200", "--prime-limit", "1000", "--out", str(target)],
    )
    assert code == 0 and out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith(_SWEEP_HEADER + "\n")
    assert text.endswith("\n") and len(text.splitlines()) == 3


def test_expsum_bound_report(capsys):
    code, out, _ = _run(
        capsys, ["expsum", "--q", "7", "--a", "1", "--b", "2", "--json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["S_abs"] == pytest.approx(1.76349546758, rel=1e-10)
    assert payload["T_abs"] == pytest.approx(1.69202147163, rel=1e-10)
    # 2 sqrt(7) gcd(2, 7)
    assert payload["bound"] == pytest.approx(2.0 * math.sqrt(7.0), rel=1e-10)
    assert payload["within_bound"] is True


def test_expsum_cancellation(capsys):
    code, out, _ = _run(
        capsys, ["expsum", "--q", "8", "--a", "1", "--b", "1", "--json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["T_abs"]) <= 1e-9
    assert payload["within_bound"] is True


def test_expsum_bad_modulus(capsys):
    code, _, err = _run(capsys, ["expsum", "--q", "0"])
    assert code == 2 and "error:" in err


def test_delta_json(capsys):
    code, out, _ = _run(capsys, ["delta", "--x", "50", "--json"])
    assert code == 0
    rows = json.loads(out)
    assert isinstance(rows, list) and len(rows) == 10
    assert rows[0] == {"n": 1, "delta": 1.0, "M": 1.0}
    assert [r["n"] for r in rows] == [1, 4, 8, 9, 16, 25, 27, 32, 36, 49]
    assert rows[-1]["M"] == pytest.approx(4.53917114799007, rel=1e-11)


def test_delta_text(capsys):
    code, out, _ = _run(capsys, ["delta", "--x", "50"])
    assert code == 0
    assert out.splitlines()[-1] == "nonzero terms: 10; M(50) = 4.53917114799"


def test_env_thread_default(monkeypatch, capsys):
    monkeypatch.setenv("E6COUNT_THREADS", "2")
    code, out, _ = _run(capsys, ["count", "--B", "100", "--json"])
    assert code == 0
    assert json.loads(out)["total"] == 1476
