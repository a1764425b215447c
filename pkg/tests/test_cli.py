import json
import math
import subprocess
import sys

import numpy as np
import pytest

from jordanbell import cli, optimize, verify
from jordanbell.bell_core import char_poly_n3, symmetric_invariants
from jordanbell.linalg import RealPolynomial
from jordanbell.states import PureState, psi3

TABLE_CSV = (
    "n,x,lambda_max\n"
    "3,0.786151,0.236068\n"
    "4,0.830913,0.249757\n"
    "5,0.860012,0.257836\n"
    "6,0.880509,0.263187\n"
    "7,0.895745,0.266998\n"
)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- violation ----------------------------------------------------------------


def test_violation_default_three(capsys):
    code, out, _ = run(capsys, "violation", "--n", "3")
    assert code == 0
    assert "lambda_max = 0.236068" in out
    assert "method     = equal-angle-cubic" in out


def test_violation_explicit_angles(capsys):
    code, out, _ = run(capsys, "violation", "--n", "2", "--angles", "1.0,1.0", "--format", "csv")
    assert code == 0
    assert out == "n,x1,x2,lambda_max\n2,1.000000,1.000000,0.000000\n"


def test_violation_equal_angle_value(capsys):
    code, out, _ = run(capsys, "violation", "--n", "3", "--equal-angle", "0.786151", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "3,0.786151,0.786151,0.786151,0.236068"


def test_violation_show_state(capsys):
    code, out, _ = run(capsys, "violation", "--n", "2", "--show-state")
    assert code == 0
    assert "state (index, re, im):" in out
    assert len([l for l in out.splitlines() if l.startswith("  ")]) == 4


def test_violation_full_small(capsys):
    code, out, _ = run(capsys, "violation", "--n", "2", "--full", "--restarts", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1].endswith(",0.207107")


@pytest.mark.slow
def test_violation_full_five_parties(capsys):
    code, out, _ = run(
        capsys, "violation", "--n", "5", "--full", "--restarts", "32", "--seed", "7", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["lambda_max"] == pytest.approx(0.257836, abs=1e-5)


def test_violation_json_round_trip(capsys):
    code, out, _ = run(capsys, "violation", "--n", "3", "--format", "json")
    assert code == 0
    assert optimize.ViolationResult.from_dict(json.loads(out)) == optimize.maximize_equal_angle(3)


@pytest.mark.parametrize(
    "argv",
    [
        ["violation", "--n", "1"],
        ["violation", "--n", "2", "--angles", "0.5"],
        ["violation", "--n", "2", "--angles", "0.5,abc"],
        ["violation", "--n", "2", "--angles", "0.5,1.5"],
        ["violation", "--n", "2", "--angles", "0.5,0.5", "--equal-angle", "0.3"],
        ["violation", "--n", "2", "--equal-angle", "1.3"],
        ["violation", "--n", "8", "--full"],
        ["violation", "--n", "2", "--restarts", "0"],
        ["violation"],
        ["table", "--n-min", "5", "--n-max", "4"],
        ["classical", "--n", "11"],
        ["state", "psi4"],
        ["nonsense"],
        [],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:  # argparse-level rejection
        code = exc.code
    assert code == cli.EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_argparse_usage_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["violation", "--n", "abc"])
    assert exc.value.code == cli.EXIT_USAGE


# -- table --------------------------------------------------------------------


def test_table_default_csv(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "7")
    assert code == 0
    assert out == TABLE_CSV


def test_table_single_row(capsys):
    _, out, _ = run(capsys, "table", "--n-max", "3")
    assert out == "n,x,lambda_max\n3,0.786151,0.236068\n"


def test_table_rows_increasing(capsys):
    _, out, _ = run(capsys, "table", "--n-min", "2", "--n-max", "12")
    lams = [float(l.split(",")[2]) for l in out.splitlines()[1:]]
    assert len(lams) == 11
    assert all(b > a for a, b in zip(lams, lams[1:]))


def test_table_plot_data(capsys):
    _, out, _ = run(capsys, "table", "--plot-data")
    assert out.splitlines()[0] == "3 0.236068"
    assert len(out.splitlines()) == 5


def test_table_json_round_trip(capsys):
    _, out, _ = run(capsys, "table", "--format", "json")
    rows = [(d["n"], d["x"], d["lambda_max"]) for d in json.loads(out)]
    assert rows == optimize.violation_curve(3, 7)


def test_table_human(capsys):
    _, out, _ = run(capsys, "table", "--format", "human")
    assert out.splitlines()[0].split() == ["n", "x", "lambda_max"]


def test_csv_is_locale_independent(capsys):
    _, out, _ = run(capsys, "table")
    assert "\r" not in out
    for line in out.splitlines()[1:]:
        for field in line.split(","):
            float(field)  # plain '.' decimals, no grouping


# -- other subcommands --------------------------------------------------------


def test_game_human(capsys):
    code, out, _ = run(capsys, "game")
    assert code == 0
    assert "classical value       = 0.800000" in out
    assert "quantum value (psi3)  = 0.847214" in out
    assert "quantum value (psi3') = 0.825000" in out


def test_game_json(capsys):
    _, out, _ = run(capsys, "game", "--format", "json")
    rep = json.loads(out)
    assert rep == cli._game_report()
    assert rep["quantum_value_psi3"] == pytest.approx(0.8 + (math.sqrt(5) - 2) / 5, abs=1e-12)
    assert abs(rep["quantum_value_psi3"] - rep["quantum_value_psi3_simulated"]) <= 1e-10


def test_state_csv(capsys):
    code, out, _ = run(capsys, "state", "psi2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == [
        "index,re,im",
        "0,0.653281,0.000000",
        "1,0.270598,0.000000",
        "2,0.270598,0.000000",
        "3,-0.653281,0.000000",
    ]


def test_state_json_round_trip(capsys):
    _, out, _ = run(capsys, "state", "psi3", "--format", "json")
    d = json.loads(out)
    back = PureState.from_triples(d["amplitudes"], d["n"])
    assert np.array_equal(back.amplitudes, psi3().amplitudes)


def test_state_human(capsys):
    _, out, _ = run(capsys, "state", "psi3prime")
    assert out.splitlines()[0] == "psi3prime (3 qubits)"
    assert len(out.splitlines()) == 9


def test_classical(capsys):
    code, out, _ = run(capsys, "classical", "--n", "3", "--format", "csv")
    assert code == 0
    assert out == "n,strategies,classical_value,proof_sequences\n3,64,0,8\n"
    _, out, _ = run(capsys, "classical", "--n", "4", "--format", "json")
    assert json.loads(out)["classical_value"] == 0


# -- verify -------------------------------------------------------------------


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == cli.EXIT_OK
    assert out.rstrip().endswith("all checks passed")
    assert len(out.splitlines()) == len(verify.CHECKS) + 1


def test_verify_over_tight_tolerance(capsys):
    code, out, _ = run(capsys, "verify", "--tol", "1e-15", "--format", "json")
    assert code == cli.EXIT_VERIFY
    rep = json.loads(out)
    assert not rep["passed"]
    failing = [c for c in rep["checks"] if not c["passed"]]
    assert failing
    assert all(math.isfinite(c["residual"]) for c in rep["checks"])


def test_verify_catches_missing_beta():
    def faulty(xa, xb, xc):
        alpha, beta, gamma = symmetric_invariants(xa, xb, xc)
        good = list(char_poly_n3(xa, xb, xc).coefficients)
        good[1] = 2 * gamma - alpha - 3
        return RealPolynomial(tuple(good))

    results = verify.run_checks(
        overrides={"char_poly_n3_oracle": lambda: verify.check_char_poly_n3(draws=50, char_poly=faulty)}
    )
    by_name = {r.name: r for r in results}
    assert not by_name["char_poly_n3_oracle"].passed
    assert by_name["char_poly_n3_oracle"].residual > 1e-3
    assert "FAIL" in by_name["char_poly_n3_oracle"].line()


def test_verify_crashing_check_fails():
    def boom():
        raise RuntimeError("broken")

    results = verify.run_checks(overrides={"classical_bound": boom})
    r = {x.name: x for x in results}["classical_bound"]
    assert r.residual == math.inf and not r.passed


# -- plumbing -----------------------------------------------------------------


def test_out_path(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "table", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes() == TABLE_CSV.encode()


def test_byte_identical_repeat(capsys):
    argv = ["violation", "--n", "3", "--full", "--restarts", "3", "--seed", "5", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "jordanbell", "table", "--n-max", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "n,x,lambda_max\n3,0.786151,0.236068\n"
