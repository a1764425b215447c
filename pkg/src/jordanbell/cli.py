"""Command-line interface.

Subcommands: violation, table, game, verify, state, classical.
Exit codes: 0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from . import lhv, optimize, states, verify
from .bell_core import JordanParams, cubic_equal_angle
from .linalg import max_real_root

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2

STATES = {
    "psi2": states.psi2,
    "psi3": states.psi3,
    "psi3prime": states.psi3_prime,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _f6(x: float) -> str:
    return f"{x:.6f}"


def _parse_angles(text: str) -> list:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --angles {text!r}")


def _csv(rows, header) -> str:
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(row) + "\n")
    return out.getvalue()


def _result_rows(r: optimize.ViolationResult):
    return [[str(r.n), *(_f6(x) for x in r.xs), _f6(r.lambda_max)]]


def cmd_violation(args) -> str:
    n = args.n
    if args.angles is not None:
        xs = _parse_angles(args.angles)
        if len(xs) != n:
            raise UsageError(f"--angles has {len(xs)} values but --n is {n}")
        try:
            JordanParams(tuple(xs))
        except ValueError as e:
            raise UsageError(str(e))
        lam, vec = optimize.top_eigenpair(xs)
        result = optimize.ViolationResult(n, tuple(xs), lam, vec, optimize.FULL_OPERATOR, True)
    elif args.equal_angle is not None:
        x = args.equal_angle
        if not 0.0 <= x <= 1.0:
            raise UsageError("--equal-angle must lie in [0, 1]")
        lam = max_real_root(cubic_equal_angle(n, x))
        vec = optimize.top_eigenpair((x,) * n)[1] if n <= optimize.FULL_OPERATOR_MAX_N else None
        result = optimize.ViolationResult(n, (x,) * n, lam, vec, optimize.EQUAL_ANGLE, True)
    elif args.full:
        if n > 7:
            raise UsageError("--full supports n <= 7")
        result = optimize.maximize_full(n, restarts=args.restarts, seed=args.seed)
    else:
        if n > 16:
            raise UsageError("equal-angle maximization supports n <= 16")
        result = optimize.maximize_equal_angle(n)

    fmt = args.format or "human"
    if fmt == "json":
        return json.dumps(result.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        header = ["n", *(f"x{k + 1}" for k in range(n)), "lambda_max"]
        return _csv(_result_rows(result), header)
    lines = [
        f"n          = {result.n}",
        f"x          = {', '.join(_f6(x) for x in result.xs)}",
        f"lambda_max = {_f6(result.lambda_max)}",
        f"method     = {result.method}",
        f"converged  = {result.converged}",
    ]
    if args.show_state and result.eigvec is not None:
        lines.append("state (index, re, im):")
        for i, a in enumerate(result.eigvec):
            if abs(a) > 1e-12:
                lines.append(f"  {i:>4d}  {_f6(a.real)}  {_f6(a.imag)}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> str:
    if args.n_max < args.n_min:
        raise UsageError("--n-max must be >= --n-min")
    if args.n_max > 16:
        raise UsageError("--n-max must be <= 16")
    rows = optimize.violation_curve(args.n_min, args.n_max)
    if args.plot_data:
        return "".join(f"{n} {_f6(lam)}\n" for n, _, lam in rows)
    fmt = args.format or "csv"
    if fmt == "json":
        return json.dumps([{"n": n, "x": x, "lambda_max": lam} for n, x, lam in rows], indent=2) + "\n"
    if fmt == "human":
        lines = [f"{'n':>3}  {'x':>9}  {'lambda_max':>10}"]
        lines += [f"{n:>3}  {_f6(x):>9}  {_f6(lam):>10}" for n, x, lam in rows]
        return "\n".join(lines) + "\n"
    return _csv([[str(n), _f6(x), _f6(lam)] for n, x, lam in rows], ["n", "x", "lambda_max"])


def _game_report() -> dict:
    classical = lhv.game_classical_value()
    witness = lhv.optimal_classical_strategies()[0]
    meas3 = states.MeasurementSet.tilted([states.X3_STAR] * 3)
    delta3 = states.violation_of(states.psi3(), meas3)
    meas_p = states.MeasurementSet.zx(3)
    delta_p = states.violation_of(states.psi3_prime(), meas_p)
    return {
        "classical_value": float(classical),
        "classical_witness": [list(f) for f in witness],
        "quantum_value_psi3": lhv.game_quantum_value(delta3),
        "quantum_value_psi3_simulated": lhv.simulate_game(states.psi3().amplitudes, meas3.projectors),
        "delta_psi3": delta3,
        "x_psi3": states.X3_STAR,
        "quantum_value_psi3prime": lhv.game_quantum_value(delta_p),
        "quantum_value_psi3prime_simulated": lhv.simulate_game(
            states.psi3_prime().amplitudes, meas_p.projectors
        ),
        "delta_psi3prime": delta_p,
    }


def cmd_game(args) -> str:
    rep = _game_report()
    fmt = args.format or "human"
    if fmt == "json":
        return json.dumps(rep, indent=2) + "\n"
    if fmt == "csv":
        keys = [k for k in rep if k != "classical_witness"]
        return _csv([[_f6(rep[k]) for k in keys]], keys)
    w = rep["classical_witness"]
    return (
        f"classical value       = {_f6(rep['classical_value'])}"
        f"  (witness replies to bit 0/1: {w})\n"
        f"quantum value (psi3)  = {_f6(rep['quantum_value_psi3'])}"
        f"  (simulated {_f6(rep['quantum_value_psi3_simulated'])}, delta = {_f6(rep['delta_psi3'])})\n"
        f"quantum value (psi3') = {_f6(rep['quantum_value_psi3prime'])}"
        f"  (simulated {_f6(rep['quantum_value_psi3prime_simulated'])}, delta = {_f6(rep['delta_psi3prime'])})\n"
    )


def cmd_verify(args):
    results = verify.run_checks(tol=args.tol)
    fmt = args.format or "human"
    ok = all(r.passed for r in results)
    if fmt == "json":
        text = json.dumps(
            {
                "passed": ok,
                "checks": [
                    {"name": r.name, "passed": r.passed, "residual": r.residual, "tolerance": r.tolerance}
                    for r in results
                ],
            },
            indent=2,
        ) + "\n"
    elif fmt == "csv":
        text = _csv(
            [[r.name, "pass" if r.passed else "fail", f"{r.residual:.6e}", f"{r.tolerance:.1e}"] for r in results],
            ["check", "status", "residual", "tolerance"],
        )
    else:
        text = "\n".join(r.line() for r in results) + f"\n{'all checks passed' if ok else 'VERIFICATION FAILED'}\n"
    return text, (EXIT_OK if ok else EXIT_VERIFY)


def cmd_state(args) -> str:
    state = STATES[args.name]()
    fmt = args.format or "human"
    triples = state.to_triples(tol=1e-15)
    if fmt == "json":
        return json.dumps({"name": args.name, "n": state.n, "amplitudes": triples}, indent=2) + "\n"
    if fmt == "csv":
        return _csv([[str(i), _f6(re), _f6(im)] for i, re, im in triples], ["index", "re", "im"])
    lines = [f"{args.name} ({state.n} qubits)"]
    lines += [f"  |{i:0{state.n}b}>  {_f6(re)}  {_f6(im)}" for i, re, im in triples]
    return "\n".join(lines) + "\n"


def cmd_classical(args) -> str:
    n = args.n
    if n > 10:
        raise UsageError("classical enumeration supports n <= 10")
    value = lhv.classical_value(n)
    proof = lhv.proof_check(n)
    fmt = args.format or "human"
    rep = {
        "n": n,
        "strategies": 4**n,
        "classical_value": value,
        "proof_sequences": proof.sequences,
        "multiplicity_histogram": {str(k): v for k, v in proof.multiplicity_histogram.items()},
        "term_coverage": list(proof.term_coverage),
    }
    if fmt == "json":
        return json.dumps(rep, indent=2) + "\n"
    if fmt == "csv":
        return _csv([[str(n), str(4**n), str(value), str(proof.sequences)]], ["n", "strategies", "classical_value", "proof_sequences"])
    return (
        f"n = {n}: max over {4**n} deterministic strategies = {value}\n"
        f"coverage of {proof.sequences} LHS sequences: multiplicities {proof.multiplicity_histogram}, "
        f"per RHS term {list(proof.term_coverage)}\n"
    )


def _positive_int(minimum):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return v

    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json", "csv"], default=None)
    common.add_argument("--out", default=None, help="write output to PATH instead of stdout")

    p = _Parser(prog="jordanbell", description="Maximum quantum violations of n-party CH-type inequalities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("violation", parents=[common], help="maximize or evaluate lambda_max")
    v.add_argument("--n", type=_positive_int(2), required=True)
    g = v.add_mutually_exclusive_group()
    g.add_argument("--angles", help="explicit overlap cosines x1,...,xn")
    g.add_argument("--equal-angle", type=float, help="evaluate with every x_l equal to this value")
    g.add_argument("--full", action="store_true", help="multistart search on the full operator")
    v.add_argument("--restarts", type=_positive_int(1), default=optimize.DEFAULT_RESTARTS)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--show-state", action="store_true")
    v.set_defaults(func=cmd_violation)

    t = sub.add_parser("table", parents=[common], help="optimal (x, lambda_max) per party count")
    t.add_argument("--n-min", type=_positive_int(2), default=3)
    t.add_argument("--n-max", type=_positive_int(2), default=7)
    t.add_argument("--plot-data", action="store_true", help="two-column 'n lambda_max' for gnuplot")
    t.set_defaults(func=cmd_table)

    gm = sub.add_parser("game", parents=[common], help="three-party nonlocal game values")
    gm.set_defaults(func=cmd_game)

    vf = sub.add_parser("verify", parents=[common], help="run the verification suite")
    vf.add_argument("--tol", type=float, default=None, help="override every check's tolerance")
    vf.set_defaults(func=cmd_verify)

    s = sub.add_parser("state", parents=[common], help="print a named state")
    s.add_argument("name", choices=sorted(STATES))
    s.set_defaults(func=cmd_state)

    c = sub.add_parser("classical", parents=[common], help="classical bound by enumeration")
    c.add_argument("--n", type=_positive_int(2), required=True)
    c.set_defaults(func=cmd_classical)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except UsageError as e:
        print(f"jordanbell: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    code = EXIT_OK
    if isinstance(out, tuple):
        out, code = out
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
