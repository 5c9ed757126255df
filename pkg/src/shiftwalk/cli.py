"""Command-line front end.

Subcommands: verify (run a named check suite), profile (distance-to-uniform
columns over a time range), sample (exact uniform draws), solve (recover
the driving bits reaching a target), simulate (dump one trajectory).
Every command is a pure function of its arguments and seed; when no seed
is given one is drawn from system entropy and printed to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import secrets
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import __version__, distribution, spectral, suites, weight_stats
from .chains import ChainKind, simulate_random, trajectory_rows
from .exact_sampler import exact_sample, solve_driving
from .gf2 import BitVector

SCHEMA_VERSION = 1


def _versions() -> dict:
    return {"shiftwalk": __version__, "numpy": np.__version__}


def _resolve_seed(seed: int | None) -> int:
    if seed is None:
        seed = secrets.randbits(63)
        print(f"seed: {seed}", file=sys.stderr)
    return seed


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_state(value: str | None, n: int) -> BitVector:
    if value is None:
        return BitVector.zeros(n)
    state = BitVector.from_string(value)
    if state.n != n:
        raise ValueError(f"state {value!r} has length {state.n}, expected {n}")
    return state


def _parse_t_range(value: str) -> list[int]:
    if ".." in value:
        lo_text, hi_text = value.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError(f"empty time range {value!r}")
        return list(range(lo, hi + 1))
    return [int(value)]


# ---------------------------------------------------------------- verify

def _cmd_verify(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    checks = suites.run_suite(
        args.suite,
        n_max=args.n_max,
        seed=seed,
        trials=args.trials,
        samples=args.samples,
    )
    passed = all(c.passed for c in checks)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "suite": args.suite,
        "seed": seed,
        "versions": _versions(),
        "passed": passed,
        "checks": [
            {"name": c.name, "passed": c.passed, "observed": c.observed}
            for c in checks
        ],
    }
    if args.format == "json" or args.out:
        _write_output(json.dumps(report, indent=2, default=float), args.out)
    if args.format != "json":
        for c in checks:
            tag = "PASS" if c.passed else "FAIL"
            print(f"[{tag}] {c.name}")
            if not c.passed:
                print(f"       observed: {c.observed}")
        print(f"suite {args.suite}: {'all checks passed' if passed else 'FAILED'}")
    return 0 if passed else 1


# --------------------------------------------------------------- profile

@dataclass
class ProfileRow:
    t: int
    tv_exact: float | None = None
    tv_upper: float | None = None
    tv_lower_emp: float | None = None
    tv_lower_emp_se: float | None = None
    chebyshev_lower: float | None = None


def _histogram_tv_and_se(counts: np.ndarray, pmf: np.ndarray) -> tuple[float, float]:
    total = counts.sum()
    emp = counts / total
    tv = 0.5 * float(np.abs(emp - pmf).sum())
    # Delta-method error of the signed functional 0.5 * sum s_w (emp_w - q_w).
    signs = np.sign(emp - pmf)
    mu = float((signs * emp).sum())
    se = 0.5 * math.sqrt(max(1.0 - mu * mu, 0.0) / total)
    return tv, se


def _build_profile(args: argparse.Namespace, seed: int) -> dict:
    chain = ChainKind(args.chain, args.n)
    n = args.n
    ts = _parse_t_range(args.t)
    x0 = _parse_state(args.x0, n)
    rows = [ProfileRow(t=t) for t in ts]

    if n <= distribution.MAX_EXACT_N:
        curve = dict(distribution.exact_tv_curve(chain, x0, max(ts)))
        for row in rows:
            row.tv_exact = curve[row.t]

    if chain.kind == "q1" and n >= 3:
        bound = spectral.fourier_sum(n).tv_bound
        for row in rows:
            # Valid from t = n+1 on: distance to uniform is nonincreasing.
            if row.t >= n + 1:
                row.tv_upper = bound
        params = weight_stats.LowerBoundParams(
            n=n, alpha=args.alpha, c=args.c if args.c is not None else math.nan
        )
        if params.delta > 0:
            value = weight_stats.chebyshev_lower_bound(params)
            for row in rows:
                if row.t == params.t:
                    row.chebyshev_lower = value

    if args.samples:
        snapshots = weight_stats.sample_weights(chain, x0, ts, args.samples, seed)
        pmf = weight_stats.stationary_weight_pmf(n)
        for row in rows:
            counts = np.bincount(snapshots[row.t], minlength=n + 1)
            row.tv_lower_emp, row.tv_lower_emp_se = _histogram_tv_and_se(counts, pmf)

    return {
        "schema_version": SCHEMA_VERSION,
        "command": "profile",
        "chain": chain.kind,
        "n": n,
        "x0": x0.to_string(),
        "seed": seed,
        "samples": args.samples,
        "alpha": args.alpha,
        "c": args.c,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "versions": _versions(),
        "rows": [
            {k: v for k, v in vars(row).items() if v is not None} for row in rows
        ],
    }


_PROFILE_COLUMNS = (
    "t", "tv_exact", "tv_upper", "tv_lower_emp", "tv_lower_emp_se",
    "chebyshev_lower",
)


def _profile_csv(report: dict) -> str:
    lines = [
        f"# shiftwalk profile schema_version={report['schema_version']} "
        f"chain={report['chain']} n={report['n']} seed={report['seed']} "
        f"samples={report['samples']}",
        ",".join(_PROFILE_COLUMNS),
    ]
    for row in report["rows"]:
        lines.append(
            ",".join(
                "" if row.get(col) is None else str(row[col])
                for col in _PROFILE_COLUMNS
            )
        )
    return "\n".join(lines) + "\n"


def _cmd_profile(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    report = _build_profile(args, seed)
    if args.format == "json":
        _write_output(json.dumps(report, indent=2, default=float), args.out)
    else:
        _write_output(_profile_csv(report), args.out)
    return 0


# ---------------------------------------------------------------- sample

def _cmd_sample(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    x0 = _parse_state(args.x0, args.n)
    lines = []
    for i in range(args.count):
        state = exact_sample(x0, seed, stream_index=i)
        if args.hex:
            lines.append(format(state.word, f"0{(args.n + 3) // 4}x"))
        else:
            lines.append(state.to_string())
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


# ----------------------------------------------------------------- solve

def _cmd_solve(args: argparse.Namespace) -> int:
    start = BitVector.from_string(args.from_state)
    target = BitVector.from_string(args.to_state)
    if args.n is not None and args.n != start.n:
        raise ValueError(f"--n {args.n} does not match state length {start.n}")
    driving = solve_driving(start, target)
    print("".join(str(b) for b in driving.bits))
    return 0


# -------------------------------------------------------------- simulate

def _cmd_simulate(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    chain = ChainKind(args.chain, args.n)
    x0 = _parse_state(args.x0, args.n)
    states = simulate_random(chain, x0, args.t, seed)
    lines = [
        f"# shiftwalk simulate schema_version={SCHEMA_VERSION} "
        f"chain={chain.kind} n={args.n} seed={seed}",
        "t,state,weight",
    ]
    lines.extend(f"{t},{s},{w}" for t, s, w in trajectory_rows(states))
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftwalk",
        description="Verification lab for the shift-register walk on the hypercube.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=suites.suite_names())
    p.add_argument("--n-max", type=int, default=None, help="largest dimension to sweep")
    p.add_argument("--trials", type=int, default=None, help="replay count (bounded-diff)")
    p.add_argument("--samples", type=int, default=None, help="trajectory count (variance)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="write the JSON report to a file")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("profile", help="distance-to-uniform profile over time")
    p.add_argument("--chain", choices=("q1", "q2"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", required=True, help="time or range, e.g. 11 or 0..15")
    p.add_argument("--samples", type=int, default=0,
                   help="Monte Carlo trajectories for the empirical lower bound")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--alpha", type=float, default=0.75)
    p.add_argument("--c", type=float, default=None,
                   help="window constant (default: log n)")
    p.add_argument("--x0", default=None, help="start state bitstring (default 0)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_profile)

    p = sub.add_parser("sample", help="exact uniform samples via the n-step walk")
    p.add_argument("--n", type=int, required=True, help="even state length")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--x0", default=None)
    p.add_argument("--hex", action="store_true", help="emit packed hex, not bits")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("solve", help="driving bits that steer one state to another")
    p.add_argument("--from", dest="from_state", required=True, metavar="BITS")
    p.add_argument("--to", dest="to_state", required=True, metavar="BITS")
    p.add_argument("--n", type=int, default=None, help="optional length check")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("simulate", help="dump one random trajectory as CSV")
    p.add_argument("--chain", choices=("q1", "q2"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--x0", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
