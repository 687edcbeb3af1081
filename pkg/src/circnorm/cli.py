"""Command-line interface: ``circnorm {exact,bounds,oracle,sweep,verify}``.

Exit codes: 0 success, 1 usage or I/O error, 2 no closed form applies,
3 a verification property failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import verify as verify_mod
from .bounds import best_bounds
from .core import CirculantSpec, Exponent, NotApplicableError, canonicalize
from .exact import exact_norm
from .oracle import DEFAULT_SEED, OracleConfig, power_estimate

EXIT_OK, EXIT_USAGE, EXIT_NO_FORMULA, EXIT_VERIFY = 0, 1, 2, 3
SWEEP_COLUMNS = ("p", "lower", "upper_holder", "upper_rt", "upper_harmonic", "oracle", "exact", "regime")


class UsageError(Exception):
    pass


def fmt(x: Optional[float]) -> str:
    """Shortest round-trip repr; integral values drop the trailing '.0'."""
    if x is None:
        return ""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = repr(x)
    if s.endswith(".0"):
        s = s[:-2]
    return s


@dataclass(frozen=True)
class SweepRow:
    p: Exponent
    lower: float
    upper_holder: float
    upper_rt: float
    upper_harmonic: float
    oracle: float
    exact: Optional[float]
    regime: str

    def csv_fields(self) -> list:
        return [fmt(self.p.p), fmt(self.lower), fmt(self.upper_holder), fmt(self.upper_rt),
                fmt(self.upper_harmonic), fmt(self.oracle), fmt(self.exact), self.regime]

    def to_json(self) -> dict:
        return {
            "p": "inf" if self.p.is_infinite else self.p.p,
            "lower": self.lower,
            "upper_holder": self.upper_holder,
            "upper_rt": self.upper_rt,
            "upper_harmonic": self.upper_harmonic,
            "oracle": self.oracle,
            "exact": self.exact,
            "regime": self.regime,
        }

    @classmethod
    def from_json(cls, d: dict) -> "SweepRow":
        return cls(Exponent.parse(d["p"]), d["lower"], d["upper_holder"], d["upper_rt"],
                   d["upper_harmonic"], d["oracle"], d["exact"], d["regime"])


def parse_float(text: str, name: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"{name}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"{name}: must be finite, got {text!r}")
    return value


def parse_row(text: str) -> CirculantSpec:
    parts = [t for t in text.split(",") if t.strip()]
    if not parts:
        raise UsageError("--row needs at least one entry")
    return CirculantSpec(tuple(parse_float(t, "--row") for t in parts))


def parse_exponent(text: str) -> Exponent:
    try:
        return Exponent.parse(text)
    except ValueError as exc:
        raise UsageError(f"--p: {exc}") from None


def parse_grid(text: str) -> list:
    """Comma list of exponents or ``log:lo:hi:count`` items; 1, 2 and inf are always added."""
    ps = []
    for item in (t.strip() for t in text.split(",")):
        if not item:
            continue
        if item.startswith("log:"):
            try:
                _, lo, hi, count = item.split(":")
                lo, hi, count = float(lo), float(hi), int(count)
            except ValueError:
                raise UsageError(f"bad grid item {item!r}; expected log:lo:hi:count") from None
            if lo < 1 or hi < lo or count < 1 or not math.isfinite(hi):
                raise UsageError(f"bad grid item {item!r}")
            ps.extend(Exponent(float(v)) for v in np.geomspace(lo, hi, count))
        else:
            ps.append(parse_exponent(item))
    ps.extend([Exponent(1.0), Exponent(2.0), Exponent.infinity()])
    return sorted(set(ps), key=lambda e: e.p)


def _two_param_from_args(args):
    if args.n is None or args.a is None or args.b is None:
        raise UsageError("give either --row or all of --n, --a, --b")
    try:
        n = int(args.n)
    except ValueError:
        raise UsageError(f"--n: not an integer: {args.n!r}") from None
    if n < 1:
        raise UsageError("--n must be positive")
    return canonicalize(n, parse_float(args.a, "--a"), parse_float(args.b, "--b"))


def describe(spec) -> str:
    sign = "-" if spec.diagonal_sign < 0 else ""
    return f"A(n={spec.n}, {sign}a, b) with a={fmt(spec.a)}, b={fmt(spec.b)}"


def _oracle_cfg(args) -> OracleConfig:
    return OracleConfig(restarts=args.restarts, tol=args.tol, seed=args.seed)


def cmd_exact(args, out) -> int:
    e = parse_exponent(args.p)
    if args.row is not None:
        spec = parse_row(args.row)
        label = None
    else:
        spec = _two_param_from_args(args)
        label = describe(spec)
    try:
        res = exact_norm(spec, e)
    except NotApplicableError as exc:
        print(f"no closed form; use bounds ({exc})", file=sys.stderr)
        return EXIT_NO_FORMULA
    print(f"{fmt(res.value)} ({res.method})", file=out)
    if label:
        print(f"canonical form: {label}", file=out)
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    spec = _two_param_from_args(args)
    e = parse_exponent(args.p)
    bs = best_bounds(spec, e)
    print(f"canonical form: {describe(spec)}", file=out)
    print(f"p={fmt(e.p)} regime={bs.regime.value}", file=out)
    for name in ("lower", "upper_holder", "upper_rt", "upper_harmonic"):
        print(f"{name}: {fmt(getattr(bs, name))}", file=out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    e = parse_exponent(args.p)
    spec = parse_row(args.row) if args.row is not None else _two_param_from_args(args)
    rep = power_estimate(spec, e, _oracle_cfg(args))
    print(f"estimate: {fmt(rep.estimate)}", file=out)
    print("witness: " + ",".join(fmt(v) for v in rep.witness), file=out)
    print(f"restarts={rep.restarts_used} iterations={rep.iterations} converged={rep.converged} seed={rep.seed}",
          file=out)
    return EXIT_OK


def sweep_rows(spec, ps, cfg: OracleConfig) -> list:
    rows = []
    for e in ps:
        bs = best_bounds(spec, e)
        try:
            exact = exact_norm(spec, e).value
        except NotApplicableError:
            exact = None
        est = power_estimate(spec, e, cfg).estimate
        rows.append(SweepRow(e, bs.lower, bs.upper_holder, bs.upper_rt, bs.upper_harmonic, est, exact,
                             bs.regime.value))
    return rows


def render_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow(r.csv_fields())
    return buf.getvalue()


def render_json(rows) -> str:
    return json.dumps([r.to_json() for r in rows], indent=2) + "\n"


def cmd_sweep(args, out) -> int:
    spec = _two_param_from_args(args)
    ps = parse_grid(args.p)
    rows = sweep_rows(spec, ps, _oracle_cfg(args))
    text = render_csv(rows) if args.format == "csv" else render_json(rows)
    if args.out in (None, "-"):
        out.write(text)
    else:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.draws < 0 or args.n_max < 1:
        raise UsageError("--draws must be >= 0 and --n-max >= 1")
    cfg = OracleConfig(restarts=args.restarts, tol=args.tol, seed=args.seed)
    results = verify_mod.run(args.suite, args.draws, args.n_max, args.seed, cfg)
    failed = False
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"[{status}] {r.name}: {r.checks} checks, {r.failures} failures, worst residual {r.worst:.3e}",
              file=out)
        if not r.ok:
            failed = True
            print(f"  counterexample: {r.counterexample}", file=out)
    return EXIT_VERIFY if failed else EXIT_OK


def _add_matrix_args(sp, row=True):
    sp.add_argument("--n", help="matrix size for A(n, a, b)")
    sp.add_argument("--a", help="diagonal entry (negative for A(n, -a, b))")
    sp.add_argument("--b", help="off-diagonal entry")
    if row:
        sp.add_argument("--row", help="first row of a general circulant, comma separated")


def _add_oracle_args(sp):
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--restarts", type=int, default=32)
    sp.add_argument("--tol", type=float, default=1e-12)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circnorm", description="Induced p-norms of circulant matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("exact", help="closed-form norm, if one applies")
    _add_matrix_args(sp)
    sp.add_argument("--p", required=True)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("bounds", help="lower/upper bounds for A(n, -a, b)")
    _add_matrix_args(sp, row=False)
    sp.add_argument("--p", required=True)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("oracle", help="power-iteration lower estimate with witness")
    _add_matrix_args(sp)
    sp.add_argument("--p", required=True)
    _add_oracle_args(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("sweep", help="bounds, oracle and exact values over a p grid")
    _add_matrix_args(sp, row=False)
    sp.add_argument("--p", default="", help="comma list of exponents and/or log:lo:hi:count")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", help="output path (default stdout)")
    _add_oracle_args(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the property suites")
    sp.add_argument("--suite", choices=("exact", "bounds", "lemma", "all"), default="all")
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--draws", type=int, default=20)
    _add_oracle_args(sp)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage; 2 is reserved for "no closed form"
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
