"""Command-line front end: bound tables, verification sweeps, rate curves, code search."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import bounds, reference, search, verify
from .errors import ScaleLimitError
from .grain_model import BitWord

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BUDGET = 2
EXIT_CONFIG = 64

ENUM_GUARD = 16


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def parse_int_list(text: str) -> list[int]:
    """'2..10,15,20' or '2-4,7' -> sorted distinct ints."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        for sep in ("..", "-"):
            if sep in part:
                lo, hi = (int(p) for p in part.split(sep, 1))
                if hi < lo:
                    raise ConfigError(f"empty range {part!r}")
                out.update(range(lo, hi + 1))
                break
        else:
            out.add(int(part))
    if not out:
        raise ConfigError(f"empty list {text!r}")
    return sorted(out)


def _int_list(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except (ConfigError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


# -- bounds -----------------------------------------------------------------------

def bound_rows(ns: Sequence[int], ts: Sequence[int]) -> list[dict]:
    rows = []
    for t in ts:
        for n in ns:
            fc = bounds.frac_cover_bound(n, t)
            cv = bounds.conj_v_bound(n, t)
            rows.append(
                {
                    "n": n,
                    "t": t,
                    "frac_cover": fc,
                    "conj_v": cv,
                    "lower": reference.lower_bound(n, t),
                    "conjectural": fc.conjectural or cv.conjectural,
                }
            )
    return rows


def cmd_bounds(args, out) -> int:
    rows = bound_rows(args.n, args.t)
    if args.format == "json":
        payload = [
            {
                "n": r["n"],
                "t": r["t"],
                "frac_cover": r["frac_cover"].as_dict(),
                "conj_v": r["conj_v"].as_dict(),
                "lower": r["lower"],
                "conjectural": r["conjectural"],
            }
            for r in rows
        ]
        json.dump(payload, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "t", "frac_cover", "conj_v", "lower", "status"])
        for r in rows:
            w.writerow([r["n"], r["t"], r["frac_cover"].floored, r["conj_v"].floored,
                        "" if r["lower"] is None else r["lower"],
                        "conjectural" if r["conjectural"] else "proven"])
    else:
        out.write(f"{'n':>4} {'t':>3} {'frac_cover':>12} {'conj_v':>12} {'lower':>7}\n")
        for r in rows:
            lower = "" if r["lower"] is None else f"({r['lower']})"
            tag = "  conjectural" if r["conjectural"] else ""
            out.write(f"{r['n']:>4} {r['t']:>3} {r['frac_cover'].floored:>12} "
                      f"{r['conj_v'].floored:>12} {lower:>7}{tag}\n")
    return EXIT_OK


# -- verify ----------------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    if not (args.covering or args.histograms or args.pairing or args.t3_side):
        raise ConfigError("choose at least one of --covering, --histograms, --pairing, --t3-side")
    if args.n_max < 1:
        raise ConfigError("--n-max must be positive")
    if args.n_max > ENUM_GUARD and not args.unsafe_scale:
        raise ConfigError(f"--n-max {args.n_max} exceeds {ENUM_GUARD}; pass --unsafe-scale to override")
    weightings = [verify.Weighting.PHI, verify.Weighting.BALL] if args.weighting == "both" \
        else [verify.Weighting(args.weighting)]
    records: list[dict] = []
    failed = False

    def emit(rec: dict) -> None:
        records.append(rec)
        if args.format == "text":
            out.write(rec["line"] + "\n")

    if args.covering:
        for t in args.t:
            for weighting in weightings:
                worst = None
                for n in range(1, args.n_max + 1):
                    rep = verify.check_covering_inequality(
                        n, t, weighting, unsafe=args.unsafe_scale, workers=args.jobs
                    )
                    if worst is None or (not rep.holds and worst.holds) or \
                            (rep.holds == worst.holds and rep.min_lhs < worst.min_lhs):
                        worst = rep
                    if not rep.holds:
                        break
                kind = "evidence" if t >= 4 else "assertion"
                if worst.holds:
                    verdict = "conjectural: no counterexample found" if t >= 4 else "pass"
                else:
                    verdict = "conjectural: COUNTEREXAMPLE" if t >= 4 else "FAIL"
                    failed |= t < 4
                emit({
                    "check": "covering", "kind": kind, "t": t, "n_max": args.n_max,
                    "weighting": weighting.value, "holds": worst.holds,
                    "min_lhs": f"{worst.min_lhs.numerator}/{worst.min_lhs.denominator}",
                    "witness": str(worst.witness),
                    "line": f"covering t={t} weighting={weighting.value} n<={args.n_max}: {verdict} "
                            f"(min lhs {worst.min_lhs} at {worst.witness})",
                })

    hist_ts = [t for t in args.t if t in (2, 3)]
    if (args.histograms or args.pairing) and not hist_ts:
        raise ConfigError("--histograms/--pairing need t in {2,3}")

    if args.histograms:
        for t in hist_ts:
            bad = None
            for n in range(1, args.n_max + 1):
                for v in range(1 << n):
                    x = BitWord(n, v)
                    if not verify.check_weight_histogram(x, t):
                        bad = x
                        break
                if bad:
                    break
            failed |= bad is not None
            emit({
                "check": "histograms", "kind": "assertion", "t": t, "n_max": args.n_max,
                "holds": bad is None, "witness": None if bad is None else str(bad),
                "line": f"histograms t={t} n<={args.n_max}: "
                        + ("pass" if bad is None else f"FAIL at {bad}"),
            })

    if args.pairing:
        for t in hist_ts:
            bad = None
            pairs = 0
            for n in range(1, args.n_max + 1):
                for v in range(1 << n):
                    rep = verify.build_pairing(BitWord(n, v), t)
                    pairs += len(rep.mapping)
                    if not rep.ok:
                        bad = rep
                        break
                if bad:
                    break
            failed |= bad is not None
            emit({
                "check": "pairing", "kind": "assertion", "t": t, "n_max": args.n_max,
                "holds": bad is None, "pairs": pairs,
                "witness": None if bad is None else str(bad.x),
                "violations": [] if bad is None else bad.violations,
                "line": f"pairing t={t} n<={args.n_max}: "
                        + (f"pass ({pairs} pairs)" if bad is None
                           else f"FAIL at {bad.x}: {'; '.join(bad.violations[:3])}"),
            })

    if args.t3_side:
        rep = verify.check_t3_side_conditions(args.omega_max)
        failed |= not rep.ok
        emit({
            "check": "t3-side", "kind": "assertion", "omega_max": args.omega_max,
            "holds": rep.ok, "exact_instances": rep.exact_instances,
            "min_exact_rhs": str(rep.min_exact_rhs), "g_instances": rep.g_instances,
            "min_g": rep.min_g, "failures": [list(map(str, f)) for f in rep.failures[:20]],
            "line": f"t3 side conditions omega<={args.omega_max}: "
                    + ("pass" if rep.ok else f"FAIL {rep.failures[:3]}")
                    + f" ({rep.exact_instances} exact profiles, min rhs {rep.min_exact_rhs}; "
                      f"{rep.g_instances} g values, min {rep.min_g:.3e})",
        })

    if args.format == "json":
        json.dump([{k: v for k, v in r.items() if k != "line"} for r in records], out, indent=2)
        out.write("\n")
    return EXIT_FAILED if failed else EXIT_OK


# -- curves ----------------------------------------------------------------------------

def curves_csv(step: float) -> str:
    buf = io.StringIO()
    buf.write("tau,info_bound,conj_bound\n")
    for p in bounds.rate_curve(step):
        buf.write(f"{p.tau:.6f},{p.info_bound:.6f},{p.conj_bound:.6f}\n")
    buf.write(f"# crossing_tau,{bounds.bound_crossing():.6f}\n")
    return buf.getvalue()


def cmd_curves(args, out) -> int:
    if not 0.0 < args.step <= 0.01:
        raise ConfigError(f"--step must lie in (0, 0.01], got {args.step}")
    text = curves_csv(args.step)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        out.write(text.rsplit("\n", 2)[-2] + "\n")
    else:
        out.write(text)
    return EXIT_OK


# -- search ------------------------------------------------------------------------------

def cmd_search(args, out) -> int:
    if args.n > ENUM_GUARD and not args.unsafe_scale:
        raise ConfigError(f"--n {args.n} exceeds {ENUM_GUARD}; pass --unsafe-scale to override")
    if args.t < 0:
        raise ConfigError("--t must be nonnegative")
    res = search.max_code(args.n, args.t, budget=args.budget, unsafe=args.unsafe_scale)
    status = "optimal" if res.optimal else "budget exhausted (best found)"
    out.write(f"M({args.n},{args.t}) {'=' if res.optimal else '>='} {res.size}  [{status}]\n")
    consistent = True
    if args.t >= 1:
        fc = bounds.frac_cover_bound(args.n, args.t)
        cv = bounds.conj_v_bound(args.n, args.t)
        out.write(f"upper bounds: conj_v {cv.floored}, frac_cover {fc.floored}"
                  f"{'  (conjectural)' if fc.conjectural else ''}\n")
        if not fc.conjectural:
            consistent &= res.size <= cv.floored <= fc.floored
    lower = reference.lower_bound(args.n, args.t)
    if lower is not None:
        out.write(f"reference lower bound: {lower}\n")
        if res.optimal:
            consistent &= res.size >= lower
    if not consistent:
        out.write("CROSS-CHECK FAILED\n")
    if args.witness:
        search.write_witness(res, args.witness)
    if not consistent:
        return EXIT_FAILED
    return EXIT_OK if res.optimal else EXIT_BUDGET


# -- entry point ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grainbound", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", help="tabulate cardinality upper bounds")
    b.add_argument("--n", type=_int_list, required=True, help="e.g. 2..10,15,20")
    b.add_argument("--t", type=_int_list, required=True, help="e.g. 1,2,3")
    b.add_argument("--format", choices=["text", "csv", "json"], default="text")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="exhaustive verification sweeps")
    v.add_argument("--covering", action="store_true")
    v.add_argument("--histograms", action="store_true")
    v.add_argument("--pairing", action="store_true")
    v.add_argument("--t3-side", action="store_true")
    v.add_argument("--n-max", type=int, default=10)
    v.add_argument("--t", type=_int_list, default=[1, 2, 3])
    v.add_argument("--weighting", choices=["phi", "ball", "both"], default="both")
    v.add_argument("--omega-max", type=int, default=200)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--unsafe-scale", action="store_true")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("curves", help="asymptotic rate-bound curves as CSV")
    c.add_argument("--step", type=float, default=0.001)
    c.add_argument("--out")
    c.set_defaults(func=cmd_curves)

    s = sub.add_parser("search", help="exact M(n,t) by independent-set search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--witness")
    s.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET)
    s.add_argument("--unsafe-scale", action="store_true")
    s.set_defaults(func=cmd_search)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ConfigError, ScaleLimitError) as exc:
        print(f"grainbound: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
