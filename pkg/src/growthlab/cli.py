"""growthlab command line.

    growthlab COMMAND --config exp.json [--out PATH] [--format csv|json]
                      [--budget N] [--exact-limit N] [--seed N]

Exit codes: 0 success, 2 config error, 3 budget exceeded, 4 verification
failure, 5 unknown certificate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable

from . import asymptotics, counterexample, covering, fmsets, functorial, products
from .config import ConfigError, ExperimentConfig, load_config, parse_rational
from .covering import CoverVerificationError, ExactLimit
from .groups import HEISENBERG, GroupError
from .products import BudgetExceeded, ElementSet

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4
EXIT_UNKNOWN = 5

CSV_COLUMNS = {
    "growth": ["n", "size"],
    "profile": ["r", "h", "l_h", "exact"],
}


class Outcome(Exception):
    """Carries a non-zero exit status along with the report built so far."""

    def __init__(self, code: int, report: dict, message: str):
        super().__init__(message)
        self.code = code
        self.report = report


class Run:
    def __init__(self, cfg: ExperimentConfig, budget: int | None, exact_limit: ExactLimit, seed: int):
        self.cfg = cfg
        self.budget = budget
        self.exact_limit = exact_limit
        self.seed = seed


def cmd_growth(run: Run):
    S = run.cfg.element_set()
    n_max = run.cfg.require("n_max")
    records = products.growth_sequence(S, n_max, run.budget)
    report = {"records": [[r.n, r.size] for r in records]}
    try:
        window = run.cfg.get("window")
        est = products.estimate_degree(records, tuple(window) if window else None)
        report["estimate"] = {
            "d_hat": round(est.d_hat, 12),
            "c1_hat": round(est.c1_hat, 12),
            "c2_hat": round(est.c2_hat, 12),
            "window": list(est.window),
        }
    except ValueError as exc:
        report["estimate"] = {"error": str(exc)}
    try:
        report["bass_guivarch_degree"] = products.bass_guivarch_degree(S.group)
    except TypeError:
        report["bass_guivarch_degree"] = None
    rows = [(r.n, r.size) for r in records]
    return report, rows


def cmd_power(run: Run):
    A = run.cfg.element_set()
    P = products.power(A, run.cfg.require("h"), run.budget)
    report = {"h": run.cfg.require("h"), "size": len(P), "elements": P.to_json()}
    header = [f"c{i}" for i in range(A.group.dim)]
    return report, P.sorted(), header


def cmd_cover(run: Run):
    E = run.cfg.element_set()
    method = run.cfg.get("method", "min")
    if method == "polynomial_growth":
        res = covering.polynomial_growth_cover(
            E,
            parse_rational(run.cfg.require("R0"), "R0"),
            parse_rational(run.cfg.require("theta"), "theta"),
            run.cfg.require("h"),
            run.budget,
        )
    else:
        F = run.cfg.element_set("second_set")
        if method == "ruzsa":
            res = covering.ruzsa_cover(E, F, run.budget)
        else:
            res = covering.min_cover(E, F, run.exact_limit, run.budget)
    report = {"method": method, "cover": res.to_json()}
    header = [f"c{i}" for i in range(E.group.dim)]
    if not res.verified:
        raise Outcome(EXIT_VERIFY, report, "cover failed verification")
    return report, res.X.sorted(), header


def cmd_profile(run: Run):
    A = run.cfg.element_set()
    r = run.cfg.require("r")
    prof = asymptotics.approx_profile(A, r, run.cfg.h_values(), run.exact_limit, run.budget)
    report = {
        "r": r,
        "entries": [
            {"h": e.h, "l_h": e.l_h, "exact": e.exact, "verified": e.verified} for e in prof.entries
        ],
        "empirical_h0": prof.empirical_h0(),
        "truncated_at": prof.truncated_at,
    }
    if any(not e.verified for e in prof.entries):
        raise Outcome(EXIT_VERIFY, report, "profile cover failed verification")
    if prof.truncated_at is not None:
        report["budget_note"] = prof.budget_note
        raise Outcome(EXIT_BUDGET, report, prof.budget_note or "budget exhausted")
    return report, prof.csv_rows()


def cmd_semigroup(run: Run):
    A = run.cfg.element_set()
    cutoff = run.cfg.get("cutoff", 32)
    cert = asymptotics.semigroup_certificate(A, cutoff, run.budget)
    report = {"certificate": cert.to_json()}
    if cert.status is not asymptotics.Status.PROVEN:
        raise Outcome(EXIT_UNKNOWN, report, f"semigroup generation unknown at cutoff {cutoff}")
    if A.identity_in:
        report["inverse_bound"] = asymptotics.inverse_bound(A, cert, run.budget).to_json()
    lo, hi = run.cfg.get("h_range", [1, 8])
    pad = asymptotics.padding_cert(A, cert.p, range(lo, hi + 1), run.budget)
    report["padding"] = pad.to_json()
    return (report,)


def _symmetric_closure(A: ElementSet) -> ElementSet:
    return (A | A.inverse()).with_identity()


def cmd_inner_ball(run: Run):
    A = run.cfg.element_set()
    S = run.cfg.element_set("second_set") if "second_set" in run.cfg.raw else _symmetric_closure(A)
    theta = parse_rational(run.cfg.require("theta"), "theta")
    checks = asymptotics.inner_ball_check(A, S, theta, run.cfg.h_values(), run.budget)
    report = {
        "theta": str(theta),
        "inner_ball": [[h, ok] for h, ok in sorted(checks.items())],
    }
    if "r" in run.cfg.raw and "h" in run.cfg.raw:
        res = asymptotics.criterion_cover(A, S, theta, run.cfg.require("r"), run.cfg.require("h"), run.budget)
        report["criterion_cover"] = res.to_json()
        if not res.verified:
            raise Outcome(EXIT_VERIFY, report, "criterion cover failed verification")
    if not all(checks.values()):
        raise Outcome(EXIT_VERIFY, report, "inner ball inclusion fails")
    return (report,)


def cmd_fm_check(run: Run):
    F = run.cfg.element_set()
    M = fmsets.SemigroupDesc(run.cfg.element_set("second_set"))
    depth = run.cfg.get("depth", 8)
    norms = {f: fmsets.normalizes(f, M, depth, run.budget) for f in F.sorted()}
    report = {"normalization": [[list(f), rep.to_json()] for f, rep in norms.items()]}
    verdicts = {rep.verdict for rep in norms.values()}
    if fmsets.Verdict.REFUTED in verdicts:
        raise Outcome(EXIT_VERIFY, report, "F does not normalize M")
    if fmsets.Verdict.UNKNOWN in verdicts:
        raise Outcome(EXIT_UNKNOWN, report, "normalization unknown at this depth")
    h, L = run.cfg.require("h"), run.cfg.require("L")
    chk = fmsets.fm_power_check(F, M, h, L, run.budget, depth)
    report["fm_power"] = chk.to_json()
    if "r" in run.cfg.raw:
        res = fmsets.lift_cover_fm(F, M, run.cfg.require("r"), h, L, run.exact_limit, run.budget, depth)
        report["lift_cover_fm"] = res.to_json()
        if not res.verified:
            raise Outcome(EXIT_VERIFY, report, "lifted FM cover failed verification")
    if not chk.holds:
        raise Outcome(EXIT_VERIFY, report, "(FM)^h = F^h M fails in the window")
    return (report,)


def cmd_witness(run: Run):
    if run.cfg.group is not None and run.cfg.group != HEISENBERG:
        raise ConfigError("witness runs in the Heisenberg group")
    X = ElementSet(HEISENBERG, run.cfg.get("set", []))
    rep = counterexample.find_witness(run.cfg.require("r"), run.cfg.require("h"), X, run.cfg.get("n_max"))
    report = rep.to_json()
    if rep.n is None:
        raise Outcome(EXIT_UNKNOWN, report, "no witness up to n_max")
    return (report,)


def _hom(run: Run) -> functorial.Hom:
    desc = run.cfg.require("hom")
    G = run.cfg.group
    kind = desc["kind"]
    try:
        if kind == "identity":
            pi = functorial.Hom.identity(G)
        elif kind == "abelianization":
            pi = functorial.Hom.abelianization()
        elif kind == "reduction":
            pi = functorial.Hom.reduction(G, desc["modulus"])
        elif kind == "project_base":
            pi = functorial.Hom.project_base(G)
        else:
            pi = functorial.Hom.project_finite(G)
    except (KeyError, AttributeError, functorial.HomError) as exc:
        raise ConfigError(f"cannot build hom {kind!r} on {G}: {exc}") from exc
    functorial.check_hom_law(pi, seed=run.seed)
    return pi


def cmd_push(run: Run):
    pi = _hom(run)
    A = run.cfg.element_set()
    X = run.cfg.element_set("second_set")
    res = functorial.push_cover(pi, A, X, run.cfg.require("r"), run.cfg.require("h"), run.budget)
    report = {"hom": pi.kind, "cover": res.to_json()}
    if not res.verified:
        raise Outcome(EXIT_VERIFY, report, "pushed cover failed verification")
    return (report,)


def cmd_lift(run: Run):
    pi = _hom(run)
    A = run.cfg.element_set()
    Y = run.cfg.element_set("second_set", pi.target)
    if "kernel" in run.cfg.raw:
        K = functorial.FiniteKernel(pi, run.cfg.element_set("kernel"))
    else:
        K = pi.kernel()
    res = functorial.lift_cover(pi, K, A, Y, run.cfg.require("r"), run.cfg.require("h"), run.budget)
    report = {"hom": pi.kind, "kernel": K.elements.to_json(), "cover": res.to_json()}
    if not res.verified:
        raise Outcome(EXIT_VERIFY, report, "lifted cover failed verification")
    return (report,)


COMMANDS: dict[str, Callable] = {
    "growth": cmd_growth,
    "power": cmd_power,
    "cover": cmd_cover,
    "profile": cmd_profile,
    "semigroup": cmd_semigroup,
    "inner-ball": cmd_inner_ball,
    "fm-check": cmd_fm_check,
    "witness": cmd_witness,
    "push": cmd_push,
    "lift": cmd_lift,
}


def render(command: str, fmt: str, result: tuple, status: int = EXIT_OK) -> str:
    report = result[0]
    if fmt == "json":
        body = {"command": command, "status": status, **report}
        return json.dumps(body, indent=2, sort_keys=True) + "\n"
    if len(result) < 2:
        raise ConfigError(f"{command} has no CSV form; use --format json")
    rows = result[1]
    header = result[2] if len(result) > 2 else CSV_COLUMNS[command]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="growthlab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", required=True, help="experiment JSON file")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=["csv", "json"], help="defaults to csv for growth/profile, json otherwise")
    p.add_argument("--budget", type=int, help="element-count cap (overrides GROWTHLAB_BUDGET)")
    p.add_argument("--exact-limit", type=int, help="max candidate translates for exact cover search")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or ("csv" if args.command in CSV_COLUMNS else "json")
    try:
        cfg = load_config(args.config)
        budget = args.budget if args.budget is not None else cfg.get("budget")
        limit_n = args.exact_limit if args.exact_limit is not None else cfg.get("exact_limit")
        exact_limit = ExactLimit() if limit_n is None else ExactLimit(max_candidates=limit_n)
        run = Run(cfg, budget, exact_limit, args.seed)
        status = EXIT_OK
        message = ""
        try:
            result = COMMANDS[args.command](run)
        except Outcome as out:
            result, status, message = (out.report,), out.code, str(out)
            fmt = "json"
        text = render(args.command, fmt, result, status)
    except (ConfigError, GroupError, functorial.HomError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CoverVerificationError, asymptotics.CertificateError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if message:
        print(message, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
