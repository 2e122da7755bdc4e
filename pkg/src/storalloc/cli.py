"""Command-line front end: ``storalloc <subcommand> [flags]``.

Every subcommand emits one record per result row, as CSV (header first) or a
single JSON object with ``version``, ``command``, ``params`` and ``results``.
Floats carry 12 significant digits; exact rationals are written as ``"p/q"``
with a ``*_decimal`` companion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from math import comb

import numpy as np

from . import __version__
from .errors import (DoesNotFit, InfeasibleProfile, InstanceTooLarge, InvalidParameter,
                     SearchSpaceTooLarge)
from .exact import best_symmetric_exact, brute_force_optimal, count_failing_subsets
from .model import Problem, alpha_of_allocation, make_allocation, symmetric_allocation
from .phi import ENUMERATION_LIMIT, phi_enumerate, phi_from_profile, phi_from_profile_float, sandwich_check
from .randomgraph import GraphTrialConfig, gnp_recovery_rate, optimize_symmetric_poisson, poisson_failure
from .sampler import SampleMode, mc_failure
from .symmetric import (ScanMode, hypergeo_success_fraction, make_plan, optimize_symmetric, phi_symmetric,
                        success_curves, sweep_budget)

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_TOO_LARGE = 3

SWEEP_FIELDS = ["T", "budget_ratio", "j_star", "success", "method"]


def fmt_float(v) -> float:
    return float(f"{float(v):.12g}")


def rational(name, value: Fraction) -> dict:
    return {name: f"{value.numerator}/{value.denominator}", f"{name}_decimal": f"{float(value):.12g}"}


def alloc_text(x) -> str:
    return ",".join(str(v) for v in x)


# -- subcommand handlers ---------------------------------------------------------
# each returns a list of flat dicts

def _problem(args) -> Problem:
    return Problem(args.n, args.r, args.F, args.T)


def _allocation(args, problem):
    if args.alloc is not None:
        return make_allocation(args.alloc, problem)
    if args.j is not None:
        return symmetric_allocation(problem, args.j)
    raise InvalidParameter("alloc", "give --alloc or --j")


def cmd_exact(args):
    problem = _problem(args)
    alloc = _allocation(args, problem)
    res = count_failing_subsets(alloc, problem)
    return [{"alloc": alloc_text(alloc.x), "psi": res.psi, "total": res.total, **rational("success", res.success)}]


def cmd_phi(args):
    problem = _problem(args)
    if args.alloc is None and args.j is not None:
        return [{"j": args.j, "phi": fmt_float(phi_symmetric(args.j, problem)), "method": "binomial_phi"}]
    alloc = _allocation(args, problem)
    profile = alpha_of_allocation(alloc, problem)
    rec = {"alloc": alloc_text(alloc.x), **rational("phi", phi_from_profile(profile, problem.r)),
           "phi_float": fmt_float(phi_from_profile_float(profile, problem.r))}
    if problem.n**problem.r <= ENUMERATION_LIMIT:
        rec.update(rational("phi_enumerated", phi_enumerate(alloc, problem)))
    return [rec]


def cmd_symmetric(args):
    problem = _problem(args)
    if args.j is not None:
        plan = make_plan(problem, args.j)
        placed = count_failing_subsets(symmetric_allocation(problem, args.j, saturate=True), problem)
        try:
            phi = fmt_float(phi_symmetric(args.j, problem))
        except InfeasibleProfile:
            phi = None
        return [{"j": plan.j, "m": plan.m, **rational("hypergeo_success", hypergeo_success_fraction(plan, problem)),
                 **rational("exact_success_placed", placed.success), "phi_symmetric": phi}]
    j_star, success, row = optimize_symmetric(problem, args.scan)
    j_exact, res = best_symmetric_exact(problem)
    return [{"j_star": j_star, "m": row.m, "success": fmt_float(success), "mode": ScanMode(args.scan).value,
             "j_star_exact": j_exact, **rational("success_exact", res.success)}]


def cmd_sweep(args):
    t_min = args.t_min if args.t_min is not None else args.F
    t_max = args.t_max if args.t_max is not None else args.n * args.F
    Problem(args.n, args.r, args.F, t_min)
    if args.per_j:
        if args.t_step < 1:
            raise InvalidParameter("t-step", f"step must be positive, got {args.t_step}")
        if t_max < t_min:
            raise InvalidParameter("t-max", f"t-max {t_max} is below t-min {t_min}")
        return [{"T": T, "budget_ratio": fmt_float(Fraction(T, args.F)), "j": j, "m": m, "success": fmt_float(s)}
                for T, j, m, s in success_curves(args.n, args.r, args.F, t_min, t_max, args.t_step)]
    rows = sweep_budget(args.n, args.r, args.F, t_min, t_max, args.t_step, args.scan)
    return [{"T": row.T, "budget_ratio": fmt_float(row.budget_ratio), "j_star": row.j_star,
             "success": fmt_float(row.success), "method": row.method.value} for row in rows]


def _random_allocations(problem, count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield make_allocation(rng.multinomial(problem.T, [1 / problem.n] * problem.n), problem)


def cmd_sandwich(args):
    problem = _problem(args)
    if args.alloc is not None:
        allocs = [make_allocation(args.alloc, problem)]
    else:
        allocs = _random_allocations(problem, args.samples or 10, args.seed or 0)
    out = []
    for alloc in allocs:
        rep = sandwich_check(alloc, problem)
        lower, upper = rep.holds
        out.append({"alloc": alloc_text(alloc.x), **rational("phi", rep.phi),
                    **rational("scaled_psi", rep.scaled_psi), **rational("bound", rep.bound),
                    **rational("slack_upper", rep.slack_upper), "lower_holds": lower, "upper_holds": upper})
    return out


def cmd_poisson(args):
    if args.mu is None:
        raise InvalidParameter("mu", "required")
    if args.j is not None:
        return [{"j": args.j, "mu": args.mu, "failure": fmt_float(poisson_failure(args.j, args.mu, args.F))}]
    j_star, failure = optimize_symmetric_poisson(args.mu, args.F, args.r, full_scan=args.scan == "full_scan")
    return [{"j_star": j_star, "mu": args.mu, "failure": fmt_float(failure), "mode": args.scan}]


def cmd_gnp(args):
    if args.j is None:
        raise InvalidParameter("j", "required")
    if args.d is None:
        raise InvalidParameter("d", "required")
    cfg = GraphTrialConfig(args.n, args.d, args.j, args.T, args.trials, args.seed or 0,
                           closed=not args.open_neighborhood)
    mean, stderr = gnp_recovery_rate(cfg, args.F)
    mu = cfg.mu()
    predicted = 1 - poisson_failure(args.j, mu, args.F) if mu > 0 else 0.0
    return [{"mean_success": fmt_float(mean), "stderr": fmt_float(stderr), "p": fmt_float(cfg.p),
             "mu": fmt_float(mu), "poisson_success": fmt_float(predicted), "trials": args.trials}]


def cmd_mc(args):
    problem = _problem(args)
    alloc = _allocation(args, problem)
    est = mc_failure(alloc, problem, args.mode, args.samples or 1_000_000, args.seed or 0)
    return [{"alloc": alloc_text(alloc.x), "mode": est.mode.value, "mean": fmt_float(est.mean),
             "stderr": fmt_float(est.stderr), "samples": est.samples, "seed": est.seed}]


def cmd_brute(args):
    problem = _problem(args)
    rep = brute_force_optimal(problem, args.max_space)
    total = comb(problem.n, problem.r)
    return [{"alloc": alloc_text(x), "psi": rep.best_psi, "total": total,
             **rational("success", 1 - Fraction(rep.best_psi, total)), "search_space_size": rep.search_space_size}
            for x in rep.optimal_allocations]


COMMANDS = {
    "exact": cmd_exact,
    "phi": cmd_phi,
    "symmetric": cmd_symmetric,
    "sweep": cmd_sweep,
    "sandwich": cmd_sandwich,
    "poisson": cmd_poisson,
    "gnp": cmd_gnp,
    "mc": cmd_mc,
    "brute": cmd_brute,
}


# -- argument parsing ------------------------------------------------------------

def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="storalloc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--seed", type=int)

    def add(name, help, problem=True, budget=True):
        p = sub.add_parser(name, help=help, parents=[common])
        if problem:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--r", type=int, required=True)
            p.add_argument("--F", type=int, required=True)
        if budget:
            p.add_argument("--T", type=int, required=True)
        return p

    def add_scan(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--full-scan", dest="scan", action="store_const", const="full_scan")
        g.add_argument("--candidates-only", dest="scan", action="store_const", const="candidates_only")
        p.set_defaults(scan="full_scan")

    p = add("exact", "exact failing-subset count of an allocation")
    p.add_argument("--alloc", type=_int_list)
    p.add_argument("--j", type=int, help="use the symmetric plan with this chunk size")

    p = add("phi", "failure probability with repeated draws")
    p.add_argument("--alloc", type=_int_list)
    p.add_argument("--j", type=int)

    p = add("symmetric", "evaluate one symmetric plan or find the best one")
    p.add_argument("--j", type=int)
    add_scan(p)

    p = add("sweep", "optimal symmetric plan across a budget range", budget=False)
    p.add_argument("--t-min", type=int)
    p.add_argument("--t-max", type=int)
    p.add_argument("--t-step", type=int, default=1)
    p.add_argument("--per-j", action="store_true", help="success curve for each chunk size ceil(F/i)")
    add_scan(p)

    p = add("sandwich", "check r! psi / n^r against phi", budget=True)
    p.add_argument("--alloc", type=_int_list)
    p.add_argument("--samples", type=int, help="number of random allocations when --alloc is absent")

    p = sub.add_parser("poisson", help="Poisson-limit failure of symmetric plans", parents=[common])
    p.add_argument("--mu", type=float)
    p.add_argument("--F", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--j", type=int)
    add_scan(p)
    p.set_defaults(scan="candidates_only")

    p = sub.add_parser("gnp", help="simulate recovery on G(n, d ln n / n)", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--F", type=int, required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--j", type=int)
    p.add_argument("--d", type=float)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--open-neighborhood", action="store_true", help="do not count the node's own symbols")

    p = add("mc", "Monte Carlo failure estimate")
    p.add_argument("--alloc", type=_int_list)
    p.add_argument("--j", type=int)
    p.add_argument("--mode", choices=[m.value for m in SampleMode], default=SampleMode.WITH_REPETITION.value)
    p.add_argument("--samples", type=int)

    p = add("brute", "exhaustive search for the optimal allocation")
    p.add_argument("--max-space", type=int, default=1_000_000)

    return parser


def params_of(args) -> dict:
    skip = {"command", "format", "out"}
    return {k.replace("_", "-"): v for k, v in vars(args).items() if k not in skip and v is not None}


def render(command, params, records, fmt) -> str:
    if fmt == "json":
        doc = {"version": __version__, "command": command, "params": params, "results": records}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    fields = SWEEP_FIELDS if command == "sweep" and records and "j_star" in records[0] else None
    if fields is None:
        fields = list(records[0]) if records else []
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)
    return buf.getvalue()


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records = COMMANDS[args.command](args)
    except InvalidParameter as exc:
        print(f"storalloc {args.command}: error: --{exc.param}: {str(exc).split(': ', 1)[1]}", file=sys.stderr)
        return EXIT_PARAM
    except (DoesNotFit, InfeasibleProfile) as exc:
        print(f"storalloc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (SearchSpaceTooLarge, InstanceTooLarge) as exc:
        print(f"storalloc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    text = render(args.command, params_of(args), records, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())
