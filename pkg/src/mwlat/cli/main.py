"""Command-line entry point: ``mwlat <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable

from .. import __version__
from ..base_change import analyze_base_change
from ..classification import classify_k3_L_stable, enumerate_with_rejections
from ..cohomology import (
    GModule,
    H1Result,
    InconsistentInputError,
    check_rank_stability,
    cyclotomic_module,
    h1_cyclic,
    regular_module,
    trivial_module,
    wc_kernel_from_points,
)
from ..mordell_weil import (
    FFPoint,
    is_non_torsion,
    rational_descent,
    shioda_tate_rank,
    trace,
    verify_generator_family,
)
from ..weierstrass import (
    NonMinimalError,
    SingularModelError,
    TrivialFamilyError,
    discriminant,
    fiber_configuration,
    is_minimal,
    minimize,
)
from .parsing import ParseError, parse_model
from .report import (
    RunReport,
    encode_configuration,
    encode_model,
    encode_point,
)
from .tables import format_configurations, format_summary, summary_row, summary_table, configuration_rows, trace_kernel_vectors

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MATH = 3
EXIT_FIXTURE = 4


class UsageError(Exception):
    pass


# -- analyze ------------------------------------------------------------------------------------

def _load_model(args):
    m = parse_model(args.model, args.field)
    return m, (m if is_minimal(m) else minimize(m))


def _rank(cfg, d: int, rho: int | None):
    if rho is None:
        if d != 1:
            return None, None
        rho = 10
    return shioda_tate_rank(cfg, rho), rho


def _place_text(place) -> str:
    if place.is_infinity:
        return "t = inf"
    if place.degree == 1:
        return f"t = {-place.pi.coeff(0)}"
    return f"{place.pi.to_string('t')} = 0"


def _config_lines(cfg) -> list[str]:
    out = []
    for fd in cfg.fibers:
        vf = "inf" if fd.v_f is None else fd.v_f
        vg = "inf" if fd.v_g is None else fd.v_g
        out.append(f"  {_place_text(fd.place)}: {fd.type}  "
                   f"v(f)={vf} v(g)={vg} v(D)={fd.v_delta}  components={fd.components}")
    return out


def cmd_analyze(args) -> RunReport:
    m, mm = _load_model(args)
    cfg = fiber_configuration(mm)
    rank, rho = _rank(cfg, mm.d, args.rho)
    disc = discriminant(mm)
    lines = [f"model:         {m}"]
    if mm != m:
        lines.append(f"minimal model: {mm}")
    lines += [f"d = {mm.d}, discriminant = {disc.to_string()}", "singular fibers:"]
    lines += _config_lines(cfg)
    lines.append(f"configuration: {cfg.describe()}")
    if rank is None:
        lines.append("Mordell-Weil rank: pass --rho (Picard number) when d != 1")
    else:
        lines.append(f"Mordell-Weil rank (rho = {rho}): {rank}")
    return RunReport(
        command="analyze",
        inputs={"model": args.model, "field": args.field or "", "rho": args.rho},
        results={
            "model": encode_model(m),
            "minimal_model": encode_model(mm),
            "was_minimal": mm == m,
            "discriminant": disc.to_string(),
            "configuration": encode_configuration(cfg),
            "rho": rho,
            "rank": rank,
        },
        text="\n".join(lines),
    )


# -- base-change ------------------------------------------------------------------------------

def cmd_base_change(args) -> RunReport:
    m, mm = _load_model(args)
    rep = analyze_base_change(mm, args.p, allow_small=args.allow_small)
    r0, rho0 = _rank(rep.config_before, rep.before.d, args.rho)
    r1, rho1 = _rank(rep.config_after, rep.after.d, args.rho if rep.after.d == rep.before.d else None)
    verdict = None
    if r0 is not None and r1 is not None:
        verdict = check_rank_stability(r0, r1, args.p)
    lines = [
        f"model:            {mm}",
        f"pulled back (p = {args.p}): {rep.pulled_back}",
        f"minimal after:    {rep.after}",
        f"deg L: {rep.d_before} -> {rep.d_after}   epsilon = {rep.epsilon}   "
        f"L-stable: {'yes' if rep.l_stable else 'no'}",
        f"before: {rep.config_before.describe()}",
        f"after:  {rep.config_after.describe()}",
        "fiber transitions:",
    ]
    lines += [f"  {tr}" for tr in rep.fiber_transitions]
    if r0 is not None:
        lines.append(f"rank before: {r0}")
    if r1 is not None:
        lines.append(f"rank after:  {r1}")
    if verdict is not None:
        lines.append(f"verdict: {verdict.describe()}")
    return RunReport(
        command="base-change",
        inputs={"model": args.model, "field": args.field or "", "p": args.p, "rho": args.rho},
        results={
            "p": args.p,
            "before": encode_model(rep.before),
            "pulled_back": encode_model(rep.pulled_back),
            "after": encode_model(rep.after),
            "d_before": rep.d_before,
            "d_after": rep.d_after,
            "epsilon": rep.epsilon,
            "l_stable": rep.l_stable,
            "config_before": encode_configuration(rep.config_before),
            "config_after": encode_configuration(rep.config_after),
            "transitions": [
                {"place": tr.place.label(), "before": str(tr.before),
                 "after": [str(t) for t in tr.after], "ramified": tr.ramified}
                for tr in rep.fiber_transitions
            ],
            "rank_before": r0,
            "rank_after": r1,
            "rank_stable": None if verdict is None else verdict.rank_stable,
        },
        text="\n".join(lines),
    )


# -- classify ---------------------------------------------------------------------------------

def _primes(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--primes must be a comma-separated list of integers, got {text!r}")
    if not out:
        raise UsageError("--primes is empty")
    return out


def _row_json(i, r):
    return {
        "index": i,
        "primes": None if r.primes is None else list(r.primes),
        "p_constraint": r.p_constraint,
        "over_zero": str(r.fiber_at_0),
        "over_infinity": str(r.fiber_at_inf),
        "remaining": [str(t) for t in r.remaining],
        "epsilon": r.epsilon,
    }


def cmd_classify(args) -> RunReport:
    primes = _primes(args.primes)
    rows, excluded, rejections = enumerate_with_rejections(primes)
    lines = [f"L-stable configurations on rational surfaces (tested p in {list(primes)}):",
             format_configurations(rows)]
    if excluded:
        lines.append("")
        lines.append("excluded (pass every check, but are twists of a constant curve):")
        lines += [f"  {r}" for r in excluded]
    results = {
        "primes": list(primes),
        "rows": [_row_json(i + 1, r) for i, r in enumerate(rows)],
        "excluded": [_row_json(None, r) for r in excluded],
        "rejected_candidates": len(rejections),
    }
    if args.k3:
        k3 = classify_k3_L_stable()
        at0, at_inf = k3.fibers
        results["k3"] = {
            "p": k3.p,
            "over_zero": str(at0),
            "over_infinity": str(at_inf),
            "epsilon": k3.epsilon,
        }
        lines.append("")
        lines.append(f"K3 (d = 2): only {at0} + {at_inf} with p = {k3.p}, epsilon = {k3.epsilon}")
    return RunReport("classify", {"primes": list(primes), "k3": args.k3}, results, "\n".join(lines))


# -- wc-kernel ------------------------------------------------------------------------------------

def _table_scenario(i):
    def run():
        rows, _ = configuration_rows()
        s = summary_row(i, rows[i - 1])
        return s.kernel, (f"row {i}: ranks {s.rank_before} -> {s.rank_after} at p = {s.p}, "
                          f"method {s.method}")
    return run


def _module_scenario(factory, *a):
    def run():
        M = factory(*a)
        return h1_cyclic(M), f"n = {M.n}, rank {M.rank}, torsion {list(M.torsion)}"
    return run


SCENARIOS: dict[str, tuple[str, Callable]] = {
    "regular-5": ("Z[G] for G of order 5", _module_scenario(regular_module, 5)),
    "regular-7": ("Z[G] for G of order 7", _module_scenario(regular_module, 7)),
    "cyclotomic-5": ("Z[zeta_5] with sigma = multiplication by zeta_5",
                     _module_scenario(cyclotomic_module, 5)),
    "cyclotomic-7": ("Z[zeta_7] with sigma = multiplication by zeta_7",
                     _module_scenario(cyclotomic_module, 7)),
    "trivial-5": ("Z with trivial action of a group of order 5", _module_scenario(trivial_module, 5)),
}
for _i in range(1, 9):
    SCENARIOS[f"summary-row{_i}"] = (f"kernel for row {_i} of the summary table", _table_scenario(_i))


def cmd_wc_kernel(args) -> RunReport:
    if args.list_scenarios:
        lines = [f"{k:14s} {v[0]}" for k, v in SCENARIOS.items()]
        return RunReport("wc-kernel", {"list": True},
                         {"scenarios": {k: v[0] for k, v in SCENARIOS.items()}}, "\n".join(lines))
    if bool(args.module) == bool(args.scenario):
        raise UsageError("give exactly one of a GModule JSON file or --scenario")
    if args.scenario:
        if args.scenario not in SCENARIOS:
            raise UsageError(f"unknown scenario {args.scenario!r}; see --list-scenarios")
        h1, detail = SCENARIOS[args.scenario][1]()
        inputs = {"scenario": args.scenario}
    else:
        try:
            with open(args.module, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as e:
            raise UsageError(f"cannot read {args.module}: {e.strerror}")
        except json.JSONDecodeError as e:
            raise UsageError(f"{args.module} is not valid JSON: {e}")
        try:
            M = GModule.from_json(data)
        except (KeyError, TypeError) as e:
            raise UsageError(f"{args.module} is not a GModule description: {e}")
        h1 = h1_cyclic(M)
        detail = f"n = {M.n}, rank {M.rank}, torsion {list(M.torsion)}"
        inputs = {"module": data}
    text = f"{detail}\nH^1 = {h1.describe()}"
    return RunReport("wc-kernel", inputs, {
        "h1": h1.describe(),
        "invariant_factors": list(h1.invariant_factors),
        "order": h1.order,
        "detail": detail,
    }, text)


# -- verify-generators -------------------------------------------------------------------------

class FixtureCheckFailed(Exception):
    def __init__(self, report: RunReport):
        self.report = report


def _trace_status(tr: FFPoint, stated: FFPoint | None) -> str:
    if stated is None:
        return "not stated"
    if tr == stated:
        return "matches"
    if tr == -stated:
        return "negative of stated"
    return "differs"


def cmd_verify_generators(args) -> RunReport:
    from ..fixtures import FixtureError, load_fixture

    try:
        fx = load_fixture(args.fixture)
    except FixtureError as e:
        raise UsageError(str(e))
    act = fx.action()
    rep = verify_generator_family(fx.model, fx.family(stated=args.stated_recipes), act)
    tr = trace(act, fx.model, fx.seed)
    status = _trace_status(tr, fx.stated_trace)
    recipes = fx.stated_text if args.stated_recipes else fx.recipe_text
    lines = [
        f"fixture {fx.name}: {fx.description}",
        f"model {fx.model.to_string(affine=True)}, p = {fx.p}, field degree {fx.field.degree}",
        f"seed {fx.seed_name} = {fx.seed}",
        "recipes" + (" (as originally stated)" if args.stated_recipes else "") + ":",
    ]
    lines += [f"  {k} = {v}" for k, v in recipes.items()]
    conforming = rep.count - len(rep.shape_violations)
    lines += [
        f"distinct points: {rep.count} (expected {rep.expected_count}), "
        f"shape-conforming: {conforming}, off curve: {len(rep.off_curve)}",
        f"orbit sizes: {rep.orbit_sizes}",
        f"sigma-fixed: {', '.join(str(P) for P in rep.sigma_fixed) or 'none'}",
        f"trace of {fx.seed_name}: {tr} ({status})",
    ]
    results = {
        "fixture": fx.name,
        "p": fx.p,
        "count": rep.count,
        "expected_count": rep.expected_count,
        "shape_conforming": conforming,
        "shape_violations": len(rep.shape_violations),
        "off_curve": len(rep.off_curve),
        "orbit_sizes": rep.orbit_sizes,
        "sigma_fixed": [encode_point(P) for P in rep.sigma_fixed],
        "trace": encode_point(tr),
        "trace_status": status,
        "family_ok": rep.ok,
    }
    if args.deep:
        coh = wc_kernel_from_points(fx.model, act, fx.seed, trace_kernel_vectors(fx.p))
        tr_q = rational_descent(tr)
        nt = None if tr_q is None or tr_q.is_zero else is_non_torsion(fx.model, tr_q)
        results["h1_sections"] = coh.h1.describe()
        results["trace_non_torsion"] = nt
        lines.append(f"H^1 of the seed's orbit module: {coh.h1.describe()} "
                     f"({coh.checked_points} coboundaries checked)")
        if nt is not None:
            lines.append(f"trace has infinite order: {nt}")
    ok = rep.ok and status in ("matches", "not stated")
    lines.append("result: " + ("OK" if ok else "FAILED"))
    report = RunReport("verify-generators",
                       {"fixture": args.fixture, "stated_recipes": args.stated_recipes, "deep": args.deep},
                       results, "\n".join(lines), exit_code=EXIT_OK if ok else EXIT_FIXTURE)
    return report


# -- tables ----------------------------------------------------------------------------------------

def cmd_tables(args) -> RunReport:
    rows, _ = configuration_rows()
    summary = summary_table()
    text = "\n".join([
        "Configurations on L-stable pairs with rational S",
        format_configurations(rows),
        "",
        "Mordell-Weil ranks and WC kernels",
        format_summary(summary),
    ])
    results = {
        "configurations": [_row_json(i + 1, r) for i, r in enumerate(rows)],
        "summary": [
            dict(_row_json(s.index, s.row), p=s.p, rank_before=s.rank_before,
                 rank_after=s.rank_after, kernel=s.kernel.describe(),
                 kernel_invariant_factors=list(s.kernel.invariant_factors), method=s.method)
            for s in summary
        ],
    }
    return RunReport("tables", {}, results, text)


# -- driver ----------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--rho", type=int, default=None,
                        help="Picard number for Shioda-Tate (default 10 when d = 1)")
    common.add_argument("--deep", action="store_true", help="run the slower exhaustive checks")
    common.add_argument("--timing", action="store_true", help="report elapsed milliseconds")

    ap = argparse.ArgumentParser(prog="mwlat", description="Elliptic surfaces under cyclic base change.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("analyze", parents=[common], help="fiber configuration and rank of a model")
    p.add_argument("model", help='e.g. "y^2 = x^3 - t^3 x + t"')
    p.add_argument("--field", default=None, help='coefficient field, e.g. "c: c^5 - 2"')
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("base-change", parents=[common], help="pull back along t -> t^p")
    p.add_argument("model")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--field", default=None)
    p.add_argument("--allow-small", action="store_true", help="allow p = 2, 3")
    p.set_defaults(run=cmd_base_change)

    p = sub.add_parser("classify", parents=[common], help="enumerate L-stable configurations")
    p.add_argument("--primes", default="5,7,11,13")
    p.add_argument("--k3", action="store_true", help="also run the d = 2 classification")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("wc-kernel", parents=[common], help="H^1 of a cyclic group module")
    p.add_argument("module", nargs="?", help="GModule JSON file")
    p.add_argument("--scenario", default=None)
    p.add_argument("--list-scenarios", action="store_true")
    p.set_defaults(run=cmd_wc_kernel)

    p = sub.add_parser("verify-generators", parents=[common], help="check a bundled generator family")
    p.add_argument("--fixture", required=True)
    p.add_argument("--stated-recipes", action="store_true",
                   help="use the fixture's original recipe list instead of the corrected one")
    p.set_defaults(run=cmd_verify_generators)

    p = sub.add_parser("tables", parents=[common], help="both summary tables")
    p.set_defaults(run=cmd_tables)
    return ap


def run(argv: list[str] | None = None) -> RunReport:
    """Parse ``argv`` and execute; errors become reports with nonzero exit codes."""
    return execute(build_parser().parse_args(argv))


def execute(args) -> RunReport:
    from ..fixtures import FixtureValidationError

    t0 = time.perf_counter()
    try:
        report = args.run(args)
    except ParseError as e:
        report = RunReport(args.command, {}, {"error": str(e)}, e.pointer(), EXIT_USAGE)
    except UsageError as e:
        report = RunReport(args.command, {}, {"error": str(e)}, f"error: {e}", EXIT_USAGE)
    except FixtureValidationError as e:
        report = RunReport(args.command, {}, {"error": str(e)}, f"fixture validation failed: {e}",
                           EXIT_FIXTURE)
    except (InconsistentInputError, ArithmeticError, NonMinimalError, SingularModelError,
            TrivialFamilyError) as e:
        report = RunReport(args.command, {}, {"error": str(e)}, f"inconsistent: {e}", EXIT_MATH)
    except ValueError as e:
        report = RunReport(args.command, {}, {"error": str(e)}, f"error: {e}", EXIT_USAGE)
    if args.timing:
        report.timing_ms = int((time.perf_counter() - t0) * 1000)
    return report


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report = execute(args)
    if args.json:
        print(report.dumps())
    else:
        # failed checks still produce a full report on stdout; bare errors go to stderr
        out = sys.stderr if "error" in report.results else sys.stdout
        print(report.text, file=out)
        if report.timing_ms is not None:
            print(f"elapsed: {report.timing_ms} ms", file=sys.stderr)
    return report.exit_code
