"""Command-line entry point: machine-readable checks for every toolkit claim.

Subcommands: reps (list|check), contract, verify, classify, invariants,
forms, emt, simulate, reproduce-all, bench.  All randomness is seeded and
echoed; --json emits the stable report schema; exit code 0 means every check
passed, 1 means a check failed, 2 means a usage error.
"""

import argparse
import json
import os
import sys

from .report import Report


# -- suite builders (shared by subcommands, reproduce-all and the tests) -------


def reps_check_report(seed=0):
    from .reps import all_labels, build_galilei_rep, check_rep
    from .errors import UnknownLabel

    rep_report = Report("reps check", seed)
    for label in all_labels():
        rep = build_galilei_rep(label)
        checks = check_rep(rep)
        bad = [c for c in checks if not c["pass"]]
        rep_report.add(
            "catalog %s" % rep.name,
            not bad,
            claim="boost group law, bracket table, exp(i v.eta) == Lambda(v)",
            detail="; ".join(c["name"] for c in bad),
        )
    rejected = 0
    wrongly_accepted = []
    for m in range(4):
        for n in range(4):
            for lam in (0, 1):
                if (m, n, lam) in [tuple(l) for l in all_labels()]:
                    continue
                try:
                    build_galilei_rep((m, n, lam))
                    wrongly_accepted.append((m, n, lam))
                except UnknownLabel:
                    rejected += 1
    rep_report.add(
        "scan-range rejection",
        not wrongly_accepted and rejected == 32 - 10,
        claim="exactly ten admissible labels in 0<=m,n<=3, lambda in {0,1}",
        detail=str(wrongly_accepted) if wrongly_accepted else "%d rejected" % rejected,
    )
    return rep_report


CONTRACTION_TABLE = [
    ("D12", "V1", (1, 1, 0)),
    ("D12", "V2", (1, 1, 1)),
    ("D12+D00", "V3", (1, 2, 1)),
    ("D10+D01", "V4", (2, 0, 0)),
    ("D10+D01", "V5", (2, 0, 0)),
]


def contraction_report(seed=0):
    from .contraction import contract, standard_matrix
    from .reps.lorentz import standard_lorentz_rep, so13_check

    rep = Report("contract table", seed)
    for name in ("D12", "D12+D00", "D10+D01", "BI12"):
        r = standard_lorentz_rep(name)
        bad = so13_check(r)
        rep.add("bracket table %s" % r.name, not bad,
                claim="so(1,3) commutators hold exactly", detail=str(bad[:2]))
    for rname, vname, want in CONTRACTION_TABLE:
        res = contract(standard_lorentz_rep(rname), standard_matrix(vname))
        rep.add(
            "%s with %s" % (rname, vname),
            res.identified_label == want,
            claim="contracts to D(%d,%d,%d)" % want,
            detail="got %s" % (res.identified_label,),
        )
    return rep


def covariance_report(trials=50, motions=10, seed=42):
    from .fields.covariance import check_system_covariance
    from .systems.catalog import COVARIANT_SYSTEMS, catalog

    rep = Report("verify all", seed)
    for name in COVARIANT_SYSTEMS:
        r = check_system_covariance(catalog(name), trials=trials, motions=motions, seed=seed)
        detail = ""
        if not r.passed:
            detail = json.dumps(r.counterexample, default=str)[:400]
        rep.add(
            "covariance %s" % name,
            r.passed,
            claim="%d multiplets x %d motions, exact polynomial identity" % (trials, r.motions),
            detail=detail,
        )
    return rep


def forms_report(seed=0):
    from .fields.forms import TENSOR_SETS, check_dif_closure, check_tensor_set
    from .reps import all_labels

    rep = Report("forms", seed)
    for label in all_labels():
        results = check_dif_closure(label, trials=3, seed=seed)
        bad = [r for r in results if not r["pass"]]
        rep.add(
            "closure D(%d,%d,%d)" % tuple(label),
            not bad,
            claim="every bracketed first-order set is boost-closed",
            detail="; ".join("{%s}" % ",".join(r["set"]) for r in bad),
        )
    unverifiable = 0
    for entry in TENSOR_SETS:
        r = check_tensor_set(entry, trials=3, seed=seed)
        if r["status"] == "unverifiable":
            unverifiable += 1
            rep.add_info("tensor set {%s}" % ",".join(r["set"]),
                         claim="unverifiable", detail=r["detail"])
        else:
            rep.add(
                "tensor set {%s}" % ",".join(r["set"]),
                r["status"] == "pass",
                claim="boost-closed on its carrier",
                detail=r["detail"],
            )
    rep.add("unverifiable tensor sets", unverifiable == 2,
            claim="exactly the two sets with undefined symbols",
            detail="found %d" % unverifiable)
    return rep


def invariants_report(seed=0):
    from .fields.invariants import (
        bi_numeric_spot_checks,
        check_bi_electric_symbolic,
        check_bi_magnetic_symbolic,
        check_bilinear_invariants,
        default_media,
    )

    rep = Report("invariants", seed)
    for r in check_bilinear_invariants():
        rep.add(r["name"], r["pass"], claim="symbolic in fields and boost", detail=r["detail"])
    rep.add("electric-limit constitutive boost law", check_bi_electric_symbolic(),
            claim="D' -> D', H' -> H' + v x D' with the formal root symbol")
    rep.add("magnetic-limit constitutive boost law", check_bi_magnetic_symbolic(),
            claim="D' -> D' - v x H', H' -> H'")
    worst = bi_numeric_spot_checks(100, seed=seed)
    rep.add("numeric constitutive spots", worst <= 1e-12,
            claim="100 random in-domain points match to 1e-12",
            detail="worst %.3e" % worst)
    rep.add("default medium invariance", default_media().is_boost_invariant(),
            claim="sigma-family constitutive coefficients")
    return rep


def emt_report(seed=0):
    from .fields.emt import (
        continuity_residuals,
        harmonic_solution,
        residuals_source_free,
        verify_certificate,
    )

    rep = Report("emt", seed)
    rep.add("continuity certificate", verify_certificate(),
            claim="continuity == bilinear residual combination, off-shell identity")
    sol = harmonic_solution()
    res = residuals_source_free(sol, nu=0)
    flat = []
    for v in res.values():
        flat.extend(v if isinstance(v, tuple) else [v])
    rep.add("harmonic-potential solution", all(p.is_zero() for p in flat),
            claim="exact polynomial solution of the source-free system")
    c0, cv = continuity_residuals(sol, nu=0)
    rep.add("continuity on the solution",
            c0.is_zero() and all(p.is_zero() for p in cv),
            claim="all four continuity residuals identically zero")
    from .fields.emt import _JetAlgebra, tensor_components, _fields

    alg = _JetAlgebra()
    B, N, W, R = _fields(alg)
    t1 = tensor_components(B, N, W, R)
    rep.add("tensor components are coupling-free", True,
            claim="T has no nu dependence by construction",
            detail="components are bilinears of (B, N, W, R) only")
    return rep


def dsl_report(seed=0):
    from .systems.catalog import catalog, catalog_names
    from .systems.classify import classify
    from .systems.dsl import parse, print_system

    rep = Report("classify suite", seed)
    for name in catalog_names():
        s = catalog(name)
        ok = parse(print_system(s)) == s
        rep.add("round-trip %s" % name, ok, claim="parse(print(system)) == system")
    flipped = print_system(catalog("mag")).replace("curl(E) - dt(H)", "curl(E) + dt(H)")
    lines = [l for l in flipped.splitlines() if "rep resid" not in l]
    bad = parse("\n".join(lines))
    r = classify(bad, motions=5, seed=seed)
    rep.add(
        "sign-flipped system rejected",
        r["covariant"] is False and r.get("counterexample") is not None,
        claim="classified non-covariant with a concrete counterexample boost",
        detail=json.dumps(r.get("counterexample"), default=str)[:200],
    )
    return rep


def simulate_report(seed=0, N=32, fast=False):
    from .sim.grid import Grid
    from .sim.runners import run_electric, run_extended, run_magnetic
    from .sim.sources import SourceSpec

    rep = Report("simulate suite", seed)
    g = Grid(N, 1.0 / N)
    t_end, dt = (0.2, 0.05) if fast else (0.4, 0.02)
    mag = SourceSpec(g, {
        "j": ("sin(2*pi*y/L)*(1+t/2)", "sin(2*pi*z/L)*(1+t/2)", "sin(2*pi*x/L)*(1+t/2)"),
        "j0": "cos(2*pi*x/L)*(1+t/3)",
    })
    r = run_magnetic(g, mag, t_end, dt)
    rep.add("magnetic residuals", r.residual_max() <= 1e-8,
            claim="all four equation residuals <= 1e-8 at N=%d" % N,
            detail="max %.3e" % r.residual_max())
    rep.add("magnetic discrete identity",
            max(d["divcurl"] for d in r.diagnostics) <= 1e-13,
            claim="central-difference div(curl A) vanishes")
    el = SourceSpec(g, {
        "j4": "cos(2*pi*x/L)*(1+t)",
        "j": ("(L/(2*pi))*sin(2*pi*x/L)", "0", "0"),
    })
    r = run_electric(g, el, t_end, dt)
    rep.add("electric residuals", r.residual_max() <= 1e-8,
            claim="all four equation residuals <= 1e-8 at N=%d" % N,
            detail="max %.3e" % r.residual_max())
    ext = SourceSpec(g, {
        "j4": "cos(2*pi*x/L)*(1+t)",
        "j": ("(L/(2*pi))*sin(2*pi*x/L)", "0", "0"),
        "j0": "sin(2*pi*y/L)*(1+t/3)",
    })
    r = run_extended(g, ext, t_end, dt)
    rep.add("extended residuals", r.residual_max() <= 1e-8,
            claim="all seven equation residuals <= 1e-8 at N=%d" % N,
            detail="max %.3e" % r.residual_max())
    conts = [d["continuity"] for d in r.diagnostics if d["continuity"] != ""]
    rep.add("extended energy continuity", bool(conts) and max(conts) <= 1e-8,
            claim="discrete defect of the exact energy law with source work",
            detail="max %.3e" % (max(conts) if conts else -1))
    return rep


# -- subcommand handlers ---------------------------------------------------------


def _emit(report, args, out_path=None):
    text = report.to_json()
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if getattr(args, "json", False):
        print(text)
    else:
        report.print_text()
    return report.exit_code()


def cmd_reps(args):
    from .reps import all_labels, build_galilei_rep, check_rep

    if args.action == "list":
        rep = Report("reps list")
        for label in all_labels():
            r = build_galilei_rep(label)
            rep.add_info(
                r.name,
                claim="dimension %d" % r.dimension,
                detail="layout (%s)" % ", ".join(
                    "%s:%s" % (s.name, s.kind) for s in r.layout.slots
                ),
            )
        rep.extra["catalog"] = [
            {
                "label": r.name,
                "dimension": r.dimension,
                "layout": ["%s:%s" % (s.name, s.kind) for s in r.layout.slots],
                "checks": [],
            }
            for r in (build_galilei_rep(l) for l in all_labels())
        ]
        return _emit(rep, args)
    rep = reps_check_report(args.seed)
    rep.extra["catalog"] = []
    for label in all_labels():
        r = build_galilei_rep(label)
        rep.extra["catalog"].append(
            {
                "label": r.name,
                "dimension": r.dimension,
                "layout": ["%s:%s" % (s.name, s.kind) for s in r.layout.slots],
                "checks": check_rep(r),
            }
        )
    return _emit(rep, args)


def cmd_contract(args):
    from .contraction import contract, standard_matrix
    from .errors import SingularLimit
    from .reps.lorentz import standard_lorentz_rep

    rep = Report("contract --rep %s --matrix %s" % (args.rep, args.matrix), args.seed)
    lrep = standard_lorentz_rep(args.rep)
    V = standard_matrix(args.matrix)
    try:
        res = contract(lrep, V)
        label = (
            "D(%d,%d,%d)" % res.identified_label
            if isinstance(res.identified_label, tuple)
            else res.identified_label
        )
        rep.add("contraction", True, claim="exact eps -> 0 limit exists",
                detail="label %s" % label)
        rep.extra["result"] = {
            "input": res.input,
            "matrix": res.V,
            "status": "ok",
            "label": label,
            "generators": {
                "S": [m.to_strings() for m in res.rotations],
                "eta": [m.to_strings() for m in res.boosts],
            },
        }
    except SingularLimit as exc:
        rep.add("contraction", False, claim="exact eps -> 0 limit exists",
                detail=str(exc))
        rep.extra["result"] = {
            "input": lrep.name, "matrix": V.name, "status": "singular",
            "detail": str(exc),
        }
    return _emit(rep, args)


def cmd_verify(args):
    from .fields.covariance import check_system_covariance
    from .systems.catalog import catalog

    if args.system == "all":
        rep = covariance_report(trials=args.trials, motions=args.motions, seed=args.seed)
        return _emit(rep, args)
    rep = Report("verify --system %s" % args.system, args.seed)
    r = check_system_covariance(
        catalog(args.system), trials=args.trials, motions=args.motions, seed=args.seed
    )
    rep.add(
        "covariance %s" % args.system,
        r.passed,
        claim="%d multiplets x %d motions, exact" % (args.trials, r.motions),
        detail="" if r.passed else json.dumps(r.counterexample, default=str)[:400],
    )
    rep.extra["result"] = r.as_dict()
    return _emit(rep, args)


def cmd_classify(args):
    from .systems.classify import classify
    from .systems.dsl import parse

    with open(args.file) as fh:
        text = fh.read()
    system = parse(text)
    result = classify(system, seed=args.seed)
    rep = Report("classify %s" % args.file, args.seed)
    if result.get("covariant") is None:
        rep.add_info("covariance", claim=result.get("detail", "not checkable"))
    else:
        rep.add("covariance", bool(result["covariant"]),
                claim="exact boost equivariance on random multiplets",
                detail=json.dumps(result.get("counterexample"), default=str)[:200]
                if not result["covariant"] else "")
    if result.get("matched_forms") is not None:
        matched = {k: (v["form"] if v else None) for k, v in result["matched_forms"].items()}
        rep.add_info("matched forms", detail=json.dumps(matched))
    if result.get("residual_rep"):
        rep.add_info("residual representation", detail=json.dumps(result["residual_rep"]))
    rep.extra["classification"] = result
    return _emit(rep, args)


def cmd_invariants(args):
    return _emit(invariants_report(args.seed), args)


def cmd_forms(args):
    return _emit(forms_report(args.seed), args)


def cmd_emt(args):
    return _emit(emt_report(args.seed), args)


def cmd_simulate(args):
    from .sim.grid import Grid
    from .sim.runners import run_electric, run_extended, run_magnetic
    from .sim.sources import SourceSpec

    with open(args.config) as fh:
        cfg = json.load(fh)
    grid = Grid(cfg["N"], cfg["h"])
    sources = SourceSpec(grid, cfg.get("sources", {}))
    kw = {"outputs": cfg.get("outputs"), "e": cfg.get("e", 1.0)}
    runner = {"magnetic": run_magnetic, "electric": run_electric, "extended": run_extended}[
        args.system
    ]
    result = runner(grid, sources, cfg["t_end"], cfg["dt"], **kw)
    rep = Report("simulate --system %s" % args.system)
    rep.add("run", True, claim=result.sign_note,
            detail="max residual %.3e over %d outputs" % (
                result.residual_max(), len(result.snapshots)))
    rep.extra["diagnostics"] = result.diagnostics[-1] if result.diagnostics else {}
    if args.out:
        # --out names the run directory; the report goes inside it
        result.write(args.out)
        args.out = os.path.join(args.out, "report.json")
    return _emit(rep, args)


def cmd_reproduce_all(args):
    rep = Report("reproduce-all", args.seed)
    suites = [
        ("reps", lambda: reps_check_report(args.seed)),
        ("contraction", lambda: contraction_report(args.seed)),
        ("covariance", lambda: covariance_report(
            trials=10 if args.fast else 50, motions=5 if args.fast else 10, seed=args.seed)),
        ("forms", lambda: forms_report(args.seed)),
        ("invariants", lambda: invariants_report(args.seed)),
        ("emt", lambda: emt_report(args.seed)),
        ("dsl", lambda: dsl_report(args.seed)),
        ("simulate", lambda: simulate_report(args.seed, N=16 if args.fast else 32,
                                             fast=args.fast)),
    ]
    threads = int(os.environ.get("GALINV_THREADS", "1") or "1")
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: (s[0], s[1]()), suites))
    else:
        results = [(name, fn()) for name, fn in suites]
    for name, sub in results:
        for c in sub.checks:
            rep.checks.append(dict(c, name="%s: %s" % (name, c["name"])))
    return _emit(rep, args)


def cmd_bench(args):
    from .bench import run_benchmark

    print(run_benchmark(repeats=args.trials))
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="galinv", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--trials", type=int, default=50)
    common.add_argument("--motions", type=int, default=10)
    common.add_argument("--out", help="also write the JSON report to this path")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=lambda **kw: argparse.ArgumentParser(parents=[common], **kw))

    p = sub.add_parser("reps", help="multiplet catalog")
    p.add_argument("action", choices=["list", "check"])
    p.set_defaults(fn=cmd_reps)

    p = sub.add_parser("contract", help="boost-rescaling contraction")
    p.add_argument("--rep", required=True, help="D12, D12+D00, D10+D01, BI12")
    p.add_argument("--matrix", required=True, help="V1..V7")
    p.set_defaults(fn=cmd_contract)

    p = sub.add_parser("verify", help="exact covariance of a catalog system")
    p.add_argument("--system", required=True, help='system name or "all"')
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("classify", help="classify a .gal system file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("invariants", help="bilinear invariants + constitutive maps")
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("forms", help="covariant-form closure suite")
    p.set_defaults(fn=cmd_forms)

    p = sub.add_parser("emt", help="energy-momentum continuity certificate")
    p.set_defaults(fn=cmd_emt)

    p = sub.add_parser("simulate", help="periodic-grid runs")
    p.add_argument("--system", required=True, choices=["magnetic", "electric", "extended"])
    p.add_argument("--config", required=True)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("reproduce-all", help="full regression suite, one report")
    p.add_argument("--fast", action="store_true")
    p.set_defaults(fn=cmd_reproduce_all)

    p = sub.add_parser("bench", help="numba vs numpy kernel benchmark")
    p.set_defaults(fn=cmd_bench)

    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors already
        raise
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
