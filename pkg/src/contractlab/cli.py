"""Batch harness: every verifier exposed as a subcommand, with deterministic
seeding, JSON reports, and CSV summaries.

Each suite draws one RNG stream per case, keyed by (seed, case index), so the
corpus is stable under concurrent execution; the report is a deterministic
ordered reduction by case index.  Case evaluation may run on a thread pool
capped by the LAB_THREADS environment variable.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .coeff import binom_coeffs, ratio_Ak_seq, zeta_power_coeffs
from .dirichlet import (DirichletPolynomial, besicovitch_probe, bohr_lift,
                        hardy_norm_torus, helson_check, verify_coro_dirichlet)
from .extremal import (OptimizerConfig, estimate_cpn, key_property_chain,
                       random_unit_polynomial, verify_kulikov)
from .funcspace import Polynomial, kernel_sampler
from .norms import (bergman2_coeff_norm, bergman_norm, hardy_norm,
                    hardy_stein_sides)
from .riesz import (contraction_check, epsilon_scan, hv_bound_probe,
                    random_trig_poly)

SCHEMA_VERSION = 1
SUITES = ("coeff", "norms", "cpn", "kulikov", "keychain", "riesz", "hv",
          "dirichlet", "helson", "all")
PLOT_KINDS = ("epsilon_scan_curve", "cpn_convergence", "besicovitch_ladder",
              "margin_histogram")


@dataclass
class RunConfig:
    suite: str
    seed: int = 42
    cases: int | None = None
    p: float | None = None
    q: float | None = None
    alpha: float | None = None
    beta: float | None = None
    n: int | None = None
    tol: float = 1e-6
    out: str | None = None
    csv_out: str | None = None

    def echo(self):
        d = asdict(self)
        d.pop("out")
        d.pop("csv_out")
        return d


def _case_rng(seed, index):
    return np.random.default_rng([seed, index])


def _run_cases(indices, worker):
    threads = int(os.environ.get("LAB_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, indices))
    return [worker(i) for i in indices]


# ---------------------------------------------------------------- suites


def _suite_coeff(cfg):
    n_random = cfg.cases if cfg.cases is not None else 200

    def gamma_case(i):
        rng = _case_rng(cfg.seed, i)
        beta = rng.uniform(1e-3, 50.0)
        n = int(rng.integers(1, 10001))
        from scipy.special import gammaln
        rec = binom_coeffs(beta, n)[n]
        oracle = math.exp(gammaln(n + beta) - gammaln(beta) - gammaln(n + 1))
        # the log-gamma oracle is itself only good to ~1e-11 at n ~ 1e4
        rel = abs(rec / oracle - 1.0)
        return {"case": i, "type": "gamma_ratio", "inputs": {"beta": beta, "n": n},
                "lhs": rec, "rhs": oracle, "margin": 1e-10 - rel,
                "pass": rel < 1e-10}

    cases = _run_cases(range(n_random), gamma_case)
    idx = n_random
    for p in (2.1, 2.5, 3.0, 4.0, 10.0, 50.0):
        A = ratio_Ak_seq(p, 1000)
        mono_margin = float(np.min(A[1:] / A[:-1]) - 1.0)
        k = np.arange(1, 1001, dtype=float)
        lhsv = (p / 2.0) * k / binom_coeffs(2.0 / p + 1.0, 999)
        rhsv = binom_coeffs(p / 2.0, 1000)[1:]
        ineq_margin = float(np.min((rhsv - lhsv) / rhsv)) + 1e-12
        cases.append({"case": idx, "type": "ratio_monotone", "inputs": {"p": p},
                      "lhs": mono_margin, "rhs": 0.0, "margin": mono_margin,
                      "pass": mono_margin > 0})
        idx += 1
        cases.append({"case": idx, "type": "weight_inequality", "inputs": {"p": p},
                      "lhs": ineq_margin, "rhs": 0.0, "margin": ineq_margin,
                      "pass": ineq_margin >= 0})
        idx += 1
    d2 = zeta_power_coeffs(2.0, 10000).values
    counts = np.zeros(10001)
    for i in range(1, 10001):
        counts[i::i] += 1
    err = float(np.max(np.abs(d2 - counts[1:])))
    cases.append({"case": idx, "type": "divisor_count", "inputs": {"n_max": 10000},
                  "lhs": err, "rhs": 0.0, "margin": -err, "pass": err == 0.0})
    idx += 1
    for a, b in ((1.0, 1.0), (1.0, 2.0)):
        da = zeta_power_coeffs(a, 200).values
        db = zeta_power_coeffs(b, 200).values
        dab = zeta_power_coeffs(a + b, 200).values
        conv = np.zeros(201)
        for m in range(1, 201):
            for l in range(1, 201):
                if m * l > 200:
                    break
                conv[m * l] += da[m - 1] * db[l - 1]
        err = float(np.max(np.abs(conv[1:] - dab) / dab))
        cases.append({"case": idx, "type": "dirichlet_convolution",
                      "inputs": {"alpha": a, "beta": b},
                      "lhs": err, "rhs": 0.0, "margin": 1e-10 - err,
                      "pass": err < 1e-10})
        idx += 1
    return cases


def _suite_norms(cfg):
    n_random = cfg.cases if cfg.cases is not None else 100

    def case(i):
        rng = _case_rng(cfg.seed, i)
        deg = int(rng.integers(1, 11))
        f = Polynomial(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
        h2 = hardy_norm(f, 2.0)
        parseval = bergman2_coeff_norm(f, -1.0)
        err = abs(h2.value - parseval)
        rec = {"case": i, "type": "parseval", "inputs": {"degree": deg},
               "lhs": h2.value, "rhs": parseval, "margin": 1e-12 - err,
               "pass": err < 1e-12}
        for alpha in (0.0, 1.0):
            qn = bergman_norm(f, 2.0, alpha).value
            cn = bergman2_coeff_norm(f, alpha)
            err2 = abs(qn - cn)
            rec["pass"] = rec["pass"] and err2 < 1e-9
            rec["margin"] = min(rec["margin"], 1e-9 - err2)
        return rec

    cases = _run_cases(range(n_random), case)
    idx = n_random

    def hs_case(i):
        rng = _case_rng(cfg.seed, 10000 + i)
        deg = int(rng.integers(1, 9))
        f = Polynomial(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
        p = float(rng.choice([2.5, 3.0, 4.0]))
        r = float(rng.choice([0.3, 0.7, 0.95]))
        lhs, rhs, conv = hardy_stein_sides(f, p, r)
        rel = abs(lhs - rhs) / max(abs(lhs), 1e-300)
        return {"case": idx + i, "type": "hardy_stein",
                "inputs": {"degree": deg, "p": p, "r": r},
                "lhs": lhs, "rhs": rhs, "margin": 1e-6 - rel,
                "pass": bool(conv and rel < 1e-6)}

    cases += _run_cases(range(max(4, n_random // 10)), hs_case)
    return cases


def _suite_cpn(cfg):
    p = cfg.p if cfg.p is not None else 4.0
    n = cfg.n if cfg.n is not None else 5
    restarts = cfg.cases if cfg.cases is not None else 8
    opt = OptimizerConfig(restarts=restarts, max_iter=2000, seed=cfg.seed)
    res = estimate_cpn(p, n, opt)
    target = np.zeros(n + 1, dtype=complex)
    target[0] = 1.0 / math.sqrt(binom_coeffs(p / 2.0, 0)[0])
    dist = float(np.linalg.norm(res.best_poly.coeffs - target))
    ok = res.best_value <= 1.0 + cfg.tol and dist <= 1e-3
    return [{"case": 0, "type": "cpn", "inputs": {"p": p, "n": n, "restarts": restarts},
             "lhs": res.best_value, "rhs": 1.0, "margin": 1.0 + cfg.tol - res.best_value,
             "distance_to_constant": dist,
             "converged_restarts": res.converged_restarts,
             "restart_log": res.restart_log, "pass": bool(ok)}]


_KULIKOV_TUPLES = ((2.0, -1.0, 4.0, 0.0), (2.0, -1.0, 6.0, 1.0), (3.0, -1.0, 6.0, 0.0))


def _suite_kulikov(cfg):
    n_random = cfg.cases if cfg.cases is not None else 300

    def case(i):
        rng = _case_rng(cfg.seed, i)
        p, alpha, q, beta = _KULIKOV_TUPLES[i % len(_KULIKOV_TUPLES)]
        deg = int(rng.integers(1, 9))
        f = Polynomial(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
        rep = verify_kulikov(f, p, q, alpha, beta)
        return {"case": i, "type": "kulikov_random",
                "inputs": {"p": p, "q": q, "alpha": alpha, "beta": beta, "degree": deg},
                "lhs": rep.lhs, "rhs": rep.rhs, "est_error": rep.est_error,
                "margin": rep.rhs - rep.lhs, "pass": bool(rep.ok)}

    cases = _run_cases(range(n_random), case)
    idx = n_random
    for zeta in (0.0, 0.4, 0.4 + 0.3j, 0.9):
        p, alpha, q, beta = _KULIKOV_TUPLES[0]
        f = kernel_sampler(p, alpha, zeta)
        rep = verify_kulikov(f, p, q, alpha, beta)
        gap = abs(rep.lhs - rep.rhs)
        cases.append({"case": idx, "type": "kulikov_kernel_equality",
                      "inputs": {"p": p, "q": q, "alpha": alpha, "beta": beta,
                                 "zeta": [zeta.real, zeta.imag] if isinstance(zeta, complex)
                                 else [zeta, 0.0]},
                      "lhs": rep.lhs, "rhs": rep.rhs, "margin": 1e-7 - gap,
                      "pass": bool(gap < 1e-7)})
        idx += 1
    return cases


def _suite_keychain(cfg):
    n_random = cfg.cases if cfg.cases is not None else 150

    def case(i):
        rng = _case_rng(cfg.seed, i)
        p = (2.5, 3.0, 4.0)[i % 3]
        deg = int(rng.integers(1, 9))
        f = random_unit_polynomial(rng, deg, p)
        rep = key_property_chain(f, p)
        ok = rep.ok and rep.identity_error < 1e-10
        return {"case": i, "type": "key_chain", "inputs": {"p": p, "degree": deg},
                "lhs": rep.gradient_integral, "rhs": rep.kulikov_bound,
                "hoelder": rep.hoelder_bound, "identity_error": rep.identity_error,
                "margin": rep.kulikov_bound - rep.gradient_integral,
                "pass": bool(ok)}

    return _run_cases(range(n_random), case)


def _suite_riesz(cfg):
    n_random = cfg.cases if cfg.cases is not None else 200

    def case(i):
        rng = _case_rng(cfg.seed, i)
        p, alpha = ((4.0, 0.0), (3.0, -0.5))[i % 2]
        F = random_trig_poly(rng)
        rep = contraction_check(F, p, alpha)
        return {"case": i, "type": "contraction",
                "inputs": {"p": p, "alpha": alpha},
                "lhs": rep.lhs, "rhs": rep.rhs, "margin": 1.0 + 1e-8 - rep.ratio,
                "pass": bool(rep.ratio <= 1.0 + 1e-8)}

    cases = _run_cases(range(n_random), case)
    idx = n_random
    for p, alpha, expect_violation in ((4.0, 0.0, False), (4.0, -0.5, True),
                                       (4.0, -0.9, True)):
        scan = epsilon_scan(p, alpha)
        found = scan.first_violation is not None
        cases.append({"case": idx, "type": "epsilon_scan",
                      "inputs": {"p": p, "alpha": alpha},
                      "first_violation": scan.first_violation,
                      "curve": [list(row) for row in scan.curve],
                      "margin": 0.0, "pass": bool(found == expect_violation)})
        idx += 1
    return cases


def _suite_hv(cfg):
    trials = cfg.cases if cfg.cases is not None else 100
    cases = []
    for idx, q in enumerate((4.0 / 3.0, 2.0, 3.0, 4.0)):
        refine = q == 4.0 and trials >= 100
        rep = hv_bound_probe(q, trials=trials, seed=cfg.seed + idx, refine=refine)
        rec = {"case": idx, "type": "hv_bound", "inputs": {"q": q, "trials": trials},
               "lhs": rep.max_ratio, "rhs": rep.bound,
               "margin": rep.bound + 1e-9 - rep.max_ratio,
               "pass": bool(rep.max_ratio <= rep.bound + 1e-9)}
        if rep.refined_ratio is not None:
            rec["refined_ratio"] = rep.refined_ratio
        cases.append(rec)
    rep = hv_bound_probe(2.0, trials=max(20, trials // 2), seed=cfg.seed + 17,
                         analytic=True)
    gap = abs(rep.max_ratio - 1.0)
    cases.append({"case": len(cases), "type": "hv_analytic_identity",
                  "inputs": {"q": 2.0}, "lhs": rep.max_ratio, "rhs": 1.0,
                  "margin": 1e-12 - gap, "pass": bool(gap < 1e-12)})
    return cases


def _random_dirichlet(rng, n_max=4):
    n = int(rng.integers(2, n_max + 1))
    return DirichletPolynomial(rng.standard_normal(n) + 1j * rng.standard_normal(n))


def _suite_dirichlet(cfg):
    n_random = cfg.cases if cfg.cases is not None else 200

    def case(i):
        rng = _case_rng(cfg.seed, i)
        p = (2.5, 4.0)[i % 2]
        f = _random_dirichlet(rng)
        rep = verify_coro_dirichlet(f, p)
        return {"case": i, "type": "coro_dirichlet", "inputs": {"p": p, "n": f.n},
                "lhs": rep.lhs, "rhs": rep.rhs, "est_error": rep.est_error,
                "margin": rep.rhs - rep.lhs, "pass": bool(rep.ok)}

    cases = _run_cases(range(n_random), case)
    idx = n_random
    red = verify_coro_dirichlet(DirichletPolynomial([1.0, 1.0]), 4.0)
    err = max(abs(red.lhs - 6.0 ** 0.25), abs(red.rhs - math.sqrt(3.0)))
    cases.append({"case": idx, "type": "reduction_case", "inputs": {"p": 4.0},
                  "lhs": red.lhs, "rhs": red.rhs, "margin": 1e-8 - err,
                  "pass": bool(err < 1e-8)})
    idx += 1
    probe_f = DirichletPolynomial([1.0, 1.0, 1.0])
    ladder = besicovitch_probe(probe_f, 4.0, t_max=1e4)
    torus = hardy_norm_torus(bohr_lift(probe_f).image, 4.0).value
    rel = abs(ladder[-1][1] - torus) / torus
    cases.append({"case": idx, "type": "besicovitch_ladder",
                  "inputs": {"p": 4.0, "t_max": 1e4},
                  "ladder": [[t, v] for t, v in ladder], "torus_value": torus,
                  "margin": 0.05 - rel, "warning": bool(rel > 0.05),
                  "pass": True})
    return cases


def _suite_helson(cfg):
    n_random = cfg.cases if cfg.cases is not None else 200

    def case(i):
        rng = _case_rng(cfg.seed, i)
        f = _random_dirichlet(rng)
        rep = helson_check(f)
        return {"case": i, "type": "helson", "inputs": {"n": f.n},
                "lhs": rep.lhs, "rhs": rep.rhs, "est_error": rep.est_error,
                "margin": rep.rhs - rep.lhs, "pass": bool(rep.ok)}

    cases = _run_cases(range(n_random), case)
    rep = helson_check(DirichletPolynomial([1.0, 1.0]))
    err = abs(rep.lhs - math.sqrt(1.5))
    cases.append({"case": n_random, "type": "helson_reduction", "inputs": {"n": 2},
                  "lhs": rep.lhs, "rhs": rep.rhs, "margin": rep.rhs - rep.lhs,
                  "pass": bool(rep.ok and err < 1e-12)})
    return cases


_SUITE_FNS = {
    "coeff": _suite_coeff,
    "norms": _suite_norms,
    "cpn": _suite_cpn,
    "kulikov": _suite_kulikov,
    "keychain": _suite_keychain,
    "riesz": _suite_riesz,
    "hv": _suite_hv,
    "dirichlet": _suite_dirichlet,
    "helson": _suite_helson,
}

# reduced corpus sizes for the combined run
_ALL_SIZES = {"coeff": 50, "norms": 30, "cpn": 4, "kulikov": 60, "keychain": 30,
              "riesz": 60, "hv": 30, "dirichlet": 60, "helson": 60}


def run_suite(cfg):
    """Execute the configured suite and return the report as a plain dict."""
    if cfg.suite not in SUITES:
        raise ValueError(f"unknown suite {cfg.suite!r}")
    if cfg.suite == "all":
        cases = []
        for name in _SUITE_FNS:
            sub = RunConfig(suite=name, seed=cfg.seed,
                            cases=min(cfg.cases, _ALL_SIZES[name])
                            if cfg.cases is not None else _ALL_SIZES[name],
                            p=cfg.p, q=cfg.q, alpha=cfg.alpha, beta=cfg.beta,
                            n=cfg.n, tol=cfg.tol)
            for rec in _SUITE_FNS[name](sub):
                rec = dict(rec)
                rec["suite"] = name
                rec["case"] = len(cases)
                cases.append(rec)
    else:
        cases = _SUITE_FNS[cfg.suite](cfg)
        for rec in cases:
            rec["suite"] = cfg.suite
    failures = [rec["case"] for rec in cases if not rec["pass"]]
    margins = [rec["margin"] for rec in cases if "margin" in rec]
    report = {
        "schema_version": SCHEMA_VERSION,
        "suite": cfg.suite,
        "config": cfg.echo(),
        "version": __version__,
        "cases": cases,
        "summary": {
            "count": len(cases),
            "failures": failures,
            "worst_margin": min(margins) if margins else None,
        },
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    return report


def report_json(report):
    return json.dumps(report, sort_keys=True, indent=2, default=float) + "\n"


def write_report(report, out_path, csv_path=None):
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(report_json(report))
    if csv_path:
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["case", "suite", "type", "pass", "margin"])
            for rec in report["cases"]:
                w.writerow([rec["case"], rec["suite"], rec["type"],
                            int(rec["pass"]), rec.get("margin", "")])


def emit_plotdata(report, kind, out_path):
    """Project a suite report onto columnar CSV ready for external plotting."""
    if kind not in PLOT_KINDS:
        raise ValueError(f"unknown plot kind {kind!r}")
    rows = []
    if kind == "epsilon_scan_curve":
        header = ["eps", "lhs", "rhs", "ratio"]
        for rec in report["cases"]:
            if rec.get("type") == "epsilon_scan":
                rows += rec["curve"]
    elif kind == "cpn_convergence":
        header = ["restart", "iterations", "best_value"]
        for rec in report["cases"]:
            for entry in rec.get("restart_log", []):
                rows.append([entry["restart"], entry["iterations"], entry["value"]])
    elif kind == "besicovitch_ladder":
        header = ["T", "partial_mean", "torus_value"]
        for rec in report["cases"]:
            if rec.get("type") == "besicovitch_ladder":
                rows += [[t, v, rec["torus_value"]] for t, v in rec["ladder"]]
    else:
        header = ["case", "margin"]
        rows = [[rec["case"], rec["margin"]] for rec in report["cases"]
                if "margin" in rec]
    if not rows:
        raise ValueError(f"report contains no data for plot kind {kind!r}")
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _build_parser():
    ap = argparse.ArgumentParser(prog="lab",
                                 description="contractive-inequality verification suites")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in SUITES:
        sp = sub.add_parser(name, help=f"run the {name} suite")
        sp.add_argument("--p", type=float)
        sp.add_argument("--q", type=float)
        sp.add_argument("--alpha", type=float)
        sp.add_argument("--beta", type=float)
        sp.add_argument("--n", type=int)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--tol", type=float, default=1e-6)
        sp.add_argument("--cases", type=int)
        sp.add_argument("--out", default=None)
        sp.add_argument("--csv", dest="csv_out", default=None)
    pp = sub.add_parser("plotdata", help="project a report onto plot columns")
    pp.add_argument("--report", required=True)
    pp.add_argument("--kind", required=True, choices=PLOT_KINDS)
    pp.add_argument("--out", required=True)
    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "plotdata":
        with open(args.report, encoding="utf-8") as fh:
            report = json.load(fh)
        emit_plotdata(report, args.kind, args.out)
        return 0
    cfg = RunConfig(suite=args.command, seed=args.seed, cases=args.cases,
                    p=args.p, q=args.q, alpha=args.alpha, beta=args.beta,
                    n=args.n, tol=args.tol, out=args.out, csv_out=args.csv_out)
    try:
        report = run_suite(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = cfg.out or f"{cfg.suite}_report.json"
    write_report(report, out, cfg.csv_out)
    summary = report["summary"]
    print(f"suite={cfg.suite} cases={summary['count']} "
          f"failures={len(summary['failures'])} worst_margin={summary['worst_margin']}")
    for rec in report["cases"]:
        if not rec["pass"]:
            print(f"  FAIL case {rec['case']} ({rec['suite']}/{rec['type']})")
    return 1 if summary["failures"] else 0


if __name__ == "__main__":
    sys.exit(main())
