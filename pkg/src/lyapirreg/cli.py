"""Command-line front end.

Exit codes: 0 all checks passed, 1 a check failed, 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import configparser
import io
import random
import sys
from dataclasses import fields
from fractions import Fraction
from pathlib import Path

from . import bowen, emit, ggs
from .analysis import IRREGULAR, REGULAR, detect_irregular
from .colli_vargas import (CvConfigError, CvParams, block_averages, build_itinerary, build_tables,
                           check_constants, cocycle, cocycle_checks, containment_checks,
                           ftle_limits, ftle_series, parity_subseries, quadratic_checks,
                           random_seed, square_cuts, strip_checks)
from .colli_vargas.checks import random_cone_vector
from .colli_vargas.tables import ConstantSearchError

EXIT_OK, EXIT_CHECK, EXIT_CONFIG = 0, 1, 2

DEFAULTS = {
    "ggs": {
        "sigma": "2", "a": "6/5", "b": "3/2", "n0": "2", "k0": "3",
        "d_max": "12", "intermediate_d_max": "6",
        "zeta_grid": "0 0.1 0.2 1/3 0.4 0.5 0.6 0.7 0.8 0.9 1",
    },
    "bowen": {
        "alpha_plus": "1.0", "alpha_minus": "1.2", "beta_plus": "1.0", "beta_minus": "1.2",
        "c": "1.0", "c_hat": "1.0", "T_bar": "1.0", "T_hat_bar": "1.0", "T_hat_0": "1.0",
        "s_init": "0.5", "delta": "0.0", "n": "30", "phi_p": "1.0", "phi_phat": "0.0",
    },
    "cv": {
        "lam": "0.02", "sigma": "2.5", "alpha": "1.15", "beta": "1.2", "n0": "50",
        "xi": "0.25", "eta": "0.25", "sign_branch": "plus",
        "steps": "80", "k_max": "60", "p_max": "10",
        "birkhoff_p": "8", "L0": "0", "phi_plus": "1.0", "phi_minus": "0.0",
    },
}


class ConfigError(Exception):
    pass


def load_config(path: str | None) -> configparser.ConfigParser:
    cp = configparser.ConfigParser()
    cp.optionxform = str
    cp.read_dict(DEFAULTS)
    if path is None:
        return cp
    user = configparser.ConfigParser()
    user.optionxform = str
    try:
        with open(path) as fh:
            user.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for section in user.sections():
        if section not in DEFAULTS:
            raise ConfigError(f"unknown section [{section}]")
        for key, value in user[section].items():
            if key not in DEFAULTS[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            cp[section][key] = value
    return cp


def defaults_text() -> str:
    cp = load_config(None)
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def _num(section, key, kind=float):
    raw = section[key].strip()
    try:
        if kind is Fraction:
            return Fraction(raw)
        if kind is int:
            return int(raw)
        return float(Fraction(raw)) if "/" in raw else float(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{key} = {raw!r} is not a valid {kind.__name__}") from exc


def _rational_or_float(raw: str):
    f = Fraction(raw)
    return int(f) if f.denominator == 1 else f


def ggs_params(cp) -> tuple[ggs.GgsParams, dict]:
    s = cp["ggs"]
    try:
        params = ggs.GgsParams(
            sigma=_rational_or_float(s["sigma"]), a=_rational_or_float(s["a"]),
            b=_rational_or_float(s["b"]), n0=_num(s, "n0", int), k0=_num(s, "k0", int))
        zetas = [Fraction(z) for z in s["zeta_grid"].split()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"[ggs] {exc}") from exc
    if any(not 0 <= z <= 1 for z in zetas):
        raise ConfigError("[ggs] zeta_grid values must lie in [0, 1]")
    return params, {"d_max": _num(s, "d_max", int),
                    "intermediate_d_max": _num(s, "intermediate_d_max", int), "zetas": zetas}


def bowen_params(cp) -> tuple[bowen.BowenParams, dict]:
    s = cp["bowen"]
    names = [f.name for f in fields(bowen.BowenParams)]
    try:
        params = bowen.BowenParams(**{k: _num(s, k) for k in names})
    except ValueError as exc:
        raise ConfigError(f"[bowen] {exc}") from exc
    n = _num(s, "n", int)
    if n < 4:
        raise ConfigError("[bowen] n must be >= 4")
    return params, {"n": n, "phi_p": _num(s, "phi_p"), "phi_phat": _num(s, "phi_phat")}


def cv_params(cp) -> tuple[CvParams, dict]:
    s = cp["cv"]
    try:
        params = CvParams(lam=_num(s, "lam"), sigma=_num(s, "sigma"), alpha=_num(s, "alpha"),
                          beta=_num(s, "beta"), n0=_num(s, "n0", int), xi=_num(s, "xi"),
                          eta=_num(s, "eta"), sign_branch=s["sign_branch"].strip())
    except CvConfigError as exc:
        raise ConfigError(f"[cv] {exc}") from exc
    extra = {k: _num(s, k, int) for k in ("steps", "k_max", "p_max", "birkhoff_p", "L0")}
    extra.update({k: _num(s, k) for k in ("phi_plus", "phi_minus")})
    if extra["steps"] < 8:
        raise ConfigError("[cv] steps must be >= 8")
    if extra["birkhoff_p"] < 1 or extra["L0"] < 0:
        raise ConfigError("[cv] need birkhoff_p >= 1 and L0 >= 0")
    return params, extra


def _report(out, line):
    print(line, file=out)


def cmd_print_defaults(args, out) -> int:
    out.write(defaults_text())
    return EXIT_OK


def cmd_ggs(args, out) -> int:
    cp = load_config(args.config)
    params, opt = ggs_params(cp)
    dest = Path(args.out)
    failures = []
    # exact cocycle identity
    for d in range(1, 21):
        if ggs.cocycle_product(params, d) != ggs.cocycle_closed_form(params, d):
            failures.append(f"cocycle closed form differs from product at d={d}")

    generic = (1.0, 1.0)
    horizontal = (1.0, 0.0)
    rows = []
    ret = ggs.ftle_series(params, generic, ggs.GgsSchedule("return", opt["d_max"]))
    rows += list(ggs.series_rows(ret))
    third = ggs.ftle_series(params, generic,
                            ggs.GgsSchedule("intermediate", opt["intermediate_d_max"], Fraction(1, 3)))
    for z in opt["zetas"]:
        s = ggs.ftle_series(params, generic, ggs.GgsSchedule("intermediate", opt["intermediate_d_max"], z))
        rows += list(ggs.series_rows(s))
    odd = ggs.ftle_series(params, horizontal, ggs.GgsSchedule("odd", opt["d_max"]))
    even = ggs.ftle_series(params, horizontal, ggs.GgsSchedule("even", opt["d_max"]))
    rows += list(ggs.series_rows(odd)) + list(ggs.series_rows(even))
    emit.write_csv(dest / "ggs_series.csv", emit.GGS_SERIES_HEADER, rows)

    verdicts = [detect_irregular(ret, third, gap_tol=args.tol),
                detect_irregular(odd, even, gap_tol=args.tol)]
    emit.write_json(dest / "ggs_verdict.json", [v.to_record() for v in verdicts])
    for v in verdicts:
        _report(out, f"ggs v={v.vector} {v.schedules[0]} vs {v.schedules[1]}: "
                     f"{v.verdict} gap={v.gap:.6g}")
        if v.verdict != IRREGULAR:
            failures.append(f"expected irregular for v={v.vector}, got {v.verdict}")
    return _finish(failures, out)


def cmd_bowen(args, out) -> int:
    cp = load_config(args.config)
    params, opt = bowen_params(cp)
    dest = Path(args.out)
    n = opt["n"]
    emit.write_csv(dest / "bowen_passages.csv", emit.BOWEN_HEADER,
                   bowen.passage_rows(params, n, opt["phi_p"], opt["phi_phat"]))
    tau = bowen.flow_ftle(params, "tau", n)
    rho = bowen.flow_ftle(params, "tau_plus_rho", n)
    v = detect_irregular(tau, rho, gap_tol=args.tol)
    avg_tau, avg_hat = bowen.birkhoff_averages(params, opt["phi_p"], opt["phi_phat"], n)
    lim_tau, lim_hat = bowen.birkhoff_limits(params, opt["phi_p"], opt["phi_phat"])
    record = v.to_record()
    record["expected_gap"] = abs(bowen.closest_approach_limit(params))
    record["birkhoff"] = {"avg_tau": avg_tau, "avg_tau_hat": avg_hat,
                          "limit_tau": lim_tau, "limit_tau_hat": lim_hat}
    emit.write_json(dest / "bowen_verdict.json", record)
    _report(out, f"bowen flow direction tau vs tau+rho: {v.verdict} gap={v.gap:.6g} "
                 f"(expected {record['expected_gap']:.6g})")
    _report(out, f"bowen Birkhoff averages: tau {avg_tau:.6g} (limit {lim_tau:.6g}), "
                 f"tau_hat {avg_hat:.6g} (limit {lim_hat:.6g})")
    failures = []
    if v.verdict != IRREGULAR:
        failures.append(f"expected irregular flow-direction exponent, got {v.verdict}")
    return _finish(failures, out)


def cmd_cv(args, out) -> int:
    cp = load_config(args.config)
    params, opt = cv_params(cp)
    dest = Path(args.out)
    try:
        tables = build_tables(params, opt["k_max"])
    except ConstantSearchError as exc:
        return _finish([f"constant search failed: {exc}"], out)
    steps = opt["steps"]
    k, m = tables.k1, tables.m0 + tables.m0 % 2
    tables = build_tables(params, max(opt["k_max"], k + m + steps + 1))
    rng = random.Random(args.seed)
    seed = random_seed(tables, k, rng)
    try:
        cc = cocycle(tables, k, m, seed, random_cone_vector(params, rng), steps)
    except ValueError as exc:
        raise ConfigError(f"[cv] {exc}") from exc
    series = ftle_series(tables, cc)
    odd, even = parity_subseries(series)
    v = detect_irregular(odd, even, gap_tol=args.tol)
    l_odd, l_even = ftle_limits(params)
    emit.write_csv(dest / "cv_tables.csv", emit.CV_TABLE_HEADER, emit.cv_table_rows(tables))
    emit.write_csv(dest / "cv_ftle.csv", emit.CV_FTLE_HEADER, emit.cv_ftle_rows(series))
    record = v.to_record()
    record.update({"L_odd": l_odd, "L_even": l_even, "expected_gap": abs(l_odd - l_even),
                   "degenerate": params.degenerate, "k": k, "m": m, "seed": args.seed,
                   "constants": {"k0": tables.k0, "m_prime": tables.m_prime,
                                 "k1": tables.k1, "m0": tables.m0}})
    emit.write_json(dest / "cv_verdict.json", record)
    _report(out, f"cv odd vs even: {v.verdict} gap={v.gap:.6g} (expected {abs(l_odd - l_even):.6g})")
    failures = []
    expected = REGULAR if params.degenerate else IRREGULAR
    if params.degenerate:
        _report(out, "note: degenerate parameters (alpha == beta), no oscillation expected")
    if v.verdict != expected:
        failures.append(f"expected {expected}, got {v.verdict}")
    bad_c = [i for i, cs in cc.constants().items() if any(not 0.5 <= c <= 1.5 for c in cs)]
    if bad_c:
        failures.append(f"|C_j| outside [1/2, 3/2] for j in {bad_c}")
    failures += _cv_birkhoff(params, opt, dest, out)
    return _finish(failures, out)


def _cv_birkhoff(params, opt, dest, out) -> list:
    fp, fm, L0, bp = opt["phi_plus"], opt["phi_minus"], opt["L0"], opt["birkhoff_p"]
    k_end = (2 * bp + 1) ** 2
    rows = []
    for fam in ("regular", "irregular-squares"):
        for k, steps, avg in block_averages(build_itinerary(params, fam, k_end), fp, fm, L0):
            rows.append((fam, k, steps, avg))
    emit.write_csv(dest / "cv_birkhoff.csv", emit.BIRKHOFF_HEADER, rows)
    regular_end = rows[k_end - 1][3]
    cuts = square_cuts(params, bp, fp, fm, L0=L0)
    _report(out, f"cv Birkhoff: regular family {regular_end:.6g} (phi_plus {fp:g}); "
                 f"squares family at (2p)^2 {cuts['even_cut']:.6g}, at (2p+1)^2 {cuts['odd_cut']:.6g}")
    failures = []
    if abs(regular_end - fp) >= 1e-3:
        failures.append(f"regular family average {regular_end:.6g} not within 1e-3 of {fp:g}")
    if fp != fm and abs(cuts["even_cut"] - cuts["odd_cut"]) < 0.5 * abs(fp - fm):
        failures.append("squares family does not oscillate between the two saddles")
    return failures


def cmd_check_constants(args, out) -> int:
    cp = load_config(args.config)
    params, opt = cv_params(cp)
    try:
        tables, checks = check_constants(params, opt["k_max"], opt["p_max"])
    except ConstantSearchError as exc:
        return _finish([f"constant search failed: {exc}"], out)
    if tables is not None and args.suites:
        rng = random.Random(args.seed)
        big = build_tables(params, tables.k1 + 2 * 3 + 60)
        checks = checks + (strip_checks(big) + containment_checks(big, rng=rng)
                           + quadratic_checks(big, rng=rng) + cocycle_checks(big, rng=rng))
    emit.write_csv(Path(args.out) / "cv_checks.csv", emit.CHECK_HEADER, emit.check_rows(checks))
    # one line per inequality family: count and worst margin
    summary = {}
    for c in checks:
        cnt, worst, ok = summary.get(c.name, (0, float("inf"), True))
        summary[c.name] = (cnt + 1, min(worst, c.margin), ok and c.ok)
    _report(out, f"{'inequality':58s} {'count':>6s} {'min margin':>14s}  status")
    for name, (cnt, worst, ok) in summary.items():
        _report(out, f"{name:58s} {cnt:6d} {worst:14.6g}  {'ok' if ok else 'FAIL'}")
    if tables is not None:
        _report(out, f"k0={tables.k0} m'={tables.m_prime} k1={tables.k1} m0={tables.m0}")
    failing = [c for c in checks if not c.ok]
    if failing:
        c = failing[0]
        return _finish([f"{c.name} at {c.indices}: margin {c.margin:.6g}"], out)
    return _finish([], out)


def _finish(failures, out) -> int:
    for f in failures:
        _report(out, f"CHECK FAILED: {f}")
    return EXIT_CHECK if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="INI file overriding the defaults")
    common.add_argument("--out", metavar="DIR", default="out", help="output directory (default: out)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites (default: 0)")
    common.add_argument("--tol", type=float, default=1e-2, help="gap tolerance for verdicts (default: 1e-2)")

    parser = argparse.ArgumentParser(prog="lyapirreg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ggs", parents=[common], help="figure-8 return map experiments")
    sub.add_parser("bowen", parents=[common], help="Bowen flow experiments")
    sub.add_parser("cv", parents=[common], help="return-map cascade FTLE experiment")
    cc = sub.add_parser("check-constants", parents=[common], help="check the cascade constants")
    cc.add_argument("--suites", action="store_true", help="also run the randomized orbit and cocycle suites")
    sub.add_parser("print-defaults", parents=[common], help="print the default configuration")
    return parser


COMMANDS = {
    "ggs": cmd_ggs,
    "bowen": cmd_bowen,
    "cv": cmd_cv,
    "check-constants": cmd_check_constants,
    "print-defaults": cmd_print_defaults,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args, out)
    except ConfigError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
