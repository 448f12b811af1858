"""Property-check suites over a parameter grid, with JSON-ready reports."""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, coeffs, differential, hyp2f1, shear, univalence
from .analytic_maps import koebe_generalized
from .errors import ConfigError
from .numkit import R_MAX_DEFAULT

SUITES = ("coeffs", "shear", "norms", "growth", "area", "univalence", "hyp")

DEFAULT_A = tuple(Fraction(k, 2) for k in range(-4, 5))
DEFAULT_LAMBDA = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10))
DEFAULT_SEED = 20240601


def format_complex(z) -> str:
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return "%r%s%ri" % (z.real, sign, abs(z.imag))


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, (complex, np.complexfloating)):
        return format_complex(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def _check(name, a, lam, measured, expected, tol, passed, **extra):
    params = {"a": a, "lambda": lam}
    params.update(extra)
    return {"name": name, "params": params, "measured": measured,
            "bound_or_expected": expected, "tol": tol, "pass": bool(passed)}


def _params(a, lam) -> shear.Params:
    return shear.Params(float(a), float(lam))


def _rng(seed, a, lam):
    return np.random.default_rng([seed, int(Fraction(a) * 1000) + 10_000, int(Fraction(lam) * 1000)])


def _disk_sample(rng, n, rmax):
    return rmax * np.sqrt(rng.uniform(size=n)) * np.exp(2j * math.pi * rng.uniform(size=n))


# --------------------------------------------------------------------------
# suites; each takes one grid cell and returns a list of checks


def suite_coeffs(a, lam, seed):
    out = []
    a, lam = Fraction(a), Fraction(lam)
    table = coeffs.coeff_closed_forms(a, lam)
    pair = shear.hg_series(a, lam, 8, exact=True)
    series = dict(a2=pair.a_coeffs[2], a3=pair.a_coeffs[3], a4=pair.a_coeffs[4],
                  b2=pair.b_coeffs[2], b3=pair.b_coeffs[3], b4=pair.b_coeffs[4])
    for k, v in table.values().items():
        out.append(_check(f"coeff_{k}_exact", a, lam, series[k], v, 0, series[k] == v))
        bound = table.bounds[k]
        sharp = abs(v) == bound if a >= 0 else abs(v) <= bound
        out.append(_check(f"coeff_{k}_bound", a, lam, abs(v), bound, 0, sharp))
    rel = coeffs.defining_relations(a, lam, table)
    out.append(_check("coeff_relations", a, lam, rel, 0, 0, all(r == 0 for r in rel.values())))
    return out


def suite_shear(a, lam, seed):
    p = _params(a, lam)
    z = _disk_sample(_rng(seed, a, lam), 200, 0.95)
    h, g, f, err, conv = shear.eval_f_many(p, z)
    gap = float(np.max(np.abs(h - g - koebe_generalized(p.a, z))))
    out = [_check("shear_identity", a, lam, gap, 0, 1e-9, gap < 1e-9)]
    J = shear.jacobian(p, z)
    out.append(_check("jacobian_positive", a, lam, float(J.min()), 0, 0, bool(np.all(J > 0))))
    zs = z[np.abs(z) <= 0.5][:20]
    pair = shear.hg_series(p.a, p.lam, 64)
    dev = float(np.max(np.abs(pair.a_coeffs(zs) - h[np.abs(z) <= 0.5][:20])))
    out.append(_check("series_vs_quadrature", a, lam, dev, 0, 1e-8, dev < 1e-8))
    return out


def suite_norms(a, lam, seed):
    p = _params(a, lam)
    out = []
    for kind in ("pre_schwarzian", "schwarzian"):
        rep = differential.norm_estimate(kind, p, R_MAX_DEFAULT)
        out.append(_check(f"{kind}_norm_bound", a, lam, rep.estimate, rep.bound, 1e-9,
                          rep.estimate <= rep.bound + 1e-9, argmax=rep.argmax))
    z = _disk_sample(_rng(seed, a, lam), 100, 0.95)
    jets = differential.family_jets(p, z)
    P, S = differential.generic_operators(*jets)
    dP = float(np.max(np.abs(P - differential.pre_schwarzian_closed(p, z))))
    dS = float(np.max(np.abs(S - differential.schwarzian_closed(p, z)) / np.maximum(1, np.abs(S))))
    out.append(_check("pre_schwarzian_consistency", a, lam, dP, 0, 1e-8, dP < 1e-8))
    out.append(_check("schwarzian_consistency", a, lam, dS, 0, 1e-8, dS < 1e-8))
    return out


def suite_growth(a, lam, seed, radii=(0.3, 0.6, 0.9), n_angles=64):
    p = _params(a, lam)
    out = []
    for r in radii:
        b = bounds.growth_bounds(p, r)
        z = r * np.exp(2j * math.pi * np.arange(n_angles) / n_angles)
        _, _, f, err, _ = shear.eval_f_many(p, z)
        mod = np.abs(f)
        tol = 10 * (b.lo_err + b.hi_err + float(err.max()))
        ok = b.contains(float(mod.min()), tol) and b.contains(float(mod.max()), tol)
        out.append(_check("growth_sandwich", a, lam, [float(mod.min()), float(mod.max())],
                          [b.lo, b.hi], tol, ok, r=r))
        hp, _ = shear.shear_derivatives(p, z)
        e = bounds.derivative_envelope(p, r)
        m = np.abs(hp)
        ok = e.lo * (1 - 1e-12) <= m.min() and m.max() <= e.hi * (1 + 1e-12)
        out.append(_check("derivative_envelope", a, lam, [float(m.min()), float(m.max())],
                          [e.lo, e.hi], 1e-12, ok, r=r))
    return out


def suite_area(a, lam, seed, radii=(0.3, 0.5, 0.7)):
    p = _params(a, lam)
    pair = shear.hg_series(p.a, p.lam, 80)
    out = []
    for r in radii:
        emp, err = bounds.area_empirical(p, r, with_error=True)
        ser = bounds.area_series(pair.a_coeffs, pair.b_coeffs, r)
        rel = abs(emp - ser) / abs(ser)
        out.append(_check("area_vs_series", a, lam, emp, ser, 1e-5, rel < 1e-5, r=r))
        b = bounds.area_bounds(p, r)
        tol = 10 * (b.lo_err + b.hi_err + err)
        out.append(_check("area_sandwich", a, lam, emp, [b.lo, b.hi], tol, b.contains(emp, tol), r=r))
    return out


def suite_univalence(a, lam, seed):
    p = _params(a, lam)
    rep = univalence.univalence_verdict(p)
    expected = univalence.UNIVALENT if abs(a) <= 2 else univalence.NOT_UNIVALENT
    out = [_check("univalence_verdict", a, lam, rep.verdict, expected, 0, rep.verdict == expected)]
    if rep.witness is not None:
        z1, z2 = rep.witness
        sep = abs(z1 - z2)
        out.append(_check("witness_collision", a, lam, rep.witness_gap, 0, 1e-7,
                          rep.witness_gap < 1e-7 and sep >= 1, witness=[z1, z2]))
        kdev = abs(rep.k_at_witness + 1 / p.a)
        out.append(_check("witness_koebe_value", a, lam, rep.k_at_witness, -1 / p.a, 1e-12, kdev < 1e-12))
        r = 0.5 * (1 + abs(z1))
        scan = univalence.injectivity_scan(p, r, 4096)
        out.append(_check("injectivity_scan", a, lam, scan.status, "crossing_found", 0, not scan.passed, r=r))
    else:
        scan = univalence.injectivity_scan(p, 0.98, 4096)
        out.append(_check("injectivity_scan", a, lam, scan.status, "passed", 0, scan.passed, r=0.98))
    return out


def suite_hyp(a, lam, seed):
    a_f = float(a)
    if a_f.is_integer():
        return []
    p = _params(a, lam)
    z = _disk_sample(_rng(seed, a, lam), 50, 0.9)
    h, g, _, _, _ = shear.eval_f_many(p, z)
    dev = 0.0
    for k, zk in enumerate(z):
        c = hyp2f1.closed_form_hg(p, zk)
        dev = max(dev, abs(c.h - h[k]), abs(c.g - g[k]))
    return [_check("closed_form_vs_quadrature", a, lam, dev, 0, 1e-6, dev < 1e-6)]


_SUITE_FUNCS = {
    "coeffs": suite_coeffs, "shear": suite_shear, "norms": suite_norms, "growth": suite_growth,
    "area": suite_area, "univalence": suite_univalence, "hyp": suite_hyp,
}


def _fixed_checks(suite):
    """Checks tied to specific parameter values rather than the grid."""
    out = []
    if suite == "coeffs":
        pair = shear.hg_series(2, 1, 6, exact=True)
        ok = all(pair.a_coeffs[n] == Fraction((n + 1) * (2 * n + 1), 6)
                 and pair.b_coeffs[n] == Fraction((n - 1) * (2 * n - 1), 6) for n in range(1, 7))
        out.append(_check("harmonic_koebe_limit", 2, 1, pair.a_coeffs.coeffs, "(n+1)(2n+1)/6", 0, ok))
    elif suite == "norms":
        for kind, a, expected, tol in (("pre_schwarzian", 2, 6.0, 5e-3), ("schwarzian", 2, 6.0, 1e-6),
                                       ("schwarzian", 1, 0.0, 1e-10), ("pre_schwarzian", 0, 2.0, 5e-3)):
            rep = differential.norm_estimate(kind, shear.Params(a, 0.0))
            out.append(_check(f"{kind}_norm_value", a, 0, rep.estimate, expected, tol,
                              abs(rep.estimate - expected) <= tol))
    elif suite == "growth":
        b = bounds.growth_bounds(shear.Params(2, 0.0), 0.5)
        ok = abs(b.lo - 2 / 9) < 1e-8 and abs(b.hi - 2) < 1e-8
        out.append(_check("growth_closed_form", 2, 0, [b.lo, b.hi], ["2/9", 2], 1e-8, ok, r=0.5))
    elif suite == "area":
        p = shear.Params(0, 0.0)
        emp = bounds.area_empirical(p, 0.5)
        exp = math.pi * math.atanh(0.25)
        out.append(_check("area_log_koebe", 0, 0, emp, exp, 1e-6, abs(emp - exp) < 1e-6, r=0.5))
        b = bounds.area_bounds(p, 0.5)
        ok = abs(b.lo - 7 * math.pi / 81) < 1e-8 and abs(b.hi - 5 * math.pi / 3) < 1e-8
        out.append(_check("area_bounds_closed_form", 0, 0, [b.lo, b.hi], ["7pi/81", "5pi/3"], 1e-8, ok, r=0.5))
    elif suite == "hyp":
        worst = 0.0
        for x in 0.7 * np.exp(1j * np.linspace(0.5 * math.pi, 1.5 * math.pi, 25)):
            worst = max(worst, abs(hyp2f1.hyp_E_series(0.5, x) - hyp2f1.hyp_E_pfaff(0.5, x)))
        out.append(_check("hyp_series_vs_pfaff", 0.5, None, worst, 0, 1e-9, worst < 1e-9))
    return out


def load_config(path) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - {"a", "lambda", "seed"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return cfg


def _as_fraction_list(values, key):
    if not isinstance(values, list) or not values:
        raise ConfigError(f"config '{key}' must be a non-empty list")
    try:
        return tuple(Fraction(str(v)) for v in values)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad value in '{key}': {exc}") from exc


def build_grid(config: dict | None = None, a=None, lam=None):
    config = config or {}
    a_vals = _as_fraction_list(config["a"], "a") if "a" in config else DEFAULT_A
    l_vals = _as_fraction_list(config["lambda"], "lambda") if "lambda" in config else DEFAULT_LAMBDA
    if a is not None:
        a_vals = (Fraction(str(a)),)
    if lam is not None:
        l_vals = (Fraction(str(lam)),)
    for l in l_vals:
        if not 0 <= l < 1:
            raise ConfigError("lambda values must lie in [0, 1)")
    seed = config.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    return a_vals, l_vals, seed


def run_verify(suite: str = "all", config: dict | None = None, a=None, lam=None, jobs: int = 1) -> dict:
    """Run one suite (or all) and return the report dict."""
    if suite != "all" and suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}")
    names = SUITES if suite == "all" else (suite,)
    a_vals, l_vals, seed = build_grid(config, a, lam)
    grid = [(x, l) for x in a_vals for l in l_vals]
    t0 = time.perf_counter()
    checks = []
    for name in names:
        func = _SUITE_FUNCS[name]
        if jobs > 1:
            with ThreadPoolExecutor(jobs) as ex:
                results = list(ex.map(lambda c: func(c[0], c[1], seed), grid))
        else:
            results = [func(x, l, seed) for x, l in grid]
        for r in results:
            for c in r:
                c["suite"] = name
                checks.append(c)
        if a is None and lam is None:
            for c in _fixed_checks(name):
                c["suite"] = name
                checks.append(c)
    elapsed = (time.perf_counter() - t0) * 1000
    report = {
        "suite": suite,
        "grid": {"a": list(a_vals), "lambda": list(l_vals), "seed": seed},
        "checks": checks,
        "elapsed_ms": elapsed,
    }
    return jsonable(report)


def report_passed(report: dict) -> bool:
    return all(c["pass"] for c in report["checks"])
