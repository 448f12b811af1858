"""Command-line entry point: ``hqkoebe <subcommand> [flags]``.

Exit status is 0 on success, 1 when a verification check fails and 2 on
usage, configuration or domain errors.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, coeffs, differential, hyp2f1, render, shear, univalence, verify
from .errors import KoebeError
from .numkit import R_MAX_DEFAULT, QuadSpec

_COMPLEX = re.compile(r"^\s*([+-]?[0-9.]+(?:[eE][+-]?\d+)?)(?:\s*([+-])\s*([0-9.]+(?:[eE][+-]?\d+)?)i)?\s*$")
_IMAG = re.compile(r"^\s*([+-]?[0-9.]+(?:[eE][+-]?\d+)?)i\s*$")


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``<re>(+|-)<im>i``, a bare real, or a bare ``<im>i``."""
    m = _COMPLEX.match(text)
    if m:
        re_part = float(m.group(1))
        im_part = float(m.group(3)) if m.group(3) else 0.0
        return complex(re_part, -im_part if m.group(2) == "-" else im_part)
    m = _IMAG.match(text)
    if m:
        return complex(0.0, float(m.group(1)))
    raise UsageError(f"cannot parse complex literal {text!r}; expected <re>+<im>i")


def parse_real(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse real number {text!r}") from None


def _parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--a", type=str, default=None, help="exponent a (decimal or p/q)")
    shared.add_argument("--lambda", dest="lam", type=str, default=None, help="lambda in [0, 1)")
    shared.add_argument("--z", type=str, default=None, help="point <re>+<im>i in the unit disk")
    shared.add_argument("--r", type=float, default=None, help="radius")
    shared.add_argument("--order", type=int, default=None, help="series truncation order")
    shared.add_argument("--exact", action="store_true", help="rational coefficient arithmetic")
    shared.add_argument("--tol", type=float, default=None, help="quadrature relative tolerance")
    shared.add_argument("--json", action="store_true", help="emit JSON")
    shared.add_argument("-o", dest="out", type=str, default=None, help="output path")
    shared.add_argument("--preset", choices=sorted(render.PRESETS), default=None)

    ap = argparse.ArgumentParser(prog="hqkoebe", description="Harmonic Koebe family toolkit")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("eval", "evaluate h, g and f at a point"),
        ("coeffs", "Taylor coefficients and closed forms"),
        ("norms", "pre-Schwarzian and Schwarzian norm estimates"),
        ("growth", "growth sandwich for |f| on a circle"),
        ("area", "area of the image of a disk"),
        ("univalence", "univalence verdict, witness pair and scan"),
        ("render", "SVG image of a polar mesh"),
    ):
        sub.add_parser(name, parents=[shared], help=help_text)
    v = sub.add_parser("verify", parents=[shared], help="run property-check suites")
    v.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    v.add_argument("--config", type=str, default=None, help="JSON grid config")
    v.add_argument("--jobs", type=int, default=1)
    return ap


def _params(args, need=True) -> shear.Params | None:
    if args.preset is not None:
        target = render.PRESETS[args.preset]
        if isinstance(target, str):
            raise UsageError(f"preset {args.preset} is the harmonic Koebe limit, not a (a, lambda) pair")
        a, lam = target.a, target.lam
    else:
        if args.a is None:
            if need:
                raise UsageError("--a is required")
            return None
        a = float(parse_real(args.a))
        lam = float(parse_real(args.lam)) if args.lam is not None else 0.0
    quad = QuadSpec(rel_tol=args.tol) if args.tol is not None else QuadSpec()
    return shear.Params(a, lam, quad)


def _require_r(args, default=None) -> float:
    r = args.r if args.r is not None else default
    if r is None:
        raise UsageError("--r is required")
    return float(r)


def cmd_eval(args):
    p = _params(args)
    if args.z is None:
        raise UsageError("--z is required")
    z = parse_complex(args.z)
    v = shear.eval_f(p, z)
    out = {"a": p.a, "lambda": p.lam, "z": z, "h": v.h, "g": v.g, "f": v.f,
           "err": v.err, "converged": v.converged}
    if args.order is not None:
        s = shear.hg_series(p.a, p.lam, args.order)(z)
        out["series"] = {"order": args.order, "h": s.h, "g": s.g, "f": s.f}
    if not (p.a >= 0 and float(p.a).is_integer()):
        c = hyp2f1.closed_form_hg(p, z)
        out["closed_form"] = {"h": c.h, "g": c.g, "f": c.f}
    return out, 0


def cmd_coeffs(args):
    if args.preset is None and args.a is None:
        raise UsageError("--a is required")
    if args.preset is not None:
        p = _params(args)
        a, lam = Fraction(p.a), Fraction(p.lam)
    else:
        a = parse_real(args.a)
        lam = parse_real(args.lam) if args.lam is not None else Fraction(0)
    if not args.exact:
        a, lam = float(a), float(lam)
    n = args.order if args.order is not None else 8
    pair = shear.hg_series(a, lam, n, exact=args.exact)
    table = coeffs.coeff_closed_forms(a, lam)
    out = {"a": a, "lambda": lam, "order": n,
           "a_n": list(pair.a_coeffs.coeffs), "b_n": list(pair.b_coeffs.coeffs),
           "closed_forms": table.values(), "bounds": table.bounds}
    return out, 0


def cmd_norms(args):
    p = _params(args)
    r_max = _require_r(args, R_MAX_DEFAULT)
    out = {"a": p.a, "lambda": p.lam, "r_max": r_max}
    for kind in ("pre_schwarzian", "schwarzian"):
        rep = differential.norm_estimate(kind, p, r_max)
        out[kind] = {"estimate": rep.estimate, "argmax": rep.argmax, "bound": rep.bound, "gap": rep.gap}
    return out, 0


def cmd_growth(args):
    p = _params(args)
    r = _require_r(args)
    b = bounds.growth_bounds(p, r)
    theta = 2 * math.pi * np.arange(64) / 64
    _, _, f, _, _ = shear.eval_f_many(p, r * np.exp(1j * theta))
    mod = np.abs(f)
    out = {"a": p.a, "lambda": p.lam, "r": r, "regime": b.regime,
           "lower": b.lo, "upper": b.hi, "min_abs_f": float(mod.min()), "max_abs_f": float(mod.max()),
           "inside": bool(b.contains(mod.min(), 1e-9) and b.contains(mod.max(), 1e-9))}
    return out, 0


def cmd_area(args):
    p = _params(args)
    r = _require_r(args)
    value, err = bounds.area_empirical(p, r, with_error=True)
    b = bounds.area_bounds(p, r)
    out = {"a": p.a, "lambda": p.lam, "r": r, "regime": b.regime, "area": value, "err": err,
           "lower": b.lo, "upper": b.hi, "inside": bool(b.contains(value, 1e-9))}
    return out, 0


def cmd_univalence(args):
    p = _params(args)
    n = args.order if args.order is not None else 4096
    rep = univalence.univalence_verdict(p, args.r, n)
    out = {"a": p.a, "lambda": p.lam, "verdict": rep.verdict}
    if rep.witness is not None:
        out["witness"] = list(rep.witness)
        out["witness_gap"] = rep.witness_gap
        out["k_at_witness"] = rep.k_at_witness
    if rep.scan is not None:
        out["scan"] = {"r": rep.scan.r, "samples": rep.scan.samples, "status": rep.scan.status,
                       "pair": rep.scan.pair, "step_ratio": rep.scan.step_ratio}
    return out, 0


def cmd_render(args):
    if args.preset is not None:
        target = args.preset
    else:
        target = _params(args)
    mesh = render.MeshSpec(r_max=args.r) if args.r is not None else render.MeshSpec()
    doc = render.render_disk_image(target, mesh)
    return doc, 0


def cmd_verify(args):
    config = verify.load_config(args.config) if args.config else None
    a = parse_real(args.a) if args.a is not None else None
    lam = parse_real(args.lam) if args.lam is not None else None
    report = verify.run_verify(args.suite, config, a, lam, max(1, args.jobs))
    return report, 0 if verify.report_passed(report) else 1


_COMMANDS = {
    "eval": cmd_eval, "coeffs": cmd_coeffs, "norms": cmd_norms, "growth": cmd_growth,
    "area": cmd_area, "univalence": cmd_univalence, "render": cmd_render, "verify": cmd_verify,
}


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def _format(result, as_json: bool) -> str:
    if isinstance(result, str):
        return result
    data = verify.jsonable(result)
    if as_json:
        return json.dumps(data, indent=2) + "\n"
    if "checks" in data:
        lines = [f"{'PASS' if c['pass'] else 'FAIL'} {c['suite']} {c['name']} {c['params']}"
                 for c in data["checks"]]
        failed = sum(not c["pass"] for c in data["checks"])
        lines.append(f"{len(data['checks']) - failed}/{len(data['checks'])} checks passed "
                     f"in {data['elapsed_ms']:.0f} ms")
        return "\n".join(lines) + "\n"
    return _text(data) + "\n"


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        result, status = _COMMANDS[args.command](args)
    except (UsageError, KoebeError, ValueError) as exc:
        print(f"hqkoebe: error: {exc}", file=sys.stderr)
        return 2
    text = _format(result, args.json)
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"hqkoebe: error: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return status
