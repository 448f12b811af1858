"""SVG rendering of images of a polar mesh of the disk."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .shear import Params, eval_f_many, harmonic_koebe_many

HARMONIC_KOEBE = "harmonic_koebe"

PRESETS = {
    "fig1": Params(0.0, 0.0),
    "fig2": Params(0.0, 0.5),
    "fig3": Params(2.0, 0.0),
    "fig4": Params(2.0, 0.5),
    "fig5": HARMONIC_KOEBE,
    "fig6": Params(3.0, 0.5),
}


@dataclass(frozen=True)
class MeshSpec:
    n_circles: int = 8
    n_rays: int = 24
    r_max: float = 0.95
    samples_per_curve: int = 256

    def __post_init__(self):
        if self.n_circles < 4 or self.n_rays < 8 or self.samples_per_curve < 64:
            raise ValueError("mesh needs >= 4 circles, >= 8 rays, >= 64 samples per curve")
        if not 0 < self.r_max < 1:
            raise ValueError("r_max must lie in (0, 1)")


def mesh_curves(mesh: MeshSpec) -> list[np.ndarray]:
    """Concentric circles (closed) followed by rays from the origin."""
    n = mesh.samples_per_curve
    th = 2 * math.pi * np.arange(n + 1) / n
    th[-1] = 0.0
    curves = [mesh.r_max * k / mesh.n_circles * np.exp(1j * th) for k in range(1, mesh.n_circles + 1)]
    rho = mesh.r_max * np.arange(n + 1) / n
    for j in range(mesh.n_rays):
        curves.append(rho * np.exp(2j * math.pi * j / mesh.n_rays))
    return curves


def map_curves(target, curves):
    """Images of the mesh curves and the number of points whose quadrature hit its cap."""
    target = PRESETS.get(target, target) if isinstance(target, str) else target
    flat = np.concatenate(curves)
    if isinstance(target, str):
        if target != HARMONIC_KOEBE:
            raise ValueError(f"unknown target {target!r}")
        _, _, f = harmonic_koebe_many(flat)
        capped = 0
    else:
        _, _, f, _, conv = eval_f_many(target, flat)
        capped = int(np.count_nonzero(~conv))
    if not np.all(np.isfinite(f)):
        raise FloatingPointError("non-finite image point")
    out, start = [], 0
    for c in curves:
        out.append(f[start:start + c.size])
        start += c.size
    return out, capped


def _num(x: float) -> str:
    s = repr(float("%.9g" % x))
    if s.endswith(".0"):
        s = s[:-2]
    return "0" if s == "-0" else s


def svg_document(images, title: str, comments=()) -> str:
    xs = np.concatenate([w.real for w in images])
    ys = np.concatenate([-w.imag for w in images])
    x0, x1, y0, y1 = xs.min(), xs.max(), ys.min(), ys.max()
    size = max(x1 - x0, y1 - y0) or 1.0
    m = 0.05 * size
    vb = (x0 - m, y0 - m, (x1 - x0) + 2 * m, (y1 - y0) + 2 * m)
    stroke = _num(0.002 * size)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="%s">' % " ".join(_num(v) for v in vb),
        "<title>%s</title>" % title,
    ]
    lines += ["<!-- %s -->" % c for c in comments]
    lines.append('<g fill="none" stroke="black" stroke-width="%s">' % stroke)
    for w in images:
        pts = " ".join("%s,%s" % (_num(x), _num(-y)) for x, y in zip(w.real, w.imag))
        lines.append('<polyline points="%s"/>' % pts)
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_disk_image(target, mesh: MeshSpec = MeshSpec(), out_path=None) -> str:
    """Render the image of the polar mesh under ``target`` (Params, preset name or harmonic Koebe)."""
    name = None
    if isinstance(target, str) and target in PRESETS:
        name, target = target, PRESETS[target]
    label = target if isinstance(target, str) else "a=%s, lambda=%s" % (_num(target.a), _num(target.lam))
    title = "%s: %s" % (name, label) if name else label
    images, capped = map_curves(target, mesh_curves(mesh))
    comments = ["quadrature subdivision cap reached at %d points" % capped] if capped else []
    doc = svg_document(images, title, comments)
    if out_path is not None:
        Path(out_path).write_text(doc, encoding="utf-8")
    return doc
