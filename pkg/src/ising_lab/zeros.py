"""Fisher zeros: roots of Z_Ising(G; b), their x-plane images, and family scans."""
from __future__ import annotations

import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .generators import FamilySpec, family_graphs
from .graph import Graph, max_degree, to_edge_list
from .partition import z_ising_poly
from .polynomial import DEFAULT_TOL, eval_complex, roots
from .regions import b_to_x, eps_delta, hardness_radius, n_delta


@dataclass
class ZeroRecord:
    descriptor: str
    graph: str  # canonical edge-list text
    delta: int
    roots: list[complex]
    x_images: list[complex | None]  # None for b = -1
    min_abs_x: float
    seed: int | None = None
    residuals: list[float] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "format": "edge-list",
            "graph": self.graph,
            "delta": self.delta,
            "seed": self.seed,
            "roots": [[z.real, z.imag] for z in self.roots],
            "x_images": [None if x is None else [x.real, x.imag] for x in self.x_images],
            "min_abs_x": None if math.isinf(self.min_abs_x) else self.min_abs_x,
        }


def fisher_zeros(g: Graph, tol: float = DEFAULT_TOL, descriptor: str = "", seed: int | None = None) -> ZeroRecord:
    """All roots of Z_Ising(G; b) with certified residuals, mapped to x = (b-1)/(b+1)."""
    p = z_ising_poly(g)
    rs = roots(p, tol)
    xs: list[complex | None] = []
    for z in rs:
        xs.append(None if z == -1 else b_to_x(z))
    finite = [abs(x) for x in xs if x is not None]
    res = [abs(eval_complex(p, z)) for z in rs]
    return ZeroRecord(
        descriptor=descriptor or f"graph:{g.n}:{g.m}",
        graph=to_edge_list(g),
        delta=max_degree(g),
        roots=rs,
        x_images=xs,
        min_abs_x=min(finite, default=math.inf),
        seed=seed,
        residuals=res,
    )


@dataclass
class ScanSummary:
    family: str
    delta: int
    radius: float
    count: int
    violations: list[str]
    degree_violations: list[str]
    global_min_abs_x: float
    witness: str | None

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "delta": self.delta,
            "radius": self.radius,
            "count": self.count,
            "violations": self.violations,
            "degree_violations": self.degree_violations,
            "global_min_abs_x": None if math.isinf(self.global_min_abs_x) else self.global_min_abs_x,
            "witness": self.witness,
            "gap_to_one_over_delta_minus_1": (
                None if math.isinf(self.global_min_abs_x) else self.global_min_abs_x - 1 / (self.delta - 1)
            ),
        }


def _zeros_job(args):
    desc, g, seed, tol = args
    return fisher_zeros(g, tol, descriptor=desc, seed=seed)


def scan_family(
    spec: FamilySpec,
    delta: int,
    radius: float | None = None,
    tol: float = 1e-9,
    jobs: int = 1,
) -> tuple[list[ZeroRecord], ScanSummary]:
    """Fisher zeros of every graph in a family, checked against |x| > radius.

    ``radius`` defaults to n_Delta.  A record violates when some finite x-image
    has |x| <= radius - tol, i.e. a zero inside the closed disk beyond the
    numerical tolerance.  Records come back in generation order for any ``jobs``.
    """
    if radius is None:
        radius = n_delta(delta)
    items = [(d, g, s, min(tol, DEFAULT_TOL)) for d, g, s in family_graphs(spec)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_zeros_job, items, chunksize=8))
    else:
        records = [_zeros_job(it) for it in items]
    violations = []
    degree_violations = []
    best = math.inf
    witness = None
    for rec in records:
        if rec.delta > delta:
            degree_violations.append(rec.descriptor)
            continue
        if rec.min_abs_x <= radius - tol:
            violations.append(rec.descriptor)
        if rec.min_abs_x < best:
            best, witness = rec.min_abs_x, rec.descriptor
    summary = ScanSummary(spec.describe(), delta, radius, len(records), violations, degree_violations, best, witness)
    return records, summary


# -- SVG --------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return f"{v:.4f}"


def zero_map_svg(records, delta: int = 3, size: int = 600, extent: float = 1.6) -> str:
    """Scatter of x-images with reference circles; byte-identical for equal input."""
    scale = size / (2 * extent)
    cx = cy = size / 2

    def px(z: complex) -> tuple[str, str]:
        return _fmt(cx + z.real * scale), _fmt(cy - z.imag * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="0" y1="{_fmt(cy)}" x2="{size}" y2="{_fmt(cy)}" stroke="#999" stroke-width="1"/>',
        f'<line x1="{_fmt(cx)}" y1="0" x2="{_fmt(cx)}" y2="{size}" stroke="#999" stroke-width="1"/>',
    ]
    circles = [
        ("n_delta", n_delta(delta), "#d62728"),
        ("eps_delta", eps_delta(delta), "#2ca02c"),
        ("1/(delta-1)", 1 / (delta - 1), "#1f77b4"),
        ("1/sqrt(delta-1)", hardness_radius(delta), "#9467bd"),
        ("unit", 1.0, "#7f7f7f"),
    ]
    for name, r, colour in circles:
        out.append(
            f'<circle class="ref" data-name="{name}" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r * scale)}" '
            f'fill="none" stroke="{colour}" stroke-width="1.5"/>'
        )
    for rec in records:
        for x in rec.x_images:
            if x is None or abs(x.real) > extent or abs(x.imag) > extent:
                continue
            a, b = px(x)
            out.append(f'<circle class="zero" cx="{a}" cy="{b}" r="2" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit_zero_map(records, output: str, delta: int = 3) -> str:
    text = zero_map_svg(records, delta)
    write_atomic(output, text)
    return output


def records_to_jsonl(records) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in records)
