"""SVG rendering of instances and solutions.

Coordinates are rounded to 6 significant decimals for display only. The
y axis is flipped so the picture has the usual mathematical orientation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import TriangleClass, classify_triangle
from .model import Instance, Solution
from .verify import verify


@dataclass(frozen=True)
class RenderStyle:
    boundary_color: str = "blue"
    constraint_color: str = "red"
    point_color: str = "black"
    edge_color: str = "grey"
    obtuse_fill: str = "orange"
    obtuse_opacity: float = 0.45
    steiner_color: str = "green"
    width: int = 800


def _fmt(v) -> str:
    s = f"{float(v):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(inst: Instance, sol: Solution | None = None, style: RenderStyle = RenderStyle()) -> str:
    pts = list(inst.points)
    if sol is not None:
        pts += list(sol.steiner_points)
    xs = [float(p.x) for p in pts]
    ys = [float(p.y) for p in pts]
    w = max(xs) - min(xs) or 1.0
    h = max(ys) - min(ys) or 1.0
    mx, my = 0.05 * w, 0.05 * h
    x0, y0 = min(xs) - mx, min(ys) - my
    vw, vh = w + 2 * mx, h + 2 * my
    scale = max(vw, vh) / style.width
    stroke = _fmt(2 * scale)
    r = _fmt(3 * scale)

    def X(p):
        return _fmt(float(p.x) - x0)

    def Y(p):
        # flip so that y grows upwards
        return _fmt(vh - (float(p.y) - y0))

    height = round(style.width * vh / vw) if vw >= vh else style.width
    width = style.width if vw >= vh else round(style.width * vw / vh)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {_fmt(vw)} {_fmt(vh)}">'
    ]

    if sol is not None:
        rep = verify(inst, sol)
        for a, b, c in rep.triangles:
            if classify_triangle(pts[a], pts[b], pts[c]) is TriangleClass.OBTUSE:
                coords = " ".join(f"{X(pts[i])},{Y(pts[i])}" for i in (a, b, c))
                out.append(
                    f'<polygon class="obtuse" points="{coords}" fill="{style.obtuse_fill}" '
                    f'fill-opacity="{style.obtuse_opacity}" stroke="none"/>'
                )
        for u, v in sorted((min(e), max(e)) for e in sol.edges):
            if 0 <= u < len(pts) and 0 <= v < len(pts):
                p, q = pts[u], pts[v]
                out.append(
                    f'<line class="edge" x1="{X(p)}" y1="{Y(p)}" x2="{X(q)}" y2="{Y(q)}" '
                    f'stroke="{style.edge_color}" stroke-width="{stroke}"/>'
                )

    ring = " ".join(f"{X(p)},{Y(p)}" for p in inst.boundary_points)
    out.append(
        f'<polygon class="boundary" points="{ring}" fill="none" '
        f'stroke="{style.boundary_color}" stroke-width="{stroke}"/>'
    )
    for a, b in inst.constraints:
        p, q = inst.points[a], inst.points[b]
        out.append(
            f'<line class="constraint" x1="{X(p)}" y1="{Y(p)}" x2="{X(q)}" y2="{Y(q)}" '
            f'stroke="{style.constraint_color}" stroke-width="{stroke}"/>'
        )
    for p in inst.points:
        out.append(f'<circle class="point" cx="{X(p)}" cy="{Y(p)}" r="{r}" fill="{style.point_color}"/>')
    if sol is not None:
        # Steiner points as small squares so they stay distinct from input points
        for p in sol.steiner_points:
            x, y = float(p.x) - x0, vh - (float(p.y) - y0)
            s = 3 * scale
            out.append(
                f'<rect class="steiner" x="{_fmt(x - s)}" y="{_fmt(y - s)}" '
                f'width="{_fmt(2 * s)}" height="{_fmt(2 * s)}" fill="{style.steiner_color}"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
