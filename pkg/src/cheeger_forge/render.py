"""Deterministic SVG figures for arc-gon domains.

Arcs map 1:1 onto SVG elliptical-arc path commands (equal radii, rotation 0,
large-arc always 0 because every edge is a minor arc).  Output depends only
on the input geometry: fixed palette, fixed float formatting, no
timestamps.  Figures are display-only; nothing reads them back.
"""

from __future__ import annotations

import math

from .constructions import ContactSet
from .errors import InvalidInput
from .geometry import ArcEdge, ArcGon, RegionSet

__all__ = ["render_svg", "write_svg"]

_STYLES = {
    "ambient": ("#dbeafe", "#1d4ed8", 1.2),
    "domain": ("#ccfbf1", "#0f766e", 1.5),
    "cheeger-set": ("#fef3c7", "#b45309", 1.5),
    "erosion": ("#fce7f3", "#be185d", 1.2),
    "contact": ("none", "#dc2626", 3.0),
}
_FALLBACK = [
    ("#e5e7eb", "#374151", 1.2),
    ("#ede9fe", "#6d28d9", 1.2),
    ("#ffedd5", "#c2410c", 1.2),
]


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _edge_cmd(e: ArcEdge) -> str:
    if e.is_segment:
        return f"L {_fmt(e.end[0])} {_fmt(e.end[1])}"
    r = _fmt(e.radius)
    sweep = 1 if e.curvature > 0.0 else 0
    return f"A {r} {r} 0 0 {sweep} {_fmt(e.end[0])} {_fmt(e.end[1])}"


def _chain_path(gon: ArcGon, close: bool = True) -> str:
    parts = [f"M {_fmt(gon.edges[0].start[0])} {_fmt(gon.edges[0].start[1])}"]
    parts.extend(_edge_cmd(e) for e in gon.edges)
    if close:
        parts.append("Z")
    return " ".join(parts)


def _subchain_paths(gon: ArcGon, a: float, b: float) -> str:
    """Path commands for the boundary stretch with arclength in [a, b]."""
    out = []
    s = 0.0
    for e in gon.edges:
        e0, e1 = s, s + e.length
        s = e1
        lo = max(a, e0)
        hi = min(b, e1)
        if hi - lo <= 1e-12 * max(1.0, e.length):
            continue
        u0 = (lo - e0) / e.length
        u1 = (hi - e0) / e.length
        p0 = e.start if u0 <= 0.0 else e.point_at(u0)
        p1 = e.end if u1 >= 1.0 else e.point_at(u1)
        piece = ArcEdge(p0, p1, e.curvature)
        out.append(f"M {_fmt(p0[0])} {_fmt(p0[1])} {_edge_cmd(piece)}")
    return " ".join(out)


def _style_for(label: str, index: int):
    if label in _STYLES:
        return _STYLES[label]
    return _FALLBACK[index % len(_FALLBACK)]


def render_svg(layers: list[tuple[str, object]], *, width: int = 720) -> str:
    """SVG document for a list of (label, item) layers drawn in order.

    Items: ArcGon (filled region), RegionSet (its components and points), or
    (ContactSet, ArcGon) — contact loci resolved on the given boundary.
    """
    if not layers:
        raise InvalidInput("nothing to render: empty layer list")
    boxes = []
    for _, item in layers:
        if isinstance(item, ArcGon):
            boxes.append(item.bbox())
        elif isinstance(item, RegionSet):
            boxes.extend(c.bbox() for c in item.components)
            boxes.extend((x, y, x, y) for x, y in item.points)
        elif isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], ContactSet):
            boxes.append(item[1].bbox())
        else:
            raise InvalidInput(f"cannot render item of type {type(item).__name__}")
    x0 = min(b[0] for b in boxes)
    y0 = min(b[1] for b in boxes)
    x1 = max(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    span = max(x1 - x0, y1 - y0, 1e-9)
    pad = 0.05 * span
    x0, y0, x1, y1 = x0 - pad, y0 - pad, x1 + pad, y1 + pad
    scale = width / (x1 - x0)
    height = int(math.ceil((y1 - y0) * scale))

    body = []
    for i, (label, item) in enumerate(layers):
        fill, stroke, sw_px = _style_for(label, i)
        sw = _fmt(sw_px / scale)
        attrs = f'fill="{fill}" fill-opacity="0.75" stroke="{stroke}" stroke-width="{sw}"'
        body.append(f'<g id="layer-{i}-{label}">')
        if isinstance(item, ArcGon):
            body.append(f'<path d="{_chain_path(item)}" {attrs} stroke-linejoin="round"/>')
        elif isinstance(item, RegionSet):
            for c in item.components:
                body.append(f'<path d="{_chain_path(c)}" {attrs} stroke-linejoin="round"/>')
            for x, y in item.points:
                body.append(
                    f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(3.0 / scale)}" '
                    f'fill="{stroke}" stroke="none"/>'
                )
        else:
            cs, host = item
            for a, b in cs.intervals_param:
                d = _subchain_paths(host, a, b)
                if d:
                    body.append(
                        f'<path d="{d}" fill="none" stroke="{stroke}" '
                        f'stroke-width="{sw}" stroke-linecap="round"/>'
                    )
            for x, y in cs.points:
                body.append(
                    f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(4.0 / scale)}" '
                    f'fill="{stroke}" stroke="none"/>'
                )
        body.append("</g>")

    tx = -x0 * scale
    ty = y1 * scale  # y flips: screen y = ty - scale * y
    inner = "\n".join(body)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<g transform="matrix({_fmt(scale)} 0 0 {_fmt(-scale)} {_fmt(tx)} {_fmt(ty)})">\n'
        f"{inner}\n"
        f"</g>\n</svg>\n"
    )


def write_svg(path, layers, *, width: int = 720) -> None:
    doc = render_svg(layers, width=width)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(doc)
