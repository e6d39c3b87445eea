"""SVG drawing of a packing instance and, optionally, its solution circle."""

from __future__ import annotations

from xml.sax.saxutils import escape

SIZE = 600.0
MARGIN = 20.0


class _Frame:
    """Affine map from [lb, ub]^2 to the viewport, y flipped to point up."""

    def __init__(self, lb: float, ub: float):
        self.lb = lb
        self.scale = (SIZE - 2 * MARGIN) / (ub - lb)

    def x(self, v: float) -> float:
        return MARGIN + (v - self.lb) * self.scale

    def y(self, v: float) -> float:
        return SIZE - MARGIN - (v - self.lb) * self.scale

    def length(self, v: float) -> float:
        return v * self.scale


def svg_document(inst, solution=None) -> str:
    f = _Frame(inst.lb, inst.ub)
    side = f.length(inst.ub - inst.lb)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:g}" height="{SIZE:g}" '
        f'viewBox="0 0 {SIZE:g} {SIZE:g}">',
        f'<rect x="{f.x(inst.lb):.3f}" y="{f.y(inst.ub):.3f}" width="{side:.3f}" height="{side:.3f}" '
        'fill="none" stroke="black" stroke-width="1.5"/>',
    ]
    for c in inst.obstacles:
        out.append(f'<circle cx="{f.x(c.center[0]):.3f}" cy="{f.y(c.center[1]):.3f}" '
                   f'r="{f.length(c.radius):.3f}" fill="none" stroke="#1f4e9c" stroke-width="1.2"/>')
    if solution is not None:
        (sx, sy), radius = solution
        cx, cy = f.x(sx), f.y(sy)
        out.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{f.length(radius):.3f}" '
                   'fill="#e8743b" fill-opacity="0.45" stroke="#b8401a" stroke-width="1.2"/>')
        # center marker is a path so the circle count stays one per disc
        out.append(f'<path d="M {cx - 4:.3f} {cy:.3f} L {cx + 4:.3f} {cy:.3f} '
                   f'M {cx:.3f} {cy - 4:.3f} L {cx:.3f} {cy + 4:.3f}" stroke="black" stroke-width="1"/>')
        label = escape(f"r = {radius:.4f}")
        out.append(f'<text x="{cx + 6:.3f}" y="{cy - 6:.3f}" font-family="sans-serif" '
                   f'font-size="12">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
