"""SVG output: unit circle at the origin, chords as straight segments,
angle classes as filled polygons.  Coordinates are printed with a fixed
number of decimals so identical inputs give identical bytes."""

from math import cos, pi, sin

__all__ = ["partition_svg", "lamination_svg"]

PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def _xy(theta, r=1.0):
    # svg y axis points down; flip so angles run counterclockwise
    t = 2 * pi * float(theta)
    return f"{r * cos(t):.6f},{-r * sin(t):.6f}"


def _header(title):
    return [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.25 -1.25 2.5 2.5" width="500" height="500">',
        f"<title>{title}</title>",
        '<circle cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.006"/>',
    ]


def _class_shape(cls, color):
    if len(cls) == 2:
        a, b = cls
        x1, y1 = _xy(a).split(",")
        x2, y2 = _xy(b).split(",")
        return (f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                f'stroke="{color}" stroke-width="0.008"/>')
    pts = " ".join(_xy(a) for a in cls)
    return (f'<polygon points="{pts}" fill="{color}" fill-opacity="0.45" '
            f'stroke="{color}" stroke-width="0.008"/>')


def _arc_path(arc, r):
    # split long arcs so no single svg arc command spans more than half a turn
    start = float(arc.start)
    length = float(arc.length)
    steps = max(1, int(length * 4) + 1)
    d = [f"M {_xy(start, r).replace(',', ' ')}"]
    for k in range(1, steps + 1):
        end = start + length * k / steps
        d.append(f"A {r} {r} 0 0 0 {_xy(end, r).replace(',', ' ')}")
    return " ".join(d)


def partition_svg(p, title="critical portrait"):
    """Critical portrait classes plus a colored band per partition piece."""
    lines = _header(title)
    for i, arcs in enumerate(p.pieces):
        color = PALETTE[i % len(PALETTE)]
        for arc in arcs:
            lines.append(f'<path d="{_arc_path(arc, 1.08)}" fill="none" '
                         f'stroke="{color}" stroke-width="0.05" data-piece="{i + 1}"/>')
    if p.portrait is not None:
        for j, cls in enumerate(p.portrait.classes):
            lines.append(_class_shape(cls, "black" if len(cls) == 2 else PALETTE[j % len(PALETTE)]))
    for a in p.boundary:
        lines.append(f'<text x="{_xy(a, 1.18).split(",")[0]}" y="{_xy(a, 1.18).split(",")[1]}" '
                     f'font-size="0.06" text-anchor="middle">{a}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def lamination_svg(lam, title="lamination"):
    """Every class of size >= 2 as a chord or polygon."""
    lines = _header(title)
    for j, cls in enumerate(lam.nontrivial()):
        lines.append(_class_shape(cls, PALETTE[j % len(PALETTE)]))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
