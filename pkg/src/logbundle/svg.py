"""Static SVG pictures of real arrangements in the affine chart ``x2 = 1``."""

from __future__ import annotations

from typing import Sequence

from .arrangement import Arrangement
from .errors import NonRealField
from .exactalg.poly import Poly

DEFAULT_WINDOW = (-8.0, 8.0, -8.0, 8.0)
COMPONENT_COLORS = ("#1f4e9c", "#b5331f", "#2b7a3d", "#7a3d8f", "#a36f00", "#00707a")
EXTRA_LINE_COLOR = "#444444"
POINT_COLOR = "#000000"


def _num(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _to_float(c) -> float:
    if hasattr(c, "numerator"):
        return int(c.numerator) / int(c.denominator)
    return float(c)


def _real_part(v) -> float:
    if hasattr(v, "numerator"):
        return _to_float(v)
    return complex(v).real


def _affine_evaluator(f: Poly):
    ex = f.ring.exps
    terms = [(ex(m), _to_float(c)) for m, c in f.terms.items()]

    def ev(x: float, y: float) -> float:
        return sum(c * x ** e[0] * y ** e[1] for e, c in terms)

    return ev


class _Canvas:
    def __init__(self, window: Sequence[float], size: int):
        self.x0, self.x1, self.y0, self.y1 = (float(v) for v in window)
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("window must satisfy xmin < xmax and ymin < ymax")
        self.size = size
        self.sx = size / (self.x1 - self.x0)
        self.sy = size / (self.y1 - self.y0)

    def px(self, x: float, y: float) -> tuple[str, str]:
        return _num((x - self.x0) * self.sx), _num((self.y1 - y) * self.sy)


def clip_line(a: float, b: float, c: float, window: Sequence[float]) -> tuple | None:
    """Endpoints of ``a x + b y + c = 0`` inside the window, or ``None``."""
    x0, x1, y0, y1 = window
    pts = []
    if b:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 <= y <= y1:
                pts.append((x, y))
    if a:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 <= x <= x1:
                pts.append((x, y))
    if len(pts) < 2:
        return None
    pts.sort()
    return pts[0], pts[-1]


def _interp(p, q, fp: float, fq: float):
    t = fp / (fp - fq)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def implicit_segments(f: Poly, window: Sequence[float], grid: int) -> list[tuple]:
    """Marching squares on a ``grid x grid`` lattice over the window."""
    x0, x1, y0, y1 = window
    ev = _affine_evaluator(f)
    hx = (x1 - x0) / grid
    hy = (y1 - y0) / grid
    xs = [x0 + i * hx for i in range(grid + 1)]
    ys = [y0 + j * hy for j in range(grid + 1)]
    vals = [[ev(x, y) for x in xs] for y in ys]
    segs = []
    for j in range(grid):
        for i in range(grid):
            corners = [(xs[i], ys[j]), (xs[i + 1], ys[j]), (xs[i + 1], ys[j + 1]), (xs[i], ys[j + 1])]
            fv = [vals[j][i], vals[j][i + 1], vals[j + 1][i + 1], vals[j + 1][i]]
            cross = []
            for k in range(4):
                a, b = fv[k], fv[(k + 1) % 4]
                if (a < 0) != (b < 0):
                    cross.append(_interp(corners[k], corners[(k + 1) % 4], a, b))
            if len(cross) == 2:
                segs.append((cross[0], cross[1]))
            elif len(cross) == 4:
                centre = ev(xs[i] + hx / 2, ys[j] + hy / 2)
                if (centre < 0) == (fv[0] < 0):
                    segs.append((cross[0], cross[3]))
                    segs.append((cross[1], cross[2]))
                else:
                    segs.append((cross[0], cross[1]))
                    segs.append((cross[2], cross[3]))
    return segs


def emit_svg(arr: Arrangement, extras: dict | None = None, window: Sequence[float] = DEFAULT_WINDOW,
             size: int = 600, grid: int = 240) -> str:
    """Components, then extra lines, then extra points, in input order.

    ``extras`` may hold ``"lines"`` (coefficient triples) and ``"points"``
    (homogeneous coordinates); complex values contribute their real part.
    """
    if arr.field.characteristic:
        raise NonRealField("only arrangements over Q can be plotted")
    extras = extras or {}
    cv = _Canvas(window, size)
    win = (cv.x0, cv.x1, cv.y0, cv.y1)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    ex = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for k, f in enumerate(arr.components):
        color = COMPONENT_COLORS[k % len(COMPONENT_COLORS)]
        if f.degree() == 1:
            a, b, c = (_to_float(f.coefficient(e)) for e in ex)
            seg = clip_line(a, b, c, win)
            if seg:
                (p, q) = seg
                out.append(_line_element(cv, p, q, color, 2.0, f"component {k}"))
            continue
        segs = implicit_segments(f, win, grid)
        d = " ".join("M {} {} L {} {}".format(*cv.px(*p), *cv.px(*q)) for p, q in segs)
        out.append(f'<path d="{d}" fill="none" stroke="{color}" stroke-width="2.000000">'
                   f'<title>component {k}</title></path>')
    for k, L in enumerate(extras.get("lines", ())):
        a, b, c = (_real_part(v) for v in L)
        seg = clip_line(a, b, c, win)
        if seg:
            out.append(_line_element(cv, seg[0], seg[1], EXTRA_LINE_COLOR, 1.0, f"line {k}", dashed=True))
    for k, P in enumerate(extras.get("points", ())):
        x0, x1, x2 = (_real_part(v) for v in P)
        if x2 == 0:
            continue
        x, y = x0 / x2, x1 / x2
        if cv.x0 <= x <= cv.x1 and cv.y0 <= y <= cv.y1:
            cx, cy = cv.px(x, y)
            out.append(f'<circle cx="{cx}" cy="{cy}" r="4.000000" fill="{POINT_COLOR}"><title>point {k}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _line_element(cv: _Canvas, p, q, color: str, width: float, title: str, dashed: bool = False) -> str:
    (ax, ay), (bx, by) = cv.px(*p), cv.px(*q)
    dash = ' stroke-dasharray="6,4"' if dashed else ""
    return (f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{color}" '
            f'stroke-width="{_num(width)}"{dash}><title>{title}</title></line>')
