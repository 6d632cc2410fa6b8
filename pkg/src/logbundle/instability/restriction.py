"""Restriction of the dual-side matrix ``N`` to a test curve.

Sections of ``O(k)`` on a curve ``{g = 0}`` are represented by the degree-k
monomials outside the leading term of ``g``. For lines the chart
substitution ``x_k = b x_a + c x_b`` is used instead, so the bases are the
monomials in the two remaining variables, ``x_a`` powers descending.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from ..arrangement import is_smooth
from ..errors import ChartMismatch, PreconditionViolated, SingularTestCurve
from ..exactalg.field import Field
from ..exactalg.poly import Poly, PolyRing
from ..logpres import LogPresentation
from ..modres.groebner import buchberger, normal_form
from ..modres.linalg import nullspace, rank

CHARTS = (0, 1, 2)
_FREE = {0: (1, 2), 1: (0, 2), 2: (0, 1)}


def param_ring(field: Field) -> PolyRing:
    return PolyRing(field, 2, ("b", "c"))


def chart_line(field: Field, chart: int, b, c) -> tuple:
    """Coefficients of the line ``x_k - b x_a - c x_b`` of a chart."""
    conv = field.convert
    out = [None, None, None]
    out[chart] = field.one
    a, bb = _FREE[chart]
    out[a] = field.reduce(-conv(b))
    out[bb] = field.reduce(-conv(c))
    return tuple(out)


def line_chart_params(field: Field, line: Sequence, chart: int) -> tuple:
    """``(b, c)`` of ``line`` in ``chart``; the chart coefficient must be nonzero."""
    conv = field.convert
    line = [conv(v) for v in line]
    if not line[chart]:
        raise ChartMismatch(f"line {line} is not in chart {chart}")
    inv = field.inv(line[chart])
    a, bb = _FREE[chart]
    return field.reduce(-line[a] * inv), field.reduce(-line[bb] * inv)


def default_chart(line: Sequence) -> int:
    return next(i for i, v in enumerate(line) if v)


def _binary_basis(k: int) -> list[tuple[int, int]]:
    return [(k - t, t) for t in range(k + 1)] if k >= 0 else []


def _substitute(f: Poly, chart: int, b, c, target: PolyRing | None) -> dict:
    """``f`` with ``x_k = b x_a + c x_b`` as ``{(e_a, e_b): coefficient}``.

    With ``target`` the coefficients are polynomials in ``b, c`` (``b, c`` ignored);
    otherwise ``b, c`` are field values and the coefficients raw values.
    """
    field = f.ring.field
    a, bb = _FREE[chart]
    ex = f.ring.exps
    out: dict = {}
    param = target is not None
    for m, coef in f.terms.items():
        e = ex(m)
        n = e[chart]
        for t in range(n + 1):
            key = (e[a] + t, e[bb] + n - t)
            w = coef * comb(n, t)
            if param:
                term = target.from_terms({(t, n - t): w})
                out[key] = out.get(key, target.zero()) + term
            else:
                out[key] = field.reduce(out.get(key, 0) + w * b**t * c ** (n - t))
    return out


@dataclass
class RestrictionMatrix:
    """Matrix of ``H^0(N|_D)`` with row and column labels ``(block, basis)``.

    Entries are raw field values, or polynomials of ``param`` in parametric mode.
    """

    field: Field
    entries: list[list]
    row_basis: list[tuple[int, str]]
    col_basis: list[tuple[int, str]]
    chart: int | None = None
    param: PolyRing | None = None
    test: str = ""

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_basis), len(self.col_basis)

    @property
    def parametric(self) -> bool:
        return self.param is not None

    def specialize(self, b, c) -> "RestrictionMatrix":
        if not self.parametric:
            raise ValueError("matrix is already numeric")
        pt = (self.field.convert(b), self.field.convert(c))
        vals = [[f.evaluate_raw(pt) for f in row] for row in self.entries]
        return RestrictionMatrix(self.field, vals, self.row_basis, self.col_basis, self.chart, None,
                                 f"chart {self.chart} at b={self.field.to_str(pt[0])}, c={self.field.to_str(pt[1])}")

    def rank(self) -> int:
        if self.parametric:
            raise ValueError("rank of a parametric matrix is not defined; specialize first")
        return rank(self.field, self.entries) if self.entries else 0

    def kernel(self) -> list[list]:
        if self.parametric:
            raise ValueError("specialize first")
        if not self.entries:
            return [[self.field.one if i == j else self.field.zero for j in range(self.shape[1])]
                    for i in range(self.shape[1])]
        return nullspace(self.field, self.entries, self.shape[1])

    def to_json(self) -> dict:
        if self.parametric:
            cells = [[str(f) for f in row] for row in self.entries]
        else:
            cells = [[self.field.to_str(v) for v in row] for row in self.entries]
        return {
            "shape": list(self.shape),
            "chart": self.chart,
            "test": self.test,
            "rows": [f"{i}:{m}" for i, m in self.row_basis],
            "cols": [f"{j}:{m}" for j, m in self.col_basis],
            "entries": cells,
        }


def _mono_str(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
    return "*".join(parts) or "1"


def _degrees(pres: LogPresentation) -> tuple[list[int], list[int]]:
    N = pres.N
    return [-t for t in N.row_twists], [-t for t in N.col_twists]


def _line_matrix(pres: LogPresentation, chart: int, b, c, param: PolyRing | None) -> RestrictionMatrix:
    N = pres.N
    ring = N.ring
    field = ring.field
    rdeg, cdeg = _degrees(pres)
    a, bb = _FREE[chart]
    names = (ring.names[a], ring.names[bb])
    rows = [(i, mono) for i, d in enumerate(rdeg) for mono in _binary_basis(d)]
    cols = [(j, mono) for j, d in enumerate(cdeg) for mono in _binary_basis(d)]
    row_index = {r: k for k, r in enumerate(rows)}
    zero = param.zero() if param else field.zero
    entries = [[zero] * len(cols) for _ in rows]
    subs = {}
    for i in range(len(rdeg)):
        for j in range(len(cdeg)):
            if N.entries[i][j]:
                subs[i, j] = _substitute(N.entries[i][j], chart, b, c, param)
    for cj, (j, (pa, pb)) in enumerate(cols):
        for i in range(len(rdeg)):
            img = subs.get((i, j))
            if not img:
                continue
            for (ea, eb), v in img.items():
                r = row_index.get((i, (ea + pa, eb + pb)))
                if r is not None:
                    entries[r][cj] = entries[r][cj] + v
    if not param:
        entries = [[field.reduce(v) for v in row] for row in entries]
    label = f"line chart {chart}" if param else "line " + str(chart_line(field, chart, b, c))
    return RestrictionMatrix(
        field,
        entries,
        [(i, _mono_str(names, m)) for i, m in rows],
        [(j, _mono_str(names, m)) for j, m in cols],
        chart,
        param,
        label,
    )


def _curve_matrix(pres: LogPresentation, g: Poly) -> RestrictionMatrix:
    N = pres.N
    ring = N.ring
    field = ring.field
    rdeg, cdeg = _degrees(pres)
    gb = buchberger([g])
    lead = gb.leading_monomials()[0] & ring.ring_mask

    def basis(k: int) -> list[int]:
        if k < 0:
            return []
        return [m for m in ring.monomials_of_degree(k) if not ring.divides(lead, m)]

    rows = [(i, m) for i, d in enumerate(rdeg) for m in basis(d)]
    cols = [(j, m) for j, d in enumerate(cdeg) for m in basis(d)]
    row_index = {r: k for k, r in enumerate(rows)}
    entries = [[field.zero] * len(cols) for _ in rows]
    for cj, (j, m) in enumerate(cols):
        for i in range(len(rdeg)):
            f = N.entries[i][j]
            if not f:
                continue
            r = normal_form(f * Poly(ring, {m: field.one}), gb)
            for mono, v in r.terms.items():
                entries[row_index[i, mono]][cj] = v
    label = lambda m: _mono_str(ring.names, ring.exps(m))  # noqa: E731
    return RestrictionMatrix(field, entries, [(i, label(m)) for i, m in rows], [(j, label(m)) for j, m in cols],
                             None, None, str(g))


def _as_test_curve(ring: PolyRing, test) -> Poly:
    if isinstance(test, Poly):
        g = test
    else:
        coeffs = [ring.field.convert(v) for v in test]
        g = ring.zero()
        for v, x in zip(coeffs, ring.gens()):
            if v:
                g = g + x.scale(v)
    if g.ring is not ring:
        raise SingularTestCurve("test curve is not over the arrangement ring")
    if g.degree() < 1 or not g.is_homogeneous():
        raise SingularTestCurve(f"{g} is not a curve")
    if not is_smooth(g):
        raise SingularTestCurve(f"{g} is singular")
    return g


def restriction_matrix(pres: LogPresentation, test=None, mode: str = "numeric", chart: int | None = None) -> RestrictionMatrix:
    """``H^0`` of ``N`` restricted to a test curve.

    ``mode="numeric"``: ``test`` is a curve (``Poly``) or line coefficients.
    ``mode="parametric"``: the generic line of ``chart`` over ``k[b, c]``.
    """
    ring = pres.N.ring
    field = ring.field
    if mode == "parametric":
        if chart not in CHARTS:
            raise ChartMismatch(f"chart must be one of {CHARTS}")
        return _line_matrix(pres, chart, None, None, param_ring(field))
    if mode != "numeric":
        raise ValueError(f"unknown mode {mode!r}")
    g = _as_test_curve(ring, test)
    if g.degree() == 1:
        line = tuple(g.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        k = default_chart(line) if chart is None else chart
        b, c = line_chart_params(field, line, k)
        return _line_matrix(pres, k, b, c, None)
    return _curve_matrix(pres, g)


def check_precondition(pres: LogPresentation):
    n = pres.N.ring.nvars - 1
    if pres.arr.degree <= n + 1:
        raise PreconditionViolated(
            f"total degree {pres.arr.degree} must exceed {n + 1} for instability to be meaningful")


def is_unstable(pres: LogPresentation, test) -> bool:
    """Nontrivial kernel of the restricted section map."""
    check_precondition(pres)
    M = restriction_matrix(pres, test)
    return M.rank() < M.shape[1]
