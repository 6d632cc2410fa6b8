"""Enumeration of unstable lines through the minors ideal of each line chart."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Sequence

import mpmath

from ..arrangement import Arrangement
from ..errors import PositiveDimensionalLocus
from ..exactalg.field import Field
from ..exactalg.poly import Poly
from ..logpres import LogPresentation, log_resolution
from ..modres.groebner import GroebnerBasis, buchberger
from ..modres.hilbert import hilbert_dim_degree, quotient_basis_and_companions
from ..modres.minors import minors
from ..planegeom import normalize_projective
from .eigen import NumericPoint, charpoly, solve_companions, squarefree_decomposition, squarefree_part
from .restriction import CHARTS, _FREE, check_precondition, chart_line, restriction_matrix

DEFAULT_TOL = 1e-8


@dataclass
class ChartIdeal:
    chart: int
    minors: list[Poly]
    gb: GroebnerBasis
    dim: int
    degree: int

    def to_json(self) -> dict:
        return {"chart": self.chart, "dim": self.dim, "degree": self.degree, "generators": len(self.minors)}


@dataclass
class UnstableLine:
    chart: int
    b: object
    c: object
    line: tuple
    residual: float
    real: bool
    multiplicity: int = 1

    def to_json(self, digits: int = 12) -> dict:
        fmt = lambda z: _fmt_complex(z, digits)  # noqa: E731
        return {
            "chart": self.chart,
            "b": fmt(self.b),
            "c": fmt(self.c),
            "line": [fmt(v) for v in self.line],
            "residual": f"{self.residual:.3e}",
            "real": self.real,
            "multiplicity": self.multiplicity,
        }


@dataclass
class UnstableLineReport:
    charts: list[ChartIdeal]
    lines: list[UnstableLine]
    tolerance: float
    field_descriptor: object
    rational_lines: list[tuple] = dc_field(default_factory=list)
    conjugate_symmetric: bool = True

    @property
    def degree(self) -> int:
        return sum(s.multiplicity for s in self.lines) if self.lines else len(self.rational_lines)

    @property
    def real_count(self) -> int:
        return sum(1 for s in self.lines if s.real)

    def real_lines(self) -> list[UnstableLine]:
        return [s for s in self.lines if s.real]

    def to_json(self) -> dict:
        out = {
            "field": self.field_descriptor,
            "tolerance": f"{self.tolerance:g}",
            "charts": [c.to_json() for c in self.charts],
            "degree": self.degree,
            "distinct": len(self.lines) if self.lines else len(self.rational_lines),
        }
        if self.lines:
            out["real"] = self.real_count
            out["conjugate_symmetric"] = self.conjugate_symmetric
            out["lines"] = [s.to_json() for s in self.lines]
        else:
            out["rational_lines"] = [[str(v) for v in L] for L in self.rational_lines]
        return out


def _fmt_real(x, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=False, min_fixed=-6, max_fixed=12)


def _fmt_complex(z, digits: int) -> str:
    """Fixed-precision text; imaginary parts below ``10^-30 |z|`` are dropped."""
    z = mpmath.mpc(z)
    if abs(z.imag) <= mpmath.mpf(10) ** -30 * max(1, abs(z)):
        return _fmt_real(z.real, digits)
    sign = "-" if z.imag < 0 else "+"
    return f"{_fmt_real(z.real, digits)}{sign}{_fmt_real(abs(z.imag), digits)}i"


def chart_ideal(pres: LogPresentation, chart: int, budget: int | None = None) -> ChartIdeal:
    """Maximal minors of the parametric restriction matrix and their Gröbner basis."""
    M = restriction_matrix(pres, mode="parametric", chart=chart)
    rows, cols = M.shape
    if rows < cols:
        raise PositiveDimensionalLocus("restricted map has more columns than rows; every line is unstable")
    gens = [f for f in minors(M.entries, cols) if f]
    ring = M.param
    if not gens:
        gb = buchberger([ring.zero()], budget=budget)
        return ChartIdeal(chart, [], gb, 2, 0)
    gb = buchberger(gens, budget=budget)
    dim, deg = hilbert_dim_degree(gb)
    return ChartIdeal(chart, gens, gb, dim, deg)


def relative_residual(f: Poly, pt: Sequence) -> float:
    """``|f(pt)|`` divided by ``Σ |c_m| |pt^m|``."""
    ex = f.ring.exps
    total = mpmath.mpc(0)
    scale = mpmath.mpf(0)
    for m, c in f.terms.items():
        term = mpmath.mpf(int(c.numerator)) / int(c.denominator)
        for x, e in zip(pt, ex(m)):
            term = term * mpmath.mpc(x) ** e
        total += term
        scale += abs(term)
    return float(abs(total) / scale) if scale else float(abs(total))


def _radical_gb(ci: ChartIdeal, budget: int | None):
    """``J + (sqf χ_b(b), sqf χ_c(c))``: radical for a zero-dimensional ideal."""
    zd = quotient_basis_and_companions(ci.gb)
    field = ci.gb.ring.field
    ring = ci.gb.ring
    extra = []
    for v, M in enumerate(zd.companions):
        sq = squarefree_part(field, charpoly(field, M))
        x = ring.gen(v)
        f = ring.zero()
        for k, cf in enumerate(sq):
            if cf:
                f = f + (x ** k).scale(cf)
        extra.append(f)
    return zd, buchberger(list(ci.gb.polys()) + extra, budget=budget)


def _separating_weights(field: Field, companions, npoints: int, tries: int = 40):
    for t in range(1, tries + 1):
        w = (field.one, field.convert(t))
        red = field.reduce
        n = len(companions[0])
        comb = [[red(w[0] * companions[0][i][j] + w[1] * companions[1][i][j]) for j in range(n)] for i in range(n)]
        chi = charpoly(field, comb)
        if len(squarefree_part(field, chi)) - 1 == npoints:
            return w, chi
    raise PositiveDimensionalLocus("no separating linear form found among the tried weights")


def _solve_chart(ci: ChartIdeal, dps: int, budget: int | None) -> list[NumericPoint]:
    field = ci.gb.ring.field
    zd = quotient_basis_and_companions(ci.gb)
    if zd.dimension == 0:
        return []
    _, rgb = _radical_gb(ci, budget)
    rad = quotient_basis_and_companions(rgb)
    w, _ = _separating_weights(field, rad.companions, rad.dimension)
    factors = None
    if rad.dimension != zd.dimension:
        n = zd.dimension
        comb = [[field.reduce(w[0] * zd.companions[0][i][j] + w[1] * zd.companions[1][i][j]) for j in range(n)]
                for i in range(n)]
        factors = squarefree_decomposition(field, charpoly(field, comb))
    return solve_companions(field, rad.companions, w, factors=factors, dps=dps)


def _complex_line(chart: int, b, c) -> tuple:
    out = [None, None, None]
    out[chart] = mpmath.mpc(1)
    a, bb = _FREE[chart]
    out[a] = -mpmath.mpc(b)
    out[bb] = -mpmath.mpc(c)
    return tuple(out)


def _same_line(u: Sequence, v: Sequence, tol: float) -> bool:
    nu = mpmath.sqrt(mpmath.fsum(abs(x) ** 2 for x in u))
    nv = mpmath.sqrt(mpmath.fsum(abs(x) ** 2 for x in v))
    worst = max(abs(u[i] * v[j] - u[j] * v[i]) for i in range(3) for j in range(i + 1, 3))
    return worst / (nu * nv) < 10 * tol


def rational_zeros(gb: GroebnerBasis) -> list[tuple]:
    """All ``(b, c) ∈ F_p^2`` on which every basis element vanishes."""
    field = gb.ring.field
    p = field.characteristic
    if not p:
        raise ValueError("rational zero enumeration needs a finite field")
    polys = [f for f in gb.polys() if f]
    return [pt for pt in product(range(p), repeat=2) if all(not f.evaluate_raw(pt) for f in polys)]


def unstable_lines(arr: Arrangement, tol: float = DEFAULT_TOL, charts: Sequence[int] = CHARTS,
                   budget: int | None = None, dps: int = 50, pres: LogPresentation | None = None,
                   strict: bool = True) -> UnstableLineReport:
    """All unstable lines, merged over the requested charts.

    Over ``F_p`` with ``strict=False`` positive-dimensional charts are still
    enumerated point by point.
    """
    pres = pres or log_resolution(arr)
    check_precondition(pres)
    field = arr.field
    ideals = []
    for k in charts:
        ci = chart_ideal(pres, k, budget=budget)
        if ci.dim > 0 and (strict or not field.characteristic):
            raise PositiveDimensionalLocus(f"chart {k}: minors ideal has dimension {ci.dim}")
        ideals.append(ci)
    if field.characteristic:
        found: list[tuple] = []
        seen = set()
        for ci in ideals:
            for b, c in rational_zeros(ci.gb):
                L = normalize_projective(field, chart_line(field, ci.chart, b, c))
                if L not in seen:
                    seen.add(L)
                    found.append(L)
        return UnstableLineReport(ideals, [], tol, field.descriptor(), rational_lines=sorted(found))
    merged: list[UnstableLine] = []
    with mpmath.workdps(dps):
        for ci in ideals:
            if ci.degree == 0:
                continue
            for pt in _solve_chart(ci, dps, budget):
                b, c = pt.coords
                line = _complex_line(ci.chart, b, c)
                if any(_same_line(line, s.line, tol) for s in merged):
                    continue
                res = max(relative_residual(f, (b, c)) for f in ci.minors)
                real = abs(mpmath.mpc(b).imag) < tol and abs(mpmath.mpc(c).imag) < tol
                merged.append(UnstableLine(ci.chart, b, c, line, res, real, pt.multiplicity))
        merged.sort(key=lambda s: (not s.real, s.chart, float(mpmath.mpc(s.b).real), float(mpmath.mpc(s.b).imag),
                                   float(mpmath.mpc(s.c).real), float(mpmath.mpc(s.c).imag)))
        symmetric = all(
            any(_same_line([mpmath.conj(x) for x in s.line], t.line, tol) for t in merged) for s in merged if not s.real
        )
    return UnstableLineReport(ideals, merged, tol, field.descriptor(), conjugate_symmetric=symmetric)
