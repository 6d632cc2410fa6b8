"""Determinants and minors of polynomial matrices.

Small variable counts use evaluation at integer grid points with exact
Bareiss elimination followed by tensor-product Newton interpolation.
Coefficients over ``F_p`` are lifted to ``Z`` first; reduction mod ``p``
commutes with the determinant. Larger variable counts fall back to
fraction-free elimination over the polynomial ring.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Sequence

from gmpy2 import mpq

from ..exactalg.poly import Poly, PolyRing
from .linalg import det_bareiss_int

GRID_LIMIT = 4096


def _var_degree(f: Poly, v: int) -> int:
    if not f:
        return -1
    ex = f.ring.exps
    return max(ex(m)[v] for m in f.terms)


def degree_bounds(mat: Sequence[Sequence[Poly]]) -> list[int]:
    """Per-variable degree bound of the determinant (column-wise maxima)."""
    ring = mat[0][0].ring
    n = len(mat)
    bounds = []
    for v in range(ring.nvars):
        by_col = sum(max(0, max(_var_degree(mat[i][j], v) for i in range(n))) for j in range(n))
        by_row = sum(max(0, max(_var_degree(mat[i][j], v) for j in range(n))) for i in range(n))
        bounds.append(min(by_col, by_row))
    return bounds


def _lift(ring: PolyRing, f: Poly):
    """Integer (or rational) coefficients: residues lifted symmetrically."""
    p = ring.field.characteristic
    if not p:
        return f.terms
    half = p // 2
    return {m: (c - p if c > half else c) for m, c in f.terms.items()}


def _common_denominator(mat) -> int:
    den = 1
    for row in mat:
        for terms in row:
            for c in terms.values():
                d = int(c.denominator) if not isinstance(c, int) else 1
                den = den * d // _gcd(den, d)
    return den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _eval_terms(ring: PolyRing, terms: dict, pt: Sequence[int]):
    total = 0
    ex = ring.exps
    for m, c in terms.items():
        v = c
        for x, e in zip(pt, ex(m)):
            if e:
                v = v * x**e
        total += v
    return total


def _interpolate(ring: PolyRing, values: dict, bounds: list[int]) -> dict:
    """Tensor Newton interpolation on nodes ``0..b_v``; returns exponent->coeff."""
    n = ring.nvars
    # values: grid tuple -> value; convert axis by axis to monomial coefficients
    table = {k: mpq(v) for k, v in values.items()}
    for v in range(n):
        b = bounds[v]
        new = {}
        others = sorted({k[:v] + k[v + 1:] for k in table})
        for rest in others:
            ys = [table[rest[:v] + (t,) + rest[v:]] for t in range(b + 1)]
            coeffs = _newton_1d(ys)
            for e, c in enumerate(coeffs):
                if c:
                    new[rest[:v] + (e,) + rest[v:]] = c
        # missing entries are zeros
        table = {}
        for rest in others:
            for e in range(b + 1):
                table[rest[:v] + (e,) + rest[v:]] = new.get(rest[:v] + (e,) + rest[v:], mpq(0))
    return {k: c for k, c in table.items() if c}


def _newton_1d(ys: list) -> list:
    """Monomial coefficients of the polynomial through ``(t, ys[t])``, ``t = 0..n-1``."""
    n = len(ys)
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / j
    coeffs = [mpq(0)] * n
    # Horner on the Newton form with nodes 0, 1, ..., n-2
    for k in range(n - 1, -1, -1):
        shifted = [mpq(0)] + coeffs[:-1]
        coeffs = [s - k * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[k]
    return coeffs


def det_interpolate(mat: Sequence[Sequence[Poly]]) -> Poly:
    ring = mat[0][0].ring
    field = ring.field
    bounds = degree_bounds(mat)
    lifted = [[_lift(ring, f) for f in row] for row in mat]
    den = 1 if field.characteristic else _common_denominator(lifted)
    if den != 1:
        lifted = [[{m: c * den for m, c in t.items()} for t in row] for row in lifted]
    ints = [[{m: int(c) for m, c in t.items()} for t in row] for row in lifted]
    values = {}
    for pt in product(*(range(b + 1) for b in bounds)):
        num = [[_eval_terms(ring, t, pt) for t in row] for row in ints]
        values[pt] = det_bareiss_int(num)
    coeffs = _interpolate(ring, values, bounds)
    scale = mpq(1, den ** len(mat))
    out = {}
    conv, red = field.convert, field.reduce
    for e, c in coeffs.items():
        c = c * scale
        if field.characteristic:
            v = red(conv(c))
        else:
            v = c
        if v:
            out[ring.mono(e)] = v
    return Poly(ring, out)


def det_bareiss_poly(mat: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free elimination with exact polynomial division."""
    a = [list(row) for row in mat]
    n = len(a)
    ring = a[0][0].ring
    if n == 0:
        return ring.one()
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * akk - aik * a[k][j]
                a[i][j] = num.divmod_exact(prev) if not prev.is_constant() or prev.constant_value() != 1 else num
            a[i][k] = ring.zero()
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def determinant(mat: Sequence[Sequence[Poly]], method: str = "auto") -> Poly:
    if not mat:
        raise ValueError("empty matrix")
    if method == "auto":
        size = 1
        for b in degree_bounds(mat):
            size *= b + 1
        method = "interpolate" if size <= GRID_LIMIT else "bareiss"
    if method == "interpolate":
        return det_interpolate(mat)
    return det_bareiss_poly(mat)


def maximal_minors(mat: Sequence[Sequence[Poly]], method: str = "auto") -> list[Poly]:
    """All maximal minors, row or column subsets in lexicographic order."""
    n, m = len(mat), len(mat[0])
    k = min(n, m)
    return minors(mat, k, method=method)


def minors(mat: Sequence[Sequence[Poly]], k: int, method: str = "auto") -> list[Poly]:
    n, m = len(mat), len(mat[0])
    out = []
    for rows in combinations(range(n), k):
        for cols in combinations(range(m), k):
            sub = [[mat[i][j] for j in cols] for i in rows]
            out.append(determinant(sub, method=method))
    return out
