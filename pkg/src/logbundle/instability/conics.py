"""Unstable conics of a conic arrangement as a determinantal locus in ``P^5``.

The presentation ``M`` of Ω¹(log D) is expanded into a constant matrix ``A``
(rows: every entry of ``M`` multiplied up to degree 2 and paired with the
quadric monomials by differentiation; columns: source generator × quadric
monomial). With ``B`` a kernel basis of ``A`` and ``C`` the block-diagonal
matrix of ``y`` rows, ``Z = C B`` is linear in ``y0..y5``; its rank drops
exactly at the unstable conics.

Dimension and degree of the maximal-minors ideal are obtained from its
Hilbert function by Macaulay matrices: ``H(d) = H(d+1) = h`` with all
generators in degree ``<= d`` and ``h <= d`` forces Hilbert polynomial ``h``
by Gotzmann persistence.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb, factorial

import numpy as np

from ..arrangement import Arrangement
from ..errors import BudgetExceeded, UnsupportedField
from ..exactalg.poly import Poly, PolyRing
from ..logpres import LogPresentation, log_resolution
from ..modres.linalg import nullspace, rank
from ..modres.groebner import buchberger
from ..modres.hilbert import hilbert_dim_degree
from ..modres.minors import det_bareiss_poly

DEFAULT_BUDGET = 200_000


@dataclass
class ConicLocus:
    A_shape: tuple[int, int]
    Z_shape: tuple[int, int]
    dim: int | None
    degree: int | None
    hilbert: dict[int, int] = dc_field(default_factory=dict)
    status: str = "ok"

    def to_json(self) -> dict:
        return {
            "A_shape": list(self.A_shape),
            "Z_shape": list(self.Z_shape),
            "dim": self.dim,
            "degree": self.degree,
            "hilbert_function": {str(k): v for k, v in sorted(self.hilbert.items())},
            "status": self.status,
        }


def _diff_pair(ring: PolyRing, f: Poly, mono: int) -> object:
    """Apolar pairing ``∂^mono f`` for ``deg f = deg mono`` (a constant)."""
    e = ring.exps(mono)
    c = f.terms.get(mono)
    if not c:
        return ring.field.zero
    w = 1
    for k in e:
        w *= factorial(k)
    return ring.field.reduce(c * w)


def expansion_matrix(pres: LogPresentation) -> list[list]:
    """The constant matrix ``A`` for a presentation with source twists all equal to 2."""
    P = pres.presentation
    ring = P.ring
    if any(t != 2 for t in P.col_twists):
        raise UnsupportedField("expansion needs a presentation by O(-2) generators (conic arrangements)")
    quads = ring.monomials_of_degree(2)
    rows = []
    for i, rt in enumerate(P.row_twists):
        e = 2 - rt
        if e < 0 or e > 2:
            raise UnsupportedField(f"row twist {rt} outside the expected range")
        for mult in ring.monomials_of_degree(2 - e):
            mpoly = Poly(ring, {mult: ring.field.one})
            row = []
            for j in range(P.shape[1]):
                f = P.entries[i][j] * mpoly
                row.extend(_diff_pair(ring, f, q) for q in quads)
            rows.append(row)
    return rows


def z_matrix(pres: LogPresentation) -> tuple[list[list[Poly]], tuple[int, int]]:
    """``Z = C B`` over ``k[y0..y5]`` together with the shape of ``A``."""
    A = expansion_matrix(pres)
    field = pres.N.ring.field
    ncols = len(A[0])
    B = nullspace(field, A, ncols)
    T = PolyRing(field, 6, tuple(f"y{k}" for k in range(6)))
    y = T.gens()
    ell = ncols // 6
    Z = []
    for j in range(ell):
        row = []
        for vec in B:
            f = T.zero()
            for k in range(6):
                c = vec[6 * j + k]
                if c:
                    f = f + y[k].scale(c)
            row.append(f)
        Z.append(row)
    return Z, (len(A), ncols)


def _echelon_basis_mod_p(rows: np.ndarray, p: int) -> np.ndarray:
    a = rows.astype(np.int64) % p
    r = 0
    nrows, ncols = a.shape
    for c in range(ncols):
        if r == nrows:
            break
        piv = np.nonzero(a[r:, c])[0]
        if piv.size == 0:
            continue
        k = r + int(piv[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size:
            a[nz] = (a[nz] - np.outer(col[nz], a[r])) % p
        r += 1
    return a[:r]


def _coefficient_rows(polys: list[Poly], monos: list[int]) -> np.ndarray:
    index = {m: k for k, m in enumerate(monos)}
    out = np.zeros((len(polys), len(monos)), dtype=np.int64)
    for r, f in enumerate(polys):
        for m, c in f.terms.items():
            out[r, index[m]] = int(c)
    return out


def unstable_conics_pipeline(arr: Arrangement, max_degree: int = 8, max_minors: int = 5000,
                             max_matrix_entries: int = 20_000_000, method: str = "gb",
                             budget: int | None = DEFAULT_BUDGET) -> ConicLocus:
    """``(dim, degree)`` of the maximal-minors ideal of ``Z`` (affine cone in 6 variables).

    ``method="gb"`` uses a Gröbner basis with an S-pair ``budget``;
    ``method="hilbert"`` uses Macaulay matrices up to ``max_degree``.
    """
    field = arr.field
    p = field.characteristic
    if not p:
        raise UnsupportedField("the conic-locus pipeline runs over F_p")
    pres = log_resolution(arr)
    Z, a_shape = z_matrix(pres)
    ell, m = len(Z), len(Z[0])
    z_shape = (ell, m)
    if comb(m, ell) > max_minors:
        raise BudgetExceeded(f"{comb(m, ell)} minors exceed the budget of {max_minors}")
    T = Z[0][0].ring
    gens = []
    for cols in combinations(range(m), ell):
        d = det_bareiss_poly([[Z[i][j] for j in cols] for i in range(ell)])
        if d:
            gens.append(d)
    locus = ConicLocus(a_shape, z_shape, None, None)
    if not gens:
        locus.dim, locus.degree = 6, 1
        return locus
    if method not in ("gb", "hilbert"):
        raise ValueError(f"unknown method {method!r}")
    if method == "gb":
        gb = buchberger(gens, budget=budget)
        locus.dim, locus.degree = hilbert_dim_degree(gb)
        locus.status = "ok (groebner)"
        return locus
    d0 = ell
    top = _echelon_basis_mod_p(_coefficient_rows(gens, T.monomials_of_degree(d0)), p)
    basis = top
    prev = None
    for d in range(d0, max_degree + 1):
        monos = T.monomials_of_degree(d)
        if d == d0:
            rank = basis.shape[0]
        else:
            lower = T.monomials_of_degree(d - 1)
            cur = [Poly(T, {lower[k]: int(v) for k, v in enumerate(row) if v}) for row in basis]
            shifted = [f * y for f in cur for y in T.gens()]
            if len(shifted) * len(monos) > max_matrix_entries:
                locus.status = "budget exhausted"
                raise BudgetExceeded(f"Macaulay matrix in degree {d} exceeds the budget")
            basis = _echelon_basis_mod_p(_coefficient_rows(shifted, monos), p)
            rank = basis.shape[0]
        h = len(monos) - rank
        locus.hilbert[d] = h
        if prev is not None and h == prev and h <= d - 1:
            if h:
                locus.dim, locus.degree = 1, h
            else:
                locus.dim, locus.status = 0, "irrelevant"
            return locus
        prev = h
    locus.status = "undecided"
    return locus


def conic_point(g: Poly) -> list:
    """Coordinates of ``g`` in ``P^5`` under the apolar pairing used for ``A``."""
    return [_diff_pair(g.ring, g, q) for q in g.ring.monomials_of_degree(2)]


def conic_in_locus(Z: list[list[Poly]], g: Poly) -> bool:
    """Rank of ``Z`` drops at the point of ``g``."""
    pt = conic_point(g)
    vals = [[f.evaluate_raw(pt) for f in row] for row in Z]
    return rank(g.ring.field, vals) < len(Z)
