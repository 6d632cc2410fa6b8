"""Exhaustive search over ``F_p``-rational test curves."""

from __future__ import annotations

from itertools import product

from ..arrangement import Arrangement
from ..errors import BudgetExceeded, UnsupportedField
from ..exactalg.poly import Poly
from ..logpres import LogPresentation, log_resolution
from ..modres.linalg import det
from ..planegeom import normalize_projective
from .restriction import check_precondition, restriction_matrix

DEFAULT_MAX_CANDIDATES = 200_000


def projective_points(p: int, n: int) -> list[tuple[int, ...]]:
    """Points of ``P^(n-1)(F_p)`` with first nonzero coordinate 1, lexicographic."""
    out = []
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    return out


def candidate_count(p: int, kind: str) -> int:
    n = 3 if kind == "lines" else 6
    return (p**n - 1) // (p - 1)


def _conic_from_coeffs(ring, coeffs) -> Poly:
    monos = ring.monomials_of_degree(2)
    return Poly(ring, {m: c for m, c in zip(monos, coeffs) if c})


def brute_force_oracle(arr: Arrangement, candidates: str = "lines", max_candidates: int = DEFAULT_MAX_CANDIDATES,
                       pres: LogPresentation | None = None) -> list:
    """Every ``F_p``-rational line (normalized coefficients) or smooth conic that tests unstable."""
    field = arr.field
    p = field.characteristic
    if not p:
        raise UnsupportedField("the brute-force oracle needs a finite field")
    if candidates not in ("lines", "conics"):
        raise ValueError("candidates must be 'lines' or 'conics'")
    total = candidate_count(p, candidates)
    if total > max_candidates:
        raise BudgetExceeded(f"{total} {candidates} over F_{p} exceed the budget of {max_candidates}")
    pres = pres or log_resolution(arr)
    check_precondition(pres)
    ring = arr.ring
    out = []
    if candidates == "lines":
        for L in projective_points(p, 3):
            M = restriction_matrix(pres, L)
            if M.rank() < M.shape[1]:
                out.append(L)
        return out
    if p == 2:
        raise UnsupportedField("smooth conic candidates are not enumerated in characteristic 2")
    for coeffs in projective_points(p, 6):
        g = _conic_from_coeffs(ring, coeffs)
        a = _sym(field, coeffs)
        if not det(field, a):
            continue
        M = restriction_matrix(pres, g)
        if M.rank() < M.shape[1]:
            out.append(g)
    return out


def _sym(field, coeffs) -> list[list]:
    # monomial order x0^2, x0x1, x0x2, x1^2, x1x2, x2^2
    half = field.inv(field.convert(2))
    a00, a01, a02, a11, a12, a22 = coeffs
    h = lambda v: field.reduce(v * half)  # noqa: E731
    return [[a00, h(a01), h(a02)], [h(a01), a11, h(a12)], [h(a02), h(a12), a22]]


def component_lines(arr: Arrangement) -> list[tuple]:
    f = arr.field
    unit = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    return [normalize_projective(f, [g.coefficient(e) for e in unit]) for g in arr.components if g.degree() == 1]

