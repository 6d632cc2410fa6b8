"""Numerical points of a zero-dimensional system from its companion matrices.

Exact part: characteristic polynomials by Hessenberg reduction and squarefree
decomposition. Numeric part: Aberth iteration in ``mpmath`` followed by an
inverse-iteration eigenvector, from which every coordinate is read as a
Rayleigh quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath

from ..exactalg.field import Field

# -- dense univariate polynomials, coefficients low -> high -----------------


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def upoly_divmod(field: Field, a: Sequence, b: Sequence) -> tuple[list, list]:
    red = field.reduce
    a = [red(v) for v in a]
    b = _trim([red(v) for v in b])
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv = field.inv(b[-1])
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    a = _trim(a)
    while len(a) >= len(b):
        k = len(a) - len(b)
        c = red(a[-1] * inv)
        q[k] = c
        for i, v in enumerate(b):
            a[k + i] = red(a[k + i] - c * v)
        _trim(a)
    return _trim(q), a


def upoly_monic(field: Field, a: Sequence) -> list:
    a = _trim(list(a))
    if not a:
        return a
    inv = field.inv(a[-1])
    return [field.reduce(v * inv) for v in a]


def upoly_gcd(field: Field, a: Sequence, b: Sequence) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = upoly_divmod(field, a, b)
        a, b = b, r
    return upoly_monic(field, a)


def upoly_derivative(field: Field, a: Sequence) -> list:
    return _trim([field.reduce(k * a[k]) for k in range(1, len(a))])


def squarefree_decomposition(field: Field, a: Sequence) -> list[tuple[list, int]]:
    """Yun's algorithm: ``a = lc * Π f_k^k`` with ``f_k`` squarefree and coprime.

    Characteristic zero only; over ``F_p`` degrees below ``p`` are assumed.
    """
    a = upoly_monic(field, a)
    if len(a) <= 1:
        return []
    da = upoly_derivative(field, a)
    g = upoly_gcd(field, a, da)
    w, _ = upoly_divmod(field, a, g)
    y, _ = upoly_divmod(field, da, g)
    out = []
    k = 1
    while len(w) > 1:
        z = [field.reduce(u - v) for u, v in _pad(y, upoly_derivative(field, w))]
        h = upoly_gcd(field, w, z)
        if len(h) > 1:
            out.append((h, k))
        w, _ = upoly_divmod(field, w, h)
        if _trim(list(z)):
            y, _ = upoly_divmod(field, z, h)
        else:
            y = []
        k += 1
    return out


def _pad(a: Sequence, b: Sequence) -> list[tuple]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def squarefree_part(field: Field, a: Sequence) -> list:
    out = [field.one]
    for f, _ in squarefree_decomposition(field, a):
        out = upoly_mul(field, out, f)
    return out


def upoly_mul(field: Field, a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return _trim([field.reduce(v) for v in out])


# -- exact characteristic polynomial ---------------------------------------


def charpoly(field: Field, m: Sequence[Sequence]) -> list:
    """``det(t I - M)`` by similarity reduction to upper Hessenberg form."""
    red = field.reduce
    n = len(m)
    h = [[red(field.convert(v)) for v in row] for row in m]
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if h[i][k]), None)
        if piv is None:
            continue
        if piv != k + 1:
            h[piv], h[k + 1] = h[k + 1], h[piv]
            for row in h:
                row[piv], row[k + 1] = row[k + 1], row[piv]
        inv = field.inv(h[k + 1][k])
        for i in range(k + 2, n):
            u = red(h[i][k] * inv)
            if not u:
                continue
            # row_i -= u row_{k+1};  col_{k+1} += u col_i
            hi, hk = h[i], h[k + 1]
            for j in range(n):
                hi[j] = red(hi[j] - u * hk[j])
            for row in h:
                row[k + 1] = red(row[k + 1] + u * row[i])
    # p_j(t) = det(t I - H[:j, :j])
    polys = [[field.one]]
    for j in range(1, n + 1):
        p = _shift_sub(field, polys[j - 1], h[j - 1][j - 1])
        prod = field.one
        for i in range(j - 1, 0, -1):
            prod = red(prod * h[i][i - 1])
            if not prod:
                break
            c = red(prod * h[i - 1][j - 1])
            if c:
                q = polys[i - 1]
                p = [red(a - c * b) for a, b in _pad(p, q)]
        polys.append(_trim(p))
    return polys[n]


def _shift_sub(field: Field, p: Sequence, a) -> list:
    """``(t - a) p(t)``."""
    out = [field.zero] + list(p)
    for i, v in enumerate(p):
        out[i] = field.reduce(out[i] - a * v)
    return out


# -- Aberth iteration -------------------------------------------------------


def aberth_roots(coeffs: Sequence, dps: int = 50, maxiter: int = 500) -> list:
    """All complex roots of a polynomial with exact rational coefficients (low -> high)."""
    coeffs = _trim(list(coeffs))
    n = len(coeffs) - 1
    if n < 1:
        return []
    with mpmath.workdps(dps + 10):
        c = [mpmath.mpf(int(v.numerator)) / int(v.denominator) if hasattr(v, "denominator") else mpmath.mpf(v)
             for v in coeffs]
        lead = c[-1]
        c = [v / lead for v in c]
        # Fujiwara bound, offset angle
        start_r = max(2 * max(abs(c[n - k]) ** (mpmath.mpf(1) / k) for k in range(1, n + 1)), mpmath.mpf("0.5"))
        z = [start_r * mpmath.expj(2 * mpmath.pi * k / n + mpmath.mpf("0.4")) for k in range(n)]
        eps = mpmath.mpf(10) ** (-(dps + 5))
        dc = [k * c[k] for k in range(1, n + 1)]
        for _ in range(maxiter):
            worst = 0
            for i in range(n):
                zi = z[i]
                p = mpmath.polyval(c[::-1], zi)
                dp = mpmath.polyval(dc[::-1], zi)
                if p == 0:
                    continue
                ratio = p / dp if dp != 0 else mpmath.mpc(eps)
                s = mpmath.fsum(1 / (zi - z[j]) for j in range(n) if j != i)
                w = ratio / (1 - ratio * s)
                z[i] = zi - w
                worst = max(worst, abs(w) / max(1, abs(z[i])))
            if worst < eps:
                break
        return [+v for v in z]


# -- zero-dimensional solving ----------------------------------------------


@dataclass(frozen=True)
class NumericPoint:
    coords: tuple
    multiplicity: int
    eigenvalue: object


def _to_mp(field: Field, v):
    if field.characteristic:
        raise ValueError("numeric solving needs a characteristic-zero field")
    return mpmath.mpf(int(v.numerator)) / int(v.denominator)


def _relative_value(field: Field, coeffs: Sequence, z):
    c = [_to_mp(field, v) for v in coeffs]
    scale = mpmath.fsum(abs(v) * max(1, abs(z)) ** k for k, v in enumerate(c))
    return abs(mpmath.polyval(c[::-1], z)) / scale


def _inverse_iteration(M, lam, n: int, steps: int = 4):
    shift = lam + mpmath.mpf(10) ** (-(mpmath.mp.dps // 2)) * (1 + abs(lam))
    A = M - shift * mpmath.eye(n)
    v = mpmath.matrix([mpmath.mpf(1) / (k + 1) for k in range(n)])
    for _ in range(steps):
        v = mpmath.lu_solve(A, v)
        v = v / mpmath.norm(v)
    return v


def _rayleigh(C, v):
    Cv = C * v
    num = mpmath.fsum(mpmath.conj(v[i]) * Cv[i] for i in range(v.rows))
    den = mpmath.fsum(mpmath.conj(v[i]) * v[i] for i in range(v.rows))
    return num / den


def solve_companions(field: Field, companions: Sequence[Sequence[Sequence]], weights: Sequence,
                     factors: Sequence[tuple[list, int]] | None = None, dps: int = 50) -> list[NumericPoint]:
    """Points from commuting companions with a separating combination ``Σ w_k M_k``.

    The combination must have a squarefree characteristic polynomial.
    ``factors`` is a squarefree decomposition of the same combination on a
    non-radical system; the factor vanishing at each eigenvalue gives its
    multiplicity.
    """
    n = len(companions[0])
    if n == 0:
        return []
    red = field.reduce
    comb = [[red(sum(w * M[i][j] for w, M in zip(weights, companions))) for j in range(n)] for i in range(n)]
    chi = charpoly(field, comb)
    roots = aberth_roots(chi, dps=dps)
    out = []
    with mpmath.workdps(dps):
        Mm = mpmath.matrix([[_to_mp(field, v) for v in row] for row in comb])
        Cs = [mpmath.matrix([[_to_mp(field, v) for v in row] for row in M]) for M in companions]
        for lam in roots:
            v = _inverse_iteration(Mm, lam, n)
            coords = tuple(_rayleigh(C, v) for C in Cs)
            mult = 1
            if factors:
                mult = min(factors, key=lambda fk: _relative_value(field, fk[0], lam))[1]
            out.append(NumericPoint(coords, mult, lam))
    return out
