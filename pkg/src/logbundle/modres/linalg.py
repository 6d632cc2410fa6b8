"""Dense exact linear algebra over a :class:`~logbundle.exactalg.Field`.

Matrices are lists of rows of raw field values (``mpq`` or residues).
"""

from __future__ import annotations

from typing import Sequence

from ..exactalg.field import Field

Matrix = list[list]


def convert_matrix(field: Field, rows: Sequence[Sequence]) -> Matrix:
    conv = field.convert
    return [[conv(v) for v in row] for row in rows]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(field: Field, a: Matrix, b: Matrix) -> Matrix:
    p = field.characteristic
    bt = transpose(b)
    out = []
    for row in a:
        new = []
        for col in bt:
            s = sum(x * y for x, y in zip(row, col) if x and y)
            new.append(s % p if p else field.convert(s))
        out.append(new)
    return out


def matvec(field: Field, a: Matrix, v: Sequence) -> list:
    p = field.characteristic
    out = []
    for row in a:
        s = sum(x * y for x, y in zip(row, v) if x and y)
        out.append(s % p if p else field.convert(s))
    return out


def rref(field: Field, m: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Only the first ``ncols`` columns are used as pivots (augmented systems).
    """
    p = field.characteristic
    a = [list(row) for row in m]
    if not a:
        return a, []
    width = len(a[0])
    lim = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    nrows = len(a)
    for c in range(lim):
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][c])
        row = a[r]
        if p:
            row = [v * inv % p for v in row]
        else:
            row = [v * inv for v in row]
        a[r] = row
        nz = [(j, v) for j, v in enumerate(row) if v]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    ri = a[i]
                    if p:
                        for j, v in nz:
                            ri[j] = (ri[j] - f * v) % p
                    else:
                        for j, v in nz:
                            ri[j] = ri[j] - f * v
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(field: Field, m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(_echelon_pivots(field, m))


def _echelon_pivots(field: Field, m: Matrix) -> list[int]:
    """Forward elimination only; cheaper than full RREF for ranks."""
    p = field.characteristic
    a = [list(row) for row in m]
    nrows, width = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][c])
        row = a[r]
        nz = [(j, row[j]) for j in range(c, width) if row[j]]
        for i in range(r + 1, nrows):
            f = a[i][c]
            if f:
                f = f * inv
                ri = a[i]
                if p:
                    for j, v in nz:
                        ri[j] = (ri[j] - f * v) % p
                else:
                    for j, v in nz:
                        ri[j] = ri[j] - f * v
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def nullspace(field: Field, m: Matrix, ncols: int | None = None) -> list[list]:
    """Basis of ``{v : m v = 0}`` in reduced echelon form (one vector per free column)."""
    if not m:
        n = ncols or 0
        return [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    n = len(m[0])
    red, pivots = rref(field, m)
    pset = set(pivots)
    p = field.characteristic
    basis = []
    for free in range(n):
        if free in pset:
            continue
        v = [field.zero] * n
        v[free] = field.one
        for r, c in enumerate(pivots):
            val = -red[r][free]
            v[c] = val % p if p else val
        basis.append(v)
    return basis


def left_nullspace(field: Field, m: Matrix) -> list[list]:
    return nullspace(field, transpose(m), ncols=len(m))


def solve(field: Field, m: Matrix, rhs: Sequence) -> list | None:
    """One solution of ``m v = rhs`` (free variables set to zero), or ``None``."""
    n = len(m[0]) if m else 0
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    red, pivots = rref(field, aug, ncols=n)
    for row in red[len(pivots):]:
        if row[n]:
            return None
    v = [field.zero] * n
    for r, c in enumerate(pivots):
        v[c] = red[r][n]
    return v


def det(field: Field, m: Matrix):
    p = field.characteristic
    a = [list(row) for row in m]
    n = len(a)
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        pv = a[c][c]
        result = result * pv
        inv = field.inv(pv)
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f * inv
                ri, rc = a[i], a[c]
                for j in range(c, n):
                    ri[j] = ri[j] - f * rc[j]
                    if p:
                        ri[j] %= p
        if p:
            result %= p
    return result


def det_bareiss_int(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def inverse(field: Field, m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(field, aug, ncols=n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def identity(field: Field, n: int) -> Matrix:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
