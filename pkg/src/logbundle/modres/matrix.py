"""Graded matrices, syzygies and minimal free resolutions.

A :class:`GradedMatrix` with ``row_twists = a`` and ``col_twists = b``
represents the map ``⊕_j R(-b_j) -> ⊕_i R(-a_i)``; twists are generator
degrees, so entry ``(i, j)`` is homogeneous of degree ``b_j - a_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from ..errors import NotHomogeneous
from ..exactalg.field import Field
from ..exactalg.poly import Poly, PolyRing
from .groebner import GREVLEX, MonomialOrder, dict_to_vector, module_groebner, vector_to_dict


@dataclass
class GradedMatrix:
    ring: PolyRing
    entries: list[list[Poly]]
    row_twists: list[int]
    col_twists: list[int]

    def __post_init__(self):
        self.row_twists = list(self.row_twists)
        self.col_twists = list(self.col_twists)
        if len(self.entries) != len(self.row_twists):
            raise ValueError("row count does not match row twists")
        for row in self.entries:
            if len(row) != len(self.col_twists):
                raise ValueError("column count does not match column twists")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_twists), len(self.col_twists)

    @property
    def field(self) -> Field:
        return self.ring.field

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[Poly]:
        return [row[j] for row in self.entries]

    def columns(self) -> list[list[Poly]]:
        return [self.column(j) for j in range(self.shape[1])]

    def entry_degree(self, i: int, j: int) -> int:
        return self.col_twists[j] - self.row_twists[i]

    def check_degrees(self) -> bool:
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                if f and not (f.is_homogeneous() and f.degree() == self.entry_degree(i, j)):
                    return False
        return True

    def validate(self):
        if not self.check_degrees():
            raise NotHomogeneous("entries violate the twist degree convention")
        return self

    def is_zero(self) -> bool:
        return all(not f for row in self.entries for f in row)

    def unit_positions(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.entries) for j, f in enumerate(row)
                if f and f.is_constant()]

    def is_minimal(self) -> bool:
        return not self.unit_positions()

    def transpose(self) -> "GradedMatrix":
        """The dual map: transposed entries, negated twists."""
        n, m = self.shape
        ent = [[self.entries[i][j] for i in range(n)] for j in range(m)]
        return GradedMatrix(self.ring, ent, [-t for t in self.col_twists], [-t for t in self.row_twists])

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("inner dimensions differ")
        zero = self.ring.zero()
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = zero
                for t in range(k):
                    a, b = self.entries[i][t], other.entries[t][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GradedMatrix(self.ring, out, self.row_twists, other.col_twists)

    def delete(self, rows: Sequence[int] = (), cols: Sequence[int] = ()) -> "GradedMatrix":
        rs, cs = set(rows), set(cols)
        ent = [[f for j, f in enumerate(row) if j not in cs] for i, row in enumerate(self.entries) if i not in rs]
        rt = [t for i, t in enumerate(self.row_twists) if i not in rs]
        ct = [t for j, t in enumerate(self.col_twists) if j not in cs]
        return GradedMatrix(self.ring, ent, rt, ct)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GradedMatrix":
        ent = [[self.entries[i][j] for j in cols] for i in rows]
        return GradedMatrix(self.ring, ent, [self.row_twists[i] for i in rows], [self.col_twists[j] for j in cols])

    def scale_column(self, j: int, c) -> "GradedMatrix":
        ent = [[f.scale(c) if k == j else f for k, f in enumerate(row)] for row in self.entries]
        return GradedMatrix(self.ring, ent, self.row_twists, self.col_twists)

    def to_json(self) -> dict:
        return {
            "row_twists": list(self.row_twists),
            "col_twists": list(self.col_twists),
            "entries": [[str(f) for f in row] for row in self.entries],
        }

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.ring is other.ring and self.row_twists == other.row_twists
                and self.col_twists == other.col_twists and self.entries == other.entries)

    def __str__(self):
        rows = ["[" + ", ".join(str(f) for f in row) + "]" for row in self.entries]
        return "\n".join(rows)


def zero_matrix(ring: PolyRing, row_twists, col_twists) -> GradedMatrix:
    z = ring.zero()
    return GradedMatrix(ring, [[z] * len(col_twists) for _ in row_twists], row_twists, col_twists)


def from_columns(ring: PolyRing, cols: Sequence[Sequence[Poly]], row_twists, col_twists) -> GradedMatrix:
    n = len(row_twists)
    ent = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    return GradedMatrix(ring, ent, row_twists, col_twists)


# -- minimal generators -------------------------------------------------


class _Echelon:
    """Incremental row echelon form of sparse vectors keyed by monomials."""

    def __init__(self, field: Field):
        self.field = field
        self.p = field.characteristic
        self.rows: dict[int, dict] = {}

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        p = self.p
        while v:
            m = max(v)
            row = self.rows.get(m)
            if row is None:
                return v
            c = v[m]
            for t, a in row.items():
                x = v.get(t, 0) - c * a
                if p:
                    x %= p
                if x:
                    v[t] = x
                else:
                    v.pop(t, None)
        return v

    def add(self, v: dict) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        m = max(v)
        inv = self.field.inv(v[m])
        p = self.p
        self.rows[m] = {t: (a * inv % p if p else a * inv) for t, a in v.items()}
        return True


def vector_degree(vec: Sequence[Poly], twists: Sequence[int]) -> int | None:
    for f, t in zip(vec, twists):
        if f:
            return f.degree() + t
    return None


def minimal_generators(vectors: Sequence[Sequence[Poly]], twists: Sequence[int]) -> list[tuple[list[Poly], int]]:
    """Prune homogeneous module generators to a minimal generating set.

    Works degree by degree: a vector is kept iff it is not in the span of
    monomial multiples of vectors already kept. Returns ``(vector, degree)``.
    """
    items = []
    for k, v in enumerate(vectors):
        d = vector_degree(v, twists)
        if d is not None:
            items.append((d, k, list(v)))
    if not items:
        return []
    ring = items[0][2][0].ring
    items.sort(key=lambda t: (t[0], t[1]))
    kept: list[tuple[list[Poly], int, dict]] = []
    out = []
    current = None
    ech = None
    for d, _, v in items:
        if d != current:
            current = d
            ech = _Echelon(ring.field)
            for w, dw, wd in kept:
                for mono in ring.monomials_of_degree(d - dw):
                    ech.add({m + mono: c for m, c in wd.items()})
        vd = vector_to_dict(ring, v)
        if ech.add(vd):
            kept.append((v, d, vd))
            out.append((v, d))
    return out


def syzygy(m: GradedMatrix, order: MonomialOrder = GREVLEX, budget: int | None = None,
           minimal: bool = True) -> GradedMatrix:
    """Graded matrix whose columns generate the kernel of ``m``."""
    ring = m.ring
    nrows, ncols = m.shape
    if ncols == 0:
        return GradedMatrix(ring, [], [], [])
    one, zero = ring.one(), ring.zero()
    # identity block at low positions, original rows on top
    vecs = []
    for j in range(ncols):
        v = [one if k == j else zero for k in range(ncols)] + m.column(j)
        vecs.append(v)
    twists = list(m.col_twists) + list(m.row_twists)
    gb = module_groebner(vecs, ncols + nrows, twists, order=order, budget=budget, ring=ring)
    shift = ring.pos_shift
    lead = gb.leading_monomials()
    syz = []
    for e, lm in zip(gb.elements, lead):
        if lm >> shift < ncols:
            syz.append(dict_to_vector(ring, e, ncols + nrows)[:ncols])
    if minimal:
        gens = minimal_generators(syz, m.col_twists)
    else:
        gens = [(v, vector_degree(v, m.col_twists)) for v in syz]
    gens.sort(key=lambda t: t[1])
    cols = [v for v, _ in gens]
    return from_columns(ring, cols, m.col_twists, [d for _, d in gens])


@dataclass
class FreeResolution:
    """``F_0 <-d1- F_1 <-d2- ...``; ``differentials[k]`` is ``d_{k+1}``."""

    differentials: list[GradedMatrix]
    minimal: bool = False
    info: dict = dc_field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.differentials[0].ring

    def twists(self) -> list[list[int]]:
        """Generator degrees of ``F_0, F_1, ...``."""
        if not self.differentials:
            return []
        out = [list(self.differentials[0].row_twists)]
        for d in self.differentials:
            out.append(list(d.col_twists))
        return out

    def betti_shape(self) -> list[list[int]]:
        """Sheaf twists ``O(k)`` of each term, sorted descending."""
        return [sorted((-a for a in tw), reverse=True) for tw in self.twists()]

    def shape_string(self) -> str:
        shape = self.betti_shape()
        while len(shape) > 1 and not shape[-1]:
            shape.pop()
        parts = []
        for tw in reversed(shape):
            parts.append(_format_sum(tw))
        return "0 -> " + " -> ".join(parts)

    def is_complex(self) -> bool:
        for a, b in zip(self.differentials, self.differentials[1:]):
            if not (a @ b).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        return all(d.is_minimal() for d in self.differentials)

    def to_json(self) -> dict:
        return {
            "betti": self.betti_shape(),
            "shape": self.shape_string(),
            "differentials": [d.to_json() for d in self.differentials],
        }


def _format_sum(twists: list[int]) -> str:
    if not twists:
        return "0"
    counts: dict[int, int] = {}
    for t in twists:
        counts[t] = counts.get(t, 0) + 1
    parts = []
    for t in sorted(counts, reverse=True):
        k = counts[t]
        parts.append(f"O({t})" + (f"^{k}" if k > 1 else ""))
    return "+".join(parts)


def _cancel_unit(diffs: list[GradedMatrix], k: int, i: int, j: int) -> list[GradedMatrix]:
    d = diffs[k]
    ring = d.ring
    field = ring.field
    u = d.entries[i][j].constant_value()
    inv = field.inv(u)
    n, m = d.shape
    colj = d.column(j)
    rowi = d.entries[i]
    ent = []
    for r in range(n):
        if r == i:
            continue
        row = []
        cr = colj[r]
        for c in range(m):
            if c == j:
                continue
            f = d.entries[r][c]
            if cr and rowi[c]:
                f = f - (cr * rowi[c]).scale(inv)
            row.append(f)
        ent.append(row)
    new = list(diffs)
    new[k] = GradedMatrix(ring, ent, [t for r, t in enumerate(d.row_twists) if r != i],
                          [t for c, t in enumerate(d.col_twists) if c != j])
    if k + 1 < len(diffs):
        new[k + 1] = diffs[k + 1].delete(rows=[j])
    if k > 0:
        new[k - 1] = diffs[k - 1].delete(cols=[i])
    return new


def minimalize(res: FreeResolution) -> FreeResolution:
    """Cancel unit entries until no differential has a nonzero constant."""
    diffs = list(res.differentials)
    changed = True
    while changed:
        changed = False
        for k, d in enumerate(diffs):
            units = d.unit_positions()
            if units:
                i, j = units[0]
                diffs = _cancel_unit(diffs, k, i, j)
                changed = True
                break
    while len(diffs) > 1 and diffs[-1].shape[1] == 0:
        diffs.pop()
    return FreeResolution(diffs, minimal=True, info=dict(res.info))


def free_resolution_min(presentation: GradedMatrix, order: MonomialOrder = GREVLEX,
                        budget: int | None = None, max_length: int | None = None) -> FreeResolution:
    """Minimal free resolution of ``coker(presentation)``."""
    diffs = [presentation]
    limit = max_length if max_length is not None else presentation.ring.nvars + 1
    while len(diffs) < limit:
        nxt = syzygy(diffs[-1], order=order, budget=budget)
        if nxt.shape[1] == 0:
            break
        diffs.append(nxt)
    return minimalize(FreeResolution(diffs))
