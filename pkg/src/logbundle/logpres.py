"""Presentations, resolutions and Chern data of logarithmic bundles.

The dual-side matrix ``N`` maps ``O(1)^3 ⊕ O^(ℓ-1)`` onto ``⊕ O(d_i)``.
Row ``i < ℓ-1`` is ``(∂0 f_i, ∂1 f_i, ∂2 f_i, -f_i e_i)``; the last row is
``(∇f_ℓ, 0)``. Its kernel is the dual of Ω¹(log D), so the transpose of
``N`` presents Ω¹(log D) itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arrangement import Arrangement, require_normal_crossings
from .chernseries import ChernSeries
from .errors import IndexOutOfRange, UnsupportedField
from .exactalg.poly import Poly
from .modres.matrix import FreeResolution, GradedMatrix, minimalize, syzygy


@dataclass(frozen=True)
class ChernData:
    c1: int
    c2: int
    normalized_c1: int
    normalized_c2: int
    twist: int
    label: str = "unclassified"

    def to_json(self) -> dict:
        return {
            "c1": self.c1,
            "c2": self.c2,
            "normalized": [self.normalized_c1, self.normalized_c2],
            "normalizing_twist": self.twist,
            "label": self.label,
        }


@dataclass
class LogPresentation:
    arr: Arrangement
    N: GradedMatrix
    omega_resolution: FreeResolution
    method: str = "explicit"
    info: dict = dc_field(default_factory=dict)

    @property
    def ell(self) -> int:
        return len(self.arr)

    @property
    def presentation(self) -> GradedMatrix:
        """Minimal presentation of Ω¹(log D) (first differential)."""
        return self.omega_resolution.differentials[0]

    def betti_shape(self) -> list[list[int]]:
        return self.omega_resolution.betti_shape()

    def to_json(self) -> dict:
        return {
            "family": self.arr.family(),
            "method": self.method,
            "N": self.N.to_json(),
            "omega_resolution": self.omega_resolution.to_json(),
        }


def anconas_matrix(arr: Arrangement) -> GradedMatrix:
    """The ``ℓ × (ℓ+2)`` matrix ``N`` with the last component as gauge."""
    ring = arr.ring
    ell = len(arr)
    zero = ring.zero()
    rows = []
    for i, f in enumerate(arr.components):
        row = f.gradient() + [zero] * (ell - 1)
        if i < ell - 1:
            row[3 + i] = -f
        rows.append(row)
    return GradedMatrix(ring, rows, [-d for d in arr.degrees], [-1, -1, -1] + [0] * (ell - 1))


def gauss_kernel(arr: Arrangement, budget: int | None = None) -> GradedMatrix:
    """Generators of the kernel of ``O^3 -> O(d-1)`` given by the partials of ``f``."""
    f = arr.product
    row = GradedMatrix(arr.ring, [f.gradient()], [-(f.degree() - 1)], [0, 0, 0])
    return syzygy(row, budget=budget)


def _check_field(arr: Arrangement):
    p = arr.field.characteristic
    if p and any(d % p == 0 for d in arr.degrees):
        raise UnsupportedField(f"component degrees must be invertible in F_{p}")


def _explicit_resolution(N: GradedMatrix) -> FreeResolution:
    return minimalize(FreeResolution([N.transpose()]))


def _gauss_resolution(arr: Arrangement, budget: int | None = None) -> FreeResolution:
    E = gauss_kernel(arr, budget=budget)
    S = syzygy(E, budget=budget)
    ring = arr.ring
    if S.shape[1] == 0:
        # T(log D) is free: its dual is the dual free module
        tw = [t for t in E.col_twists]
        K = GradedMatrix(ring, [[ring.one() if i == j else ring.zero() for j in range(len(tw))]
                                for i in range(len(tw))], [-t for t in tw], [-t for t in tw])
    else:
        K = syzygy(S.transpose(), budget=budget)
    # generators of the dual, then their relations; Ω = dual twisted by -1
    rel = syzygy(K, budget=budget)
    shift_rows = [t + 1 for t in K.col_twists]
    shift_cols = [t + 1 for t in rel.col_twists]
    pres = GradedMatrix(ring, rel.entries, shift_rows, shift_cols)
    diffs = [pres]
    while True:
        nxt = syzygy(diffs[-1], budget=budget)
        if nxt.shape[1] == 0 or len(diffs) > ring.nvars:
            break
        diffs.append(nxt)
    return minimalize(FreeResolution(diffs))


def log_resolution(arr: Arrangement, method: str = "explicit", check: bool = True,
                   budget: int | None = None) -> LogPresentation:
    """Minimal resolution of Ω¹(log D) together with the dual-side matrix ``N``."""
    if check:
        require_normal_crossings(arr)
    _check_field(arr)
    N = anconas_matrix(arr)
    if method == "explicit":
        res = _explicit_resolution(N)
    elif method == "gauss":
        res = _gauss_resolution(arr, budget=budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    return LogPresentation(arr, N, res, method=method)


def chern_from_twists(terms: list[list[int]], order: int = 2) -> ChernSeries:
    """Alternating product of split Chern series; ``terms[k]`` are sheaf twists of ``F_k``."""
    total = ChernSeries.one(order)
    for k, tw in enumerate(terms):
        s = ChernSeries.split(tw, order)
        total = total * s if k % 2 == 0 else total / s
    return total


def normalize_rank2(c1: int, c2: int) -> tuple[int, int, int]:
    """Twist ``k`` with ``c1 + 2k ∈ {0, -1}`` and the twisted classes."""
    k = -((c1 + 1) // 2)
    return c1 + 2 * k, c2 + k * c1 + k * k, k


_LABELS = {
    ("1L+1C", (0, 1)): "Mss(0,1)",
    ("2L+1C", (-1, 2)): "M(-1,2)",
    ("3L+1C", (0, 3)): "M(0,3)",
}


def chern_and_classify(pres: LogPresentation) -> ChernData:
    series = chern_from_twists(pres.betti_shape())
    c1, c2 = series[1], series[2]
    n1, n2, k = normalize_rank2(c1, c2)
    label = _LABELS.get((pres.arr.family(), (n1, n2)), "unclassified")
    return ChernData(c1, c2, n1, n2, k, label)


def c1_from_dual_side(pres: LogPresentation) -> int:
    """``c1`` of Ω¹(log D) read from the sequence defining ``N``."""
    N = pres.N
    source = ChernSeries.split([-t for t in N.col_twists], 2)
    target = ChernSeries.split([-t for t in N.row_twists], 2)
    dual = source / target
    return -dual[1]


def rank_of_omega(pres: LogPresentation) -> int:
    tw = pres.omega_resolution.twists()
    return sum((-1) ** k * len(t) for k, t in enumerate(tw))


def reduce_presentation(pres: LogPresentation, drop: int) -> LogPresentation:
    """Presentation of the arrangement without component ``drop``.

    A non-gauge component is removed by deleting its row and its ``e_i``
    column. Removing the gauge (last) component first moves the gauge to
    the previous component by an invertible column operation built from
    the Euler field.
    """
    ell = pres.ell
    if ell < 2:
        raise IndexOutOfRange("cannot reduce an arrangement with one component")
    if not 0 <= drop < ell:
        raise IndexOutOfRange(f"component index {drop} out of range")
    N = pres.N
    ring = N.ring
    field = ring.field
    if drop < ell - 1:
        reduced = N.delete(rows=[drop], cols=[3 + drop])
    else:
        degs = pres.arr.degrees
        x = ring.gens()
        inv = field.inv(field.convert(degs[-1]))
        new_col = []
        for r in range(ell):
            acc = ring.zero()
            for j in range(3):
                acc = acc + N.entries[r][j] * x[j]
            for i in range(ell - 1):
                acc = acc + N.entries[r][3 + i].scale(field.convert(degs[i]))
            new_col.append(-acc.scale(inv))
        entries = [list(row) for row in N.entries]
        gauge = 3 + ell - 2
        for r in range(ell):
            entries[r][gauge] = new_col[r]
        moved = GradedMatrix(ring, entries, N.row_twists, N.col_twists)
        reduced = moved.delete(rows=[ell - 1], cols=[gauge])
    keep = [i for i in range(ell) if i != drop]
    sub = pres.arr.subarrangement(keep)
    res = _explicit_resolution(reduced)
    return LogPresentation(sub, reduced, res, method="reduced", info={"dropped": drop})


def family_column(pres: LogPresentation) -> list[Poly]:
    """The single column of a one-relation minimal presentation."""
    P = pres.presentation
    if P.shape[1] != 1:
        raise ValueError("presentation has more than one relation")
    return P.column(0)
