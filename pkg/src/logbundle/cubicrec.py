"""Recover a cubic whose partials lie in the net spanned by ``x_j ∂_j f4``.

Kernel vectors ``e`` are flat with ``e[3*i + j] = e_j^i``; the target
equations are ``∂_i g = Σ_j e_j^i · (-x_j ∂_j f4)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arrangement import conic_matrix
from .errors import InconsistentSystem, SingularConic, ZeroKernelVector
from .exactalg.poly import Poly
from .modres.groebner import buchberger
from .modres.hilbert import projectively_empty
from .modres.linalg import det, nullspace, rank, solve


@dataclass(frozen=True)
class CubicReconstruction:
    f4: Poly
    e: tuple
    g: Poly

    def residuals(self) -> list[Poly]:
        return [self.g.derivative(i) - t for i, t in enumerate(target_partials(self.f4, self.e))]

    def to_json(self) -> dict:
        to_str = self.f4.ring.field.to_str
        return {"f4": str(self.f4), "e": [to_str(v) for v in self.e], "g": str(self.g)}


@dataclass(frozen=True)
class HermiteReport:
    in_span: bool
    smooth: bool

    def __bool__(self) -> bool:
        return self.in_span


def _smooth_matrix(f4: Poly) -> list[list]:
    if f4.degree() != 2 or not f4.is_homogeneous() or f4.ring.nvars != 3:
        raise ValueError("f4 must be a ternary quadratic form")
    d = conic_matrix(f4)
    if not det(f4.ring.field, d):
        raise SingularConic(f"{f4} is singular")
    return d


def net_generators(f4: Poly) -> list[Poly]:
    """``x_j ∂_j f4`` for ``j = 0, 1, 2``."""
    x = f4.ring.gens()
    return [x[j] * f4.derivative(j) for j in range(3)]


def build_system_H(f4: Poly) -> list[list]:
    """The 9x9 integrability matrix, columns ordered ``e_0^0, e_1^0, ..., e_2^2``."""
    d = _smooth_matrix(f4)
    field = f4.ring.field
    z = field.zero
    d00, d01, d02 = d[0]
    d11, d12 = d[1][1], d[1][2]
    d22 = d[2][2]
    rows = [
        [d01, d01, z, -2 * d00, z, z, z, z, z],
        [z, 2 * d11, z, -d01, -d01, z, z, z, z],
        [z, d12, d12, -d02, z, -d02, z, z, z],
        [d02, z, d02, z, z, z, -2 * d00, z, z],
        [z, d12, d12, z, z, z, -d01, -d01, z],
        [z, z, 2 * d22, z, z, z, -d02, z, -d02],
        [z, z, z, d02, z, d02, -d01, -d01, z],
        [z, z, z, z, d12, d12, z, -2 * d11, z],
        [z, z, z, z, z, 2 * d22, z, -d12, -d12],
    ]
    return [[field.convert(v) for v in r] for r in rows]


def schwarz_system(f4: Poly) -> list[list]:
    """Mixed-partials conditions ``∂_u ∂_i g = ∂_i ∂_u g`` as a 9x9 matrix (same unknown order)."""
    _smooth_matrix(f4)
    field = f4.ring.field
    net = net_generators(f4)
    unit = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    # c[j][u][v]: coefficient of x_v in ∂_u(x_j ∂_j f4)
    c = [[[net[j].derivative(u).coefficient(unit[v]) for v in range(3)] for u in range(3)] for j in range(3)]
    rows = []
    for i, u in ((0, 1), (0, 2), (1, 2)):
        for v in range(3):
            row = [field.zero] * 9
            for j in range(3):
                row[3 * i + j] = row[3 * i + j] + c[j][u][v]
                row[3 * u + j] = row[3 * u + j] - c[j][i][v]
            rows.append(row)
    return rows


def kernel_basis(f4: Poly) -> list[tuple]:
    """Reduced-echelon basis of ``ker H``."""
    H = build_system_H(f4)
    return [tuple(v) for v in nullspace(f4.ring.field, H, 9)]


def target_partials(f4: Poly, e: Sequence) -> list[Poly]:
    field = f4.ring.field
    net = net_generators(f4)
    out = []
    for i in range(3):
        acc = f4.ring.zero()
        for j in range(3):
            coef = field.convert(e[3 * i + j])
            if coef:
                acc = acc - net[j].scale(coef)
        out.append(acc)
    return out


def reconstruct_cubic(f4: Poly, e: Sequence) -> CubicReconstruction:
    """Solve for the ten coefficients of ``g`` against the three partial equations."""
    _smooth_matrix(f4)
    ring = f4.ring
    field = ring.field
    e = tuple(field.convert(v) for v in e)
    if len(e) != 9:
        raise ValueError("kernel vector must have 9 entries")
    if not any(e):
        raise ZeroKernelVector("e = 0 gives g = 0")
    targets = target_partials(f4, e)
    cubics = ring.monomials_of_degree(3)
    quads = ring.monomials_of_degree(2)
    basis = [Poly(ring, {m: field.one}) for m in cubics]
    zero = field.zero
    mat, rhs = [], []
    for i in range(3):
        parts = [b.derivative(i) for b in basis]
        for m in quads:
            mat.append([p.terms.get(m, zero) for p in parts])
            rhs.append(targets[i].terms.get(m, zero))
    sol = solve(field, mat, rhs)
    if sol is None:
        raise InconsistentSystem("no cubic has the requested partials (e is not in ker H)")
    g = Poly(ring, {m: c for m, c in zip(cubics, sol) if c})
    if g.is_zero():
        raise ZeroKernelVector("reconstructed cubic vanishes")
    return CubicReconstruction(f4, e, g)


def reconstruct_all(f4: Poly) -> list[CubicReconstruction]:
    """One cubic per kernel basis vector.

    Vectors that only encode a linear relation among the ``x_j ∂_j f4``
    integrate to ``g = 0`` and are skipped.
    """
    out = []
    for e in kernel_basis(f4):
        try:
            out.append(reconstruct_cubic(f4, e))
        except ZeroKernelVector:
            continue
    return out


def diagonal_kernel_vector(field) -> tuple:
    """``e_j^i = -δ_ij``, i.e. ``∂_i g = x_i ∂_i f4``."""
    return tuple(field.convert(-1 if k in (0, 4, 8) else 0) for k in range(9))


def fermat_closed_form(f4: Poly) -> Poly:
    """``(2/3)(d00 x0^3 + d11 x1^3 + d22 x2^3)`` for a diagonal conic.

    The scalar matches ``∂_i g = x_i ∂_i f4`` when the cubic coefficients are
    read as the diagonal entries ``d_jj`` of the conic's symmetric matrix.
    """
    d = _smooth_matrix(f4)
    field = f4.ring.field
    if any(d[i][j] for i in range(3) for j in range(3) if i != j):
        raise ValueError("conic is not diagonal")
    x = f4.ring.gens()
    two_thirds = field.convert(2) * field.inv(field.convert(3))
    g = sum((xi ** 3).scale(d[i][i]) for i, xi in enumerate(x) if d[i][i])
    return g.scale(two_thirds)


def hermite_verify(g: Poly, f4: Poly) -> HermiteReport:
    """Span inclusion of the partials plus a smoothness flag for ``g``."""
    if g.is_zero():
        raise ValueError("g must be nonzero")
    ring = f4.ring
    field = ring.field
    quads = ring.monomials_of_degree(2)
    zero = field.zero

    def vec(p: Poly) -> list:
        return [p.terms.get(m, zero) for m in quads]

    net = [vec(p) for p in net_generators(f4)]
    partials = [g.derivative(i) for i in range(3)]
    r_net = rank(field, net)
    in_span = rank(field, net + [vec(p) for p in partials]) == r_net
    nonzero = [p for p in partials if not p.is_zero()]
    smooth = len(nonzero) == 3 and projectively_empty(buchberger(nonzero))
    return HermiteReport(in_span, smooth)
