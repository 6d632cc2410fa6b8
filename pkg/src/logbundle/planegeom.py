"""Pole/polar geometry of smooth conics and the isomorphism invariants of
line+conic and two-lines+conic arrangements.

Points and lines are length-3 tuples of raw field values; a line ``(a, b, c)``
is ``a x0 + b x1 + c x2``. Projective comparisons never divide, they test
all 2x2 minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arrangement import Arrangement, check_normal_crossings, conic_from_matrix, conic_matrix, make_arrangement
from .errors import DegenerateQuadric, DependentLinearForms, FamilyMismatch, NormalCrossingsViolation, SingularConic
from .exactalg.field import Field
from .exactalg.poly import Poly, PolyRing, plane_ring
from .modres.linalg import det, matvec, nullspace, solve

_UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _red(field: Field, v):
    p = field.characteristic
    return v % p if p else v


def line_coefficients(L) -> tuple:
    if isinstance(L, Poly):
        if L.degree() != 1 or not L.is_homogeneous():
            raise ValueError("expected a linear form")
        return tuple(L.coefficient(e) for e in _UNIT)
    return tuple(L)


def line_poly(ring: PolyRing, coeffs: Sequence) -> Poly:
    x = ring.gens()
    f = ring.zero()
    for c, xi in zip(coeffs, x):
        c = ring.field.convert(c)
        if c:
            f = f + xi.scale(c)
    return f


def projectively_equal(field: Field, u: Sequence, v: Sequence) -> bool:
    """``u`` and ``v`` are nonzero and proportional."""
    if not any(u) or not any(v):
        return False
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if _red(field, u[i] * v[j] - u[j] * v[i]):
                return False
    return True


def normalize_projective(field: Field, v: Sequence) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    conv = field.convert
    v = [conv(x) for x in v]
    k = next((i for i, x in enumerate(v) if x), None)
    if k is None:
        raise ValueError("zero vector is not a projective point")
    inv = field.inv(v[k])
    return tuple(_red(field, x * inv) for x in v)


def cross(field: Field, u: Sequence, v: Sequence) -> tuple:
    return (
        _red(field, u[1] * v[2] - u[2] * v[1]),
        _red(field, u[2] * v[0] - u[0] * v[2]),
        _red(field, u[0] * v[1] - u[1] * v[0]),
    )


def adjugate3(field: Field, a: Sequence[Sequence]) -> list[list]:
    def m(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]

    return [[_red(field, (-1) ** (i + j) * m(j, i)) for j in range(3)] for i in range(3)]


@dataclass(frozen=True)
class Conic:
    """Smooth conic ``x^T A x`` with symmetric ``A``; equality is up to scale."""

    field: Field
    matrix: tuple[tuple, ...]

    @classmethod
    def from_poly(cls, f: Poly) -> "Conic":
        a = conic_matrix(f)
        if not det(f.ring.field, a):
            raise SingularConic(f"{f} is singular")
        return cls(f.ring.field, tuple(tuple(r) for r in a))

    @classmethod
    def from_matrix(cls, field: Field, a: Sequence[Sequence]) -> "Conic":
        conv = field.convert
        m = tuple(tuple(conv(v) for v in row) for row in a)
        if any(m[i][j] != m[j][i] for i in range(3) for j in range(3)):
            raise ValueError("conic matrix must be symmetric")
        if not det(field, [list(r) for r in m]):
            raise SingularConic("conic matrix is singular")
        return cls(field, m)

    def poly(self, ring: PolyRing | None = None) -> Poly:
        return conic_from_matrix(ring or plane_ring(self.field), self.matrix)

    def rows(self) -> list[list]:
        return [list(r) for r in self.matrix]

    def __eq__(self, other):
        if not isinstance(other, Conic):
            return NotImplemented
        flat_a = [v for r in self.matrix for v in r]
        flat_b = [v for r in other.matrix for v in r]
        return self.field is other.field and projectively_equal(self.field, flat_a, flat_b)

    def __hash__(self):
        return hash(normalize_projective(self.field, [v for r in self.matrix for v in r]))


def _as_conic(C) -> Conic:
    return C if isinstance(C, Conic) else Conic.from_poly(C)


def pole(L, C) -> tuple:
    """Pole of the line ``L`` with respect to ``C``: ``adj(A) L``."""
    C = _as_conic(C)
    coeffs = [C.field.convert(c) for c in line_coefficients(L)]
    if not any(coeffs):
        raise ValueError("zero line")
    adj = adjugate3(C.field, C.rows())
    return tuple(matvec(C.field, adj, coeffs))


def polar_line(P: Sequence, C) -> tuple:
    """Polar line ``A P`` of the point ``P``."""
    C = _as_conic(C)
    P = [C.field.convert(c) for c in P]
    if not any(P):
        raise ValueError("zero vector is not a projective point")
    return tuple(matvec(C.field, C.rows(), P))


def cramer_pole_x0(C) -> tuple:
    """Closed-form pole of ``x0`` (Cramer's rule on the last two polar rows)."""
    C = _as_conic(C)
    a = C.matrix
    f = C.field
    return (
        _red(f, a[1][2] ** 2 - a[1][1] * a[2][2]),
        _red(f, a[2][2] * a[0][1] - a[0][2] * a[1][2]),
        _red(f, a[0][2] * a[1][1] - a[1][2] * a[0][1]),
    )


# -- Mss(0,1): the pi_2 point and isomorphism witnesses ----------------------


@dataclass(frozen=True)
class Pi2Data:
    """Column ``(l1, l2, q)`` of a one-relation presentation ``O(-2) -> O(-1)^2 ⊕ O``."""

    l1: Poly
    l2: Poly
    q: Poly


def pi2_invariant(data: Pi2Data) -> tuple:
    """The point ``{l1 = 0} ∩ {l2 = 0}``."""
    field = data.l1.ring.field
    P = cross(field, line_coefficients(data.l1), line_coefficients(data.l2))
    if not any(P):
        raise DependentLinearForms("l1 and l2 are proportional")
    if not data.q.evaluate_raw(P):
        raise DegenerateQuadric("q vanishes at the point l1 = l2 = 0")
    return P


def pi2_from_presentation(pres) -> Pi2Data:
    """Read ``(l1, l2, q)`` off the minimal presentation of a line+conic bundle."""
    P = pres.presentation
    if P.shape[1] != 1:
        raise FamilyMismatch("presentation is not a single relation")
    col = P.column(0)
    lin = [f for f, t in zip(col, P.row_twists) if t == 1]
    quad = [f for f, t in zip(col, P.row_twists) if t == 0]
    if len(lin) != 2 or len(quad) != 1:
        raise FamilyMismatch("presentation is not of the shape O(-2) -> O(-1)^2 + O")
    return Pi2Data(lin[0], lin[1], quad[0])


def iso_witness(data: Pi2Data, other: Pi2Data) -> tuple[Poly, Poly] | None:
    """``(g1, g2)`` with ``q' - q = g1 l1 + g2 l2`` after normalization, else ``None``.

    ``q`` and ``q'`` are scaled to take the value 1 at the common point.
    """
    ring = data.l1.ring
    field = ring.field
    P = pi2_invariant(data)
    P2 = pi2_invariant(other)
    if not projectively_equal(field, P, P2):
        return None
    q = data.q.scale(field.inv(data.q.evaluate_raw(P)))
    q2 = other.q.scale(field.inv(other.q.evaluate_raw(P)))
    diff = q2 - q
    x = ring.gens()
    unknowns = [x[k] * data.l1 for k in range(3)] + [x[k] * data.l2 for k in range(3)]
    monos = ring.monomials_of_degree(2)
    zero = field.zero
    mat = [[u.terms.get(m, zero) for u in unknowns] for m in monos]
    rhs = [diff.terms.get(m, zero) for m in monos]
    sol = solve(field, mat, rhs)
    if sol is None:
        return None
    g1 = line_poly(ring, sol[:3])
    g2 = line_poly(ring, sol[3:])
    return g1, g2


# -- M(-1,2): jumping line and point pair ------------------------------------


@dataclass(frozen=True)
class PairInvariant:
    """Jumping line and the conic's restriction to it, both up to scale.

    The binary form lives in ``k[s, t]`` for the parametrization
    ``[s:t] -> s B0 + t B1`` where ``B0, B1`` is the reduced kernel basis of
    the normalized line.
    """

    field: Field
    jumping_line: tuple
    binary_form: Poly

    def __eq__(self, other):
        if not isinstance(other, PairInvariant):
            return NotImplemented
        if self.field is not other.field or not projectively_equal(self.field, self.jumping_line, other.jumping_line):
            return False
        a = [self.binary_form.coefficient(e) for e in ((2, 0), (1, 1), (0, 2))]
        b = [other.binary_form.coefficient(e) for e in ((2, 0), (1, 1), (0, 2))]
        return projectively_equal(self.field, a, b)

    def __hash__(self):
        a = [self.binary_form.coefficient(e) for e in ((2, 0), (1, 1), (0, 2))]
        return hash((normalize_projective(self.field, self.jumping_line), normalize_projective(self.field, a)))

    def discriminant(self):
        a, b, c = (self.binary_form.coefficient(e) for e in ((2, 0), (1, 1), (0, 2)))
        return _red(self.field, b * b - 4 * a * c)

    def to_json(self) -> dict:
        to_str = self.field.to_str
        return {"jumping_line": [to_str(v) for v in self.jumping_line], "binary_form": str(self.binary_form)}


def line_parametrization(field: Field, line: Sequence) -> tuple[list, list]:
    line = normalize_projective(field, line)
    b0, b1 = nullspace(field, [list(line)])
    return b0, b1


def restrict_to_parametrized_line(f: Poly, line: Sequence) -> Poly:
    field = f.ring.field
    b0, b1 = line_parametrization(field, line)
    st = PolyRing(field, 2, ("s", "t"))
    s, t = st.gens()
    return f.compose([s.scale(b0[i]) + t.scale(b1[i]) for i in range(3)])


def pair_invariant(L1, L2, C, check: bool = True) -> PairInvariant:
    """Jumping line (polar of ``L1 ∩ L2``) and the conic restricted to it."""
    if isinstance(C, Conic):
        conic = C
        f = C.poly()
    else:
        conic = Conic.from_poly(C)
        f = C
    field = conic.field
    ring = f.ring
    if check:
        arr = make_arrangement([line_poly(ring, line_coefficients(L1)), line_poly(ring, line_coefficients(L2)), f])
        report = check_normal_crossings(arr)
        if not report.ok:
            raise NormalCrossingsViolation("lines and conic are not in normal crossings", report)
    P = cross(field, [field.convert(c) for c in line_coefficients(L1)], [field.convert(c) for c in line_coefficients(L2)])
    if not any(P):
        raise DependentLinearForms("L1 and L2 coincide")
    J = normalize_projective(field, polar_line(P, conic))
    form = restrict_to_parametrized_line(f, J)
    return PairInvariant(field, J, form)


# -- isomorphism deciders -----------------------------------------------------


def _split_lines_conic(arr: Arrangement) -> tuple[list[Poly], Poly]:
    lines = [f for f in arr.components if f.degree() == 1]
    conics = [f for f in arr.components if f.degree() == 2]
    if len(conics) != 1 or len(lines) + 1 != len(arr):
        raise FamilyMismatch(f"family {arr.family()} is not lines plus one conic")
    return lines, conics[0]


def iso_equivalent(arrA: Arrangement, arrB: Arrangement) -> bool:
    """Whether the two arrangements have isomorphic logarithmic bundles."""
    fam = arrA.family()
    if fam != arrB.family():
        raise FamilyMismatch(f"{arrA.family()} vs {arrB.family()}")
    if arrA.field is not arrB.field:
        raise FamilyMismatch("arrangements over different fields")
    if fam == "1L+1C":
        (LA,), CA = _split_lines_conic(arrA)
        (LB,), CB = _split_lines_conic(arrB)
        return projectively_equal(arrA.field, pole(LA, CA), pole(LB, CB))
    if fam == "2L+1C":
        (A1, A2), CA = _split_lines_conic(arrA)
        (B1, B2), CB = _split_lines_conic(arrB)
        return pair_invariant(A1, A2, CA) == pair_invariant(B1, B2, CB)
    raise FamilyMismatch(f"no isomorphism invariant for family {fam}")
