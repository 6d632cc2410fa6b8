"""Arrangements of smooth plane curves: ingestion, validation, Veronese lift."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import (
    DuplicateComponent,
    NormalCrossingsViolation,
    ParseError,
    SchemaError,
    SingularComponent,
    UnsupportedDegree,
    UnsupportedField,
)
from .exactalg.field import Field, field_from_descriptor
from .exactalg.poly import Poly, PolyRing, plane_ring
from .modres.groebner import buchberger
from .modres.hilbert import projectively_empty
from .modres.linalg import det, nullspace


def proportional(f: Poly, g: Poly) -> bool:
    """``f = c g`` for a nonzero scalar ``c``."""
    if f.ring is not g.ring or set(f.terms) != set(g.terms) or not f.terms:
        return False
    field = f.ring.field
    m = next(iter(f.terms))
    ratio = f.terms[m] * field.inv(g.terms[m])
    p = field.characteristic
    for t, c in f.terms.items():
        v = g.terms[t] * ratio
        if (v % p if p else v) != c:
            return False
    return True


def conic_matrix(f: Poly) -> list[list]:
    """Symmetric ``A`` with ``f = x^T A x`` (needs characteristic != 2)."""
    field = f.ring.field
    if field.characteristic == 2:
        raise UnsupportedField("conics in characteristic 2 have no symmetric matrix")
    if f.degree() != 2 or not f.is_homogeneous():
        raise UnsupportedDegree("conic_matrix needs a homogeneous quadric")
    half = field.inv(field.convert(2))
    p = field.characteristic
    a = [[field.zero] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            c = f.coefficient(e)
            if i == j:
                a[i][i] = c
            else:
                v = c * half
                a[i][j] = a[j][i] = v % p if p else v
    return a


def conic_from_matrix(ring: PolyRing, a: Sequence[Sequence]) -> Poly:
    x = ring.gens()
    conv = ring.field.convert
    f = ring.zero()
    for i in range(3):
        for j in range(3):
            c = conv(a[i][j])
            if c:
                f = f + (x[i] * x[j]).scale(c)
    return f


def is_smooth(f: Poly) -> bool:
    d = f.degree()
    if d == 1:
        return True
    if d == 2 and f.ring.field.characteristic != 2:
        return bool(det(f.ring.field, conic_matrix(f)))
    ideal = [f] + [g for g in f.gradient() if g]
    return projectively_empty(buchberger(ideal))


@dataclass(frozen=True)
class Violation:
    kind: str
    components: tuple[int, ...]
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "components": list(self.components), "detail": self.detail}


@dataclass(frozen=True)
class NormalCrossingsReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


@dataclass(frozen=True)
class VeroneseHyperplane:
    degree: int
    coefficients: tuple

    @property
    def ambient_dimension(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, field: Field, point: Sequence):
        p = field.characteristic
        s = sum(c * v for c, v in zip(self.coefficients, point))
        return s % p if p else s


@dataclass(frozen=True, eq=False)
class Arrangement:
    """Ordered smooth components in ``P^2`` over one field."""

    field: Field
    components: tuple[Poly, ...]
    meta: dict = dc_field(default_factory=dict, compare=False)

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree() for f in self.components)

    def __len__(self):
        return len(self.components)

    @cached_property
    def product(self) -> Poly:
        f = self.ring.one()
        for g in self.components:
            f = f * g
        return f

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def family(self) -> str:
        """``"1L+1C"`` style label counting lines and conics."""
        lines = sum(1 for d in self.degrees if d == 1)
        conics = sum(1 for d in self.degrees if d == 2)
        other = len(self) - lines - conics
        label = f"{lines}L+{conics}C"
        return label + (f"+{other}X" if other else "")

    def require_plane_degrees(self):
        bad = [d for d in self.degrees if d not in (1, 2)]
        if bad:
            raise UnsupportedDegree(f"only lines and conics are supported here, got degrees {bad}")

    def subarrangement(self, keep: Sequence[int]) -> "Arrangement":
        return Arrangement(self.field, tuple(self.components[i] for i in keep))

    def transform(self, matrix: Sequence[Sequence]) -> "Arrangement":
        """Components composed with the linear substitution ``x -> T x``."""
        return Arrangement(self.field, tuple(f.linear_substitution(matrix) for f in self.components))

    def to_document(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "components": [{"degree": f.degree(), "terms": f.to_json_terms()} for f in self.components],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True)

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.field is other.field and self.components == other.components

    def __hash__(self):
        return hash(self.components)


def make_arrangement(polys: Sequence[Poly], validate: bool = True) -> Arrangement:
    if not polys:
        raise SchemaError("an arrangement needs at least one component")
    ring = polys[0].ring
    if ring.nvars != 3:
        raise SchemaError("components must be plane curves in x0, x1, x2")
    arr = Arrangement(ring.field, tuple(polys))
    if validate:
        validate_arrangement(arr)
    return arr


def validate_arrangement(arr: Arrangement) -> Arrangement:
    for k, f in enumerate(arr.components):
        if f.ring is not arr.ring:
            raise SchemaError("components over different rings")
        if not f or not f.is_homogeneous():
            raise SchemaError(f"component {k} is not a nonzero form")
        if f.degree() < 1:
            raise UnsupportedDegree(f"component {k} has degree {f.degree()}")
        if f.degree() == 2 and arr.field.characteristic == 2:
            raise UnsupportedField("conics over F_2 are not supported")
        if not is_smooth(f):
            raise SingularComponent(f"component {k} ({f}) is singular")
    for i, j in combinations(range(len(arr)), 2):
        if proportional(arr.components[i], arr.components[j]):
            raise DuplicateComponent(f"components {i} and {j} coincide")
    return arr


def parse_document(doc) -> Arrangement:
    if not isinstance(doc, dict) or set(doc) - {"field", "components", "name", "description"}:
        raise SchemaError("document must be an object with 'field' and 'components'")
    if "field" not in doc or "components" not in doc:
        raise SchemaError("missing 'field' or 'components'")
    try:
        field = field_from_descriptor(doc["field"])
    except (ParseError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad field descriptor: {exc}") from exc
    comps = doc["components"]
    if not isinstance(comps, list) or not comps:
        raise SchemaError("'components' must be a nonempty list")
    ring = plane_ring(field)
    polys = []
    for k, comp in enumerate(comps):
        if not isinstance(comp, dict) or set(comp) != {"degree", "terms"}:
            raise SchemaError(f"component {k} must have exactly 'degree' and 'terms'")
        d = comp["degree"]
        if not isinstance(d, int) or isinstance(d, bool):
            raise SchemaError(f"component {k}: degree must be an integer")
        if d < 1:
            raise UnsupportedDegree(f"component {k}: degree {d}")
        terms = comp["terms"]
        if not isinstance(terms, list) or not terms:
            raise SchemaError(f"component {k}: 'terms' must be a nonempty list")
        pairs = []
        for t in terms:
            if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], list) and len(t[0]) == 3):
                raise SchemaError(f"component {k}: malformed term {t!r}")
            exps, coeff = t
            if not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exps):
                raise SchemaError(f"component {k}: bad exponents {exps!r}")
            if sum(exps) != d:
                raise SchemaError(f"component {k}: exponents {exps} do not sum to degree {d}")
            if isinstance(coeff, bool) or not isinstance(coeff, (str, int)):
                raise SchemaError(f"component {k}: coefficient must be a string, got {coeff!r}")
            try:
                field.convert(coeff)
            except (ParseError, ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"component {k}: bad coefficient {coeff!r}") from exc
            pairs.append((exps, coeff))
        f = ring.from_terms(pairs)
        if not f:
            raise SchemaError(f"component {k} is the zero polynomial")
        polys.append(f)
    return make_arrangement(polys)


def parse_arrangement(document: str | bytes | dict) -> Arrangement:
    """Parse and validate an arrangement JSON document."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    return parse_document(document)


def load_arrangement(path) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read())


def arrangement_from_strings(field: Field, texts: Sequence[str], validate: bool = True) -> Arrangement:
    ring = plane_ring(field)
    return make_arrangement([ring.parse(t) for t in texts], validate=validate)


# -- normal crossings -------------------------------------------------------


def restrict_to_line(f: Poly, line: Poly) -> Poly:
    """``f`` pulled back along a parametrization ``[s:t] -> s P + t Q`` of the line."""
    field = f.ring.field
    coeffs = [line.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    basis = nullspace(field, [coeffs])
    P, Q = basis[1], basis[0]
    st = PolyRing(field, 2, ("s", "t"))
    s, t = st.gens()
    images = [s.scale(P[i]) + t.scale(Q[i]) for i in range(3)]
    return f.compose(images)


def binary_discriminant(q: Poly):
    a = q.coefficient((2, 0))
    b = q.coefficient((1, 1))
    c = q.coefficient((0, 2))
    v = b * b - 4 * a * c
    p = q.ring.field.characteristic
    return v % p if p else v


def _transverse(f: Poly, g: Poly) -> bool:
    gf, gg = f.gradient(), g.gradient()
    minors = []
    for i, j in combinations(range(3), 2):
        m = gf[i] * gg[j] - gf[j] * gg[i]
        if m:
            minors.append(m)
    return projectively_empty(buchberger([f, g] + minors))


def check_normal_crossings(arr: Arrangement) -> NormalCrossingsReport:
    """Smooth components, transverse pairs, no triple points (over the closure)."""
    comps = arr.components
    viol: list[Violation] = []
    if arr.field.characteristic == 2 and any(d == 2 for d in arr.degrees):
        raise UnsupportedField("normal crossings for conics is not decided over F_2")
    for k, f in enumerate(comps):
        if not is_smooth(f):
            viol.append(Violation("singular component", (k,)))
    for i, j in combinations(range(len(comps)), 2):
        f, g = comps[i], comps[j]
        if proportional(f, g):
            viol.append(Violation("coincident", (i, j)))
            continue
        di, dj = f.degree(), g.degree()
        if di == 1 and dj == 1:
            continue
        if di == 1 and dj == 2 or di == 2 and dj == 1:
            line, conic = (f, g) if di == 1 else (g, f)
            disc = binary_discriminant(restrict_to_line(conic, line))
            if not disc:
                viol.append(Violation("tangency", (i, j), "restricted quadratic has a double root"))
            continue
        if not _transverse(f, g):
            viol.append(Violation("tangency", (i, j), "gradients proportional at a common point"))
    for i, j, k in combinations(range(len(comps)), 3):
        f, g, h = comps[i], comps[j], comps[k]
        if f.degree() == g.degree() == h.degree() == 1:
            rows = [[c.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))] for c in (f, g, h)]
            empty = bool(det(arr.field, rows))
        else:
            empty = projectively_empty(buchberger([f, g, h]))
        if not empty:
            viol.append(Violation("triple point", (i, j, k)))
    return NormalCrossingsReport(tuple(viol))


def require_normal_crossings(arr: Arrangement) -> NormalCrossingsReport:
    report = check_normal_crossings(arr)
    if not report.ok:
        raise NormalCrossingsViolation("arrangement does not have normal crossings", report)
    return report


# -- Veronese ------------------------------------------------------------


def veronese_lift(f: Poly) -> VeroneseHyperplane:
    """Hyperplane of ``P_N`` cut by ``f`` under the degree-``d`` Veronese map."""
    d = f.homogeneous_degree()
    monos = f.ring.monomials_of_degree(d)
    zero = f.ring.field.zero
    return VeroneseHyperplane(d, tuple(f.terms.get(m, zero) for m in monos))


def veronese_point(ring: PolyRing, point: Sequence, d: int) -> list:
    field = ring.field
    p = field.characteristic
    out = []
    for m in ring.monomials_of_degree(d):
        v = field.one
        for x, e in zip(point, ring.exps(m)):
            v = v * field.convert(x) ** e
        out.append(v % p if p else v)
    return out


def veronese_dimension(n: int, d: int) -> int:
    return comb(n + d, d) - 1


# -- random generation ----------------------------------------------------


def _random_coeff(field: Field, rng: random.Random, height: int):
    if field.characteristic:
        return rng.randrange(field.characteristic)
    return field.convert(rng.randint(-height, height))


def random_form(ring: PolyRing, d: int, rng: random.Random, height: int = 9, density: float = 1.0) -> Poly:
    while True:
        terms = {}
        for m in ring.monomials_of_degree(d):
            if rng.random() <= density:
                c = _random_coeff(ring.field, rng, height)
                if c:
                    terms[m] = c
        if terms:
            return Poly(ring, terms)


def random_smooth_conic(ring: PolyRing, rng: random.Random, height: int = 9) -> Poly:
    while True:
        f = random_form(ring, 2, rng, height)
        if det(ring.field, conic_matrix(f)):
            return f


def random_arrangement(field: Field, degrees: Sequence[int], rng: random.Random, height: int = 9,
                       normal_crossings: bool = True, max_tries: int = 200) -> Arrangement:
    """Random arrangement with the given component degrees."""
    ring = plane_ring(field)
    for _ in range(max_tries):
        polys = [random_smooth_conic(ring, rng, height) if d == 2 else random_form(ring, d, rng, height)
                 for d in degrees]
        try:
            arr = make_arrangement(polys)
        except (SingularComponent, DuplicateComponent):
            continue
        if not normal_crossings or check_normal_crossings(arr).ok:
            return arr
    raise RuntimeError("could not sample a normal-crossings arrangement")
