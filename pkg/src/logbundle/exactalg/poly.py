"""Sparse multivariate polynomials over an exact field.

Monomials are packed into Python ints: ``W``-bit fields holding the total
degree followed by ``e_0, ..., e_{n-1}``. With this layout

* multiplying monomials is integer addition,
* integer comparison is the graded-lex order with ``x0 > x1 > ...``,
* divisibility is a single guard-bit test.

A :class:`Poly` is a dict from packed monomials to nonzero raw field
values (see :mod:`.field`). Homogeneous forms are ordinary polys whose
terms share one degree; the zero polynomial carries no degree of its
own, graded containers record it instead.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from ..errors import DescriptorMismatch, IndexOutOfRange, NotHomogeneous, ParseError
from .field import QQ, Field, FieldElement

W = 16
_FIELD_MASK = (1 << W) - 1
_MAX_EXP = (1 << (W - 1)) - 1


class PolyRing:
    """``k[x_0, ..., x_{n-1}]`` with a fixed monomial packing.

    Rings are interned on ``(field, nvars, names)`` so identity comparison
    is enough to check that two polynomials are compatible.
    """

    _cache: dict = {}

    def __new__(cls, field: Field, nvars: int, names: Sequence[str] | None = None):
        if names is None:
            names = tuple(f"x{i}" for i in range(nvars))
        names = tuple(names)
        if len(names) != nvars:
            raise ValueError("one name per variable")
        key = (id(field), nvars, names)
        ring = cls._cache.get(key)
        if ring is not None:
            return ring
        ring = super().__new__(cls)
        ring.field = field
        ring.nvars = nvars
        ring.names = names
        ring.deg_shift = W * nvars
        ring.pos_shift = W * (nvars + 1)
        ring.guard = sum(1 << (W * k + W - 1) for k in range(nvars + 1))
        ring.ring_mask = (1 << ring.pos_shift) - 1
        ring._unit = [1 << (W * (nvars - 1 - i)) | (1 << ring.deg_shift) for i in range(nvars)]
        ring._grevlex: dict[int, int] = {}
        cls._cache[key] = ring
        return ring

    def __reduce__(self):
        return (PolyRing, (self.field, self.nvars, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {', '.join(self.names)})"

    # -- monomials ---------------------------------------------------------
    def mono(self, exps: Sequence[int]) -> int:
        n = self.nvars
        if len(exps) != n:
            raise ValueError(f"expected {n} exponents, got {len(exps)}")
        m = 0
        for e in exps:
            if e < 0 or e > _MAX_EXP:
                raise ValueError(f"exponent {e} out of range")
            m = (m << W) | e
        return (sum(exps) << self.deg_shift) | m

    def exps(self, m: int) -> tuple[int, ...]:
        n = self.nvars
        out = [0] * n
        for k in range(n - 1, -1, -1):
            out[k] = m & _FIELD_MASK
            m >>= W
        return tuple(out)

    def mdeg(self, m: int) -> int:
        return (m >> self.deg_shift) & _FIELD_MASK

    def divides(self, a: int, b: int) -> bool:
        """Whether monomial ``a`` divides ``b`` (module positions must agree)."""
        g = self.guard
        return (a >> self.pos_shift) == (b >> self.pos_shift) and ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        pos = a >> self.pos_shift
        ea, eb = self.exps(a & self.ring_mask), self.exps(b & self.ring_mask)
        return (pos << self.pos_shift) | self.mono([max(x, y) for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.exps(a & self.ring_mask), self.exps(b & self.ring_mask)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))

    def var_mono(self, i: int) -> int:
        return self._unit[i]

    def grevlex_key(self, m: int) -> int:
        """Integer sort key realising graded reverse-lex (position on top)."""
        key = self._grevlex.get(m)
        if key is None:
            pos = m >> self.pos_shift
            e = self.exps(m & self.ring_mask)
            key = sum(e)
            for k in range(self.nvars - 1, 0, -1):
                key = (key << W) | (_FIELD_MASK - e[k])
            key |= pos << self.pos_shift
            self._grevlex[m] = key
        return key

    def monomials_of_degree(self, d: int) -> list[int]:
        """All degree-``d`` monomials, graded-lex descending."""
        out: list[tuple[int, ...]] = []

        def rec(prefix, left, slots):
            if slots == 1:
                out.append(prefix + (left,))
                return
            for e in range(left, -1, -1):
                rec(prefix + (e,), left - e, slots - 1)

        if self.nvars == 0:
            return [0] if d == 0 else []
        rec((), d, self.nvars)
        return [self.mono(e) for e in out]

    # -- constructors -----------------------------------------------------
    def gens(self) -> list["Poly"]:
        one = self.field.one
        return [Poly(self, {self._unit[i]: one}) for i in range(self.nvars)]

    def gen(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise IndexOutOfRange(f"variable index {i} out of range")
        return Poly(self, {self._unit[i]: self.field.one})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = self.field.convert(c)
        return Poly(self, {0: c} if c else {})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], object]] | Mapping) -> "Poly":
        """Build from ``(exponents, coefficient)`` pairs; coefficients converted."""
        if isinstance(terms, Mapping):
            terms = terms.items()
        conv = self.field.convert
        out: dict[int, object] = {}
        for exps, c in terms:
            m = self.mono(tuple(exps))
            out[m] = out.get(m, 0) + conv(c)
        red = self.field.reduce
        return Poly(self, {m: red(c) for m, c in out.items() if red(c)})

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(field, self.nvars, self.names)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[int, object] | None = None):
        self.ring = ring
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- basic queries ------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.terms) >> self.ring.deg_shift

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(self.terms) >> self.ring.deg_shift

    def is_homogeneous(self) -> bool:
        return self.degree() == self.min_degree()

    def homogeneous_degree(self) -> int:
        if not self.is_homogeneous():
            raise NotHomogeneous(f"{self} is not homogeneous")
        return self.degree()

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        return self.terms.get(0, self.ring.field.zero)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(self.ring.mono(tuple(exps)), self.ring.field.zero)

    def items(self):
        """``(exponents, raw coefficient)`` pairs, graded-lex descending."""
        ex = self.ring.exps
        return [(ex(m), self.terms[m]) for m in sorted(self.terms, reverse=True)]

    def leading(self, key=None) -> tuple[int, object]:
        """Leading ``(monomial, coefficient)`` under ``key`` (default graded-lex)."""
        m = max(self.terms, key=key) if key else max(self.terms)
        return m, self.terms[m]

    def _check(self, other: "Poly"):
        if other.ring is not self.ring:
            raise DescriptorMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.constant(other)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        res = dict(self.terms)
        p = self.ring.field.characteristic
        for m, c in other.terms.items():
            v = res.get(m, 0) + c
            if p:
                v %= p
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Poly(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Poly(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        """Multiply by a raw (already converted) field value."""
        if not c:
            return Poly(self.ring, {})
        p = self.ring.field.characteristic
        if p:
            return Poly(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: int, c) -> "Poly":
        if not c:
            return Poly(self.ring, {})
        p = self.ring.field.characteristic
        if p:
            return Poly(self.ring, {m + mono: v * c % p for m, v in self.terms.items()})
        return Poly(self.ring, {m + mono: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(self.ring.field.convert(other))
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        res: dict[int, object] = {}
        get = res.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = m1 + m2
                res[m] = get(m, 0) + c1 * c2
        p = self.ring.field.characteristic
        if p:
            return Poly(self.ring, {m: v % p for m, v in res.items() if v % p})
        return Poly(self.ring, {m: v for m, v in res.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self, key=None) -> "Poly":
        if not self.terms:
            return self
        _, lc = self.leading(key)
        return self.scale(self.ring.field.inv(lc))

    def divmod_exact(self, other: "Poly") -> "Poly":
        """Exact quotient ``self / other``; raises ``ArithmeticError`` if inexact."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        lm, lc = other.leading()
        inv = ring.field.inv(lc)
        rem = dict(self.terms)
        quo: dict[int, object] = {}
        p = ring.field.characteristic
        div = ring.divides
        oterms = list(other.terms.items())
        while rem:
            m = max(rem)
            if not div(lm, m):
                raise ArithmeticError("inexact polynomial division")
            q = m - lm
            c = rem[m] * inv
            if p:
                c %= p
            quo[q] = c
            for mo, co in oterms:
                t = mo + q
                v = rem.get(t, 0) - c * co
                if p:
                    v %= p
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Poly(ring, quo)

    # -- calculus & evaluation ---------------------------------------------
    def derivative(self, i: int) -> "Poly":
        ring = self.ring
        if not 0 <= i < ring.nvars:
            raise IndexOutOfRange(f"variable index {i} out of range for {ring.nvars} vars")
        shift = W * (ring.nvars - 1 - i)
        unit = ring._unit[i]
        p = ring.field.characteristic
        res = {}
        for m, c in self.terms.items():
            e = (m >> shift) & _FIELD_MASK
            if e:
                v = c * e
                if p:
                    v %= p
                if v:
                    res[m - unit] = v
        return Poly(ring, res)

    def gradient(self) -> list["Poly"]:
        return [self.derivative(i) for i in range(self.ring.nvars)]

    def evaluate(self, point: Sequence):
        """Exact value at ``point`` (raw values, ``FieldElement`` or ints).

        Returns a :class:`FieldElement`.
        """
        ring = self.ring
        if len(point) != ring.nvars:
            raise ValueError(f"point needs {ring.nvars} coordinates")
        conv = ring.field.convert
        pt = [conv(v) for v in point]
        return FieldElement(ring.field, self.evaluate_raw(pt))

    def evaluate_raw(self, pt: Sequence):
        ring = self.ring
        p = ring.field.characteristic
        powers: list[dict[int, object]] = [dict() for _ in pt]
        total = 0
        ex = ring.exps
        for m, c in self.terms.items():
            v = c
            for k, e in enumerate(ex(m)):
                if e:
                    cache = powers[k]
                    pw = cache.get(e)
                    if pw is None:
                        pw = pow(pt[k], e, p) if p else pt[k] ** e
                        cache[e] = pw
                    v = v * pw
            total = total + v
        if p:
            total %= p
        return total

    def evaluate_generic(self, pt: Sequence):
        """Evaluate at arbitrary numeric values (floats, mpmath, complex)."""
        ex = self.ring.exps
        total = 0
        for m, c in self.terms.items():
            v = _to_number(c)
            for k, e in enumerate(ex(m)):
                if e:
                    v = v * pt[k] ** e
            total = total + v
        return total

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute ``x_i -> images[i]`` (images may live in another ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable")
        target = images[0].ring if images else self.ring
        conv = target.field.convert
        pcache: list[dict[int, Poly]] = [dict() for _ in images]
        result = target.zero()
        ex = self.ring.exps
        for m, c in self.terms.items():
            term = target.constant(conv(int(c)) if self.ring.field.characteristic else conv(c))
            for k, e in enumerate(ex(m)):
                if e:
                    pw = pcache[k].get(e)
                    if pw is None:
                        pw = images[k] ** e
                        pcache[k][e] = pw
                    term = term * pw
            result = result + term
        return result

    def linear_substitution(self, matrix: Sequence[Sequence]) -> "Poly":
        """``f(T x)`` for a square matrix ``T`` of field values."""
        ring = self.ring
        xs = ring.gens()
        conv = ring.field.convert
        images = []
        for row in matrix:
            img = ring.zero()
            for j, a in enumerate(row):
                a = conv(a)
                if a:
                    img = img + xs[j].scale(a)
            images.append(img)
        return self.compose(images)

    def change_ring(self, ring: PolyRing) -> "Poly":
        """Reinterpret coefficients in a ring with the same number of variables."""
        if ring.nvars != self.ring.nvars:
            raise ValueError("rings differ in number of variables")
        conv = ring.field.convert
        red = ring.field.reduce
        src_char = self.ring.field.characteristic
        out = {}
        for m, c in self.terms.items():
            v = red(conv(int(c) if src_char else c))
            if v:
                out[m] = v
        return Poly(ring, out)

    # -- comparison & printing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.ring), frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def to_json_terms(self) -> list:
        """``[[exponents], "coeff"]`` pairs in canonical order."""
        to_str = self.ring.field.to_str
        return [[list(e), to_str(c)] for e, c in self.items()]


def _to_number(c):
    if isinstance(c, int):
        return c
    try:
        return int(c) if c.denominator == 1 else c.numerator / c.denominator
    except AttributeError:
        return c


def _format_mono(names, exps) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Canonical text: graded-lex descending, exact coefficients."""
    if not f.terms:
        return "0"
    ring = f.ring
    rational = ring.field.characteristic == 0
    pieces = []
    for exps, c in f.items():
        mono = _format_mono(ring.names, exps)
        neg = rational and c < 0
        mag = -c if neg else c
        cs = ring.field.to_str(mag)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive descent over ``+ - * / ^`` with integer literals."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character at {pos} in {text!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("var", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0
        self.index = {n: k for k, n in enumerate(ring.names)}

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty polynomial")
        out = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return out

    def expr(self):
        result = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.factor()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                result = result * self.factor()
            elif tok == ("op", "/"):
                self.take()
                kind, val = self.take()
                if kind != "num":
                    raise ParseError("only numeric division is supported")
                result = result * self.ring.field.inv(self.ring.field.convert(val))
            else:
                return result

    def factor(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.factor()
        if tok == ("op", "+"):
            self.take()
            return self.factor()
        base = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            base = base**val
        return base

    def base(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "var":
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}")
            return self.ring.gen(self.index[val])
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def partial_derivative(f: Poly, i: int) -> Poly:
    return f.derivative(i)


def evaluate_hom(f: Poly, point: Sequence) -> FieldElement:
    for v in point:
        if isinstance(v, FieldElement) and v.field is not f.field:
            raise DescriptorMismatch(f"point over {v.field!r}, polynomial over {f.field!r}")
    return f.evaluate(point)


def plane_ring(field: Field = QQ) -> PolyRing:
    """``k[x0, x1, x2]``, the coordinate ring of the projective plane."""
    return PolyRing(field, 3)
