"""Exact coefficient fields: the rationals (via gmpy2) and prime fields.

Polynomial code works with *raw* coefficient values for speed: ``mpq``
for the rationals and plain ``int`` residues in ``[0, p)`` for ``F_p``.
:class:`FieldElement` wraps a raw value together with its field for the
public, checked API.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

import gmpy2
from gmpy2 import mpq

from ..errors import DescriptorMismatch, DivisionByZero, ParseError


class Field:
    """Common interface of :data:`QQ` and :class:`PrimeField`."""

    characteristic: int

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.convert(value))

    # raw-value helpers --------------------------------------------------
    def convert(self, value):
        raise NotImplementedError

    def reduce(self, value):
        raise NotImplementedError

    def inv(self, value):
        raise NotImplementedError

    def to_str(self, value) -> str:
        raise NotImplementedError

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def descriptor(self):
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def convert(self, value):
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise DescriptorMismatch(f"{value.field!r} element given to {self!r}")
            return value.value
        if isinstance(value, str):
            try:
                return mpq(value.strip().replace(" ", ""))
            except ValueError as exc:
                raise ParseError(f"not a rational number: {value!r}") from exc
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass a string or Fraction")
        return mpq(value)

    def reduce(self, value):
        return value

    def inv(self, value):
        if not value:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / value

    def to_str(self, value) -> str:
        return str(mpq(value))

    def descriptor(self):
        return "Q"

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (RationalField, ())


QQ = RationalField()


def _is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p, 50))


class PrimeField(Field):
    """``F_p``; instances are cached, so fields compare by identity."""

    _cache: dict[int, "PrimeField"] = {}

    def __new__(cls, p: int):
        p = int(p)
        field = cls._cache.get(p)
        if field is None:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            field = super().__new__(cls)
            field.p = p
            field.characteristic = p
            cls._cache[p] = field
        return field

    def __reduce__(self):
        return (PrimeField, (self.p,))

    def convert(self, value):
        p = self.p
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise DescriptorMismatch(f"{value.field!r} element given to {self!r}")
            return value.value
        if isinstance(value, str):
            text = value.strip().replace(" ", "")
            try:
                if "/" in text:
                    num, den = text.split("/")
                    return int(num) * self.inv(int(den) % p) % p
                return int(text) % p
            except ValueError as exc:
                raise ParseError(f"not an element of F_{p}: {value!r}") from exc
        if isinstance(value, (Fraction, type(mpq()))):
            return int(value.numerator) * self.inv(int(value.denominator) % p) % p
        return int(value) % p

    def reduce(self, value):
        return value % self.p

    def inv(self, value):
        value %= self.p
        if not value:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return pow(value, -1, self.p)

    def to_str(self, value) -> str:
        return str(int(value) % self.p)

    def descriptor(self):
        return {"Fp": self.p}

    def __repr__(self):
        return f"GF({self.p})"


def field_from_descriptor(desc) -> Field:
    """Inverse of :meth:`Field.descriptor` (``"Q"`` or ``{"Fp": p}``)."""
    if desc in ("Q", "QQ"):
        return QQ
    if isinstance(desc, dict) and set(desc) == {"Fp"}:
        return PrimeField(desc["Fp"])
    if isinstance(desc, str) and desc.upper().startswith(("F", "GF")):
        digits = desc.upper().lstrip("GF_P()").rstrip(")")
        return PrimeField(int(digits))
    raise ParseError(f"unknown field descriptor {desc!r}")


@total_ordering
class FieldElement:
    """An element of an exact field in canonical form.

    Canonical form is a reduced fraction with positive denominator over
    ``QQ`` and the least non-negative residue over ``F_p``.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = field.reduce(value)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise DescriptorMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldElement(self.field, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.value - self._other(other))

    def __rsub__(self, other):
        return FieldElement(self.field, self._other(other) - self.value)

    def __mul__(self, other):
        return FieldElement(self.field, self.value * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, -self.value)

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * FieldElement(self.field, self.field.inv(self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self._other(other)) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        if self.field.characteristic:
            return FieldElement(self.field, pow(self.value, k, self.field.p))
        return FieldElement(self.field, self.value**k)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        try:
            return self.value == self.field.convert(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        # exists only so elements sort deterministically
        return self.value < self._other(other)

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.to_str(self.value)

    def __repr__(self):
        return f"{self.field!r}({self})"


def field_arithmetic(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch ``op`` in ``{"add", "mul", "inv", "neg"}`` on field elements."""
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if a.field is not b.field:
        raise DescriptorMismatch(f"{a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")
