"""Truncated power series in one class ``h`` with integer coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .modres.linalg import det_bareiss_int


@dataclass(frozen=True)
class ChernSeries:
    coeffs: tuple[int, ...]
    order: int

    def __post_init__(self):
        c = tuple(int(v) for v in self.coeffs[: self.order + 1])
        c = c + (0,) * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def one(cls, order: int) -> "ChernSeries":
        return cls((1,), order)

    @classmethod
    def line_bundle(cls, twist: int, order: int) -> "ChernSeries":
        """``c(O(twist)) = 1 + twist * h``."""
        return cls((1, twist), order)

    @classmethod
    def split(cls, twists: Iterable[int], order: int) -> "ChernSeries":
        out = cls.one(order)
        for t in twists:
            out = out * cls.line_bundle(t, order)
        return out

    @classmethod
    def cotangent_projective(cls, n: int, order: int) -> "ChernSeries":
        """``c(Ω^1_{P^n}) = (1 - h)^(n+1)`` from the Euler sequence."""
        return cls.split([-1] * (n + 1), order)

    def __getitem__(self, k: int) -> int:
        if k < 0 or k > self.order:
            return 0
        return self.coeffs[k]

    def _check(self, other: "ChernSeries"):
        if other.order != self.order:
            raise ValueError("truncation orders differ")

    def __mul__(self, other: "ChernSeries") -> "ChernSeries":
        self._check(other)
        n = self.order
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return ChernSeries(tuple(out), n)

    def __pow__(self, k: int) -> "ChernSeries":
        out = ChernSeries.one(self.order)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> "ChernSeries":
        if self.coeffs[0] != 1:
            raise ValueError("only series with constant term 1 are inverted")
        n = self.order
        inv = [1] + [0] * n
        for k in range(1, n + 1):
            inv[k] = -sum(self.coeffs[j] * inv[k - j] for j in range(1, k + 1))
        return ChernSeries(tuple(inv), n)

    def __truediv__(self, other: "ChernSeries") -> "ChernSeries":
        self._check(other)
        return self * other.inverse()


def banded_determinant(series: ChernSeries, size: int) -> int:
    """``det [c_{1-i+j}]_{1 <= i, j <= size}`` (sub-diagonal ones, zeros below)."""
    mat = [[series[1 - i + j] for j in range(1, size + 1)] for i in range(1, size + 1)]
    return det_bareiss_int(mat)
