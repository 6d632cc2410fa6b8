"""Hilbert series of monomial ideals, dimension/degree, quotient algebras."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotZeroDimensional
from ..exactalg.field import Field
from .groebner import GroebnerBasis, _Engine


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _minimalize(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def hilbert_numerator(gens: list[tuple[int, ...]], nvars: int) -> list[int]:
    """Numerator ``Q(t)`` with ``HS(R/I) = Q(t) / (1-t)^n`` for a monomial ideal."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    mixed = [g for g in gens if sum(1 for e in g if e) > 1]
    if not mixed:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _pmul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on a variable of the first mixed generator
    g = mixed[0]
    v = next(i for i, e in enumerate(g) if e)
    e = min(h[v] for h in gens if h[v]) if len(gens) > 1 else g[v]
    e = max(1, min(e, g[v]))
    pivot = tuple(e if i == v else 0 for i in range(nvars))
    plus = hilbert_numerator(gens + [pivot], nvars)
    colon = [tuple(max(0, a - b) for a, b in zip(h, pivot)) for h in gens]
    tail = hilbert_numerator(colon, nvars)
    shifted = [0] * e + tail
    return _trim(_padd(plus, shifted))


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def dim_degree_from_numerator(num: list[int], nvars: int) -> tuple[int, int]:
    """Split ``Q = (1-t)^(n-d) P`` with ``P(1) != 0``; return ``(d, P(1))``."""
    num = _trim(list(num))
    if num == [0]:
        return -1, 0
    k = 0
    while sum(num) == 0:
        # synthetic division by (1 - t): Q = (1-t) * P  <=>  P = prefix sums
        acc = 0
        quotient = []
        for c in num[:-1]:
            acc += c
            quotient.append(acc)
        num = quotient
        k += 1
    return nvars - k, sum(num)


def leading_exponents(gb: GroebnerBasis) -> list[tuple[int, ...]]:
    ring = gb.ring
    return [ring.exps(m & ring.ring_mask) for m in gb.leading_monomials()]


def hilbert_dim_degree(gb: GroebnerBasis) -> tuple[int, int]:
    """Krull dimension and degree of ``R/I``; ``(-1, 0)`` for the unit ideal."""
    n = gb.ring.nvars
    return dim_degree_from_numerator(hilbert_numerator(leading_exponents(gb), n), n)


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    lead = leading_exponents(gb)
    n = gb.ring.nvars
    if any(sum(e) == 0 for e in lead):
        return True
    return all(any(e[v] and sum(e) == e[v] for e in lead) for v in range(n))


def projectively_empty(gb: GroebnerBasis) -> bool:
    """For a homogeneous ideal: its projective zero set is empty."""
    return is_zero_dimensional(gb)


def standard_monomials(gb: GroebnerBasis) -> list[int]:
    """Monomials outside the leading-term ideal, ascending in the basis order."""
    if not is_zero_dimensional(gb):
        raise NotZeroDimensional("leading-term ideal has infinitely many standard monomials")
    ring = gb.ring
    lead = leading_exponents(gb)
    if any(sum(e) == 0 for e in lead):
        return []
    n = ring.nvars
    bounds = [min(e[v] for e in lead if e[v] and sum(e) == e[v]) for v in range(n)]
    out = []

    def rec(prefix):
        if len(prefix) == n:
            if not any(all(a <= b for a, b in zip(h, prefix)) for h in lead):
                out.append(ring.mono(prefix))
            return
        for e in range(bounds[len(prefix)]):
            rec(prefix + (e,))

    rec(())
    key = gb.key()
    out.sort(key=key)
    return out


@dataclass
class ZeroDimSystem:
    """Quotient algebra ``R/I`` of a zero-dimensional ideal."""

    gb: GroebnerBasis
    standard_monomials: list[int]
    companions: list[list[list]]

    @property
    def field(self) -> Field:
        return self.gb.ring.field

    @property
    def dimension(self) -> int:
        return len(self.standard_monomials)

    def basis_strings(self) -> list[str]:
        ring = self.gb.ring
        from ..exactalg.poly import Poly

        return [str(Poly(ring, {m: ring.field.one})) for m in self.standard_monomials]


def quotient_basis_and_companions(gb: GroebnerBasis) -> ZeroDimSystem:
    """Standard monomials and one multiplication matrix per variable.

    ``M_x[i][j]`` is the coefficient of basis element ``i`` in ``x * B_j``.
    """
    std = standard_monomials(gb)
    ring = gb.ring
    field = ring.field
    index = {m: i for i, m in enumerate(std)}
    eng = _Engine(ring, gb.order, module=False)
    eng.polys = [dict(e) for e in gb.elements]
    eng.lm = gb.leading_monomials()
    active = list(range(len(eng.polys)))
    n = len(std)
    comps = []
    for v in range(ring.nvars):
        xv = ring.var_mono(v)
        mat = [[field.zero] * n for _ in range(n)]
        for j, b in enumerate(std):
            prod = b + xv
            if prod in index:
                mat[index[prod]][j] = field.one
                continue
            r = eng.nf({prod: field.one}, active)
            for m, c in r.items():
                mat[index[m]][j] = c
        comps.append(mat)
    return ZeroDimSystem(gb, std, comps)
