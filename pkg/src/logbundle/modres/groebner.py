"""Buchberger's algorithm for ideals and for submodules of free modules.

Module elements are stored as dicts keyed by *module monomials*: a ring
monomial with the position index packed above the degree field. Ordering
is position-over-term, so the position is compared first.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from ..errors import ComputationBudgetExceeded, OrderMismatch
from ..exactalg.poly import Poly, PolyRing

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``grlex`` or ``lex``; modules always use position-over-term."""

    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "grlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, ring: PolyRing) -> Callable[[int], int]:
        if self.kind == "grlex":
            return _identity
        if self.kind == "lex":
            low = (1 << ring.deg_shift) - 1
            high = ~((1 << ring.pos_shift) - 1)
            return lambda m: (m & high) | (m & low)
        return ring.grevlex_key


def _identity(m: int) -> int:
    return m


GREVLEX = MonomialOrder("grevlex")
GRLEX = MonomialOrder("grlex")
LEX = MonomialOrder("lex")


@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis; ``rank`` is 0 for ideals.

    ``elements`` are raw term dicts (module monomials for modules); use
    :meth:`polys` or :meth:`vectors` for the public view.
    """

    ring: PolyRing
    order: MonomialOrder
    elements: list[dict]
    rank: int = 0
    twists: tuple[int, ...] = ()
    reduced: bool = True
    stats: dict = dc_field(default_factory=dict)

    @property
    def is_module(self) -> bool:
        return self.rank > 0

    @property
    def generators(self) -> list:
        return self.vectors() if self.is_module else self.polys()

    def polys(self) -> list[Poly]:
        return [Poly(self.ring, dict(e)) for e in self.elements]

    def vectors(self) -> list[list[Poly]]:
        return [dict_to_vector(self.ring, e, self.rank) for e in self.elements]

    def key(self):
        return self.order.key(self.ring)

    def leading_monomials(self) -> list[int]:
        key = self.key()
        return [max(e, key=key) for e in self.elements]

    def normal_form(self, f):
        return normal_form(f, self)

    def __len__(self):
        return len(self.elements)


def vector_to_dict(ring: PolyRing, vec: Sequence[Poly]) -> dict:
    out = {}
    shift = ring.pos_shift
    for pos, f in enumerate(vec):
        if f.ring is not ring:
            raise OrderMismatch("vector entries over a different ring")
        base = pos << shift
        for m, c in f.terms.items():
            out[base | m] = c
    return out


def dict_to_vector(ring: PolyRing, d: dict, rank: int) -> list[Poly]:
    parts: list[dict] = [dict() for _ in range(rank)]
    shift, mask = ring.pos_shift, ring.ring_mask
    for m, c in d.items():
        parts[m >> shift][m & mask] = c
    return [Poly(ring, t) for t in parts]


class _Engine:
    def __init__(self, ring: PolyRing, order: MonomialOrder, module: bool, twists: Sequence[int] = (),
                 budget: int | None = None):
        self.ring = ring
        self.order = order
        self.key = order.key(ring)
        self.module = module
        self.twists = tuple(twists)
        self.budget = DEFAULT_BUDGET if budget is None else budget
        self.p = ring.field.characteristic
        self.polys: list[dict] = []
        self.lm: list[int] = []
        self.reductions = 0

    # -- helpers ------------------------------------------------------------
    def degree(self, m: int) -> int:
        ring = self.ring
        d = (m >> ring.deg_shift) & 0xFFFF
        if self.module and self.twists:
            d += self.twists[m >> ring.pos_shift]
        return d

    def lead(self, f: dict) -> int:
        return max(f, key=self.key)

    def monic(self, f: dict) -> dict:
        lm = self.lead(f)
        c = f[lm]
        if c == 1:
            return f
        inv = self.ring.field.inv(c)
        if self.p:
            return {m: v * inv % self.p for m, v in f.items()}
        return {m: v * inv for m, v in f.items()}

    def nf(self, f: dict, active: Sequence[int], full: bool = True) -> dict:
        if not f or not active:
            return dict(f)
        key = self.key
        p = self.p
        divides = self.ring.divides
        leads = [(self.lm[i], self.polys[i]) for i in active]
        f = dict(f)
        heap = [(-key(m), m) for m in f]
        heapq.heapify(heap)
        rem: dict = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            for lm, g in leads:
                if divides(lm, m):
                    break
            else:
                rem[m] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            q = m - lm
            for mg, cg in g.items():
                if mg == lm:
                    continue
                t = mg + q
                old = f.get(t)
                if old is None:
                    v = -c * cg
                    if p:
                        v %= p
                    f[t] = v
                    heapq.heappush(heap, (-key(t), t))
                else:
                    v = old - c * cg
                    if p:
                        v %= p
                    if v:
                        f[t] = v
                    else:
                        del f[t]
        return rem

    def spoly(self, i: int, j: int, lcm: int) -> dict:
        p = self.p
        fi, fj = self.polys[i], self.polys[j]
        qi, qj = lcm - self.lm[i], lcm - self.lm[j]
        out = {m + qi: c for m, c in fi.items()}
        for m, c in fj.items():
            t = m + qj
            v = out.get(t, 0) - c
            if p:
                v %= p
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return out

    def lcm(self, a: int, b: int) -> int | None:
        shift = self.ring.pos_shift
        if a >> shift != b >> shift:
            return None
        return self.ring.lcm(a, b)

    def coprime(self, a: int, b: int) -> bool:
        return not self.module and self.ring.coprime(a, b)

    # -- Gebauer-Moeller update ---------------------------------------------
    def update(self, G: list[int], B: list[tuple], ih: int) -> tuple[list[int], list[tuple]]:
        divides = self.ring.divides
        mh = self.lm[ih]
        C = [ig for ig in G if self.lcm(mh, self.lm[ig]) is not None]
        D: list[int] = []
        lcms = {ig: self.lcm(mh, self.lm[ig]) for ig in C}
        while C:
            ig = C.pop(0)
            lhg = lcms[ig]
            if self.coprime(mh, self.lm[ig]):
                D.append(ig)
                continue
            if any(divides(lcms[ix], lhg) for ix in C) or any(divides(lcms[ix], lhg) for ix in D):
                continue
            D.append(ig)
        E = [ig for ig in D if not self.coprime(mh, self.lm[ig])]
        B_new = []
        for pair in B:
            _, _, i1, i2, l12 = pair
            if divides(mh, l12):
                l1 = self.lcm(self.lm[i1], mh)
                l2 = self.lcm(self.lm[i2], mh)
                if l1 != l12 and l2 != l12:
                    continue
            B_new.append(pair)
        for ig in E:
            lhg = lcms[ig]
            i, j = min(ig, ih), max(ig, ih)
            B_new.append((self.degree(lhg), self.key(lhg), i, j, lhg))
        G_new = [ig for ig in G if not divides(mh, self.lm[ig])]
        G_new.append(ih)
        return G_new, B_new

    def add(self, h: dict) -> int:
        h = self.monic(h)
        self.polys.append(h)
        self.lm.append(self.lead(h))
        return len(self.polys) - 1

    def run(self, gens: list[dict]) -> list[dict]:
        key = self.key
        gens = [self.monic(g) for g in gens if g]
        gens.sort(key=lambda g: (self.degree(self.lead(g)), key(self.lead(g))))
        G: list[int] = []
        B: list[tuple] = []
        for g in gens:
            h = self.nf(g, G)
            if h:
                ih = self.add(h)
                G, B = self.update(G, B, ih)
        while B:
            best = min(range(len(B)), key=lambda k: B[k][:4])
            _, _, i, j, lcm = B.pop(best)
            self.reductions += 1
            if self.reductions > self.budget:
                raise ComputationBudgetExceeded(
                    f"S-pair budget of {self.budget} reductions exhausted ({len(G)} basis elements)")
            h = self.nf(self.spoly(i, j, lcm), G)
            if h:
                ih = self.add(h)
                G, B = self.update(G, B, ih)
        return self.interreduce(G)

    def interreduce(self, G: list[int]) -> list[dict]:
        key = self.key
        divides = self.ring.divides
        G = [i for i in G if not any(j != i and divides(self.lm[j], self.lm[i]) and
                                     (self.lm[j] != self.lm[i] or j < i) for j in G)]
        G.sort(key=lambda i: key(self.lm[i]))
        out = []
        for i in G:
            others = [j for j in G if j != i]
            h = self.monic(self.nf(self.polys[i], others))
            out.append(h)
        return out


def _ideal_dicts(gens: Sequence[Poly]) -> tuple[PolyRing, list[dict]]:
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring is not ring:
            raise OrderMismatch("generators over different rings")
    return ring, [dict(g.terms) for g in gens]


def buchberger(gens: Sequence[Poly], order: MonomialOrder = GREVLEX, budget: int | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``."""
    ring, dicts = _ideal_dicts(gens)
    eng = _Engine(ring, order, module=False, budget=budget)
    elems = eng.run(dicts)
    return GroebnerBasis(ring, order, elems, stats={"reductions": eng.reductions})


def module_groebner(vectors: Sequence[Sequence[Poly]], rank: int, twists: Sequence[int] | None = None,
                    order: MonomialOrder = GREVLEX, budget: int | None = None,
                    ring: PolyRing | None = None) -> GroebnerBasis:
    """Gröbner basis of the submodule of ``R^rank`` spanned by ``vectors``."""
    if ring is None:
        ring = next(f.ring for v in vectors for f in v)
    twists = tuple(twists) if twists is not None else (0,) * rank
    dicts = [vector_to_dict(ring, v) for v in vectors]
    eng = _Engine(ring, order, module=True, twists=twists, budget=budget)
    elems = eng.run(dicts)
    return GroebnerBasis(ring, order, elems, rank=rank, twists=twists, stats={"reductions": eng.reductions})


def normal_form(f, gb: GroebnerBasis):
    """Remainder of ``f`` (a :class:`Poly` or a vector) on division by ``gb``."""
    ring = gb.ring
    eng = _Engine(ring, gb.order, module=gb.is_module, twists=gb.twists)
    eng.polys = [dict(e) for e in gb.elements]
    eng.lm = gb.leading_monomials()
    active = list(range(len(eng.polys)))
    if gb.is_module:
        vec = list(f)
        if len(vec) != gb.rank:
            raise OrderMismatch("vector length does not match module rank")
        return dict_to_vector(ring, eng.nf(vector_to_dict(ring, vec), active), gb.rank)
    if not isinstance(f, Poly) or f.ring is not ring:
        raise OrderMismatch("polynomial is not over the basis ring")
    return Poly(ring, eng.nf(dict(f.terms), active))


def reduces_to_zero(f, gb: GroebnerBasis) -> bool:
    r = normal_form(f, gb)
    if gb.is_module:
        return all(not x for x in r)
    return not r


def s_polynomial(gb: GroebnerBasis, i: int, j: int):
    """S-polynomial of basis elements ``i`` and ``j`` (``None`` across module positions)."""
    eng = _Engine(gb.ring, gb.order, module=gb.is_module, twists=gb.twists)
    eng.polys = [dict(e) for e in gb.elements]
    eng.lm = gb.leading_monomials()
    lcm = eng.lcm(eng.lm[i], eng.lm[j])
    if lcm is None:
        return None
    s = eng.spoly(i, j, lcm)
    if gb.is_module:
        return dict_to_vector(gb.ring, s, gb.rank)
    return Poly(gb.ring, s)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Exhaustive S-pair check (every S-polynomial reduces to zero)."""
    n = len(gb.elements)
    for i in range(n):
        for j in range(i + 1, n):
            s = s_polynomial(gb, i, j)
            if s is not None and not reduces_to_zero(s, gb):
                return False
    return True


def in_ideal(f: Poly, gb: GroebnerBasis) -> bool:
    return not normal_form(f, gb)
