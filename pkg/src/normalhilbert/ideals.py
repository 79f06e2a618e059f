"""Monomial ideals over a :class:`Semigroup2` and the normal filtration
``E(r, s) = closure(I^r J^s)``.

Ideals are stored by their minimal generators (an antichain under semigroup
divisibility), sorted lexicographically, so ``==`` is point-set equality.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError, NotMPrimaryError
from .lattice import (
    NewtonRegion,
    Point,
    Semigroup2,
    _as_point,
    newton_region,
    region_generators,
    region_scale_sum,
)


def _minimize(S: Semigroup2, pts: Iterable[Point]) -> tuple[Point, ...]:
    cone = sorted({S.to_cone(p) for p in pts})
    out = []
    ymin = None
    for q in cone:
        if ymin is None or q[1] < ymin:
            ymin = q[1]
            out.append(S.from_cone(q))
    return tuple(sorted(out))


@dataclass(frozen=True)
class MonomialIdeal:
    semigroup: Semigroup2
    gens: tuple[Point, ...]

    @classmethod
    def from_generators(cls, S: Semigroup2, gens: Iterable[Iterable[int]]) -> "MonomialIdeal":
        pts = [_as_point(g) for g in gens]
        if not pts:
            raise InputError("an ideal needs at least one generator (the zero ideal is not supported)")
        bad = [g for g in pts if not S.contains(g)]
        if bad:
            raise InputError(f"generator(s) outside the semigroup: {[list(g) for g in bad]}")
        return cls(S, _minimize(S, pts))

    @classmethod
    def unit(cls, S: Semigroup2) -> "MonomialIdeal":
        return cls(S, ((0, 0),))

    def __contains__(self, p: Point) -> bool:
        S = self.semigroup
        x, y = S.to_cone(p)
        for g in self.gens:
            gx, gy = S.to_cone(g)
            if gx <= x and gy <= y:
                return True
        return False

    def is_unit(self) -> bool:
        return self.gens == ((0, 0),)

    @property
    def is_m_primary(self) -> bool:
        cone = [self.semigroup.to_cone(g) for g in self.gens]
        return any(x == 0 for x, _ in cone) and any(y == 0 for _, y in cone)

    def region(self) -> NewtonRegion:
        return newton_region(self.semigroup, self.gens)

    def __repr__(self) -> str:
        return f"MonomialIdeal({list(map(list, self.gens))})"


def _same(K: MonomialIdeal, L: MonomialIdeal) -> Semigroup2:
    if K.semigroup != L.semigroup:
        raise InputError("ideals live in different semigroups")
    return K.semigroup


def closure(K: MonomialIdeal) -> MonomialIdeal:
    """Integral closure: the lattice points of the Newton region of ``K``."""
    if K.is_unit():
        return K
    return MonomialIdeal(K.semigroup, region_generators(K.region()))


def ideal_product(K: MonomialIdeal, L: MonomialIdeal) -> MonomialIdeal:
    S = _same(K, L)
    return MonomialIdeal(S, _minimize(S, ((a[0] + b[0], a[1] + b[1]) for a in K.gens for b in L.gens)))


def ideal_power(K: MonomialIdeal, n: int) -> MonomialIdeal:
    out = MonomialIdeal.unit(K.semigroup)
    for _ in range(n):
        out = ideal_product(out, K)
    return out


def ideal_sum(K: MonomialIdeal, L: MonomialIdeal) -> MonomialIdeal:
    S = _same(K, L)
    return MonomialIdeal(S, _minimize(S, K.gens + L.gens))


def ideal_translate(a: Point, K: MonomialIdeal) -> MonomialIdeal:
    """The ideal ``x^a * K``."""
    if not K.semigroup.contains(a):
        raise InputError(f"{a} is not in the semigroup")
    return MonomialIdeal(K.semigroup, tuple(sorted((a[0] + g[0], a[1] + g[1]) for g in K.gens)))


def ideal_colon_monomial(K: MonomialIdeal, a: Point) -> MonomialIdeal:
    """``K : x^a = {p in S : p + a in K}``."""
    S = K.semigroup
    if not S.contains(a):
        raise InputError(f"{a} is not in the semigroup")
    ax, ay = S.to_cone(a)
    pts = []
    for g in K.gens:
        gx, gy = S.to_cone(g)
        cx, cy = max(gx - ax, 0), max(gy - ay, 0)
        # lattice points of the translated quadrant (cx, cy) + Q
        best = None
        for x in S.columns(cx, cx + S.column_period + 1):
            y = S.lowest_in_column(x, cy)
            if best is None or y < best:
                best = y
                pts.append(S.from_cone((x, y)))
    return MonomialIdeal(S, _minimize(S, pts))


def colength(K: MonomialIdeal) -> int:
    """``lambda(R/K)``: number of semigroup points outside ``K``."""
    if K.is_unit():
        return 0
    if not K.is_m_primary:
        raise NotMPrimaryError(f"not m-primary: {K!r} misses a ray of the cone")
    S = K.semigroup
    cone = sorted(S.to_cone(g) for g in K.gens)
    xend = min(x for x, y in cone if y == 0)
    total = 0
    i = 0
    height = None
    for x in S.columns(0, xend):
        while i < len(cone) and cone[i][0] <= x:
            height = cone[i][1] if height is None else min(height, cone[i][1])
            i += 1
        total += S.count_in_column(x, height)
    return total


def ideal_from_pair(S: Semigroup2, a: Point, b: Point) -> MonomialIdeal:
    return MonomialIdeal.from_generators(S, [a, b])


class NormalFiltration:
    """Memoized ``(r, s) -> closure(I^r J^s)`` with ``E(r, s) = E(max(r,0), max(s,0))``.

    Construction fails fast unless both ideals are m-primary.  Cell fills are
    deterministic, so a racing duplicate computation stores an identical value.
    """

    def __init__(self, I: MonomialIdeal, J: MonomialIdeal):
        S = _same(I, J)
        for name, K in (("I", I), ("J", J)):
            if K.is_unit():
                raise InputError(f"{name} is the unit ideal")
            if not K.is_m_primary:
                raise NotMPrimaryError(f"not m-primary: {name} = {K!r}")
        self.semigroup = S
        self.I = I
        self.J = J
        self.I_bar = closure(I)
        self.J_bar = closure(J)
        self._regI = I.region()
        self._regJ = J.region()
        self._cache: dict[tuple[int, int], MonomialIdeal] = {}
        self._lock = threading.Lock()

    def __call__(self, r: int, s: int) -> MonomialIdeal:
        return self.at(r, s)

    def at(self, r: int, s: int) -> MonomialIdeal:
        key = (max(r, 0), max(s, 0))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if key == (0, 0):
            val = MonomialIdeal.unit(self.semigroup)
        else:
            reg = region_scale_sum(self._regI, key[0], self._regJ, key[1])
            val = MonomialIdeal(self.semigroup, region_generators(reg))
        with self._lock:
            self._cache.setdefault(key, val)
        return val

    def seed(self, cells: dict[tuple[int, int], Iterable[Point]]) -> None:
        """Preload cells (e.g. from a persisted cache)."""
        with self._lock:
            for key, gens in cells.items():
                self._cache.setdefault(key, MonomialIdeal(self.semigroup, tuple(sorted(map(tuple, gens)))))

    def cached_cells(self) -> dict[tuple[int, int], MonomialIdeal]:
        with self._lock:
            return dict(self._cache)

    def colength(self, r: int, s: int) -> int:
        return colength(self.at(r, s))


def filtration_at(F: NormalFiltration, r: int, s: int) -> MonomialIdeal:
    return F.at(r, s)
