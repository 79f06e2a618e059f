"""Exact 2-D polyhedral geometry over a normal affine semigroup.

A :class:`Semigroup2` is ``cone(ray1, ray2) ∩ Z^2``.  Internally every point is
mapped to *cone coordinates* ``(det(p, ray2), det(ray1, p))``; this integer
linear map sends the cone onto the closed positive quadrant, so divisibility
in the semigroup becomes the componentwise order and Newton regions become
ordinary staircase-bounded convex regions.  The image of ``Z^2`` is a
sublattice of index ``det(ray1, ray2)`` described by its Hermite normal form.

No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .errors import InputError, NotMPrimaryError

Point = tuple[int, int]


def _det(u: Point, v: Point) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _ceil(q: Fraction | int) -> int:
    if isinstance(q, int):
        return q
    return -((-q.numerator) // q.denominator)


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _as_point(p: Iterable[int]) -> Point:
    a, b = p
    if isinstance(a, bool) or isinstance(b, bool) or int(a) != a or int(b) != b:
        raise InputError(f"lattice point must have integer coordinates, got {p!r}")
    return (int(a), int(b))


@dataclass(frozen=True)
class Semigroup2:
    """The normal affine semigroup ``cone(ray1, ray2) ∩ Z^2``.

    Rays are reordered so that ``det(ray1, ray2) > 0``; two semigroups built
    from the same rays in either order compare equal.
    """

    ray1: Point
    ray2: Point
    grading: Optional[Point] = None
    det: int = field(init=False, repr=False, compare=False)
    _hnf: tuple[int, int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        r1, r2 = _as_point(self.ray1), _as_point(self.ray2)
        for r in (r1, r2):
            if r == (0, 0):
                raise InputError("ray must be nonzero")
            if gcd(*r) != 1:
                raise InputError(f"ray not primitive: {list(r)}")
        d = _det(r1, r2)
        if d == 0:
            raise InputError("rays are linearly dependent; cone is not strongly convex 2-dimensional")
        if d < 0:
            r1, r2, d = r2, r1, -d
        object.__setattr__(self, "ray1", r1)
        object.__setattr__(self, "ray2", r2)
        object.__setattr__(self, "det", d)
        n1 = (-r1[1], r1[0])
        n2 = (r2[1], -r2[0])
        if self.grading is None:
            w = (n1[0] + n2[0], n1[1] + n2[1])
            g = gcd(*w)
            w = (w[0] // g, w[1] // g)
        else:
            w = _as_point(self.grading)
        if w[0] * r1[0] + w[1] * r1[1] <= 0 or w[0] * r2[0] + w[1] * r2[1] <= 0:
            raise InputError("grading functional must be positive on both rays")
        object.__setattr__(self, "grading", w)
        object.__setattr__(self, "_hnf", _hermite(self.to_cone((1, 0)), self.to_cone((0, 1))))

    @classmethod
    def plane(cls) -> "Semigroup2":
        """The polynomial ring model ``N^2``."""
        return cls((1, 0), (0, 1))

    # -- coordinates -------------------------------------------------------

    def to_cone(self, p: Point) -> Point:
        """Cone coordinates of ``p``: both are ``>= 0`` iff ``p`` is in the cone."""
        return (_det(p, self.ray2), _det(self.ray1, p))

    def from_cone(self, q: Point) -> Point:
        x, y = q
        r1, r2, d = self.ray1, self.ray2, self.det
        a = x * r1[0] + y * r2[0]
        b = x * r1[1] + y * r2[1]
        if a % d or b % d:
            raise ValueError(f"{q} is not in the image lattice")
        return (a // d, b // d)

    def contains(self, p: Point) -> bool:
        x, y = self.to_cone(p)
        return x >= 0 and y >= 0

    def grade(self, p: Point) -> int:
        return self.grading[0] * p[0] + self.grading[1] * p[1]

    # -- column structure of the image lattice ----------------------------
    # The image lattice is {(x, y): d1 | x, y ≡ c*(x/d1) (mod d2)}.

    def column_residue(self, x: int) -> Optional[int]:
        d1, c, d2 = self._hnf
        if x % d1:
            return None
        return (c * (x // d1)) % d2

    @property
    def column_period(self) -> int:
        d1, _, d2 = self._hnf
        return d1 * d2

    @property
    def column_step(self) -> int:
        return self._hnf[0]

    def lowest_in_column(self, x: int, ymin: int) -> Optional[int]:
        """Smallest lattice ``y >= ymin`` in cone column ``x`` (None if the column is empty)."""
        t = self.column_residue(x)
        if t is None:
            return None
        d2 = self._hnf[2]
        return t + d2 * _ceil_div(ymin - t, d2)

    def count_in_column(self, x: int, height: int) -> int:
        """Number of lattice points ``(x, y)`` with ``0 <= y < height``."""
        t = self.column_residue(x)
        if t is None or height <= t:
            return 0
        return _ceil_div(height - t, self._hnf[2])

    def columns(self, start: int, stop: int) -> range:
        """Lattice columns ``x`` with ``start <= x < stop``."""
        step = self._hnf[0]
        return range(_ceil_div(start, step) * step, stop, step)

    def describe(self) -> dict:
        return {"rays": [list(self.ray1), list(self.ray2)], "grading": list(self.grading)}


def _hermite(v1: Point, v2: Point) -> tuple[int, int, int]:
    """Return ``(d1, c, d2)`` with the lattice spanned by v1, v2 equal to
    ``Z*(d1, c) + Z*(0, d2)``, ``d1, d2 > 0`` and ``0 <= c < d2``."""

    def egcd(a: int, b: int) -> tuple[int, int, int]:
        if b == 0:
            return (a, 1, 0) if a >= 0 else (-a, -1, 0)
        g, x, y = egcd(b, a % b)
        return g, y, x - (a // b) * y

    g, u, v = egcd(v1[0], v2[0])
    top = (g, u * v1[1] + v * v2[1])
    d2 = abs(((v2[0] // g) * v1[1] - (v1[0] // g) * v2[1]))
    return g, top[1] % d2, d2


def semigroup_contains(S: Semigroup2, p: Point) -> bool:
    """True iff ``p`` lies in the closed cone (boundary included)."""
    return S.contains(_as_point(p))


@dataclass(frozen=True)
class NewtonRegion:
    """``conv(vertices) + cone(ray1, ray2)``.

    ``vertices`` is the minimal vertex set, sorted lexicographically.  The
    boundary chain in cone coordinates (left to right, strictly descending)
    is kept in ``chain``.
    """

    semigroup: Semigroup2
    vertices: tuple[Point, ...]
    chain: tuple[Point, ...] = field(repr=False, compare=False)

    @property
    def recession_rays(self) -> tuple[Point, Point]:
        return (self.semigroup.ray1, self.semigroup.ray2)

    @property
    def is_m_primary(self) -> bool:
        return self.chain[0][0] == 0 and self.chain[-1][1] == 0

    def boundary(self, x: int) -> Fraction | int:
        """Lower boundary height of the region at cone column ``x >= chain[0].x``."""
        ch = self.chain
        if x >= ch[-1][0]:
            return ch[-1][1]
        for u, v in zip(ch, ch[1:]):
            if u[0] <= x <= v[0]:
                return u[1] + Fraction((x - u[0]) * (v[1] - u[1]), v[0] - u[0])
        raise ValueError(f"column {x} is left of the region")

    def contains(self, p: Point) -> bool:
        return region_contains(self, p)


def _chain_from_cone_points(pts: Iterable[Point]) -> tuple[Point, ...]:
    pts = sorted(set(pts))
    hull: list[Point] = []
    for q in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], q) <= 0:
            hull.pop()
        hull.append(q)
    # keep the strictly descending part: stop at the first vertex of minimal height
    ymin = min(q[1] for q in hull)
    out = []
    for q in hull:
        out.append(q)
        if q[1] == ymin:
            break
    return tuple(out)


def _region_from_cone_points(S: Semigroup2, pts: Iterable[Point]) -> NewtonRegion:
    chain = _chain_from_cone_points(pts)
    verts = tuple(sorted(S.from_cone(q) for q in chain))
    return NewtonRegion(S, verts, chain)


def newton_region(S: Semigroup2, gens: Iterable[Point]) -> NewtonRegion:
    """Newton region ``conv(gens) + cone`` with minimal vertex list."""
    gens = [_as_point(g) for g in gens]
    if not gens:
        raise InputError("Newton region needs at least one generator")
    bad = [g for g in gens if not S.contains(g)]
    if bad:
        raise InputError(f"generator(s) outside the semigroup: {[list(g) for g in bad]}")
    return _region_from_cone_points(S, (S.to_cone(g) for g in gens))


def region_contains(region: NewtonRegion, p: Point) -> bool:
    """Boundary-inclusive membership, decided in integer arithmetic."""
    x, y = region.semigroup.to_cone(_as_point(p))
    ch = region.chain
    if x < ch[0][0] or y < ch[-1][1]:
        return False
    return all(_cross(u, v, (x, y)) >= 0 for u, v in zip(ch, ch[1:]))


def region_scale_sum(regI: NewtonRegion, r: int, regJ: NewtonRegion, s: int) -> NewtonRegion:
    """Minkowski sum ``r*regI + s*regJ``."""
    if regI.semigroup != regJ.semigroup:
        raise InputError("regions live in different semigroups")
    if r < 0 or s < 0:
        raise InputError("scale factors must be nonnegative")
    if r == 0 and s == 0:
        raise InputError("r = s = 0 gives the whole ring, not a region")
    if s == 0:
        pts = [(r * u[0], r * u[1]) for u in regI.chain]
    elif r == 0:
        pts = [(s * v[0], s * v[1]) for v in regJ.chain]
    else:
        pts = [(r * u[0] + s * v[0], r * u[1] + s * v[1]) for u in regI.chain for v in regJ.chain]
    return _region_from_cone_points(regI.semigroup, pts)


def region_generators(region: NewtonRegion) -> tuple[Point, ...]:
    """Minimal generators (under semigroup divisibility) of the lattice points of a region."""
    S = region.semigroup
    ch = region.chain
    x0, xlast = ch[0][0], ch[-1][0]
    best = None
    out = []
    for x in S.columns(x0, xlast + S.column_period + 1):
        y = S.lowest_in_column(x, _ceil(region.boundary(x)))
        if best is None or y < best:
            best = y
            out.append(S.from_cone((x, y)))
    return tuple(sorted(out))


def _require_m_primary(region: NewtonRegion) -> None:
    if not region.is_m_primary:
        raise NotMPrimaryError("not m-primary: the region misses a ray of the cone, complement is infinite")


def enumerate_complement(S: Semigroup2, region: NewtonRegion) -> frozenset[Point]:
    """All semigroup points outside an m-primary region."""
    if region.semigroup != S:
        raise InputError("region belongs to a different semigroup")
    _require_m_primary(region)
    out = set()
    for x in S.columns(0, region.chain[-1][0]):
        top = _ceil(region.boundary(x))
        y = S.lowest_in_column(x, 0)
        while y < top:
            out.add(S.from_cone((x, y)))
            y += S._hnf[2]
    return frozenset(out)


def region_colength(region: NewtonRegion) -> int:
    """``|S \\ region|`` without materializing the points."""
    _require_m_primary(region)
    S = region.semigroup
    return sum(S.count_in_column(x, _ceil(region.boundary(x))) for x in S.columns(0, region.chain[-1][0]))
