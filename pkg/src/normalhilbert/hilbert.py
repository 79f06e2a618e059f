"""Normal Hilbert tables and exact fitting of their polynomials.

The bivariate polynomial is written in the binomial basis

    P(r, s) =  e20*C(r+1,2) + e11*r*s + e02*C(s+1,2) - e10*r - e01*s + e00

and the single-ideal polynomial as ``P(n) = e0*C(n+1,2) - e1*n + e2``.
Binomials are evaluated as polynomials, so both are defined at ``0``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .errors import InputError, InvariantViolation, StabilizationError
from .ideals import NormalFiltration, colength, ideal_from_pair

Cell = tuple[int, int]

DEFAULT_BASE = 2
DEFAULT_WINDOW = 3


def binom2(n: int) -> int:
    """``C(n+1, 2)`` as a polynomial in ``n``."""
    return n * (n + 1) // 2


@dataclass(frozen=True)
class HilbertTable:
    source: str  # "computed" | "ingested"
    values: Mapping[Cell, int]
    rmax: int
    smax: int

    def __post_init__(self) -> None:
        missing = [(r, s) for r in range(self.rmax + 1) for s in range(self.smax + 1) if (r, s) not in self.values]
        if missing:
            raise InputError(f"table is not rectangular: missing cells {missing[:5]}{'...' if len(missing) > 5 else ''}")
        if self.values[(0, 0)] != 0:
            raise InputError(f"H(0,0) must be 0, got {self.values[(0, 0)]}")
        errs = []
        for (r, s), v in sorted(self.values.items()):
            if v < 0:
                errs.append(f"negative length at ({r},{s})")
            if r > 0 and v < self.values[(r - 1, s)]:
                errs.append(f"H({r},{s})={v} < H({r - 1},{s})={self.values[(r - 1, s)]}")
            if s > 0 and v < self.values[(r, s - 1)]:
                errs.append(f"H({r},{s})={v} < H({r},{s - 1})={self.values[(r, s - 1)]}")
        if errs:
            raise InputError("table is not monotone: " + "; ".join(errs[:5]))

    def __getitem__(self, cell: Cell) -> int:
        r, s = cell
        if r > self.rmax or s > self.smax:
            raise StabilizationError(f"cell ({r},{s}) outside the table grid [0,{self.rmax}]x[0,{self.smax}]")
        return self.values[(max(r, 0), max(s, 0))]

    def axis(self, which: str) -> list[int]:
        if which == "I":
            return [self.values[(n, 0)] for n in range(self.rmax + 1)]
        if which == "J":
            return [self.values[(0, n)] for n in range(self.smax + 1)]
        raise ValueError(f"axis must be 'I' or 'J', not {which!r}")

    def diagonal(self) -> list[int]:
        return [self.values[(n, n)] for n in range(min(self.rmax, self.smax) + 1)]

    def cells(self) -> list[Cell]:
        return [(r, s) for r in range(self.rmax + 1) for s in range(self.smax + 1)]


def hilbert_table(F: NormalFiltration, rmax: int, smax: int) -> HilbertTable:
    """``H(r, s) = lambda(R / E(r, s))`` on ``[0, rmax] x [0, smax]``."""
    if rmax < 0 or smax < 0:
        raise InputError("grid bounds must be nonnegative")
    values = {(r, s): F.colength(r, s) for r in range(rmax + 1) for s in range(smax + 1)}
    return HilbertTable("computed", values, rmax, smax)


def table_from_function(f, rmax: int, smax: int, source: str = "ingested") -> HilbertTable:
    return HilbertTable(source, {(r, s): f(r, s) for r in range(rmax + 1) for s in range(smax + 1)}, rmax, smax)


def _parse_int(text, where: str) -> int:
    try:
        v = int(str(text).strip())
    except ValueError:
        raise InputError(f"{where}: {text!r} is not an integer") from None
    return v


def _table_from_rows(rows: Sequence[tuple[int, int, int]], origin: str) -> HilbertTable:
    values: dict[Cell, int] = {}
    for r, s, v in rows:
        if r < 0 or s < 0:
            raise InputError(f"{origin}: negative index ({r},{s})")
        if (r, s) in values:
            raise InputError(f"{origin}: duplicate cell ({r},{s})")
        values[(r, s)] = v
    if not values:
        raise InputError(f"{origin}: empty table")
    rmax = max(r for r, _ in values)
    smax = max(s for _, s in values)
    return HilbertTable("ingested", values, rmax, smax)


def ingest_table(path: str | Path) -> HilbertTable:
    """Read a Hilbert table from CSV (header ``r,s,length``) or JSON.

    The JSON form is ``{"values": [[r, s, length], ...]}`` (optionally with
    ``source``/``rmax``/``smax`` keys, which are checked when present).
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read table {path}: {exc}") from None
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: malformed JSON: {exc}") from None
        if not isinstance(data, dict) or not isinstance(data.get("values"), list):
            raise InputError(f"{path}: expected an object with a 'values' list")
        rows = []
        for i, row in enumerate(data["values"]):
            if isinstance(row, dict):
                row = [row.get("r"), row.get("s"), row.get("length")]
            if not isinstance(row, list) or len(row) != 3:
                raise InputError(f"{path}: row {i} must be [r, s, length]")
            rows.append(tuple(_parse_int(x, f"{path} row {i}") for x in row))
        table = _table_from_rows(rows, str(path))
        for key, have in (("rmax", table.rmax), ("smax", table.smax)):
            if key in data and data[key] != have:
                raise InputError(f"{path}: declared {key}={data[key]} but cells reach {have}")
        return table
    reader = csv.reader(text.splitlines())
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["r", "s", "length"]:
        raise InputError(f"{path}: CSV header must be 'r,s,length', got {header}")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not x.strip() for x in row):
            continue
        if len(row) != 3:
            raise InputError(f"{path}:{lineno}: expected 3 fields")
        rows.append(tuple(_parse_int(x, f"{path}:{lineno}") for x in row))
    return _table_from_rows(rows, str(path))


# -- exact linear algebra -----------------------------------------------------


def solve_exact(A: list[list[int | Fraction]], b: list[int | Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals; raises on a singular system."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            raise InvariantViolation("singular fitting system")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return [M[i][n] for i in range(n)]


# -- bivariate fit --------------------------------------------------------------


def _basis(r: int, s: int) -> list[int]:
    # order: e20, e11, e02, e10, e01, e00
    return [binom2(r), r * s, binom2(s), -r, -s, 1]


@dataclass(frozen=True)
class BhattacharyaPoly:
    e20: int
    e11: int
    e02: int
    e10: int
    e01: int
    e00: int
    frontier: frozenset = field(default=frozenset(), compare=False)
    base: int = field(default=DEFAULT_BASE, compare=False)
    window: int = field(default=DEFAULT_WINDOW, compare=False)

    def __call__(self, r: int, s: int) -> int:
        return sum(c * b for c, b in zip(self.coefficients, _basis(r, s)))

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.e20, self.e11, self.e02, self.e10, self.e01, self.e00)

    def as_dict(self) -> dict:
        return {"e20": self.e20, "e11": self.e11, "e02": self.e02, "e10": self.e10, "e01": self.e01, "e00": self.e00}


def _stencil(N: int) -> list[Cell]:
    return [(N, N), (N + 1, N), (N, N + 1), (N + 2, N), (N, N + 2), (N + 1, N + 1)]


def fit_bhattacharya(T: HilbertTable, base: int = DEFAULT_BASE, window: int = DEFAULT_WINDOW) -> BhattacharyaPoly:
    """Exact fit of the bivariate polynomial, certified on ``[N, N+window]^2``."""
    top = min(T.rmax, T.smax)
    nonintegral = None
    N = base
    while N + max(window, 2) <= top:
        sol = solve_exact([_basis(r, s) for r, s in _stencil(N)], [T[c] for c in _stencil(N)])
        box = [(r, s) for r in range(N, N + window + 1) for s in range(N, N + window + 1)]
        ok = all(sum(c * b for c, b in zip(sol, _basis(r, s))) == T[(r, s)] for r, s in box)
        if ok and all(c.denominator == 1 for c in sol):
            coeffs = [int(c) for c in sol]
            P = BhattacharyaPoly(*coeffs, base=N, window=window)
            frontier = frozenset(c for c in T.cells() if P(*c) == T[c])
            return BhattacharyaPoly(*coeffs, frontier=frontier, base=N, window=window)
        if ok:
            nonintegral = (N, sol)
        N += 1
    if nonintegral is not None:
        raise InvariantViolation(f"non-integral coefficient at base N={nonintegral[0]}: {[str(c) for c in nonintegral[1]]}")
    raise StabilizationError(
        f"no stabilization within grid [0,{T.rmax}]x[0,{T.smax}] (base {base}, window {window}); extend the grid"
    )


# -- univariate fit -------------------------------------------------------------


@dataclass(frozen=True)
class NormalPoly:
    """``P(n) = e0*C(n+1,2) - e1*n + e2`` together with the base it was certified at."""

    e0: int
    e1: int
    e2: int
    base: int = field(default=DEFAULT_BASE, compare=False)

    def __call__(self, n: int) -> int:
        return self.e0 * binom2(n) - self.e1 * n + self.e2

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.e0, self.e1, self.e2)


def fit_univariate(values: Sequence[int], base: int = DEFAULT_BASE, window: int = DEFAULT_WINDOW) -> NormalPoly:
    top = len(values) - 1
    nonintegral = None
    N = base
    while N + max(window, 2) <= top:
        sol = solve_exact([[binom2(n), -n, 1] for n in (N, N + 1, N + 2)], [values[n] for n in (N, N + 1, N + 2)])
        ok = all(sol[0] * binom2(n) - sol[1] * n + sol[2] == values[n] for n in range(N, N + window + 1))
        if ok and all(c.denominator == 1 for c in sol):
            return NormalPoly(*(int(c) for c in sol), base=N)
        if ok:
            nonintegral = (N, sol)
        N += 1
    if nonintegral is not None:
        raise InvariantViolation(f"non-integral coefficient at base N={nonintegral[0]}")
    raise StabilizationError(f"no stabilization within {len(values)} values (base {base}, window {window}); extend the grid")


def single_normal_poly(T: HilbertTable, axis: str, base: int = DEFAULT_BASE, window: int = DEFAULT_WINDOW) -> NormalPoly:
    """Fit the normal Hilbert polynomial of ``I`` (axis ``"I"``) or ``J`` (axis ``"J"``)."""
    return fit_univariate(T.axis(axis), base, window)


def product_normal_poly(T: HilbertTable, base: int = DEFAULT_BASE, window: int = DEFAULT_WINDOW) -> NormalPoly:
    """Normal Hilbert polynomial of ``IJ`` from the diagonal ``n -> H(n, n)``."""
    return fit_univariate(T.diagonal(), base, window)


def mixed_multiplicity(P: BhattacharyaPoly, F: Optional[NormalFiltration] = None, pair=None) -> int:
    """``e(I|J)``; cross-checked against ``lambda(R/(a, b))`` when a certified pair is given."""
    if pair is not None:
        if F is None:
            raise ValueError("cross-check needs the filtration")
        a, b = pair
        got = colength(ideal_from_pair(F.semigroup, a, b))
        if got != P.e11:
            raise InvariantViolation(f"lambda(R/(a,b)) = {got} but fitted e(I|J) = {P.e11} for pair {a}, {b}")
    return P.e11


# -- g_r and h_s ------------------------------------------------------------------


def _stable_value(seq: Sequence[int]) -> Optional[tuple[int, int]]:
    for i in range(len(seq) - 2):
        if seq[i] == seq[i + 1] == seq[i + 2]:
            return seq[i], i
    return None


def g_constant(T: HilbertTable, P: BhattacharyaPoly, r: int) -> int:
    """``g_r``: stable value of ``H(r,s) - H(0,s) - e(I|J)*r*s`` as ``s`` grows."""
    if r < 0 or r > T.rmax:
        raise StabilizationError(f"g_{r} needs row r={r} but the grid stops at {T.rmax}")
    seq = [T[(r, s)] - T[(0, s)] - P.e11 * r * s for s in range(T.smax + 1)]
    hit = _stable_value(seq)
    if hit is None:
        raise StabilizationError(f"g_{r} did not stabilize for s <= {T.smax}; extend the grid beyond Smax={T.smax}")
    return hit[0]


def h_constant(T: HilbertTable, P: BhattacharyaPoly, s: int) -> int:
    """``h_s``: stable value of ``H(r,s) - H(r,0) - e(I|J)*r*s`` as ``r`` grows."""
    if s < 0 or s > T.smax:
        raise StabilizationError(f"h_{s} needs column s={s} but the grid stops at {T.smax}")
    seq = [T[(r, s)] - T[(r, 0)] - P.e11 * r * s for r in range(T.rmax + 1)]
    hit = _stable_value(seq)
    if hit is None:
        raise StabilizationError(f"h_{s} did not stabilize for r <= {T.rmax}; extend the grid beyond Rmax={T.rmax}")
    return hit[0]


def gr_hs_constants(T: HilbertTable, P: BhattacharyaPoly, r: Optional[int] = None, s: Optional[int] = None) -> int:
    if (r is None) == (s is None):
        raise ValueError("give exactly one of r or s")
    return g_constant(T, P, r) if r is not None else h_constant(T, P, s)


@dataclass(frozen=True)
class CoeffBundle:
    I: NormalPoly
    J: NormalPoly
    IJ: NormalPoly
    mixed: int
    g: Mapping[int, int]
    h: Mapping[int, int]

    @property
    def e2_defect(self) -> int:
        """``e2(I) + e2(J) - e2(IJ)``."""
        return self.I.e2 + self.J.e2 - self.IJ.e2

    def as_dict(self) -> dict:
        return {
            "I": list(self.I.triple),
            "J": list(self.J.triple),
            "IJ": list(self.IJ.triple),
            "mixed_multiplicity": self.mixed,
            "g": {str(k): v for k, v in sorted(self.g.items())},
            "h": {str(k): v for k, v in sorted(self.h.items())},
        }


def coefficient_bundle(
    T: HilbertTable,
    P: BhattacharyaPoly,
    rmax: Optional[int] = None,
    smax: Optional[int] = None,
    base: int = DEFAULT_BASE,
    window: int = DEFAULT_WINDOW,
) -> CoeffBundle:
    """All normal Hilbert coefficients plus ``g_r`` (``r <= rmax``) and ``h_s`` (``s <= smax``)."""
    rmax = T.rmax if rmax is None else rmax
    smax = T.smax if smax is None else smax
    return CoeffBundle(
        I=single_normal_poly(T, "I", base, window),
        J=single_normal_poly(T, "J", base, window),
        IJ=product_normal_poly(T, base, window),
        mixed=P.e11,
        g={r: g_constant(T, P, r) for r in range(rmax + 1)},
        h={s: h_constant(T, P, s) for s in range(smax + 1)},
    )
