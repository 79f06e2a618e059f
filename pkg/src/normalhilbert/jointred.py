"""Monomial joint reductions of the normal filtration, certified on finite windows.

All certificates are "certified on window": the defining conditions quantify
over infinitely many bidegrees and only a finite box is checked.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

from .errors import InputError, StabilizationError
from .hilbert import HilbertTable, NormalPoly
from .ideals import (
    MonomialIdeal,
    NormalFiltration,
    ideal_colon_monomial,
    ideal_from_pair,
    ideal_sum,
    ideal_translate,
)
from .lattice import Point

DEFAULT_SLACK = 2
INGESTED_REASON = "module operations unavailable for ingested source"


@dataclass(frozen=True)
class Window:
    rv: int
    sv: int
    slack: int = DEFAULT_SLACK
    start: int = 2  # lower corner of the joint-reduction box, N_stab

    @classmethod
    def default(cls, n_stab: int) -> "Window":
        return cls(n_stab + 4, n_stab + 4, DEFAULT_SLACK, n_stab)


@dataclass(frozen=True)
class JointReductionCertificate:
    a: Point
    b: Point
    window: Window
    is_joint: bool
    is_good: Optional[bool] = None
    jrn_zero: Optional[bool] = None
    first_failure: Optional[tuple[str, int, int]] = None

    @property
    def pair(self) -> tuple[Point, Point]:
        return (self.a, self.b)

    def as_dict(self) -> dict:
        w = self.window
        return {
            "a": list(self.a),
            "b": list(self.b),
            "window": {"rv": w.rv, "sv": w.sv, "negative_slack": w.slack, "start": w.start},
            "is_joint": self.is_joint,
            "is_good": self.is_good,
            "jrn_zero": self.jrn_zero,
            "first_failure": None if self.first_failure is None else list(self.first_failure),
            "status": "certified on window",
        }


def joint_sum(F: NormalFiltration, a: Point, b: Point, r: int, s: int, k: int = 1) -> MonomialIdeal:
    """``a^k E(r-k, s) + b^k E(r, s-k)`` as a monomial ideal."""
    ka = (k * a[0], k * a[1])
    kb = (k * b[0], k * b[1])
    return ideal_sum(ideal_translate(ka, F(r - k, s)), ideal_translate(kb, F(r, s - k)))


def _check_members(F: NormalFiltration, a: Point, b: Point) -> None:
    if a not in F.I_bar:
        raise InputError(f"a = {list(a)} is not in the closure of I")
    if b not in F.J_bar:
        raise InputError(f"b = {list(b)} is not in the closure of J")


def _joint_failure(F: NormalFiltration, a: Point, b: Point, rows: range, cols: range) -> Optional[tuple[str, int, int]]:
    for r in rows:
        for s in cols:
            if F(r, s) != joint_sum(F, a, b, r, s):
                return ("joint", r, s)
    return None


def verify_joint_reduction(F: NormalFiltration, a: Point, b: Point, window: Window) -> JointReductionCertificate:
    """Check ``E(r,s) = a E(r-1,s) + b E(r,s-1)`` on ``[start, rv] x [start, sv]``."""
    a, b = tuple(a), tuple(b)
    _check_members(F, a, b)
    fail = _joint_failure(F, a, b, range(window.start, window.rv + 1), range(window.start, window.sv + 1))
    return JointReductionCertificate(a, b, window, is_joint=fail is None, first_failure=fail)


def _good_failure(F: NormalFiltration, a: Point, b: Point, window: Window) -> Optional[tuple[str, int, int]]:
    for r in range(1, window.rv + 1):
        for s in range(-window.slack, window.sv + 1):
            if ideal_colon_monomial(F(r, s), a) != F(r - 1, s):
                return ("intersection_a", r, s)
    for r in range(-window.slack, window.rv + 1):
        for s in range(1, window.sv + 1):
            if ideal_colon_monomial(F(r, s), b) != F(r, s - 1):
                return ("intersection_b", r, s)
    return None


def verify_good_joint_reduction(F: NormalFiltration, a: Point, b: Point, window: Window) -> JointReductionCertificate:
    """Joint check plus ``(a) ∩ E(r,s) = a E(r-1,s)`` and the symmetric condition for ``b``."""
    cert = verify_joint_reduction(F, a, b, window)
    if not cert.is_joint:
        return replace(cert, is_good=False)
    fail = _good_failure(F, cert.a, cert.b, window)
    return replace(cert, is_good=fail is None, first_failure=fail)


def jrn_zero(F: NormalFiltration, cert: JointReductionCertificate, window: Optional[Window] = None) -> bool:
    """Joint-reduction equality at every ``1 <= r <= rv``, ``1 <= s <= sv``."""
    w = window or cert.window
    return _joint_failure(F, cert.a, cert.b, range(1, w.rv + 1), range(1, w.sv + 1)) is None


@dataclass(frozen=True)
class PairSearch:
    certificate: Optional[JointReductionCertificate]
    reason: str
    tried: int = 0


def boundary_order(F: NormalFiltration, K: MonomialIdeal) -> list[Point]:
    """Minimal generators walked along the Newton boundary, starting at ``ray1``."""
    return sorted(K.gens, key=lambda g: F.semigroup.to_cone(g)[1])


def search_good_pair(F: Union[NormalFiltration, HilbertTable, None], window: Window) -> PairSearch:
    """First certified good pair ``(a, b)`` with ``a`` a minimal generator of
    the closure of ``I`` and ``b`` one of ``J``.

    Pairs are tried lexicographically, each factor in boundary order.
    """
    if not isinstance(F, NormalFiltration):
        return PairSearch(None, INGESTED_REASON)
    tried = 0
    for a in boundary_order(F, F.I_bar):
        for b in boundary_order(F, F.J_bar):
            tried += 1
            if not ideal_from_pair(F.semigroup, a, b).is_m_primary:
                continue
            cert = verify_good_joint_reduction(F, a, b, window)
            if cert.is_good:
                return PairSearch(replace(cert, jrn_zero=jrn_zero(F, cert)), "found", tried)
    return PairSearch(None, "no monomial good pair", tried)


def normal_reduction_number(axis_values: Sequence[int], poly: NormalPoly) -> int:
    """``1 + min{k >= 0 : H(k) = P(k)}``, the least bound certified by Marley's criterion."""
    for k, v in enumerate(axis_values):
        if v == poly(k):
            return k + 1
    raise StabilizationError("Hilbert function never meets its polynomial on the supplied axis; extend the grid")


def power_intersection_holds(F: NormalFiltration, cert: JointReductionCertificate, rmax: int, smax: int, nmax: int = 3) -> bool:
    """``E(r, s+n) : b^n = E(r, s)`` and ``E(r+n, s) : a^n = E(r, s)`` for ``1 <= n <= nmax``."""
    a, b = cert.a, cert.b
    for n in range(1, nmax + 1):
        na, nb = (n * a[0], n * a[1]), (n * b[0], n * b[1])
        for r in range(rmax + 1):
            for s in range(smax + 1):
                if ideal_colon_monomial(F(r, s + n), nb) != F(r, s):
                    return False
                if ideal_colon_monomial(F(r + n, s), na) != F(r, s):
                    return False
    return True


def split_decomposition_holds(F: NormalFiltration, cert: JointReductionCertificate, rmax: int, smax: int) -> bool:
    """``E(r,s) = a^r E(0,s) + b^s E(r,0)`` for ``1 <= r <= rmax``, ``1 <= s <= smax``."""
    a, b = cert.a, cert.b
    for r in range(1, rmax + 1):
        for s in range(1, smax + 1):
            rhs = ideal_sum(ideal_translate((r * a[0], r * a[1]), F(0, s)), ideal_translate((s * b[0], s * b[1]), F(r, 0)))
            if F(r, s) != rhs:
                return False
    return True
