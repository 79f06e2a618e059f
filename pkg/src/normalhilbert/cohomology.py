"""Bigraded second local cohomology lengths and the theorem checkers.

``[H^2]_{(r,s)}`` (support ``(a t1, b t2)``, ``r, s >= 0``) is computed three
independent ways:

* direct: ``lambda(E(r+k,s+k) / (a^k E(r,s+k) + b^k E(r+k,s)))`` for ``k`` large,
  which needs a certified good pair;
* formula: ``[e2(I)+e2(J)-e2(IJ)] + g_r + h_s + r*s*e(I|J) - H(r,s)``;
* difference: ``P(r,s) - H(r,s)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .analysis import Analysis
from .errors import InputError, InvariantViolation, StabilizationError
from .hilbert import BhattacharyaPoly, CoeffBundle, HilbertTable, binom2
from .ideals import NormalFiltration, colength, ideal_sum, ideal_translate
from .jointred import (
    JointReductionCertificate,
    Window,
    joint_sum,
    normal_reduction_number,
    split_decomposition_holds,
)

SKIPPED = "skipped: numerical route only"


# -- the three routes -------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyCell:
    r: int
    s: int
    formula: int
    difference: int
    direct: Optional[int] = None
    kstab: Optional[int] = None
    counts: tuple[int, ...] = field(default=(), compare=False)

    @property
    def agrees(self) -> bool:
        vals = {self.formula, self.difference}
        if self.direct is not None:
            vals.add(self.direct)
        return len(vals) == 1

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "direct": self.direct,
            "kstab": self.kstab,
            "formula": self.formula,
            "difference": self.difference,
        }


def h2_length_direct(
    F: NormalFiltration, cert: JointReductionCertificate, r: int, s: int, kcap: int = 12
) -> tuple[int, int, tuple[int, ...]]:
    """Stable quotient count, the first ``k`` where it is attained, and the counts seen.

    Counts are taken for ``k = 1, 2, ...`` until two consecutive ones agree.
    """
    if r < 0 or s < 0:
        raise InputError("cohomology is only reported for r, s >= 0")
    if not cert.is_good:
        raise InputError(f"pair {cert.a}, {cert.b} is not a certified good joint reduction")
    counts: list[int] = []
    for k in range(1, kcap + 1):
        num = F(r + k, s + k)
        den = joint_sum(F, cert.a, cert.b, r + k, s + k, k)
        counts.append(colength(den) - colength(num))
        if len(counts) >= 2 and counts[-1] == counts[-2]:
            return counts[-1], k - 1, tuple(counts)
    raise StabilizationError(
        f"direct H^2 count at ({r},{s}) did not stabilize for k <= {kcap} (counts {counts}); raise --kcap"
    )


def h2_length_formula(C: CoeffBundle, r: int, s: int, H_rs: int) -> int:
    if r not in C.g or s not in C.h:
        raise StabilizationError(f"g_{r} or h_{s} not available; extend the grid")
    val = C.e2_defect + C.g[r] + C.h[s] + r * s * C.mixed - H_rs
    if val < 0:
        raise InvariantViolation(f"H^2 formula negative at ({r},{s}): {val}")
    return val


def difference_table(T: HilbertTable, P: BhattacharyaPoly, rmax: int, smax: int) -> dict[tuple[int, int], int]:
    out = {}
    for r in range(rmax + 1):
        for s in range(smax + 1):
            d = P(r, s) - T[(r, s)]
            if d < 0:
                raise InvariantViolation(f"P - H negative at ({r},{s}): {d}")
            out[(r, s)] = d
    return out


def h2_cells(ctx: Analysis, rmax: int, smax: int) -> list[CohomologyCell]:
    """All three routes on ``[0, rmax] x [0, smax]`` (direct only with a certified pair)."""
    diff = difference_table(ctx.table, ctx.poly, rmax, smax)
    cert = ctx.certificate
    cells = []
    for r in range(rmax + 1):
        for s in range(smax + 1):
            formula = h2_length_formula(ctx.bundle, r, s, ctx.H(r, s))
            direct = kstab = None
            counts: tuple[int, ...] = ()
            if cert is not None:
                direct, kstab, counts = h2_length_direct(ctx.filtration, cert, r, s, ctx.options.kcap)
            cells.append(CohomologyCell(r, s, formula, diff[(r, s)], direct, kstab, counts))
    return cells


# -- theorem reports --------------------------------------------------------------


@dataclass
class Condition:
    name: str
    verdict: Optional[bool]  # None = not checked
    detail: str = ""
    group: Optional[str] = "eq"  # conditions in one group must agree; None = must hold

    def as_dict(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "detail": self.detail}


@dataclass
class TheoremReport:
    theorem: str
    instance: str
    conditions: list[Condition]
    verdict: str
    summary: str
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict in ("equivalence holds", "inequality holds")

    def condition(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "verdict": self.verdict,
            "summary": self.summary,
            "conditions": [c.as_dict() for c in self.conditions],
            "witnesses": self.witnesses,
        }


def _agreement(conds: list[Condition]) -> bool:
    groups: dict[str, set] = {}
    for c in conds:
        if c.verdict is None:
            continue
        if c.group is None:
            if not c.verdict:
                return False
        else:
            groups.setdefault(c.group, set()).add(c.verdict)
    return all(len(v) == 1 for v in groups.values())


def _report(theorem: str, ctx: Analysis, conds: list[Condition], summary: str, witnesses: dict) -> TheoremReport:
    verdict = "equivalence holds" if _agreement(conds) else "disagreement"
    if verdict == "equivalence holds" and summary:
        summary = f"{verdict}; {summary}"
    elif not summary:
        summary = verdict
    return TheoremReport(theorem, ctx.label, conds, verdict, summary, witnesses)


def _fmt_cells(cells: list[tuple[int, int]]) -> str:
    txt = [f"({r},{s})" for r, s in cells]
    return txt[0] if len(txt) == 1 else ", ".join(txt[:-1]) + " and " + txt[-1]


def _cond1_scan(ctx: Analysis, r0: int, s0: int) -> str:
    """Where the numerical condition holds among ``(r0,s0)`` and its two successors."""
    cells = [(r0, s0), (r0 + 1, s0), (r0, s0 + 1)]
    true = [c for c in cells if h2_length_formula(ctx.bundle, *c, ctx.H(*c)) == 0]
    false = [c for c in cells if c not in true]
    parts = []
    if false:
        parts.append(f"false at {_fmt_cells(false)}")
    if true:
        parts.append(f"true at {_fmt_cells(true)}")
    if false and false[0] != (r0, s0):
        parts.reverse()
    return "condition (1) " + ", ".join(parts)


def _module_equality(F: NormalFiltration, cert: JointReductionCertificate, r0: int, s0: int, w: Window):
    """First ``(r,s) >= (r0,s0)`` in the window with ``E(r+1,s+1) != a E(r,s+1) + b E(r+1,s)``."""
    for r in range(r0, w.rv + 1):
        for s in range(s0, w.sv + 1):
            if F(r + 1, s + 1) != joint_sum(F, cert.a, cert.b, r + 1, s + 1):
                return (r, s)
    return None


def _thm4_conditions(ctx: Analysis, r0: int, s0: int) -> tuple[list[Condition], dict]:
    C = ctx.bundle
    H = ctx.H(r0, s0)
    formula = h2_length_formula(C, r0, s0, H)
    lhs = C.e2_defect
    rhs = H - C.g[r0] - C.h[s0] - r0 * s0 * C.mixed
    conds = [Condition("(1)", lhs == rhs, f"e2(I)+e2(J)-e2(IJ) = {lhs}, H - g - h - rs*e(I|J) = {rhs}")]
    wit = {"r0": r0, "s0": s0, "formula": formula, "difference": ctx.poly(r0, s0) - H}
    if ctx.ingested:
        wit["formula_status"] = "formula-only"
    cert = ctx.certificate
    if cert is None:
        reason = ctx.pair_search.reason
        conds.append(Condition("(2)", None, f"{SKIPPED} ({reason})"))
        conds.append(Condition("(3)", None, f"{SKIPPED} ({reason})"))
        return conds, wit
    direct, kstab, _ = h2_length_direct(ctx.filtration, cert, r0, s0, ctx.options.kcap)
    conds.append(Condition("(2)", direct == 0, f"direct length {direct} (k = {kstab})"))
    fail = _module_equality(ctx.filtration, cert, r0, s0, ctx.window)
    detail = "certified on window" if fail is None else f"fails at (r,s) = {fail}"
    conds.append(Condition("(3)", fail is None, detail))
    wit.update({"pair": [list(cert.a), list(cert.b)], "direct": direct, "kstab": kstab})
    return conds, wit


def check_thm4(ctx: Analysis, r0: int = 0, s0: int = 0) -> TheoremReport:
    if r0 < 0 or s0 < 0:
        raise InputError("r0 and s0 must be nonnegative")
    conds, wit = _thm4_conditions(ctx, r0, s0)
    return _report("thm4", ctx, conds, _cond1_scan(ctx, r0, s0), wit)


def check_rees7(ctx: Analysis) -> TheoremReport:
    conds, wit = _thm4_conditions(ctx, 0, 0)
    C = ctx.bundle
    conds[0].detail = f"e2(IJ) = {C.IJ.e2}, e2(I) + e2(J) = {C.I.e2 + C.J.e2}"
    cert = ctx.certificate
    if cert is not None:
        conds[2].detail = "jrn zero" if cert.jrn_zero else conds[2].detail
        conds[2].verdict = conds[2].verdict and bool(cert.jrn_zero)
    c3 = conds[2].verdict
    if c3 is True:
        summary = "jrn zero"
    elif c3 is False:
        summary = "jrn nonzero"
    else:
        summary = "condition (1) " + ("true" if conds[0].verdict else "false")
    return _report("rees7", ctx, conds, summary, wit)


def _axis_filtration(ctx: Analysis, which: str) -> Analysis:
    F = ctx.filtration
    K = F.I if which == "I" else F.J
    o = ctx.options
    return Analysis(NormalFiltration(K, K), options=o, label=f"({which},{which})")


def check_marley(ctx: Analysis, kmax: int = 3) -> TheoremReport:
    """Per axis and ``k <= kmax``: ``rbar <= k+1`` iff ``H(k) = P(k)``, plus the ``g_k(I,I)`` identity."""
    conds: list[Condition] = []
    wit: dict = {}
    for which, poly in (("I", ctx.bundle.I), ("J", ctx.bundle.J)):
        axis = ctx.table.axis(which)
        nrn = normal_reduction_number(axis, poly)
        wit[f"normal_reduction_number_{which}"] = nrn
        sub = None if ctx.ingested else _axis_filtration(ctx, which)
        cert = None if sub is None else sub.certificate
        for k in range(kmax + 1):
            grp = f"{which}{k}"
            conds.append(Condition(f"{which}: H({k}) = P({k})", axis[k] == poly(k), f"{axis[k]} vs {poly(k)}", grp))
            if cert is None:
                why = SKIPPED if sub is None else f"{SKIPPED} (no monomial reduction)"
                conds.append(Condition(f"{which}: rbar <= {k + 1}", None, why, grp))
                continue
            F2 = sub.filtration
            hi = k + 1 + ctx.options.cert_window
            bad = None
            for n in range(k + 1, hi + 1):
                rhs = ideal_sum(ideal_translate(cert.a, F2(n, 0)), ideal_translate(cert.b, F2(n, 0)))
                if F2(n + 1, 0) != rhs:
                    bad = n
                    break
            detail = f"(a,b) = {list(cert.a)}, {list(cert.b)} for n in [{k + 1},{hi}]"
            if bad is not None:
                detail += f"; fails at n = {bad}"
            conds.append(Condition(f"{which}: rbar <= {k + 1}", bad is None, detail, grp))
        if sub is not None:
            e0, e1, _ = poly.triple
            ks = range(0, 5)
            got = {k: sub.bundle.g[k] for k in ks}
            want = {k: e0 * binom2(k) - e1 * k for k in ks}
            conds.append(Condition(f"{which}: g_k(X,X) identity", got == want, f"g = {got}", None))
    return _report("marley", ctx, conds, "", wit)


def check_e2max(ctx: Analysis) -> TheoremReport:
    C, P = ctx.bundle, ctx.poly
    e2IJ = C.IJ.e2
    m = max(C.I.e2, C.J.e2)
    ineq = e2IJ >= m
    conds = [
        Condition("e2(IJ) >= max(e2(I), e2(J))", ineq, f"{e2IJ} >= max({C.I.e2}, {C.J.e2})", None),
        Condition("e00 = e2(IJ)", P.e00 == e2IJ, f"{P.e00} vs {e2IJ}", None),
    ]
    ok = all(c.verdict for c in conds)
    verdict = "inequality holds" if ok else "disagreement"
    summary = f"{e2IJ} >= max({C.I.e2},{C.J.e2})" + (" with equality" if ineq and e2IJ == m else "")
    return TheoremReport("e2max", ctx.label, conds, verdict, f"{verdict}: {summary}", {"e2": [C.I.e2, C.J.e2, e2IJ]})


def closed_form_matches(ctx: Analysis) -> bool:
    C, P = ctx.bundle, ctx.poly
    want = (C.I.e0, C.mixed, C.J.e0, C.I.e1, C.J.e1, C.I.e2 + C.J.e2)
    return P.coefficients == want


def additive_identity_failure(ctx: Analysis, bound: int = 6) -> Optional[tuple[int, int]]:
    """First cell of ``[0,bound]^2`` where ``H(r,s) != rs e(I|J) + H(r,0) + H(0,s)``."""
    e = ctx.poly.e11
    for r in range(bound + 1):
        for s in range(bound + 1):
            if ctx.H(r, s) != r * s * e + ctx.H(r, 0) + ctx.H(0, s):
                return (r, s)
    return None


def check_vanishing14(ctx: Analysis, bound: int = 6) -> TheoremReport:
    C = ctx.bundle
    nI = normal_reduction_number(ctx.table.axis("I"), C.I)
    nJ = normal_reduction_number(ctx.table.axis("J"), C.J)
    conds = [Condition("(1)", C.IJ.e2 == 0, f"e2(IJ) = {C.IJ.e2}")]
    small = nI <= 1 and nJ <= 1
    cert = ctx.certificate
    detail = f"rbar(I) <= {nI}, rbar(J) <= {nJ}"
    if cert is None:
        v2 = False if not small else None
        detail += f"; jrn part {SKIPPED}"
    else:
        v2 = small and bool(cert.jrn_zero)
        detail += f"; jrn zero = {cert.jrn_zero}"
    conds.append(Condition("(2)", v2, detail))
    wit = {"normal_reduction_number": [nI, nJ]}
    if C.IJ.e2 == 0:
        bad = additive_identity_failure(ctx, bound)
        conds.append(Condition("additive identity", bad is None, f"on [0,{bound}]^2" + ("" if bad is None else f"; fails at {bad}"), None))
        conds.append(Condition("closed form", closed_form_matches(ctx), f"fit {list(ctx.poly.coefficients)}", None))
        diff = difference_table(ctx.table, ctx.poly, bound, bound)
        nz = sorted(c for c, v in diff.items() if v)
        conds.append(Condition("P = H on r,s >= 0", not nz, f"nonzero at {nz[:3]}" if nz else f"on [0,{bound}]^2", None))
        if cert is not None and cert.jrn_zero:
            w = ctx.window
            conds.append(Condition("split decomposition", split_decomposition_holds(ctx.filtration, cert, w.rv, w.sv), "certified on window", None))
    return _report("vanishing14", ctx, conds, "", wit)


THEOREMS = ("thm4", "rees7", "marley", "e2max", "vanishing14")


def check_theorem(theorem: str, ctx: Analysis, r0: int = 0, s0: int = 0) -> TheoremReport:
    if theorem == "thm4":
        return check_thm4(ctx, r0, s0)
    if theorem == "rees7":
        return check_rees7(ctx)
    if theorem == "marley":
        return check_marley(ctx)
    if theorem == "e2max":
        return check_e2max(ctx)
    if theorem == "vanishing14":
        return check_vanishing14(ctx)
    raise InputError(f"unknown theorem id {theorem!r}; choose from {', '.join(THEOREMS)}")
