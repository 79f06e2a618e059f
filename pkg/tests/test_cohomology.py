import pytest

from normalhilbert import (
    InputError,
    InvariantViolation,
    StabilizationError,
    check_theorem,
    difference_table,
    h2_cells,
    h2_length_direct,
    h2_length_formula,
)
from normalhilbert.cohomology import THEOREMS, closed_form_matches

from conftest import A1, CUBIC, INSTANCES, M, M_A1, PLANE, elliptic, make
from oracles import box_points, filtration_points


def test_direct_examples():
    ctx = make(PLANE, M, M)
    length, k, counts = h2_length_direct(ctx.filtration, ctx.certificate, 0, 0)
    assert length == 0 and k <= 2
    ctx = make(A1, M_A1, M_A1)
    length, k, _ = h2_length_direct(ctx.filtration, ctx.certificate, 1, 1)
    assert length == 0 and k <= 2


def test_direct_point_scan():
    rays, I, J = A1, [(2, 0), (1, 2)], M_A1
    ctx = make(rays, I, J)
    a, b = ctx.certificate.pair
    for r, s in ((0, 0), (1, 2)):
        length, _, counts = h2_length_direct(ctx.filtration, ctx.certificate, r, s)
        k = 2
        num = filtration_points(rays, I, J, r + k, s + k, 30)
        den = {(p[0] + k * a[0], p[1] + k * a[1]) for p in filtration_points(rays, I, J, r, s + k, 30)}
        den |= {(p[0] + k * b[0], p[1] + k * b[1]) for p in filtration_points(rays, I, J, r + k, s, 30)}
        up = _upset(rays, den, 22)
        quotient = [p for p in box_points(rays, 22) if p in num and p not in up]
        assert len(quotient) == counts[1]


def _upset(rays, pts, bound):
    from oracles import divides

    return {p for p in box_points(rays, bound) if any(divides(rays, d, p) for d in pts)}


def test_direct_requires_good_pair_and_cap():
    ctx = make(PLANE, M, M)
    with pytest.raises(InputError):
        h2_length_direct(ctx.filtration, ctx.certificate, -1, 0)
    with pytest.raises(StabilizationError):
        h2_length_direct(ctx.filtration, ctx.certificate, 0, 0, kcap=1)


def test_monotone_stabilization():
    for label, rays, I, J in INSTANCES:
        ctx = make(rays, I, J)
        if ctx.certificate is None:
            continue
        for c in h2_cells(ctx, 3, 3):
            assert list(c.counts) == sorted(c.counts), label


def test_formula_examples():
    ctx = make(PLANE, M, M)
    assert h2_length_formula(ctx.bundle, 1, 1, ctx.H(1, 1)) == 0
    for label, rays, I, J in INSTANCES:
        ctx = make(rays, I, J)
        assert h2_length_formula(ctx.bundle, 0, 0, 0) == ctx.bundle.e2_defect
    e = elliptic()
    assert h2_length_formula(e.bundle, 0, 0, e.H(0, 0)) == 1
    assert h2_length_formula(e.bundle, 1, 0, e.H(1, 0)) == 0
    with pytest.raises(InvariantViolation):
        h2_length_formula(e.bundle, 0, 0, 5)


def test_difference_examples():
    assert set(difference_table(make(PLANE, M, M).table, make(PLANE, M, M).poly, 6, 6).values()) == {0}
    ctx = make(A1, M_A1, M_A1)
    assert set(difference_table(ctx.table, ctx.poly, 6, 6).values()) == {0}
    e = elliptic()
    d = difference_table(e.table, e.poly, 6, 6)
    assert d[(0, 0)] == 1 and all(v == 0 for c, v in d.items() if c != (0, 0))


def test_theorem_examples():
    rep = check_theorem("rees7", make(PLANE, M, M))
    assert rep.verdict == "equivalence holds" and all(c.verdict for c in rep.conditions)
    e = elliptic()
    rep = check_theorem("e2max", e)
    assert rep.ok and "1 >= max(1,1)" in rep.summary
    rep = check_theorem("thm4", e, 0, 0)
    assert rep.ok and "condition (1) false at (0,0), true at (1,0) and (0,1)" in rep.summary
    assert rep.condition("(1)").verdict is False and rep.condition("(2)").verdict is None
    assert check_theorem("thm4", e, 1, 0).condition("(1)").verdict is True


def test_rees7_a1():
    rep = check_theorem("rees7", make(A1, M_A1, M_A1))
    assert rep.summary == "equivalence holds; jrn zero"


def test_unknown_theorem():
    with pytest.raises(InputError):
        check_theorem("thm99", elliptic())


@pytest.mark.parametrize("label,rays,I,J", INSTANCES)
def test_all_theorems_hold(label, rays, I, J):
    ctx = make(rays, I, J)
    for t in THEOREMS:
        assert check_theorem(t, ctx).ok, (label, t)
    for r0, s0 in ((1, 0), (0, 2), (2, 1)):
        assert check_theorem("thm4", ctx, r0, s0).ok


def test_ingested_reports():
    e = elliptic()
    for t in THEOREMS:
        assert check_theorem(t, e).ok, t
    rep = check_theorem("vanishing14", e)
    assert rep.condition("(1)").verdict is False and rep.condition("(2)").verdict is False
    assert not closed_form_matches(e)


def test_marley_module_conditions():
    rep = check_theorem("marley", make(A1, [(2, 0), (1, 2)], M_A1))
    checked = [c for c in rep.conditions if "rbar" in c.name and c.verdict is not None]
    assert checked and rep.ok
    rep = check_theorem("marley", make(PLANE, CUBIC, M))
    assert rep.condition("I: rbar <= 1").verdict is None
