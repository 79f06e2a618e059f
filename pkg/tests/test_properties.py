"""Randomized algebra properties over random cones and random m-primary ideals."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from normalhilbert import (
    Analysis,
    MonomialIdeal,
    NormalFiltration,
    Options,
    Semigroup2,
    closure,
    ideal_product,
    region_contains,
    region_scale_sum,
)
from normalhilbert.hilbert import binom2

from oracles import box_points

RAYS = [
    ((1, 0), (0, 1)),
    ((1, 0), (1, 2)),
    ((1, 0), (1, 3)),
    ((1, 0), (2, 3)),
    ((0, 1), (2, -1)),
    ((1, 1), (-1, 2)),
]


@st.composite
def ideals(draw, S):
    """m-primary: a multiple of each ray plus a few lattice points near the apex."""
    c1 = draw(st.integers(1, 3))
    c2 = draw(st.integers(1, 3))
    gens = [(c1 * S.ray1[0], c1 * S.ray1[1]), (c2 * S.ray2[0], c2 * S.ray2[1])]
    near = sorted(p for p in box_points((S.ray1, S.ray2), 3) if p != (0, 0))
    gens += draw(st.lists(st.sampled_from(near), max_size=3))
    return MonomialIdeal.from_generators(S, gens)


@st.composite
def pairs(draw):
    S = Semigroup2(*draw(st.sampled_from(RAYS)))
    return S, draw(ideals(S)), draw(ideals(S))


SETTINGS = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(pairs())
def test_closure_idempotent_and_extensive(data):
    S, I, J = data
    for K in (I, J, ideal_product(I, J)):
        Kb = closure(K)
        assert closure(Kb) == Kb
        assert all(g in Kb for g in K.gens)


@SETTINGS
@given(pairs(), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_filtration_multiplicative(data, r, s, r2, s2):
    S, I, J = data
    F = NormalFiltration(I, J)
    assert closure(ideal_product(F(r, s), F(r2, s2))) == F(r + r2, s + s2)


@SETTINGS
@given(pairs(), st.integers(1, 3), st.integers(1, 3))
def test_region_scaling(data, r1, r2):
    S, I, J = data
    A, B = I.region(), J.region()
    assert region_scale_sum(A, r1 + r2, B, 0).vertices == region_scale_sum(region_scale_sum(A, r1, B, 0), 1, region_scale_sum(A, r2, B, 0), 1).vertices
    assert region_scale_sum(A, r1, B, r2).vertices == region_scale_sum(B, r2, A, r1).vertices
    for p in box_points((S.ray1, S.ray2), 4):
        if region_contains(A, p):
            assert region_contains(A, (p[0] + S.ray1[0], p[1] + S.ray1[1]))
            assert region_contains(A, (p[0] + S.ray2[0], p[1] + S.ray2[1]))


@SETTINGS
@given(pairs())
def test_fit_integral_and_exact_on_frontier(data):
    S, I, J = data
    ctx = Analysis(NormalFiltration(I, J), options=Options(rmax=10, smax=10))
    P, T = ctx.poly, ctx.table
    assert all(type(c) is int for c in P.coefficients)
    assert P.e20 >= 1 and P.e02 >= 1 and P.e11 >= 1
    box = [(r, s) for r in range(P.base, P.base + P.window + 1) for s in range(P.base, P.base + P.window + 1)]
    assert all(c in P.frontier for c in box)
    for c in T.cells():
        assert (P(*c) == T[c]) == (c in P.frontier)
        assert P(*c) - T[c] >= 0


@SETTINGS
@given(st.sampled_from(RAYS).flatmap(lambda rays: ideals(Semigroup2(*rays))))
def test_marley_constant(I):
    ctx = Analysis(NormalFiltration(I, I), options=Options(rmax=10, smax=10))
    C = ctx.bundle
    for k in range(5):
        assert C.g[k] == C.I.e0 * binom2(k) - C.I.e1 * k
