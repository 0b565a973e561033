import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import ricci_general
from ricci_stability.errors import DegenerateDerivative, NewtonFailure, NonPositiveRicci
from ricci_stability.iteration import (
    Direction,
    ProductMetric,
    Stability,
    Status,
    TwoSummandStructure,
    einstein_rays,
    invert_ratio,
    invert_ricci,
    iterate,
    linearization,
    positive_ricci_interval,
    ratio_map,
    ratio_map_derivative,
    ricci_components,
    ricci_eigenvalues,
)
from ricci_stability.jensen import jensen_structure

J1 = jensen_structure(1)

positive = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=60)


@st.composite
def structures(draw):
    d1 = draw(st.integers(1, 12))
    d2 = draw(st.integers(1, 24))
    t111 = draw(st.fractions(min_value=0, max_value=d1, max_denominator=40))
    t122 = draw(st.fractions(min_value=Fraction(1, 40), max_value=d1, max_denominator=40))
    return TwoSummandStructure(d1, d2, t111, t122)


@settings(max_examples=200)
@given(structures(), positive, positive)
def test_eigenvalues_match_triple_sum(s, x1, x2):
    expected = ricci_general([x1, x2], [s.d1, s.d2], {(0, 0, 0): s.t111, (0, 1, 1): s.t122})
    assert list(ricci_eigenvalues(ProductMetric(x1, x2), s)) == expected


def test_one_summand_limit():
    # fibre and base with no brackets between them: each summand is a normal metric piece
    s = TwoSummandStructure(3, 4, Fraction(3, 2), 0)
    r1, r2 = ricci_eigenvalues(ProductMetric(1, 1), s)
    assert r1 == Fraction(1, 2) - Fraction(3, 2) / 12
    assert r2 == Fraction(1, 2)


@settings(max_examples=200)
@given(structures(), positive, positive, positive)
def test_scale_invariance_exact(s, x1, x2, c):
    g = ProductMetric(x1, x2)
    assert ricci_components(g.scaled(c), s) == ricci_components(g, s)


def test_jensen_n1_values():
    assert (J1.d1, J1.d2, J1.t111, J1.t122) == (3, 4, Fraction(1, 5), Fraction(2, 5))
    rays = einstein_rays(J1)
    assert [fp.id for fp in rays] == ["jensen", "round"]
    assert [fp.ratio for fp in rays] == pytest.approx([1.0, 5.0], rel=1e-14)
    assert ratio_map(J1, Fraction(5)) == 5
    assert ratio_map(J1, Fraction(1)) == 1
    assert ratio_map_derivative(J1, Fraction(5)) == Fraction(7, 3)
    assert ratio_map_derivative(J1, Fraction(1)) == Fraction(7, 27)


@pytest.mark.parametrize("n", range(1, 9))
def test_rays_against_exact_roots(n):
    s = jensen_structure(n)
    a, b, c = (sympy.Rational(v.numerator, v.denominator) for v in s.quadratic())
    t = sympy.Symbol("t", positive=True)
    exact = sorted(sympy.solve(a - t / 2 + (b + c) * t**2, t), key=lambda r: float(r))
    rays = einstein_rays(s)
    assert len(rays) == len(exact) == 2
    for fp, root in zip(rays, exact):
        assert fp.ratio == pytest.approx(float(root), rel=1e-13)
        # Ric(g) = g exactly on the symbolic root
        y2 = sympy.Rational(1, 2) - c * root
        x = (root * y2, y2)
        r1 = sympy.Rational(1, 2) / x[0] - (s.t111 + 2 * s.t122) / (4 * s.d1 * x[0]) + s.t122 * x[0] / (4 * s.d1 * x[1] ** 2)
        r2 = sympy.Rational(1, 2) / x[1] - s.t122 * x[0] / (2 * s.d2 * x[1] ** 2)
        assert sympy.simplify(x[0] * r1 - x[0]) == 0
        assert sympy.simplify(x[1] * r2 - x[1]) == 0
        y1, y2f = ricci_components(fp.metric, s)
        assert (float(y1), float(y2f)) == pytest.approx((fp.metric.x1, fp.metric.x2), rel=1e-12)


@pytest.mark.parametrize("n", range(1, 9))
def test_round_ray_attracting_jensen_repelling(n):
    s = jensen_structure(n)
    rays = {fp.id: linearization(s, fp) for fp in einstein_rays(s)}
    assert rays["round"].stability is Stability.ATTRACTING
    assert rays["jensen"].stability is Stability.REPELLING
    assert rays["round"].fixed_point.ratio == pytest.approx(n + 4)
    # round / jensen fibre-scaling ratio
    assert rays["round"].fixed_point.ratio / rays["jensen"].fixed_point.ratio == pytest.approx(2 * n + 3)


def test_linearization_values_n1():
    lins = [linearization(J1, fp) for fp in einstein_rays(J1)]
    assert [lin.derivative for lin in lins] == pytest.approx([27 / 7, 3 / 7])


@settings(max_examples=100)
@given(structures(), st.floats(0.01, 0.99))
def test_rays_are_einstein(s, _):
    for fp in einstein_rays(s):
        y1, y2 = ricci_components(fp.metric, s)
        assert float(y1) == pytest.approx(fp.metric.x1, rel=1e-9)
        assert float(y2) == pytest.approx(fp.metric.x2, rel=1e-9)


def test_perturbed_structure():
    s = TwoSummandStructure(3, 4, Fraction(1, 5), Fraction(4, 5))
    a, b, c = s.quadratic()
    disc = Fraction(1, 4) - 4 * a * (b + c)
    rays = einstein_rays(s)
    assert len(rays) == (2 if disc > 0 else 0)
    assert all(fp.id.startswith("ray-") for fp in rays)


def test_zero_brackets_degenerate():
    s = TwoSummandStructure(3, 4, 0, 0)
    assert positive_ricci_interval(s) == (0.0, math.inf)
    rays = einstein_rays(s)
    assert [fp.ratio for fp in rays] == [1.0]
    assert ratio_map(s, Fraction(7)) == 1
    with pytest.raises(DegenerateDerivative):
        linearization(s, rays[0])
    with pytest.raises(NewtonFailure):
        invert_ratio(s, 2.0, guess=2.0)


def test_derivative_against_central_differences():
    rng = random.Random(7)
    for n in (1, 2, 5):
        s = jensen_structure(n)
        lo, hi = positive_ricci_interval(s)
        for _ in range(20):
            t = rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo))
            h = 1e-5 * t
            fd = (float(ratio_map(s, t + h)) - float(ratio_map(s, t - h))) / (2 * h)
            assert float(ratio_map_derivative(s, t)) == pytest.approx(fd, rel=1e-6)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_newton_round_trip(n):
    s = jensen_structure(n)
    lo, hi = positive_ricci_interval(s)
    rng = random.Random(n)
    for _ in range(100):
        scale = rng.uniform(0.2, 5.0)
        h = ProductMetric(rng.uniform(lo + 0.01, 0.98 * hi) * scale, scale)
        target = ProductMetric(*(float(v) for v in ricci_components(h, s)))
        g = invert_ricci(s, target, guess=rng.uniform(lo + 0.01, 0.98 * hi))
        y1, y2 = ricci_components(g, s)
        # rho is increasing, so the preimage is unique and Ric(g) hits the target itself
        assert abs(float(y1) - target.x1) <= 1e-10 * max(1.0, target.x1)
        assert abs(float(y2) - target.x2) <= 1e-10
        assert g.ratio == pytest.approx(h.ratio, rel=1e-10)


def test_ratio_map_domain():
    lo, hi = positive_ricci_interval(J1)
    assert (lo, hi) == (0.0, 10.0)
    with pytest.raises(NonPositiveRicci):
        ratio_map(J1, 10.5)
    with pytest.raises(ValueError):
        ratio_map(J1, 0)


def test_no_preimage_raises():
    # rho(0+) = 5/6, so smaller ratios have no preimage
    with pytest.raises(NewtonFailure):
        invert_ratio(J1, 0.5)


def test_forward_from_perturbed_jensen():
    trace = iterate(J1, ProductMetric(1.01, 1.0), Direction.FORWARD, max_steps=200, tol=1e-12)
    assert trace.status is Status.CONVERGED and trace.converged_to == "round"
    assert len(trace.steps) <= 201
    assert max(step.residual for step in trace.steps) <= 1e-10
    assert [step.index for step in trace.steps] == list(range(len(trace.steps)))
    assert trace.steps[-1].metric.ratio == pytest.approx(5.0, rel=1e-10)
    assert (trace.steps[-1].metric.x1, trace.steps[-1].metric.x2) == pytest.approx((1.25, 0.25), rel=1e-9)


def test_backward_from_perturbed_jensen():
    trace = iterate(J1, ProductMetric(1.01, 1.0), Direction.BACKWARD, max_steps=200)
    assert trace.status is Status.CONVERGED and trace.converged_to == "jensen"
    assert [step.index for step in trace.steps] == [-i for i in range(len(trace.steps))]
    for prev, step in zip(trace.steps, trace.steps[1:]):
        y = ricci_components(prev.metric, J1)
        assert (step.metric.x1, step.metric.x2) == (float(y[0]), float(y[1]))


def test_start_on_round_ray():
    round_ray = next(fp for fp in einstein_rays(J1) if fp.id == "round")
    trace = iterate(J1, round_ray.metric, Direction.FORWARD)
    assert trace.status is Status.CONVERGED and trace.converged_to == "round"
    assert len(trace.steps) <= 2


def test_backward_leaves_domain():
    trace = iterate(J1, ProductMetric(6.0, 1.0), Direction.BACKWARD, max_steps=100)
    assert trace.status is Status.LEFT_DOMAIN


def test_max_steps():
    trace = iterate(J1, ProductMetric(1.01, 1.0), Direction.FORWARD, max_steps=3)
    assert trace.status is Status.MAX_STEPS
    assert trace.converged_to is None


def test_forward_below_jensen_fails():
    with pytest.raises(NewtonFailure):
        iterate(J1, ProductMetric(0.9, 1.0), Direction.FORWARD)


def test_non_positive_start_rejected():
    with pytest.raises(NonPositiveRicci):
        iterate(J1, ProductMetric(11.0, 1.0))


@settings(max_examples=50, deadline=None)
@given(st.floats(1.001, 9.0))
def test_forward_basin_reaches_round(t0):
    assume(abs(t0 - 5.0) > 1e-6)
    trace = iterate(J1, ProductMetric(t0, 1.0), Direction.FORWARD)
    assert trace.status is Status.CONVERGED and trace.converged_to == "round"
    assert max(step.residual for step in trace.steps) <= 1e-10
