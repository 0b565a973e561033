from fractions import Fraction

import pytest

from ricci_stability.branching import Bundle, cpn, sphere_even
from ricci_stability.errors import InvariantViolation, NotCertifiedError
from ricci_stability.rootdata import HighestWeight
from ricci_stability.spectrum import SpectrumLine, make_line
from ricci_stability.stability import (
    GaugeClass,
    GaugeKind,
    Verdict,
    check_stability,
    classify_line,
    contraction_rate,
)


@pytest.mark.parametrize("n", range(2, 9))
def test_spheres_stable(n):
    report = check_stability(sphere_even(n))
    assert report.verdict is Verdict.STABLE
    assert report.kernel_dim == 1
    assert report.offenders == ()
    assert report.rate == Fraction(2 * n - 1, 2 * n + 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_cpn_not_certified(n):
    space = cpn(n)
    report = check_stability(space)
    assert report.verdict is Verdict.NOT_CERTIFIED
    assert report.condition_a and not report.condition_b
    assert [(o.weight, o.mu, o.excess) for o in report.offenders] == [(space.adjoint, -2, 1)]
    assert report.rate is None
    with pytest.raises(NotCertifiedError):
        contraction_rate(space)


def test_sphere2_classification():
    space = sphere_even(2)
    classes = {line.weight.coords: str(cls) for line, cls in check_stability(space).lines}
    assert classes == {(0, 0): "Kernel(1)", (1, 0): "Gauge", (1, 1): "Gauge"}


def test_gauge_class_strings():
    assert str(GaugeClass(GaugeKind.GAUGE)) == "Gauge"
    assert str(GaugeClass(GaugeKind.DIV_FREE, 2)) == "DivFree(2)"
    assert str(GaugeClass(GaugeKind.KERNEL, 1)) == "Kernel(1)"


def _fake(line, **changes):
    fields = dict(line.__dict__)
    fields.update(changes)
    return SpectrumLine(**fields)


def test_missing_killing_summand_is_an_invariant_violation():
    space = sphere_even(2)
    line = make_line(space, space.adjoint)
    with pytest.raises(InvariantViolation):
        classify_line(space, _fake(line, h1=0))


def test_injectivity_failure_is_an_invariant_violation():
    space = sphere_even(2)
    line = make_line(space, HighestWeight((1, 0), space.g_system))
    with pytest.raises(InvariantViolation):
        classify_line(space, _fake(line, h1=2, h2=1))


def test_excess_is_div_free():
    space = sphere_even(2)
    line = make_line(space, HighestWeight((2, 0), space.g_system))
    assert (line.h1, line.h2) == (1, 2)
    assert classify_line(space, line) == GaugeClass(GaugeKind.DIV_FREE, 1)


@pytest.mark.parametrize("space", [sphere_even(n) for n in (2, 3, 4)] + [cpn(n) for n in (2, 3)], ids=lambda s: s.name)
def test_every_window_line_classifies(space):
    report = check_stability(space)
    for line, cls in report.lines:
        if line.weight.is_zero():
            assert cls.kind is GaugeKind.KERNEL
        elif cls.kind is GaugeKind.DIV_FREE:
            assert cls.count == line.h2 - (line.h1 - (line.weight == space.adjoint))
        assert line.multiplicity(Bundle.SYM2) >= 0


@pytest.mark.parametrize("n", range(2, 6))
def test_rate_bounds(n):
    rate = contraction_rate(sphere_even(n))
    assert Fraction(1, 2) <= rate < 1
