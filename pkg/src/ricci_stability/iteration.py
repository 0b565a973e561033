"""Ricci iteration on two-summand homogeneous metrics.

A G-invariant metric is ``g = x1*Q|m1 + x2*Q|m2`` for a bi-invariant
``Q = -B``. Its Ricci tensor is ``Ric(g) = y1*Q|m1 + y2*Q|m2`` with
``y_i = x_i * r_i``. Only the bracket norms ``[111]`` and ``[122]`` (and
their permutations) are allowed to be non-zero, which covers fibrations
G/K -> G/H with fibre m1.

Ric is scale invariant, so the dynamics reduce to the ratio t = x1/x2 and
the map ``rho(t) = y1/y2`` evaluated at (t, 1). A forward step
Ric(g_{i+1}) = g_i inverts rho, and a backward step applies it.

Functions accept ``Fraction`` or ``float`` inputs. Fractions stay exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DegenerateDerivative, NewtonFailure, NonPositiveRicci

Number = Union[Fraction, float, int]

NEWTON_TOL = 1e-12
MAX_STEPS = 500


@dataclass(frozen=True)
class TwoSummandStructure:
    d1: int
    d2: int
    t111: Fraction
    t122: Fraction
    name: str = "custom"
    # ratio x1/x2 of the round metric, when the structure is a sphere fibration
    round_ratio: Fraction | None = None

    def __post_init__(self) -> None:
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError("summand dimensions must be positive")
        object.__setattr__(self, "t111", Fraction(self.t111))
        object.__setattr__(self, "t122", Fraction(self.t122))
        if self.t111 < 0 or self.t122 < 0:
            raise ValueError("structure constants must be non-negative")

    def quadratic(self) -> tuple[Fraction, Fraction, Fraction]:
        """(a, b, c) with y1(t) = a + b t^2 and y2(t) = 1/2 - c t at x = (t, 1)."""
        a = Fraction(1, 2) - (self.t111 + 2 * self.t122) / (4 * self.d1)
        b = self.t122 / (4 * self.d1)
        c = self.t122 / (2 * self.d2)
        return a, b, c


@dataclass(frozen=True)
class ProductMetric:
    x1: Number
    x2: Number

    def __post_init__(self) -> None:
        if not (self.x1 > 0 and self.x2 > 0):
            raise ValueError(f"metric coefficients must be positive: ({self.x1}, {self.x2})")

    @property
    def ratio(self) -> Number:
        return self.x1 / self.x2

    def scaled(self, c: Number) -> ProductMetric:
        return ProductMetric(c * self.x1, c * self.x2)


def ricci_eigenvalues(x: ProductMetric, s: TwoSummandStructure) -> tuple[Number, Number]:
    """Eigenvalues r1, r2 of Ric relative to g on m1 and m2."""
    x1, x2 = x.x1, x.x2
    half = Fraction(1, 2)
    r1 = half / x1 - (s.t111 + 2 * s.t122) / (4 * s.d1 * x1) + s.t122 * x1 / (4 * s.d1 * x2 * x2)
    r2 = half / x2 - s.t122 * x1 / (2 * s.d2 * x2 * x2)
    return r1, r2


def ricci_components(x: ProductMetric, s: TwoSummandStructure) -> tuple[Number, Number]:
    """Coefficients (y1, y2) of Ric(g) against Q|m1 and Q|m2."""
    r1, r2 = ricci_eigenvalues(x, s)
    return x.x1 * r1, x.x2 * r2


def _y(s: TwoSummandStructure, t: Number) -> tuple[Number, Number]:
    a, b, c = s.quadratic()
    return a + b * t * t, Fraction(1, 2) - c * t


def ratio_map(s: TwoSummandStructure, t: Number) -> Number:
    if not t > 0:
        raise ValueError("ratio must be positive")
    y1, y2 = _y(s, t)
    if y1 <= 0 or y2 <= 0:
        raise NonPositiveRicci(f"Ricci not positive at t={t}: y=({y1}, {y2})")
    return y1 / y2


def ratio_map_derivative(s: TwoSummandStructure, t: Number) -> Number:
    ratio_map(s, t)
    a, b, c = s.quadratic()
    y1, y2 = _y(s, t)
    return (2 * b * t * y2 + c * y1) / (y2 * y2)


def positive_ricci_interval(s: TwoSummandStructure) -> tuple[float, float]:
    """Open interval of ratios t with y1, y2 > 0 (y1 > 0 fails only if a <= 0)."""
    a, b, c = s.quadratic()
    lo = 0.0
    if a <= 0:
        if b == 0:
            return (0.0, 0.0)
        lo = math.sqrt(float(-a / b))
    hi = math.inf if c == 0 else float(1 / (2 * c))
    return lo, hi


def _roots_of_quadratic(coeffs: tuple[float, float, float], lo: float, hi: float) -> list[float]:
    """Roots of p(t) = c0 + c1 t + c2 t^2 in (lo, hi), by sign scan and bisection.

    The interval is split at the vertex so p is monotone on every piece.
    """
    c0, c1, c2 = coeffs

    def p(t: float) -> float:
        return c0 + t * (c1 + t * c2)

    if math.isinf(hi):
        # Cauchy bound: every real root lies below it
        if c2 != 0:
            bound = 1 + max(abs(c0), abs(c1)) / abs(c2)
        elif c1 != 0:
            bound = 1 + abs(c0 / c1)
        else:
            return []
        hi = max(lo, bound) + 1
    cuts = [lo]
    if c2 != 0:
        vertex = -c1 / (2 * c2)
        if lo < vertex < hi:
            cuts.append(vertex)
    cuts.append(hi)
    roots: list[float] = []
    for left, right in zip(cuts, cuts[1:]):
        pl, pr = p(left), p(right)
        if pl == 0 and left > 0 and left not in roots:
            roots.append(left)
        if pl * pr > 0 or pr == 0:
            continue
        # bisect to full double precision
        while True:
            mid = 0.5 * (left + right)
            if not left < mid < right:
                break
            pm = p(mid)
            if pm == 0:
                left = right = mid
                break
            if (pm < 0) == (pl < 0):
                left, pl = mid, pm
            else:
                right = mid
        roots.append(0.5 * (left + right))
    if len(cuts) == 3 and abs(p(cuts[1])) < 1e-15 and not any(abs(r - cuts[1]) < 1e-9 for r in roots):
        roots.append(cuts[1])  # tangential double root
    return sorted(r for r in roots if lo < r < hi)


@dataclass(frozen=True)
class FixedPoint:
    id: str
    ratio: float
    metric: ProductMetric  # normalised so that Ric(g) = g


def _einstein_polynomial(s: TwoSummandStructure) -> tuple[Fraction, Fraction, Fraction]:
    # y1(t) - t*y2(t), i.e. rho(t) - t with the denominator y2 cleared
    a, b, c = s.quadratic()
    return a, Fraction(-1, 2), b + c


def einstein_rays(s: TwoSummandStructure) -> list[FixedPoint]:
    """Einstein metrics of positive Ricci curvature, one per ray, sorted by ratio."""
    lo, hi = positive_ricci_interval(s)
    coeffs = tuple(float(c) for c in _einstein_polynomial(s))
    roots = _roots_of_quadratic(coeffs, lo, hi)
    points = []
    for i, t in enumerate(roots):
        _, y2 = _y(s, t)
        ident = f"ray-{i}"
        if s.round_ratio is not None:
            ident = "round" if abs(t - float(s.round_ratio)) <= 1e-9 * max(1.0, t) else "jensen"
        points.append(FixedPoint(ident, t, ProductMetric(t * float(y2), float(y2))))
    return points


class Stability(str, enum.Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class Linearization:
    fixed_point: FixedPoint
    rho_prime: float
    derivative: float
    stability: Stability


def linearization(s: TwoSummandStructure, fixed_point: FixedPoint) -> Linearization:
    """Derivative 1/rho'(t*) of the forward map rho^{-1} at a fixed ray."""
    rp = float(ratio_map_derivative(s, fixed_point.ratio))
    if rp == 0:
        raise DegenerateDerivative(f"rho' vanishes at t={fixed_point.ratio}; forward map undefined")
    lam = 1.0 / rp
    if abs(abs(lam) - 1.0) <= 1e-9:
        kind = Stability.NEUTRAL
    elif abs(lam) < 1.0:
        kind = Stability.ATTRACTING
    else:
        kind = Stability.REPELLING
    return Linearization(fixed_point, rp, lam, kind)


def invert_ratio(s: TwoSummandStructure, target: float, guess: float | None = None, tol: float = NEWTON_TOL) -> float:
    """Solve rho(t) = target; Newton from ``guess`` with a bisection fallback.

    When several solutions exist the one nearest ``guess`` is returned.
    """
    lo, hi = positive_ricci_interval(s)
    if guess is not None and lo < guess < hi:
        t = float(guess)
        for _ in range(60):
            try:
                f = float(ratio_map(s, t)) - target
                fp = float(ratio_map_derivative(s, t))
            except NonPositiveRicci:
                break
            if abs(f) <= tol * max(1.0, abs(target)):
                return t
            if fp == 0:
                break
            step = t - f / fp
            if not lo < step < hi:
                break
            t = step
    # rho(t) = target  <=>  y1(t) - target*y2(t) = 0 on the positive-Ricci interval
    a, b, c = (float(v) for v in s.quadratic())
    roots = _roots_of_quadratic((a - 0.5 * target, target * c, b), lo, hi)
    if not roots:
        raise NewtonFailure(f"{s.name}: no ratio t with rho(t) = {target} in ({lo}, {hi})")
    ref = guess if guess is not None else target
    return min(roots, key=lambda r: abs(r - ref))


def invert_ricci(s: TwoSummandStructure, target: ProductMetric, guess: float | None = None) -> ProductMetric:
    """A metric g with Ric(g) proportional to ``target``, returned with x2 = 1.

    Ric(g) equals ``target`` itself whenever the target lies in the image of
    Ric, which for two summands is a curve.
    """
    t = invert_ratio(s, float(target.ratio), guess)
    return ProductMetric(t, 1.0)


class Direction(str, enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_STEPS = "MaxSteps"
    LEFT_DOMAIN = "LeftDomain"


@dataclass(frozen=True)
class TraceStep:
    index: int
    metric: ProductMetric
    residual: float


@dataclass(frozen=True)
class IterationTrace:
    structure: str
    direction: Direction
    steps: tuple[TraceStep, ...]
    status: Status
    converged_to: str | None = None


def _residual(s: TwoSummandStructure, successor: ProductMetric, metric: ProductMetric) -> float:
    y1, y2 = ricci_components(successor, s)
    return max(abs(float(y1) - float(metric.x1)), abs(float(y2) - float(metric.x2)))


def _match(rays: list[FixedPoint], t: float, radius: float) -> str | None:
    for fp in rays:
        if abs(t - fp.ratio) <= radius * max(1.0, fp.ratio):
            return fp.id
    return None


def iterate(
    s: TwoSummandStructure,
    g0: ProductMetric,
    direction: Direction | str = Direction.FORWARD,
    max_steps: int = MAX_STEPS,
    tol: float = NEWTON_TOL,
) -> IterationTrace:
    """Run the Ricci iteration from ``g0`` on the invariant two-summand family.

    Forward: each step solves Ric(g_{i+1}) = g_i. Since Ric is scale invariant
    the scale of g_i is fixed by its successor (g_i is replaced by
    Ric(g_{i+1}), so g_0 itself is rescaled once); at a fixed ray this gives
    the metric with Ric(g) = g. Backward: g_{i-1} = Ric(g_i), indices
    decreasing.
    """
    direction = Direction(direction)
    y1, y2 = ricci_components(g0, s)
    if y1 <= 0 or y2 <= 0:
        raise NonPositiveRicci(f"initial metric has non-positive Ricci components ({y1}, {y2})")
    rays = einstein_rays(s)
    t_prev = float(g0.ratio)
    ratios = [t_prev]
    status = Status.MAX_STEPS
    converged_to = None

    for _ in range(max_steps):
        if direction is Direction.FORWARD:
            t_next = invert_ratio(s, t_prev, guess=t_prev, tol=tol)
        else:
            try:
                t_next = float(ratio_map(s, t_prev))
            except NonPositiveRicci:
                status = Status.LEFT_DOMAIN
                break
        ratios.append(t_next)
        if abs(t_next - t_prev) < tol * max(1.0, t_prev):
            hit = _match(rays, t_next, 10 * tol)
            if hit is not None:
                status, converged_to = Status.CONVERGED, hit
                break
        t_prev = t_next

    steps: list[TraceStep] = []
    if direction is Direction.FORWARD:
        # one extra solve fixes the scale of the last metric
        ratios.append(invert_ratio(s, ratios[-1], guess=ratios[-1], tol=tol))
        metrics = []
        for i in range(len(ratios) - 1):
            _, y2_next = _y(s, ratios[i + 1])
            metrics.append(ProductMetric(ratios[i] * float(y2_next), float(y2_next)))
        successors = metrics[1:] + [ProductMetric(ratios[-1], 1.0)]
        for i, (m, nxt) in enumerate(zip(metrics, successors)):
            steps.append(TraceStep(i, m, _residual(s, nxt, m)))
    else:
        metric = ProductMetric(float(g0.x1), float(g0.x2))
        steps.append(TraceStep(0, metric, 0.0))
        for i in range(1, len(ratios)):
            y1, y2 = ricci_components(metric, s)
            prev, metric = metric, ProductMetric(float(y1), float(y2))
            steps.append(TraceStep(-i, metric, _residual(s, prev, metric)))
    return IterationTrace(s.name, direction, tuple(steps), status, converged_to)
