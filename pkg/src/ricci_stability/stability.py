"""Stability certification for symmetric-space Einstein metrics.

Inside each G-isotypic summand, the one-form eigenvectors map injectively
under the symmetrised covariant derivative into the Sym2 eigenspace with
the same eigenvalue, except for Killing fields, which span exactly one copy
of the adjoint summand. Whatever Sym2 multiplicity is left over is
divergence-free. The metric is certified when the Laplacian kernel on Sym2
is spanned by g alone and no divergence-free eigenvalue sits in [-2, 0).
Positive eigenvalues cannot occur because Casimir values are >= 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .branching import Bundle, SpaceDescriptor
from .errors import InvariantViolation, NotCertifiedError
from .rootdata import HighestWeight
from .spectrum import SpectrumLine, bundle_spectrum, einstein_constant

WINDOW = Fraction(-2)
RATE_WINDOW_FACTOR = 3
SCALING_RATE = Fraction(1, 2)


class GaugeKind(str, enum.Enum):
    KERNEL = "Kernel"
    GAUGE = "Gauge"
    DIV_FREE = "DivFree"


@dataclass(frozen=True)
class GaugeClass:
    kind: GaugeKind
    count: int = 0  # kernel multiplicity, or divergence-free excess

    def __str__(self) -> str:
        if self.kind is GaugeKind.GAUGE:
            return "Gauge"
        return f"{self.kind.value}({self.count})"


class Verdict(str, enum.Enum):
    STABLE = "Stable"
    NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class Offender:
    weight: HighestWeight
    mu: Fraction
    excess: int


@dataclass(frozen=True)
class StabilityReport:
    space: str
    einstein_constant: Fraction
    kernel_dim: int
    offenders: tuple[Offender, ...]
    lines: tuple[tuple[SpectrumLine, GaugeClass], ...]
    rate: Fraction | None = field(default=None)

    @property
    def condition_a(self) -> bool:
        return self.kernel_dim == 1

    @property
    def condition_b(self) -> bool:
        return not self.offenders

    @property
    def verdict(self) -> Verdict:
        if self.condition_a and self.condition_b:
            return Verdict.STABLE
        return Verdict.NOT_CERTIFIED


def classify_line(space: SpaceDescriptor, line: SpectrumLine) -> GaugeClass:
    lam = line.weight
    if lam.is_zero():
        return GaugeClass(GaugeKind.KERNEL, line.dim_gamma * line.h2)
    killing = 1 if lam == space.adjoint else 0
    gauge = line.h1 - killing
    if gauge < 0:
        raise InvariantViolation(f"{space.name}: Killing summand {lam} missing from one-forms")
    excess = line.h2 - gauge
    if excess < 0:
        raise InvariantViolation(
            f"{space.name}: at {lam} one-form multiplicity {gauge} exceeds Sym2 multiplicity {line.h2}"
        )
    if excess == 0:
        return GaugeClass(GaugeKind.GAUGE)
    return GaugeClass(GaugeKind.DIV_FREE, excess)


def _classified(space: SpaceDescriptor, window_factor: int) -> list[tuple[SpectrumLine, GaugeClass]]:
    return [(line, classify_line(space, line)) for line in bundle_spectrum(space, Bundle.SYM2, window_factor)]


def _rate(classified: list[tuple[SpectrumLine, GaugeClass]]) -> Fraction:
    # dF_0 = (modified Laplacian)^-1: 1/2 on the scaling direction g,
    # 2/|mu| on each divergence-free eigenspace
    rate = SCALING_RATE
    for line, cls in classified:
        if cls.kind is GaugeKind.DIV_FREE:
            rate = max(rate, 2 / -line.mu)
    return rate


def check_stability(space: SpaceDescriptor) -> StabilityReport:
    classified = _classified(space, 1)
    window = [(line, cls) for line, cls in classified if WINDOW <= line.mu <= 0]
    kernel_dim = sum(line.multiplicity(Bundle.SYM2) for line, _ in window if line.mu == 0)
    offenders = tuple(
        Offender(line.weight, line.mu, cls.count)
        for line, cls in window
        if line.mu < 0 and cls.kind is GaugeKind.DIV_FREE
    )
    report = StabilityReport(
        space=space.name,
        einstein_constant=einstein_constant(space),
        kernel_dim=kernel_dim,
        offenders=offenders,
        lines=tuple(window),
    )
    if report.verdict is Verdict.STABLE:
        rate = _rate(_classified(space, RATE_WINDOW_FACTOR))
        if not SCALING_RATE <= rate < 1:
            raise InvariantViolation(f"{space.name}: contraction rate {rate} outside [1/2, 1)")
        report = replace(report, rate=rate)
    return report


def contraction_rate(space: SpaceDescriptor) -> Fraction:
    """Operator norm of the linearised Ricci-iteration map on divergence-free tensors."""
    report = check_stability(space)
    if report.rate is None:
        raise NotCertifiedError(f"{space.name} is not certified stable; no contraction rate")
    return report.rate
