"""Lichnerowicz spectra on one-forms and symmetric 2-tensors of a symmetric space.

On the G-isotypic summand of highest weight ``lam`` the Casimir acts by
``c = casimir(lam)`` and equals minus the Lichnerowicz Laplacian of the
normal metric. After rescaling to Ric(g) = g the eigenvalue is ``mu = -c/E``,
where the Einstein constant ``E = casimir(adjoint)/2`` pins Killing fields at
``mu = -2``. That calibration absorbs the choice of invariant inner product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .branching import Bundle, SpaceDescriptor, hom_multiplicity
from .rootdata import HighestWeight, casimir, enumerate_dominant_weights, weyl_dim


@dataclass(frozen=True)
class SpectrumLine:
    weight: HighestWeight
    casimir: Fraction
    mu: Fraction
    dim_gamma: int
    h1: int
    h2: int

    def multiplicity(self, bundle: Bundle) -> int:
        h = self.h1 if Bundle(bundle) is Bundle.ONE_FORM else self.h2
        return self.dim_gamma * h


def adjoint_weight(space: SpaceDescriptor) -> HighestWeight:
    return space.adjoint


def einstein_constant(space: SpaceDescriptor) -> Fraction:
    return casimir(space.adjoint) / 2


def make_line(space: SpaceDescriptor, lam: HighestWeight) -> SpectrumLine:
    c = casimir(lam)
    return SpectrumLine(
        weight=lam,
        casimir=c,
        mu=-c / einstein_constant(space),
        dim_gamma=weyl_dim(lam),
        h1=hom_multiplicity(space, lam, Bundle.ONE_FORM),
        h2=hom_multiplicity(space, lam, Bundle.SYM2),
    )


def bundle_spectrum(
    space: SpaceDescriptor, bundle: Bundle, window_factor: Fraction | int = 1
) -> list[SpectrumLine]:
    """Spectrum lines with Casimir <= window_factor * 2E, sorted by Casimir.

    The one-form spectrum keeps lines with h1 > 0. The Sym2 spectrum keeps
    lines with h2 > 0 and also the one-form lines (h1 > 0), since those are
    the candidate gauge partners the Sym2 eigenvalues are compared against;
    this is how the Killing line (h2 = 0 on spheres) appears in it.
    """
    window_factor = Fraction(window_factor)
    if window_factor < 1:
        raise ValueError("window_factor must be >= 1")
    bundle = Bundle(bundle)
    cutoff = window_factor * 2 * einstein_constant(space)
    lines = []
    for lam in enumerate_dominant_weights(space.g_system, cutoff):
        line = make_line(space, lam)
        keep = line.h1 > 0 if bundle is Bundle.ONE_FORM else (line.h1 > 0 or line.h2 > 0)
        if keep:
            lines.append(line)
    return lines
