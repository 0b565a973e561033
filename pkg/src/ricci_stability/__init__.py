"""Stability of Einstein metrics under the Ricci iteration.

Representation-theoretic Lichnerowicz spectra for compact symmetric spaces,
a certification procedure built on them, and an exact simulator of the
Ricci iteration on two-summand homogeneous metrics.
"""

from .branching import Bundle, KType, SpaceDescriptor, branch, bundle_k_types, cpn, hom_multiplicity, sphere_even
from .errors import (
    DegenerateDerivative,
    InvariantViolation,
    NewtonFailure,
    NonPositiveRicci,
    NotCertifiedError,
    RicciStabilityError,
)
from .iteration import (
    Direction,
    FixedPoint,
    IterationTrace,
    ProductMetric,
    Status,
    TwoSummandStructure,
    einstein_rays,
    invert_ricci,
    iterate,
    linearization,
    ratio_map,
    ratio_map_derivative,
    ricci_components,
)
from .jensen import jensen_structure
from .rootdata import (
    Family,
    HighestWeight,
    RootSystem,
    casimir,
    enumerate_dominant_weights,
    positive_roots,
    rho,
    weyl_dim,
)
from .spectrum import SpectrumLine, adjoint_weight, bundle_spectrum, einstein_constant
from .stability import GaugeClass, GaugeKind, StabilityReport, Verdict, check_stability, classify_line, contraction_rate

__version__ = "0.1.0"
