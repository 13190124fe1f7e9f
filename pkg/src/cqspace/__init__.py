"""Asymptotic running-time profiles as points of a quasi-metric space.

The package measures how far one running-time function is from another with
the asymmetric complexity distance, and studies the scaling dynamics
f -> alpha * f on that space: orbit contraction and expansion, expansive
separation, stable and unstable sets, time-hierarchy gaps and spanning-set
entropy on finite function sets.
"""

from .classes import containment_check, stable_membership, unstable_membership
from .dynamics import (
    ScalingMap,
    check_expansive,
    iterate,
    lipschitz_residual,
    orbit_trace,
    pair_separation_iterate,
    scale,
    separation_iterate,
    translate,
    translation_orbit,
)
from .entropy import Variant, entropy_estimate, iterated_metric, spanning_number
from .errors import (
    CQSpaceError,
    DomainError,
    ExpressionSyntaxError,
    InconsistentCriteria,
    InputsIndistinguishable,
    InvalidParameter,
    ScalingOverflow,
    UnknownIdentifier,
    UnknownPair,
)
from .funcspace import ComplexityFunction, dominates, evaluate, parse_function, reciprocal, serialise
from .hierarchy import gap_check, hierarchy_report, hierarchy_separation
from .qmetric import closed_form_oracle, dc, dc_conjugate, dc_sym, partial_sums

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
