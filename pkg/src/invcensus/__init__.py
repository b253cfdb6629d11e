"""Involution counts, order spectra and class data for small simple groups."""

from .census import (
    CounterexampleReport,
    TheoremRow,
    classify_by_involutions,
    group_order_formula,
    predicted_involutions,
    verify_counterexample,
)
from .engine import (
    Group,
    InvolutionClassReport,
    OrderSpectrum,
    centralizer_order,
    conjugacy_classes,
    element_order,
    enumerate_closure,
    involution_class_decomposition,
    involution_count,
    order_spectrum,
)
from .groups import FamilyId, GroupId, build_group
from .scan import (
    CatalogEntry,
    CollisionRecord,
    build_catalog,
    conjecture15_scan,
    herzog_collision_scan,
    zar_distinctness_check,
)

__version__ = "0.1.0"
