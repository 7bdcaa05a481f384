"""Symbolic dynamics of tent maps and the point clouds of their
Galois conjugates: admissible itineraries, their polynomials, batched
root-finding, limit-set exclusion tests and gap-radius verification."""

__version__ = "0.1.0"

from .words import (
    Word,
    SignSeq,
    AuxString,
    ItineraryResult,
    word_from_id,
    cumulative_signs,
    word_sign,
    twisted_lex_compare,
    alt_lex_compare,
    shift_word,
    is_admissible,
    auxiliary_string,
    word_from_aux,
    is_extremal,
    is_dominant_word,
    period_double,
    dominant_extensions,
    concat_admissible,
    canonical_preperiodic,
    power_tail_word,
    itinerary,
)
from .polynomials import (
    IntPolynomial,
    parry_polynomial,
    kneading_polynomial,
    preperiodic_polynomial,
    remove_trivial_factors,
    irreducibility_certificate,
)
from .rootfind import (
    RootSet,
    RootfindingError,
    DriftReport,
    all_roots,
    batch_all_roots,
    leading_root,
    root_drift_harness,
)
from .dataset import (
    TeapotPoint,
    EnumStats,
    PersistenceReport,
    ProbeReport,
    enumerate_admissible,
    enumerate_preperiodic,
    count_admissible,
    build_point_cloud,
    read_point_cloud,
    persistence_diagnostic,
    preperiodic_difference_probe,
)
from .ifs import (
    IfsQuery,
    GapSpec,
    exclusion_test,
    gap_radius,
    min_ring_modulus,
    verify_gap,
)

__all__ = [name for name in dir() if not name.startswith("_")]
