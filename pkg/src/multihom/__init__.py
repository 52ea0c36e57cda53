"""Exact event statistics for multiphoton interference of partially
distinguishable wave packets at a two-mode coupler."""

from multihom.spectral import (
    OverlapModel,
    delay_from_overlap,
    overlap_from_delay,
    overlap_sq_from_delay,
    sigma_from_filter,
)
from multihom.decomposition import ComponentTerm, InputSpec, decompose, weight_curves
from multihom.scattering import (
    BALANCED,
    CouplerSpec,
    EventDistribution,
    Species,
    convolve,
    detection_table,
    species_distribution,
)
from multihom.assembly import (
    ExtremumReport,
    ScanResult,
    all_events,
    event_probability,
    find_extrema,
    scan,
)
from multihom.oracle import MultimodeState, evolve, oracle_event_probability, prepare
from multihom.estimator import InterferenceScan

__version__ = "0.1.0"

__all__ = [
    "BALANCED",
    "ComponentTerm",
    "CouplerSpec",
    "EventDistribution",
    "ExtremumReport",
    "InputSpec",
    "InterferenceScan",
    "MultimodeState",
    "OverlapModel",
    "ScanResult",
    "Species",
    "all_events",
    "convolve",
    "decompose",
    "delay_from_overlap",
    "detection_table",
    "event_probability",
    "evolve",
    "find_extrema",
    "oracle_event_probability",
    "overlap_from_delay",
    "overlap_sq_from_delay",
    "prepare",
    "scan",
    "sigma_from_filter",
    "species_distribution",
    "weight_curves",
]
