"""Event probabilities as weighted sums over distinguishability components.

``P(m, n) = sum_j W_j(u) * p_j(m, n)`` where ``u = alpha**2``. Delay enters
only through ``u``, so scans and extremum searches are carried out in ``u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from multihom.decomposition import WeightTable, binomial, weights_from_u
from multihom.scattering import BALANCED, CouplerSpec, detection_table
from multihom.spectral import OverlapModel, delay_from_overlap, overlap_sq_from_delay

INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def all_events(k: int) -> list:
    """All N+1 events for N = 2k; the two bunching events come first."""
    n_tot = 2 * k
    rest = [(m, n_tot - m) for m in range(n_tot - 1, 0, -1)]
    return [(n_tot, 0), (0, n_tot)] + rest


def parse_event(text: str) -> tuple:
    m, n = (int(s) for s in text.split(","))
    return m, n


def _check_event(k, event):
    m, n = event
    if m < 0 or n < 0 or m + n != 2 * k:
        raise ValueError(f"event {event!r} does not have {2 * k} photons")
    return int(m), int(n)


@lru_cache(maxsize=None)
def _detection_columns(k: int, coupler: CouplerSpec) -> dict:
    """Event -> array of p_j ordered j = k..0.

    The balanced coupler goes through the rational table so that exact zeros
    (e.g. the two-photon coincidence) stay exactly zero.
    """
    if coupler.balanced:
        exact = _exact_columns(k)
        return {e: np.array([float(p) for p in ps]) for e, ps in exact.items()}
    table = detection_table(k, coupler)
    return {e: np.array([table[j][e] for j in range(k, -1, -1)]) for e in table[k].events()}


@lru_cache(maxsize=None)
def _exact_columns(k: int) -> dict:
    table = detection_table(k, BALANCED, exact=True)
    return {e: tuple(table[j][e] for j in range(k, -1, -1)) for e in table[k].events()}


def detection_matrix(k: int, events, coupler: CouplerSpec = BALANCED) -> np.ndarray:
    """Shape ``(k + 1, len(events))``; rows follow j = k..0."""
    cols = _detection_columns(k, coupler)
    if not events:
        return np.zeros((k + 1, 0))
    return np.stack([cols[_check_event(k, e)] for e in events], axis=1)


def event_probability(k: int, alpha: float, event, coupler: CouplerSpec = BALANCED) -> float:
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    event = _check_event(k, event)
    w = weights_from_u(k, alpha * alpha)
    return float(w @ _detection_columns(k, coupler)[event])


def probability_of_u(k: int, u, event, coupler: CouplerSpec = BALANCED):
    """Vectorised P(u) for a single event."""
    event = _check_event(k, event)
    return weights_from_u(k, u) @ _detection_columns(k, coupler)[event]


def _exact_probability_of_u(k: int, u: float, event) -> Fraction:
    uf = Fraction(u)
    vf = 1 - uf
    ps = _exact_columns(k)[event]
    return sum(binomial(k, j) * uf**j * vf ** (k - j) * ps[k - j] for j in range(k + 1))


@dataclass
class ScanResult:
    k: int
    x: np.ndarray
    alpha_sq: np.ndarray
    weights: WeightTable
    events: list
    probs: np.ndarray

    def column(self, event) -> np.ndarray:
        return self.probs[:, self.events.index(tuple(event))]

    def table(self, length_unit: float = 1e-6):
        """Header and float rows; ``x`` is expressed in multiples of ``length_unit``."""
        k = self.k
        header = ["x_um", "alpha_sq", "W_indis", "W_inter", "W_dist"]
        header += [f"W_j{j}" for j in range(k, -1, -1)]
        header += [f"P_{m}_{n}" for m, n in self.events]
        data = np.column_stack([
            self.x / length_unit,
            self.alpha_sq,
            self.weights.indis,
            self.weights.inter,
            self.weights.dist,
            self.weights.per_j,
            self.probs,
        ])
        return header, data


def scan(k: int, model: OverlapModel, xs, events=None, coupler: CouplerSpec = BALANCED) -> ScanResult:
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    events = all_events(k) if events is None else [_check_event(k, e) for e in events]
    alpha_sq = np.atleast_1d(overlap_sq_from_delay(model, xs))
    w = weights_from_u(k, alpha_sq)
    probs = w @ detection_matrix(k, events, coupler)
    return ScanResult(k, xs, alpha_sq, WeightTable(k, xs, alpha_sq, w), events, probs)


@dataclass
class Extremum:
    kind: str
    u: float
    p: float
    x: tuple | None = None


@dataclass
class ExtremumReport:
    event: tuple
    classification: str
    extrema: list = field(default_factory=list)
    p_zero_delay: float = 0.0
    p_infinite_delay: float = 0.0
    flat_regions: list = field(default_factory=list)


def golden_section(f, lo: float, hi: float, tol: float = 1e-10):
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns the bracket midpoint."""
    a, b = lo, hi
    c = b - INV_GOLDEN * (b - a)
    d = a + INV_GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def find_extrema(k: int, event, coupler: CouplerSpec = BALANCED, grid: int = 257,
                 model: OverlapModel | None = None, tol: float = 1e-10,
                 flat_tol: float = 1e-14) -> ExtremumReport:
    """Locate interior extrema of P(u) for one event and classify its monotonicity.

    A uniform grid in ``u`` brackets sign changes of the slope; each bracket
    is refined by golden section to width ``tol``. For the balanced coupler
    comparisons inside the refinement use exact rational arithmetic, so the
    position is not limited by float cancellation near a flat minimum.
    Runs of at least three consecutive grid steps with ``|dP| <= flat_tol``
    are reported as flat regions rather than extrema. If ``model`` is
    given, each extremum also carries its symmetric delays ``(-x, +x)``.
    """
    if grid < 64:
        raise ValueError("grid must have at least 64 points")
    event = _check_event(k, event)
    us = np.linspace(0.0, 1.0, grid)
    ps = probability_of_u(k, us, event, coupler)
    d = np.diff(ps)
    scale = max(1.0, float(np.max(np.abs(ps))))
    sign = np.where(np.abs(d) <= flat_tol * scale, 0, np.sign(d)).astype(int)

    report = ExtremumReport(
        event=event,
        classification="monotonic",
        p_zero_delay=float(probability_of_u(k, 1.0, event, coupler)),
        p_infinite_delay=float(probability_of_u(k, 0.0, event, coupler)),
    )

    run_start = None
    for i, s in enumerate(list(sign) + [1]):
        if s == 0 and run_start is None:
            run_start = i
        elif s != 0 and run_start is not None:
            if i - run_start >= 3:
                report.flat_regions.append((float(us[run_start]), float(us[i])))
            run_start = None
    if not np.any(sign):
        report.classification = "flat"
        return report

    if coupler.balanced:
        def objective(u):
            return _exact_probability_of_u(k, u, event)
    else:
        def objective(u):
            return float(probability_of_u(k, u, event, coupler))

    nz = [(i, s) for i, s in enumerate(sign) if s != 0]
    for (i0, s0), (i1, s1) in zip(nz, nz[1:]):
        if s0 == s1:
            continue
        lo, hi = float(us[i0]), float(us[i1 + 1])
        if s0 < 0:
            kind = "min"
            u_star = golden_section(objective, lo, hi, tol)
        else:
            kind = "max"
            u_star = golden_section(lambda u: -objective(u), lo, hi, tol)
        p_star = float(probability_of_u(k, u_star, event, coupler))
        x_pair = None
        if model is not None:
            x = delay_from_overlap(model, u_star)
            x_pair = (-x, x)
        report.extrema.append(Extremum(kind, u_star, p_star, x_pair))
    if report.extrema:
        report.classification = "non-monotonic"
    return report
