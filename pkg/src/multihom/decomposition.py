"""Orthogonal decomposition of the delayed input mode.

Each of the ``k`` photons in the delayed mode is split into a part that
shares the reference temporal mode and an orthogonal remainder. Component
``j`` holds ``j`` photons in the reference mode and carries the binomial
weight ``C(k, j) * u**j * (1 - u)**(k - j)`` with ``u = alpha**2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from multihom.scattering import Species
from multihom.spectral import OverlapModel, overlap_sq_from_delay

MAX_PHOTONS_PER_MODE = 32

_BINOMIALS = [[comb(n, j) for j in range(n + 1)] for n in range(MAX_PHOTONS_PER_MODE + 1)]


def binomial(n: int, j: int) -> int:
    if n > MAX_PHOTONS_PER_MODE:
        raise OverflowError(f"binomial table only covers n <= {MAX_PHOTONS_PER_MODE}")
    return _BINOMIALS[n][j]


def type_label(j: int, k: int) -> str:
    if j == k:
        return "indis"
    if j == 0:
        return "dist"
    return "inter"


@dataclass(frozen=True)
class InputSpec:
    photons_per_mode: int
    alpha: float

    def __post_init__(self):
        k = self.photons_per_mode
        if int(k) != k or k < 1:
            raise ValueError(f"photons_per_mode must be a positive integer, got {k!r}")
        if k > MAX_PHOTONS_PER_MODE:
            raise OverflowError(f"photons_per_mode > {MAX_PHOTONS_PER_MODE} is not supported")
        if not (0.0 <= self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")

    @property
    def total(self) -> int:
        return 2 * self.photons_per_mode


@dataclass(frozen=True)
class ComponentTerm:
    j: int
    weight: float
    species: tuple
    label: str


def component_species(k: int, j: int) -> tuple:
    """Species content of component ``j``: reference-mode photons, then the orthogonal ones."""
    if j == k:
        return (Species(k, k),)
    return (Species(k, j), Species(0, k - j))


def weights_from_u(k: int, u):
    """Weights W_j for j = k, k-1, ..., 0 as a function of u = alpha**2.

    Vectorised over ``u``; the last axis runs over j in descending order.
    """
    if k > MAX_PHOTONS_PER_MODE:
        raise OverflowError(f"photons_per_mode > {MAX_PHOTONS_PER_MODE} is not supported")
    u = np.asarray(u, dtype=float)
    v = 1.0 - u
    cols = [binomial(k, j) * u**j * v ** (k - j) for j in range(k, -1, -1)]
    return np.stack(cols, axis=-1)


def decompose(spec: InputSpec) -> list:
    k = spec.photons_per_mode
    w = weights_from_u(k, spec.alpha**2)
    return [
        ComponentTerm(j, float(w[k - j]), component_species(k, j), type_label(j, k))
        for j in range(k, -1, -1)
    ]


@dataclass
class WeightTable:
    """Weights along a delay scan; ``per_j[:, i]`` belongs to ``j = k - i``."""

    k: int
    x: np.ndarray
    alpha_sq: np.ndarray
    per_j: np.ndarray

    @property
    def indis(self):
        return self.per_j[:, 0]

    @property
    def dist(self):
        return self.per_j[:, -1]

    @property
    def inter(self):
        if self.k == 1:
            return np.zeros_like(self.alpha_sq)
        return self.per_j[:, 1:-1].sum(axis=1)


def weight_curves(k: int, model: OverlapModel, xs) -> WeightTable:
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    alpha_sq = np.atleast_1d(overlap_sq_from_delay(model, xs))
    return WeightTable(k, xs, alpha_sq, weights_from_u(k, alpha_sq))
