"""Output statistics of a lossless two-mode coupler.

Input creation operators map as

    a+ -> t c+ + r d+
    b+ -> r c+ - t d+

with ``r = sqrt(1 - t**2)``. Photons of one species are mutually
indistinguishable and interfere; distinct species only add their counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


@dataclass(frozen=True)
class CouplerSpec:
    transmission: float = 1 / math.sqrt(2)

    def __post_init__(self):
        if not (0.0 < self.transmission < 1.0):
            raise ValueError(f"transmission amplitude must lie in (0, 1), got {self.transmission!r}")

    @property
    def reflection(self) -> float:
        return math.sqrt(1.0 - self.transmission**2)

    @property
    def balanced(self) -> bool:
        return abs(self.transmission - 1 / math.sqrt(2)) < 1e-15

    def matrix(self):
        """Rows: input (a, b); columns: output (c, d)."""
        t, r = self.transmission, self.reflection
        return ((t, r), (r, -t))


BALANCED = CouplerSpec()


@dataclass(frozen=True)
class Species:
    a_count: int
    b_count: int

    def __post_init__(self):
        if self.a_count < 0 or self.b_count < 0:
            raise ValueError("photon counts must be non-negative")

    @property
    def total(self) -> int:
        return self.a_count + self.b_count


@dataclass
class EventDistribution:
    """Probabilities of output events ``(m, n)``: m photons in c, n in d."""

    total: int
    probs: dict = field(default_factory=dict)

    def __getitem__(self, event) -> float:
        return self.probs.get(tuple(event), 0)

    def events(self):
        return [(m, self.total - m) for m in range(self.total, -1, -1)]

    def norm(self):
        return sum(self.probs.values())

    def as_float(self) -> "EventDistribution":
        return EventDistribution(self.total, {e: float(p) for e, p in self.probs.items()})


def _coefficients(p: int, q: int):
    """Signed integer coefficients and powers of t, r for (t c + r d)^p (r c - t d)^q.

    Yields ``(m, coef, t_power, r_power)`` per contributing term.
    """
    for i in range(p + 1):
        for l in range(q + 1):
            coef = comb(p, i) * comb(q, l) * (-1) ** (q - l)
            yield i + l, coef, i + (q - l), (p - i) + l


def species_distribution(sp: Species, coupler: CouplerSpec = BALANCED, exact: bool = False) -> EventDistribution:
    """Output distribution of one species of indistinguishable photons.

    With ``exact=True`` (balanced coupler only) probabilities are returned as
    :class:`fractions.Fraction`.
    """
    p, q = sp.a_count, sp.b_count
    n_tot = p + q
    if n_tot == 0:
        return EventDistribution(0, {(0, 0): Fraction(1) if exact else 1.0})
    if exact:
        if not coupler.balanced:
            raise ValueError("exact mode requires the balanced coupler")
        return _species_exact(p, q)

    t, r = coupler.transmission, coupler.reflection
    amp = [0.0] * (n_tot + 1)
    for m, coef, tp, rp in _coefficients(p, q):
        amp[m] += coef * t**tp * r**rp
    denom = factorial(p) * factorial(q)
    probs = {}
    for m in range(n_tot, -1, -1):
        n = n_tot - m
        probs[(m, n)] = amp[m] ** 2 * (factorial(m) * factorial(n) / denom)
    return EventDistribution(n_tot, probs)


@lru_cache(maxsize=None)
def _species_exact(p: int, q: int) -> EventDistribution:
    # balanced: every term carries 2**(-N/2), so coefficients stay integer
    n_tot = p + q
    coef = [0] * (n_tot + 1)
    for m, c, _, _ in _coefficients(p, q):
        coef[m] += c
    denom = factorial(p) * factorial(q) * 2**n_tot
    probs = {(m, n_tot - m): Fraction(coef[m] ** 2 * factorial(m) * factorial(n_tot - m), denom)
             for m in range(n_tot, -1, -1)}
    return EventDistribution(n_tot, probs)


def convolve(dists) -> EventDistribution:
    dists = list(dists)
    if not dists:
        raise ValueError("need at least one distribution")
    out = dists[0]
    for other in dists[1:]:
        zero = next(iter(out.probs.values())) * 0
        probs = {}
        for (m1, n1), p1 in out.probs.items():
            for (m2, n2), p2 in other.probs.items():
                key = (m1 + m2, n1 + n2)
                probs[key] = probs.get(key, 0) + p1 * p2
        total = out.total + other.total
        out = EventDistribution(total, {e: probs.get(e, zero) for e in _ordered(total)})
    return out


def _ordered(total):
    return [(m, total - m) for m in range(total, -1, -1)]


def detection_table(k: int, coupler: CouplerSpec = BALANCED, exact: bool = False) -> dict:
    """Map ``j -> EventDistribution`` over N = 2k for each decomposition component.

    Component ``j`` has ``k`` photons from mode a and ``j`` from mode b in the
    reference temporal mode, plus ``k - j`` mode-b photons in the orthogonal one.
    """
    if k < 1:
        raise ValueError("photons_per_mode must be >= 1")
    table = {}
    for j in range(k, -1, -1):
        parts = [species_distribution(Species(k, j), coupler, exact)]
        if j < k:
            parts.append(species_distribution(Species(0, k - j), coupler, exact))
        table[j] = convolve(parts)
    return table
