"""Brute-force reference: full Fock-space evolution over spatial x temporal modes.

Modes are ordered ``(a e1, a e2, b e1, b e2)`` on input and
``(c e1, c e2, d e1, d e2)`` on output, where ``e1`` is the reference
temporal mode and ``e2`` its orthogonal complement. Nothing here reuses the
species/convolution path; it exists to check that path end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import factorial

from multihom.scattering import BALANCED, CouplerSpec

N_MODES = 4


def _poly_mul(p: dict, q: dict) -> dict:
    out = {}
    for ep, cp in p.items():
        for eq, cq in q.items():
            key = tuple(x + y for x, y in zip(ep, eq))
            out[key] = out.get(key, 0.0) + cp * cq
    return out


def _linear_form(coeffs) -> dict:
    """Polynomial sum_i coeffs[i] * X_i in the four creation operators."""
    out = {}
    for i, c in enumerate(coeffs):
        if c != 0:
            e = [0] * N_MODES
            e[i] = 1
            out[tuple(e)] = c
    return out


def _poly_pow(p: dict, n: int) -> dict:
    out = {(0,) * N_MODES: 1.0}
    for _ in range(n):
        out = _poly_mul(out, p)
    return out


def _fock_norm(occ) -> float:
    # X^n |0> = sqrt(n!) |n>
    return math.sqrt(math.prod(factorial(n) for n in occ))


@dataclass
class MultimodeState:
    amplitudes: dict = field(default_factory=dict)

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def photon_numbers(self) -> set:
        return {sum(occ) for occ in self.amplitudes}

    def normalized(self) -> "MultimodeState":
        s = math.sqrt(self.norm_sq())
        return MultimodeState({o: a / s for o, a in self.amplitudes.items()})

    def __getitem__(self, occ):
        return self.amplitudes.get(tuple(occ), 0.0)


def _poly_to_state(poly: dict, tol: float = 0.0) -> MultimodeState:
    return MultimodeState({
        occ: c * _fock_norm(occ) for occ, c in poly.items() if abs(c) > tol
    })


def prepare(k: int, alpha: float) -> MultimodeState:
    if k < 1 or not (0.0 <= alpha <= 1.0):
        raise ValueError("need k >= 1 and alpha in [0, 1]")
    beta = math.sqrt(1.0 - alpha * alpha)
    a_ref = _linear_form([1.0, 0.0, 0.0, 0.0])
    b_delayed = _linear_form([0.0, 0.0, alpha, beta])
    poly = _poly_mul(_poly_pow(a_ref, k), _poly_pow(b_delayed, k))
    return _poly_to_state(poly).normalized()


def evolve(state: MultimodeState, coupler: CouplerSpec = BALANCED) -> MultimodeState:
    """Apply the coupler to the spatial index of every internal mode."""
    t, r = coupler.transmission, coupler.reflection
    # input mode index -> linear form over output modes (c e1, c e2, d e1, d e2)
    images = [
        _linear_form([t, 0, r, 0]),   # a e1
        _linear_form([0, t, 0, r]),   # a e2
        _linear_form([r, 0, -t, 0]),  # b e1
        _linear_form([0, r, 0, -t]),  # b e2
    ]
    out = {}
    for occ, amp in state.amplitudes.items():
        # |occ> = prod X_i^n_i / sqrt(n_i!) |0>
        poly = {(0,) * N_MODES: amp / _fock_norm(occ)}
        for i, n in enumerate(occ):
            if n:
                poly = _poly_mul(poly, _poly_pow(images[i], n))
        for o, c in poly.items():
            out[o] = out.get(o, 0.0) + c
    return _poly_to_state(out)


def oracle_event_probability(k: int, alpha: float, event, coupler: CouplerSpec = BALANCED) -> float:
    """P(m, n) with the temporal degree of freedom traced out."""
    m, n = event
    if m < 0 or n < 0 or m + n != 2 * k:
        raise ValueError(f"event {event!r} does not have {2 * k} photons")
    final = evolve(prepare(k, alpha), coupler)
    return sum(
        abs(a) ** 2
        for (c1, c2, d1, d2), a in final.amplitudes.items()
        if c1 + c2 == m and d1 + d2 == n
    )


def oracle_distribution(k: int, alpha: float, coupler: CouplerSpec = BALANCED) -> dict:
    final = evolve(prepare(k, alpha), coupler)
    probs = {}
    for (c1, c2, d1, d2), a in final.amplitudes.items():
        key = (c1 + c2, d1 + d2)
        probs[key] = probs.get(key, 0.0) + abs(a) ** 2
    return probs
