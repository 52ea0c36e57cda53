"""Gaussian wave-packet overlap as a function of path delay."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299792458.0


@dataclass(frozen=True)
class OverlapModel:
    """Single-photon spectrum of amplitude form exp(-(w - w0)^2 / (2 sigma_omega^2)).

    ``sigma_omega`` and ``center_omega`` are angular frequencies in rad/s.
    ``center_omega`` does not enter the overlap; it is kept for bookkeeping.
    """

    sigma_omega: float
    center_omega: float = 0.0
    speed_of_light: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if not (math.isfinite(self.sigma_omega) and self.sigma_omega > 0):
            raise ValueError(f"sigma_omega must be positive and finite, got {self.sigma_omega!r}")

    @classmethod
    def from_filter(cls, fwhm_wavelength: float, center_wavelength: float) -> "OverlapModel":
        sigma = sigma_from_filter(fwhm_wavelength, center_wavelength)
        return cls(sigma, 2 * math.pi * SPEED_OF_LIGHT / center_wavelength)

    @property
    def length_scale(self) -> float:
        """c / sigma_omega in meters."""
        return self.speed_of_light / self.sigma_omega


def overlap_from_delay(model: OverlapModel, x):
    """Real, non-negative overlap alpha for a path delay ``x`` in meters.

    alpha**2 = exp(-sigma_omega**2 * (x / c)**2 / 2). Accepts scalars or arrays.
    """
    alpha = np.sqrt(overlap_sq_from_delay(model, x))
    if np.ndim(alpha) == 0:
        return float(alpha)
    return alpha


def overlap_sq_from_delay(model: OverlapModel, x):
    """Squared overlap exp(-sigma_omega**2 * (x / c)**2 / 2), evaluated directly."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("delay must be finite")
    tau = arr / model.speed_of_light
    u = np.exp(-((model.sigma_omega * tau) ** 2) / 2.0)
    if u.ndim == 0:
        return float(u)
    return u


def delay_from_overlap(model: OverlapModel, alpha_sq: float) -> float:
    """Non-negative delay (meters) at which the squared overlap equals ``alpha_sq``."""
    if not (0.0 < alpha_sq <= 1.0):
        raise ValueError(f"alpha_sq must lie in (0, 1], got {alpha_sq!r}")
    return model.length_scale * math.sqrt(-2.0 * math.log(alpha_sq))


def sigma_from_filter(fwhm_wavelength: float, center_wavelength: float) -> float:
    """Amplitude-Gaussian width in rad/s for a filter of given wavelength FWHM.

    The filter is taken to pass a Gaussian intensity spectrum; its FWHM in
    angular frequency is 2*pi*c*dlambda/lambda**2. The intensity Gaussian
    exp(-(w - w0)^2 / sigma^2) has FWHM 2*sigma*sqrt(ln 2).
    """
    if not (fwhm_wavelength > 0 and center_wavelength > 0):
        raise ValueError("filter width and center wavelength must be positive")
    fwhm_omega = 2 * math.pi * SPEED_OF_LIGHT * fwhm_wavelength / center_wavelength**2
    return fwhm_omega / (2.0 * math.sqrt(math.log(2.0)))
