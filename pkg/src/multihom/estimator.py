"""scikit-learn style front end: delays in, weights or event probabilities out."""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from multihom.assembly import all_events, detection_matrix
from multihom.decomposition import InputSpec, weights_from_u
from multihom.scattering import CouplerSpec
from multihom.spectral import OverlapModel, overlap_sq_from_delay


class InterferenceScan(TransformerMixin, BaseEstimator):
    """Delay-scan model for ``k`` photons in each input mode.

    Nothing is learned from data: ``fit`` validates the parameters and
    precomputes the coupler's detection table. ``X`` holds path delays in
    meters as a single column.

    ``transform`` returns the component weights ordered j = k..0;
    ``predict`` returns the probabilities of ``events`` (all events when
    ``None``, bunching first).

    Parameters
    ----------
    photons_per_mode : int
    sigma_omega : float, optional
        Amplitude-Gaussian spectral width in rad/s. Overrides the filter pair.
    fwhm_nm, center_nm : float
        Filter width and center wavelength, used when ``sigma_omega`` is None.
    transmission : float
        Coupler transmission amplitude.
    events : list of (m, n), optional
    """

    def __init__(self, photons_per_mode=2, sigma_omega=None, fwhm_nm=4.0, center_nm=780.0,
                 transmission=1 / math.sqrt(2), events=None):
        self.photons_per_mode = photons_per_mode
        self.sigma_omega = sigma_omega
        self.fwhm_nm = fwhm_nm
        self.center_nm = center_nm
        self.transmission = transmission
        self.events = events

    def _validate(self, X, reset):
        X = check_array(X, ensure_2d=True, dtype=float, ensure_all_finite=True)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single delay column, got {X.shape[1]}")
        if reset:
            self.n_features_in_ = 1
        return X[:, 0]

    def fit(self, X, y=None):
        self._validate(X, reset=True)
        InputSpec(self.photons_per_mode, 1.0)
        if self.sigma_omega is not None:
            self.model_ = OverlapModel(float(self.sigma_omega))
        else:
            self.model_ = OverlapModel.from_filter(self.fwhm_nm * 1e-9, self.center_nm * 1e-9)
        self.coupler_ = CouplerSpec(self.transmission)
        k = self.photons_per_mode
        self.events_ = all_events(k) if self.events is None else [tuple(e) for e in self.events]
        self.detection_matrix_ = detection_matrix(k, self.events_, self.coupler_)
        return self

    def _weights(self, X):
        check_is_fitted(self, "detection_matrix_")
        x = self._validate(X, reset=False)
        return weights_from_u(self.photons_per_mode, np.atleast_1d(overlap_sq_from_delay(self.model_, x)))

    def transform(self, X):
        return self._weights(X)

    def predict(self, X):
        return self._weights(X) @ self.detection_matrix_

    def get_feature_names_out(self, input_features=None):
        k = self.photons_per_mode
        return np.array([f"W_j{j}" for j in range(k, -1, -1)], dtype=object)
