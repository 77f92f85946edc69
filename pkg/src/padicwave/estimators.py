"""scikit-learn compatible transformers.

Each transformer treats a row of ``X`` as one sample: a real signal for the
Haar pyramid, or the coset values of a :class:`~padicwave.analysis.TestFunction`
for the p-adic operators. They follow the usual ``fit`` / ``transform`` /
``inverse_transform`` protocol, so they compose with ``Pipeline``,
``clone`` and ``get_params``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_int, check_power_of_two, check_prime
from .analysis import TestFunction, fourier_all, inverse_fourier_all, vladimirov
from .cwt import CwtGrid, cwt_forward, cwt_inverse
from .exceptions import ShapeMismatchError
from .haar import haar_forward_real, haar_inverse_real, Pyramid

__all__ = [
    "HaarPyramidTransformer",
    "KozyrevCWT",
    "PadicFourierTransformer",
    "VladimirovTransformer",
]


def check_function_rows(X, n_cosets: int) -> np.ndarray:
    """Validate a 2-D batch of coset values; complex input is allowed."""
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ShapeMismatchError(f"expected a 2-D array, got shape {X.shape}")
    if X.shape[1] != n_cosets:
        raise ShapeMismatchError(f"expected {n_cosets} coset values per row, got {X.shape[1]}")
    X = X.astype(complex)
    if not np.all(np.isfinite(X)):
        raise ValueError("input contains NaN or infinity")
    return X


class HaarPyramidTransformer(TransformerMixin, BaseEstimator):
    """Real-arithmetic Haar pyramid as a transformer.

    Parameters
    ----------
    depth : int or None, default=None
        Number of levels. ``None`` decomposes all the way to one coarse value.

    Attributes
    ----------
    depth_ : int
        Depth actually used.
    n_features_in_ : int
        Signal length seen during ``fit`` (a power of two).

    Notes
    -----
    ``transform`` returns ``[s^J, d^J, d^(J-1), ..., d^1]`` concatenated
    along the feature axis, so the output has as many columns as the input.
    """

    def __init__(self, depth=None):
        self.depth = depth

    def fit(self, X, y=None):
        X = check_array(X)
        log_n = check_power_of_two(X.shape[1], "n_features")
        self.depth_ = log_n if self.depth is None else check_int(self.depth, "depth", 0)
        if self.depth_ > log_n:
            raise ShapeMismatchError(f"depth {self.depth_} exceeds log2(n_features) = {log_n}")
        self.n_features_in_ = X.shape[1]
        return self

    def _check(self, X):
        check_is_fitted(self, "depth_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ShapeMismatchError(
                f"X has {X.shape[1]} features, expected {self.n_features_in_}"
            )
        return X

    def transform(self, X):
        pyr = haar_forward_real(self._check(X), self.depth_)
        return np.concatenate([pyr.coarse] + list(pyr.details[::-1]), axis=1)

    def inverse_transform(self, X):
        X = self._check(X)
        n_coarse = self.n_features_in_ >> self.depth_
        coarse, rest = X[:, :n_coarse], X[:, n_coarse:]
        details, width = [], n_coarse
        for _ in range(self.depth_):
            details.append(rest[:, :width])
            rest, width = rest[:, width:], width * 2
        return haar_inverse_real(Pyramid(coarse, tuple(details[::-1]), "real"))


class _FunctionTransformerBase(TransformerMixin, BaseEstimator):
    """Shared validation for transformers acting on coset-value rows."""

    def _window_fit(self, X):
        self.p_ = check_prime(self.p)
        self.support_ = check_int(self.support, "support")
        self.resolution_ = check_int(self.resolution, "resolution", -self.support_)
        self.n_features_in_ = self.p_ ** (self.support_ + self.resolution_)
        check_function_rows(X, self.n_features_in_)
        return self

    def _rows(self, X):
        check_is_fitted(self, "n_features_in_")
        return check_function_rows(X, self.n_features_in_)

    def _as_function(self, row) -> TestFunction:
        return TestFunction(self.p_, self.support_, self.resolution_, row)


class PadicFourierTransformer(_FunctionTransformerBase):
    """p-adic Fourier transform of functions with support ``K`` and resolution ``J``.

    The transformed rows are coset values of the transform, which has
    support ``J`` and resolution ``K``.
    """

    def __init__(self, p=2, support=1, resolution=1):
        self.p = p
        self.support = support
        self.resolution = resolution

    def fit(self, X, y=None):
        return self._window_fit(X)

    def transform(self, X):
        return np.stack([fourier_all(self._as_function(r)).values for r in self._rows(X)])

    def inverse_transform(self, X):
        X = self._rows(X)
        dual = lambda r: TestFunction(self.p_, self.resolution_, self.support_, r)  # noqa: E731
        return np.stack([inverse_fourier_all(dual(r)).values for r in X])


class VladimirovTransformer(_FunctionTransformerBase):
    """Apply the Vladimirov operator ``D^alpha`` to each row."""

    def __init__(self, p=2, support=0, resolution=1, alpha=1.0):
        self.p = p
        self.support = support
        self.resolution = resolution
        self.alpha = alpha

    def fit(self, X, y=None):
        return self._window_fit(X)

    def transform(self, X):
        return np.stack([vladimirov(self._as_function(r), self.alpha).values for r in self._rows(X)])


class KozyrevCWT(_FunctionTransformerBase):
    """Kozyrev-wavelet CWT with a truncated scale range.

    ``transform`` flattens the coefficient grid (scale-major, then unit
    digit, then translation); ``inverse_transform`` reconstructs and samples
    the result back onto the input window.
    """

    def __init__(self, p=2, support=1, resolution=1, j_min=-4, j_max=4):
        self.p = p
        self.support = support
        self.resolution = resolution
        self.j_min = j_min
        self.j_max = j_max

    def fit(self, X, y=None):
        self._window_fit(X)
        probe = cwt_forward(self._as_function(np.zeros(self.n_features_in_)), self.j_min, self.j_max)
        self.window_ = (probe.support, probe.resolution)
        self.layout_ = [(j, probe.coefficients[j].shape) for j in probe.scales]
        return self

    def transform(self, X):
        out = []
        for r in self._rows(X):
            grid = cwt_forward(self._as_function(r), self.j_min, self.j_max)
            out.append(np.concatenate([grid.coefficients[j].reshape(-1) for j in grid.scales]))
        return np.stack(out)

    def inverse_transform(self, X):
        check_is_fitted(self, "layout_")
        X = np.atleast_2d(np.asarray(X, dtype=complex))
        total = sum(int(np.prod(shape)) for _, shape in self.layout_)
        if X.shape[1] != total:
            raise ShapeMismatchError(f"expected {total} coefficients per row, got {X.shape[1]}")
        rows = []
        for r in X:
            coeffs, start = {}, 0
            for j, shape in self.layout_:
                size = int(np.prod(shape))
                coeffs[j] = r[start:start + size].reshape(shape)
                start += size
            grid = CwtGrid(self.p_, *self.window_, self.j_min, self.j_max, coeffs)
            rec = cwt_inverse(grid).restrict(self.support_, self.resolution_)
            rows.append(rec.values)
        return np.stack(rows)
