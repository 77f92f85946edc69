import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from padicwave.analysis import TestFunction, fourier_all, kozyrev_wavelet, vladimirov
from padicwave.estimators import (
    HaarPyramidTransformer,
    KozyrevCWT,
    PadicFourierTransformer,
    VladimirovTransformer,
)
from padicwave.exceptions import PadicWaveError, ShapeMismatchError


@pytest.fixture
def X():
    return np.random.default_rng(0).normal(size=(6, 16))


def test_haar_roundtrip_full_and_partial(X):
    for depth in (None, 2):
        t = HaarPyramidTransformer(depth=depth).fit(X)
        Z = t.transform(X)
        assert Z.shape == X.shape
        assert np.max(np.abs(t.inverse_transform(Z) - X)) < 1e-13
    assert HaarPyramidTransformer().fit(X).depth_ == 4


def test_haar_layout_starts_with_coarse(X):
    Z = HaarPyramidTransformer().fit_transform(X)
    assert np.allclose(Z[:, 0], X.mean(axis=1))


def test_haar_validation(X):
    with pytest.raises(PadicWaveError):
        HaarPyramidTransformer().fit(X[:, :12])
    with pytest.raises(ShapeMismatchError):
        HaarPyramidTransformer(depth=5).fit(X)
    with pytest.raises(NotFittedError):
        HaarPyramidTransformer().transform(X)
    with pytest.raises(ShapeMismatchError):
        HaarPyramidTransformer().fit(X).transform(X[:, :8])


def test_fourier_transformer_matches_function_api(X):
    t = PadicFourierTransformer(p=2, support=2, resolution=2).fit(X)
    Z = t.transform(X)
    assert np.allclose(Z[0], fourier_all(TestFunction(2, 2, 2, X[0])).values)
    assert np.max(np.abs(t.inverse_transform(Z) - X)) < 1e-12


def test_vladimirov_transformer_eigenrow():
    psi = kozyrev_wavelet(3, 1, 1).values
    t = VladimirovTransformer(p=3, support=1, resolution=1, alpha=2.0).fit(psi[None])
    assert np.allclose(t.transform(psi[None])[0], 9 * psi)
    f = TestFunction(3, 1, 1, np.arange(9.0))
    assert np.allclose(t.transform(f.values[None])[0], vladimirov(f, 2.0).values)


def test_cwt_transformer_roundtrip(X):
    X0 = X - X.mean(axis=1, keepdims=True)
    t = KozyrevCWT(p=2, support=2, resolution=2, j_min=-2, j_max=1).fit(X0)
    Z = t.transform(X0)
    assert Z.shape[0] == X0.shape[0]
    assert np.max(np.abs(t.inverse_transform(Z) - X0)) < 1e-10
    with pytest.raises(ShapeMismatchError):
        t.inverse_transform(Z[:, :-1])


def test_row_validation(X):
    with pytest.raises(ShapeMismatchError):
        PadicFourierTransformer(p=3, support=1, resolution=1).fit(X)
    bad = X.copy()
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        PadicFourierTransformer(p=2, support=2, resolution=2).fit(bad)
    with pytest.raises(PadicWaveError):
        PadicFourierTransformer(p=4, support=1, resolution=1).fit(X[:, :16])


def test_clone_params_and_pipeline(X):
    est = KozyrevCWT(p=3, support=1, resolution=1, j_min=-1, j_max=0)
    assert clone(est).get_params() == est.get_params()
    est.set_params(j_max=1)
    assert est.j_max == 1
    haar = HaarPyramidTransformer(depth=1)
    pipe = make_pipeline(haar, PadicFourierTransformer(p=2, support=2, resolution=2))
    out = pipe.fit_transform(X)
    manual = PadicFourierTransformer(p=2, support=2, resolution=2).fit_transform(
        HaarPyramidTransformer(depth=1).fit_transform(X))
    assert np.allclose(out, manual)
    real_pipe = make_pipeline(HaarPyramidTransformer(depth=1), HaarPyramidTransformer(depth=2))
    assert np.max(np.abs(real_pipe.inverse_transform(real_pipe.fit_transform(X)) - X)) < 1e-13
