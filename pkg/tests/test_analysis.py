from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import brute_fourier, brute_vladimirov, padic_norm, representatives
from padicwave.analysis import (
    TestFunction,
    ball_indicator,
    fourier,
    fourier_all,
    integrate,
    inverse_fourier_all,
    kozyrev_wavelet,
    vladimirov,
    vladimirov_constant,
    wavelet_atom,
)
from padicwave.exceptions import PadicWaveError, PrecisionError, ResolutionError
from padicwave.padic import from_rational


def random_function(p, K, J, seed=0):
    rng = np.random.default_rng(seed)
    n = p ** (K + J)
    return TestFunction(p, K, J, rng.normal(size=n) + 1j * rng.normal(size=n))


windows = st.tuples(
    st.sampled_from([2, 3, 5]), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2**32 - 1)
)


# -- structure ------------------------------------------------------------------

def test_coset_index_and_evaluation():
    f = TestFunction(3, 1, 1, np.arange(9))
    assert f.coset_index(Fraction(1, 3)) == 1
    assert f(Fraction(4, 3) + 3 * 7) == 4  # the coset of 4/3 mod 3Z_3
    assert f(Fraction(1, 9)) == 0            # outside the support
    assert f(from_rational(Fraction(2, 3), 3, 4)) == 2
    with pytest.raises(PrecisionError):
        f(from_rational(Fraction(2, 3), 3, 1))


def test_coset_digits_lowest_first():
    f = TestFunction(2, 1, 2, np.zeros(8))
    assert f.coset_digits(6) == [0, 1, 1]


def test_window_validation():
    with pytest.raises(ResolutionError):
        TestFunction(2, 1, -2, [1.0])
    with pytest.raises(PadicWaveError):
        TestFunction(2, 1, 1, np.zeros(3))
    with pytest.raises(PadicWaveError):
        TestFunction(6, 1, 1, np.zeros(36))


@given(windows)
def test_refine_preserves_values_and_integral(w):
    p, K, J, seed = w
    f = random_function(p, K, J, seed)
    g = f.refine(K + 1, J + 1)
    for n, b in enumerate(representatives(p, K, J)):
        assert g(b) == f.values[n]
    assert abs(integrate(g) - integrate(f)) < 1e-10
    assert np.allclose(g.restrict(K, J).values, f.values)


def test_refine_cannot_shrink():
    with pytest.raises(ResolutionError):
        random_function(2, 1, 1).refine(0, 1)


def test_json_roundtrip_and_sparse_entries():
    f = TestFunction(3, 1, 1, [0, 1, 0, 0, 2j, 0, 0, 0, 0])
    data = f.to_dict()
    assert [e["digits"] for e in data["entries"]] == ["1,0", "1,1"]
    g = TestFunction.from_json(f.to_json())
    assert (g.p, g.support, g.resolution) == (3, 1, 1)
    assert np.array_equal(g.values, f.values)


def test_json_rejects_bad_digits():
    with pytest.raises(PadicWaveError):
        TestFunction.from_dict({"p": 2, "K": 1, "J": 1, "entries": [{"digits": "0,2", "re": 1}]})


def test_ball_indicator_values():
    f = ball_indicator(3, radius=-1, center=Fraction(1, 3), support=1, resolution=2)
    for n, b in enumerate(representatives(3, 1, 2)):
        inside = padic_norm(b - Fraction(1, 3), 3) <= Fraction(1, 3)
        assert f.values[n] == (1 if inside else 0)
    assert abs(integrate(f) - 1 / 3) < 1e-15


def test_inner_product_and_norm():
    f = random_function(2, 1, 2, 1)
    assert abs(f.inner(f) - f.l2_norm() ** 2) < 1e-12
    assert (f - f).max_abs() == 0
    assert np.allclose((2 * f).values, 2 * f.values)


# -- Fourier ------------------------------------------------------------------------

@given(windows)
def test_fourier_all_matches_brute_force(w):
    p, K, J, seed = w
    if p ** (K + J) > 27:
        K, J = 1, 1
    f = random_function(p, K, J, seed)
    F = fourier_all(f)
    assert (F.support, F.resolution) == (J, K)
    for m, xi in enumerate(representatives(p, J, K)):
        assert abs(F.values[m] - brute_fourier(f.values, p, K, J, xi)) < 1e-10


@given(windows)
def test_pointwise_fourier_matches_table(w):
    p, K, J, seed = w
    f = random_function(p, K, J, seed)
    F = fourier_all(f)
    for m, xi in enumerate(representatives(p, J, K)[:10]):
        assert abs(fourier(f, xi) - F.values[m]) < 1e-10
        assert abs(fourier(f, xi + p**K * 5) - F.values[m]) < 1e-10  # periodic
    assert fourier(f, Fraction(1, p ** (J + 1))) == 0  # beyond the dual support


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fourier_involution(p):
    f = random_function(p, 2, 2, p)
    back = inverse_fourier_all(fourier_all(f))
    assert np.max(np.abs(back.values - f.values)) < 1e-10


def test_fourier_plancherel():
    f = random_function(3, 2, 1, 4)
    assert abs(fourier_all(f).l2_norm() - f.l2_norm()) < 1e-12


@pytest.mark.parametrize("p, k", [(2, 0), (3, 0), (3, 1), (5, -1)])
def test_fourier_of_balls(p, k):
    # 1 on p^k Z_p transforms to p^-k on p^-k Z_p
    f = ball_indicator(p, radius=-k, support=2, resolution=2)
    F = fourier_all(f)
    expected = ball_indicator(p, radius=k, support=2, resolution=2).values * float(p) ** -k
    assert np.max(np.abs(F.values - expected)) < 1e-12


def test_fourier_rejects_imprecise_point():
    f = random_function(2, 2, 1)
    with pytest.raises(PrecisionError):
        fourier(f, from_rational(Fraction(1, 2), 2, 1))


# -- Vladimirov operator --------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_vladimirov_matches_sphere_sum(p, alpha):
    f = random_function(p, 1, 1, 7)
    fast = vladimirov(f, alpha).values
    assert np.max(np.abs(fast - brute_vladimirov(f.values, p, 1, 1, alpha))) < 1e-10


def test_vladimirov_of_unit_ball_frozen():
    # p = 2, alpha = 1: c = 4/3; inside Z_2 the value is 2/3, on |x| = 2 it is -1/3
    g = vladimirov(ball_indicator(2), 1.0, support=1)
    assert vladimirov_constant(2, 1.0) == pytest.approx(4 / 3, abs=1e-15)
    assert g(0) == pytest.approx(2 / 3, abs=1e-14)
    assert g(Fraction(1, 2)) == pytest.approx(-1 / 3, abs=1e-14)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_kozyrev_eigenvalue(p, alpha):
    psi = kozyrev_wavelet(p, 1, 2)
    d = vladimirov(psi, alpha, support=2)
    err = np.max(np.abs(d.values - p**alpha * psi.refine(2, 2).values))
    assert err < 1e-9


def test_dilated_wavelet_eigenvalue():
    # psi(p x) lives on p^-1 Z_p, so its eigenvalue is p^(alpha * 0) = 1
    atom = wavelet_atom(2, -1)
    d = vladimirov(atom, 1.0)
    assert np.max(np.abs(d.values - atom.values)) < 1e-12


def test_vladimirov_rejects_nonpositive_alpha():
    with pytest.raises(PadicWaveError):
        vladimirov(kozyrev_wavelet(2), 0.0)


# -- wavelet atoms ------------------------------------------------------------------

def test_kozyrev_wavelet_values():
    psi = kozyrev_wavelet(3)
    assert np.allclose(psi.values, np.exp(2j * np.pi * np.arange(3) / 3))
    assert abs(integrate(psi)) < 1e-15
    assert psi.l2_norm() == pytest.approx(1.0)


def test_translate_by_a_coarse_shift_is_orthogonal():
    # psi(x - 1/p) lives on 1/p + Z_p, disjoint from Z_p
    p = 3
    a = wavelet_atom(p, 0, support=1, resolution=1)
    b = wavelet_atom(p, 0, shift=Fraction(1, p), support=1, resolution=1)
    assert abs(a.inner(b)) < 1e-14
    assert b.l2_norm() == pytest.approx(a.l2_norm())


def test_unit_rotation_is_orthogonal():
    a = wavelet_atom(3, 0, unit=1)
    b = wavelet_atom(3, 0, unit=2)
    assert abs(a.inner(b)) < 1e-14


def test_atoms_at_different_scales_are_orthogonal():
    a = wavelet_atom(2, 0, support=2, resolution=2)
    b = wavelet_atom(2, -1, support=2, resolution=2)
    assert abs(a.inner(b)) < 1e-14


def test_atom_resolution_guard():
    with pytest.raises(ResolutionError):
        wavelet_atom(2, 1, resolution=1)
    with pytest.raises(PadicWaveError):
        wavelet_atom(3, 0, unit=3)
