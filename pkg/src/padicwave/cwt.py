"""Continuous wavelet transform over the affine group of Q_p.

Forward::

    W(a, b) = integral (1/|a|_p) conj(psi((x - b) / a)) f(x) dx

Inverse::

    f(x) = (1/C) integral_{Q_p* x Q_p} psi((x - b) / a) W(a, b) da db / |a|_p**2

with the Kozyrev wavelet ``psi``. The dilation ``a = p**j * u`` is resolved
into its scale exponent ``j`` and unit digit ``u`` in ``[1, p)``: the
wavelet only sees ``u mod p``, and all ``p - 1`` unit classes are needed for
the frame to be complete when ``p > 2``. The translation ``b`` runs over
cosets of ``p**(j+1) Z_p``. Both integrands are constant on these cells, so
the discretization is exact and the only approximation is the truncation of
``j`` to ``[j_min, j_max]``.

A function is reproduced exactly when its Fourier transform lives on the
shells ``p**(j_min+1) <= |xi|_p <= p**(j_max+1)``; for a test function with
support ``K`` and resolution ``J`` that means zero mean, ``K <= -j_min`` and
``J <= j_max + 1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._validation import check_int, check_prime
from .analysis import TestFunction, fourier_all, kozyrev_wavelet
from .exceptions import PadicWaveError, ResolutionError, ShapeMismatchError

DEFAULT_SCALES = (-4, 4)

__all__ = [
    "CwtGrid",
    "DEFAULT_SCALES",
    "admissibility_constant",
    "cell_weight",
    "cwt_forward",
    "cwt_inverse",
    "fourier_admissibility",
    "plancherel_energy",
]


@dataclass(frozen=True, eq=False)
class CwtGrid:
    """Wavelet coefficients on a truncated affine-group grid.

    ``coefficients[j]`` has shape ``(p - 1, p**(j + support + 1))``: row
    ``u - 1`` holds the unit digit ``u`` and column ``n`` the translation
    ``b = n / p**support`` (a coset of ``p**(j+1) Z_p``).
    """

    p: int
    support: int
    resolution: int
    j_min: int
    j_max: int
    coefficients: dict = field(repr=False)

    def __post_init__(self):
        p = check_prime(self.p)
        if self.j_min > self.j_max:
            raise PadicWaveError("empty scale range")
        for j in self.scales:
            arr = np.asarray(self.coefficients.get(j), dtype=complex)
            expected = (p - 1, p ** (j + self.support + 1))
            if arr.shape != expected:
                raise ShapeMismatchError(f"scale {j}: expected shape {expected}, got {arr.shape}")

    @property
    def scales(self) -> range:
        return range(self.j_min, self.j_max + 1)

    def n_coefficients(self, j: int) -> int:
        return (self.p - 1) * self.p ** (j + self.support + 1)

    def to_dict(self) -> dict:
        scales = []
        for j in self.scales:
            c = np.asarray(self.coefficients[j])
            scales.append({"j": j, "re": c.real.tolist(), "im": c.imag.tolist()})
        return {
            "p": self.p, "K": self.support, "J": self.resolution,
            "j_min": self.j_min, "j_max": self.j_max, "scales": scales,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CwtGrid":
        coeffs = {
            int(s["j"]): np.asarray(s["re"], dtype=float) + 1j * np.asarray(s["im"], dtype=float)
            for s in data["scales"]
        }
        return cls(int(data["p"]), int(data["K"]), int(data["J"]),
                   int(data["j_min"]), int(data["j_max"]), coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "CwtGrid":
        return cls.from_dict(json.loads(text))


def _phase_matrix(p: int, unit: int) -> np.ndarray:
    """``E[b_j, d] = psi`` value for digit difference ``d - b_j`` under unit ``unit``."""
    u_inv = pow(unit, -1, p)
    k = np.arange(p)
    diff = (k[None, :] - k[:, None]) % p
    return np.exp(2j * np.pi * ((u_inv * diff) % p) / p)


def cell_weight(p: int, j: int, plancherel: bool = False) -> float:
    """Haar weight of one grid cell.

    The cell ``a in p**j (u + p Z_p)``, ``b in b0 + p**(j+1) Z_p`` has
    ``da = p**(-j-1)`` and ``db = p**(-j-1)``; divided by ``|a|**2`` this is
    ``p**-2`` at every scale. With ``plancherel=True`` the divisor is
    ``|a|`` instead, giving ``p**(-j-2)``.
    """
    da = float(p) ** (-j - 1)
    db = float(p) ** (-j - 1)
    abs_a = float(p) ** (-j)
    return da * db / (abs_a if plancherel else abs_a**2)


def _window(f_support, f_resolution, j_min, j_max, support, resolution):
    K = max(f_support, -j_min) if support is None else support
    R = max(f_resolution, j_max + 1) if resolution is None else resolution
    if R < j_max + 1:
        raise ResolutionError(
            f"resolution {R} cannot resolve the wavelet at scale {j_max} (needs {j_max + 1})"
        )
    if R < f_resolution:
        raise ResolutionError(f"resolution {R} is coarser than the input ({f_resolution})")
    if K < f_support or K < -j_min:
        raise PadicWaveError(f"support {K} must cover the input and the coarsest scale")
    return K, R


def cwt_forward(f: TestFunction, j_min: int = DEFAULT_SCALES[0], j_max: int = DEFAULT_SCALES[1],
                support: int | None = None, resolution: int | None = None) -> CwtGrid:
    """Kozyrev-wavelet coefficients of ``f`` for scales ``j_min .. j_max``.

    ``support``/``resolution`` fix the working window; by default it is the
    smallest window containing ``f`` and resolving every requested scale.
    """
    j_min = check_int(j_min, "j_min")
    j_max = check_int(j_max, "j_max")
    if j_min > j_max:
        raise PadicWaveError("empty scale range")
    K, R = _window(f.support, f.resolution, j_min, j_max, support, resolution)
    f = f.refine(K, R)
    p = f.p
    cell = float(p) ** (-R)
    coeffs = {}
    for j in range(j_min, j_max + 1):
        t = j + K  # digit index of position j
        ball = f.values.reshape(p ** (K + R - t - 1), p, p**t).sum(axis=0) * cell
        scale = np.empty((p - 1, p ** (t + 1)), dtype=complex)
        for u in range(1, p):
            # conj(psi) pairs with the coefficient side
            scale[u - 1] = (float(p) ** j * (_phase_matrix(p, u).conj() @ ball)).reshape(-1)
        coeffs[j] = scale
    return CwtGrid(p, K, R, j_min, j_max, coeffs)


def cwt_inverse(grid: CwtGrid, c_psi: float | None = None) -> TestFunction:
    """Reconstruct a function from its coefficient grid.

    ``c_psi`` defaults to :func:`admissibility_constant` for the grid's prime.
    """
    p, K, R = grid.p, grid.support, grid.resolution
    if not list(grid.scales):
        raise PadicWaveError("empty grid")
    if c_psi is None:
        c_psi = admissibility_constant(p)
    if not c_psi > 0:
        raise PadicWaveError("admissibility constant must be positive")
    out = np.zeros(p ** (K + R), dtype=complex).reshape(-1)
    for j in grid.scales:
        t = j + K
        W = np.asarray(grid.coefficients[j]).reshape(p - 1, p, p**t)
        contrib = np.zeros((p, p**t), dtype=complex)
        for u in range(1, p):
            contrib += _phase_matrix(p, u).T @ W[u - 1]
        contrib *= cell_weight(p, j)
        out += np.broadcast_to(contrib, (p ** (K + R - t - 1), p, p**t)).reshape(-1)
    return TestFunction(p, K, R, out / c_psi)


def plancherel_energy(grid: CwtGrid) -> float:
    """``sum |W|**2 * da db / |a|``; equals ``C * ||f||**2`` for band-limited f."""
    total = 0.0
    for j in grid.scales:
        c = np.asarray(grid.coefficients[j])
        total += float(np.vdot(c, c).real) * cell_weight(grid.p, j, plancherel=True)
    return total


@lru_cache(maxsize=None)
def admissibility_constant(p: int) -> float:
    """Admissibility constant of the Kozyrev wavelet, computed numerically.

    Evaluates ``||psi||**-2 * integral |<psi, U(a,b) psi>|**2 dmu_L`` with the
    unitary representation ``U(a,b) psi = |a|**-1/2 psi((x-b)/a)``, which on
    the grid is the Plancherel energy of the transform of ``psi`` itself.
    The wavelet's spectrum is a single shell, so scales ``-2 .. 2`` already
    capture the whole integral.
    """
    p = check_prime(p)
    psi = kozyrev_wavelet(p)
    grid = cwt_forward(psi, -2, 2)
    return plancherel_energy(grid) / psi.l2_norm() ** 2


def fourier_admissibility(psi: TestFunction) -> float:
    """``integral |psi~(xi)|**2 / |xi|_p d xi`` evaluated from the Fourier side."""
    spectrum = fourier_all(psi)
    p, K = spectrum.p, spectrum.support
    total = 0.0
    for n, v in enumerate(spectrum.values):
        if n == 0 or v == 0:
            continue  # psi~(0) is the mean; admissible wavelets have none
        v_n = 0
        while n % p == 0:
            n //= p
            v_n += 1
        abs_xi = float(p) ** (K - v_n)  # xi = n / p^K
        total += abs(v) ** 2 / abs_xi
    return total * float(spectrum.cell_measure)
