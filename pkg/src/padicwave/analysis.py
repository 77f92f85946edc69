"""Locally constant functions on Q_p and the operators acting on them.

A :class:`TestFunction` with support exponent ``K`` and resolution exponent
``J`` vanishes outside the ball ``{|x|_p <= p**K}`` and is constant on every
coset ``b + p**J Z_p``. The ``p**(K+J)`` cosets inside the ball are indexed
by integers ``n`` in ``[0, p**(K+J))`` through ``b = n / p**K``; the base-p
digits of ``n`` (least significant first) are the digits of ``b`` at
positions ``-K, ..., J-1``.

Everything here is exact quadrature: integrals of locally constant functions
are finite sums, so the only error is float rounding.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._validation import check_int, check_prime
from .exceptions import PadicWaveError, PrecisionError, ResolutionError
from .padic import PadicNumber, from_rational

__all__ = [
    "TestFunction",
    "ball_indicator",
    "fourier",
    "fourier_all",
    "integrate",
    "inverse_fourier_all",
    "kozyrev_wavelet",
    "vladimirov",
    "vladimirov_constant",
    "wavelet_atom",
]


@dataclass(frozen=True, eq=False)
class TestFunction:
    """Compactly supported, locally constant complex function on Q_p.

    Parameters
    ----------
    p : int
        Prime base.
    support : int
        ``K``; the function vanishes where ``|x|_p > p**K``.
    resolution : int
        ``J``; the function is constant on cosets of ``p**J Z_p``.
        Must satisfy ``J >= -K``.
    values : array-like of complex, shape (p**(K+J),)
        Value on the coset of ``n / p**K``.
    """

    __test__ = False  # keep pytest from collecting this class

    p: int
    support: int
    resolution: int
    values: np.ndarray

    def __post_init__(self):
        p = check_prime(self.p)
        K = check_int(self.support, "support")
        J = check_int(self.resolution, "resolution")
        if J < -K:
            raise ResolutionError(f"resolution {J} must be >= -support ({-K})")
        values = np.array(self.values, dtype=complex).reshape(-1)
        if values.size != p ** (K + J):
            raise PadicWaveError(
                f"expected {p ** (K + J)} coset values for K={K}, J={J}, got {values.size}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "support", K)
        object.__setattr__(self, "resolution", J)
        object.__setattr__(self, "values", values)

    # -- basic structure ------------------------------------------------------
    @property
    def n_cosets(self) -> int:
        return self.values.size

    @property
    def cell_measure(self) -> Fraction:
        return Fraction(self.p) ** (-self.resolution)

    def representative(self, n: int) -> Fraction:
        return Fraction(n, self.p**self.support)

    def coset_digits(self, n: int) -> list[int]:
        """Digits of coset ``n`` at positions ``-K .. J-1`` (lowest first)."""
        digits = []
        for _ in range(self.support + self.resolution):
            n, d = divmod(n, self.p)
            digits.append(d)
        return digits

    def coset_index(self, x) -> int | None:
        """Index of the coset containing ``x``, or None outside the support."""
        p, K, J = self.p, self.support, self.resolution
        if isinstance(x, PadicNumber):
            if x.p != p:
                raise PadicWaveError("base mismatch")
            if x.absolute_precision < J:
                raise PrecisionError(f"point known only to O(p^{x.absolute_precision}), need O(p^{J})")
            if not x.is_zero and x.valuation < -K:
                return None
            x = x.to_fraction()
        x = Fraction(x)
        scaled = x * p**K
        if x != 0 and scaled.denominator % p == 0:
            return None
        # scaled is a p-adic integer; reduce it mod p^(K+J)
        modulus = p ** (K + J)
        return (scaled.numerator * pow(scaled.denominator, -1, modulus)) % modulus

    def __call__(self, x) -> complex:
        n = self.coset_index(x)
        return 0j if n is None else complex(self.values[n])

    # -- algebra -----------------------------------------------------------------
    def refine(self, support: int | None = None, resolution: int | None = None) -> "TestFunction":
        """Re-express on a larger ball and/or finer cosets."""
        K2 = self.support if support is None else support
        J2 = self.resolution if resolution is None else resolution
        if K2 < self.support or J2 < self.resolution:
            raise ResolutionError("refine can only enlarge the support or sharpen the resolution")
        if (K2, J2) == (self.support, self.resolution):
            return self
        p = self.p
        shift = p ** (K2 - self.support)
        n = np.arange(p ** (K2 + J2))
        inside = n % shift == 0
        coarse = (n // shift) % self.n_cosets
        values = np.where(inside, self.values[coarse], 0)
        return TestFunction(p, K2, J2, values)

    def restrict(self, support: int, resolution: int) -> "TestFunction":
        """Sample onto a smaller window, one representative per coarse coset.

        Exact when the function vanishes outside ``p**support`` and is already
        constant on cosets of ``p**resolution Z_p``.
        """
        if support > self.support or resolution > self.resolution or resolution < -support:
            raise ResolutionError("restrict can only shrink the window")
        n = np.arange(self.p ** (support + resolution))
        fine = n * self.p ** (self.support - support)
        return TestFunction(self.p, support, resolution, self.values[fine])

    def _aligned(self, other: "TestFunction"):
        if other.p != self.p:
            raise PadicWaveError("base mismatch")
        K = max(self.support, other.support)
        J = max(self.resolution, other.resolution)
        return self.refine(K, J), other.refine(K, J)

    def __add__(self, other):
        if not isinstance(other, TestFunction):
            return NotImplemented
        a, b = self._aligned(other)
        return TestFunction(a.p, a.support, a.resolution, a.values + b.values)

    def __sub__(self, other):
        if not isinstance(other, TestFunction):
            return NotImplemented
        a, b = self._aligned(other)
        return TestFunction(a.p, a.support, a.resolution, a.values - b.values)

    def __mul__(self, scalar):
        if isinstance(scalar, TestFunction):
            a, b = self._aligned(scalar)
            return TestFunction(a.p, a.support, a.resolution, a.values * b.values)
        return TestFunction(self.p, self.support, self.resolution, self.values * complex(scalar))

    __rmul__ = __mul__

    def conj(self) -> "TestFunction":
        return TestFunction(self.p, self.support, self.resolution, self.values.conj())

    def inner(self, other: "TestFunction") -> complex:
        """``<f, g> = integral of conj(f) g``."""
        a, b = self._aligned(other)
        return complex(np.vdot(a.values, b.values)) * float(a.cell_measure)

    def l2_norm(self) -> float:
        return math.sqrt(float(np.vdot(self.values, self.values).real) * float(self.cell_measure))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    # -- serialization -------------------------------------------------------------
    def to_dict(self) -> dict:
        """``{p, K, J, entries: [{digits, re, im}]}``; zero cosets are omitted.

        ``digits`` lists the coset digits at positions ``-K .. J-1`` separated
        by commas, lowest position first.
        """
        entries = []
        for n in np.flatnonzero(self.values):
            v = self.values[n]
            entries.append({
                "digits": ",".join(map(str, self.coset_digits(int(n)))),
                "re": float(v.real),
                "im": float(v.imag),
            })
        return {"p": self.p, "K": self.support, "J": self.resolution, "entries": entries}

    @classmethod
    def from_dict(cls, data: dict) -> "TestFunction":
        p, K, J = int(data["p"]), int(data["K"]), int(data["J"])
        values = np.zeros(p ** (K + J), dtype=complex)
        for entry in data.get("entries", []):
            digits = [int(d) for d in str(entry["digits"]).split(",") if d != ""]
            if len(digits) != K + J or any(not 0 <= d < p for d in digits):
                raise PadicWaveError(f"bad coset digits {entry['digits']!r}")
            n = sum(d * p**i for i, d in enumerate(digits))
            values[n] = complex(entry.get("re", 0.0), entry.get("im", 0.0))
        return cls(p, K, J, values)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "TestFunction":
        return cls.from_dict(json.loads(text))


def ball_indicator(p, radius: int = 0, center=0, support: int | None = None,
                   resolution: int | None = None) -> TestFunction:
    """Indicator of ``{|x - center|_p <= p**radius}``.

    The default window is the ball itself at resolution ``-radius``.
    """
    p = check_prime(p)
    center = Fraction(center.to_fraction() if isinstance(center, PadicNumber) else center)
    c_norm_exp = 0
    if center != 0:
        v = from_rational(center, p, 1).valuation
        c_norm_exp = -v
    K = max(radius, c_norm_exp) if support is None else support
    J = -radius if resolution is None else resolution
    if J < -radius:
        raise ResolutionError("resolution too coarse to resolve the ball")
    probe = TestFunction(p, K, J, np.zeros(p ** (K + J)))
    values = np.zeros(probe.n_cosets, dtype=complex)
    for n in range(probe.n_cosets):
        diff = probe.representative(n) - center
        if diff == 0 or from_rational(diff, p, 1).valuation >= -radius:
            values[n] = 1.0
    return TestFunction(p, K, J, values)


def integrate(f: TestFunction) -> complex:
    """Exact Haar integral: ``sum_b f(b) * p**-J``."""
    return complex(f.values.sum()) * float(f.cell_measure)


def fourier_all(f: TestFunction) -> TestFunction:
    """Fourier transform ``f~(xi) = integral f(x) chi_p(xi x) dx`` on every coset.

    The result has support ``J`` and resolution ``K``. On coset indices the
    character is ``chi_p(m n / p**(K+J)) = exp(2 pi i m n / p**(K+J))``, so
    the transform is a length-``p**(K+J)`` DFT scaled by ``p**-J``.
    """
    N = f.n_cosets
    values = np.fft.ifft(f.values) * N * float(f.cell_measure)
    return TestFunction(f.p, f.resolution, f.support, values)


def inverse_fourier_all(g: TestFunction) -> TestFunction:
    """``f(x) = integral g(xi) chi_p(-xi x) d xi``; inverse of :func:`fourier_all`."""
    values = np.fft.fft(g.values) * float(g.cell_measure)
    return TestFunction(g.p, g.resolution, g.support, values)


def fourier(f: TestFunction, xi) -> complex:
    """Fourier transform of ``f`` at a single point ``xi``.

    ``xi`` may be a :class:`PadicNumber` or an exact rational.
    """
    p, K, J = f.p, f.support, f.resolution
    if isinstance(xi, PadicNumber):
        if xi.is_zero:
            if xi.absolute_precision < K:
                raise PrecisionError("xi is not known precisely enough")
            return integrate(f)
        if xi.valuation < -J:
            return 0j
        if xi.absolute_precision < K:
            raise PrecisionError(f"xi must be known to O(p^{K})")
        xi = xi.to_fraction()
    xi = Fraction(xi)
    if xi == 0:
        return integrate(f)
    if from_rational(xi, p, 1).valuation < -J:
        return 0j
    # xi * p^J is a p-adic integer; only its class mod p^(K+J) matters
    N = f.n_cosets
    scaled = xi * p**J
    m = (scaled.numerator * pow(scaled.denominator, -1, N)) % N
    phases = np.exp(2j * np.pi * ((m * np.arange(N)) % N) / N)
    return complex(np.dot(f.values, phases)) * float(f.cell_measure)


def kozyrev_wavelet(p, support: int = 0, resolution: int = 1) -> TestFunction:
    """``psi(x) = chi_p(x / p) * [|x|_p <= 1]``.

    On ``Z_p`` the value is ``exp(2 pi i x_0 / p)`` with ``x_0`` the lowest
    digit. ``support``/``resolution`` choose a larger window to embed it in.
    """
    p = check_prime(p)
    base = TestFunction(p, 0, 1, np.exp(2j * np.pi * np.arange(p) / p))
    return base.refine(support, resolution)


def wavelet_atom(p, scale: int, unit: int = 1, shift=0, support: int | None = None,
                 resolution: int | None = None) -> TestFunction:
    """Dilated and translated Kozyrev wavelet ``psi((x - shift) / (p**scale * unit))``.

    ``unit`` is an integer in ``[1, p)`` standing for the unit digit of the
    dilation; the atom lives on ``shift + p**scale Z_p`` and is constant on
    cosets of ``p**(scale+1) Z_p``.
    """
    p = check_prime(p)
    if not 1 <= unit < p:
        raise PadicWaveError(f"unit digit must be in [1, {p}), got {unit}")
    shift = Fraction(shift)
    shift_exp = 0 if shift == 0 else -from_rational(shift, p, 1).valuation
    K = max(-scale, shift_exp) if support is None else support
    J = scale + 1 if resolution is None else resolution
    if J < scale + 1:
        raise ResolutionError(f"atom at scale {scale} needs resolution >= {scale + 1}")
    if K < -scale or K < shift_exp:
        raise PadicWaveError("support window does not contain the atom")
    u_inv = pow(unit, -1, p)
    window = TestFunction(p, K, J, np.zeros(p ** (K + J)))
    values = np.zeros(window.n_cosets, dtype=complex)
    for n in range(window.n_cosets):
        z = (window.representative(n) - shift) / Fraction(p) ** scale
        if z != 0 and z.denominator % p == 0:
            continue
        z0 = (z.numerator * pow(z.denominator, -1, p)) % p
        values[n] = np.exp(2j * np.pi * ((u_inv * z0) % p) / p)
    return TestFunction(p, K, J, values)


def vladimirov_constant(p: int, alpha: float) -> float:
    """Normalizing factor ``(p**alpha - 1) / (1 - p**(-1 - alpha))``."""
    return (p**alpha - 1.0) / (1.0 - p ** (-1.0 - alpha))


def vladimirov(f: TestFunction, alpha: float, support: int | None = None) -> TestFunction:
    """Vladimirov pseudoderivative ``D^alpha f``.

    ``D^alpha f(x) = c * integral (f(x) - f(y)) / |x - y|_p**(1 + alpha) dy``.

    For each coset ``x`` the integral is split over spheres
    ``|y - x|_p = p**m``: inside the window the sphere is a union of cosets
    and is summed exactly, beyond the window ``f(y) = 0`` and the remaining
    sum over ``m`` is a geometric series evaluated in closed form.

    Parameters
    ----------
    f : TestFunction
    alpha : float
        Order, strictly positive.
    support : int, optional
        Evaluate on a larger ball than ``f``'s own support. Outside the
        support of ``f`` the result generally does not vanish (it is
        ``-c |x|**(-1-alpha) * integral f``).

    Returns
    -------
    TestFunction
        Values of ``D^alpha f`` on the (possibly enlarged) window, with the
        same resolution as ``f``.
    """
    alpha = float(alpha)
    if not alpha > 0:
        raise PadicWaveError(f"alpha must be positive, got {alpha}")
    K = f.support if support is None else max(support, f.support)
    f = f.refine(K, f.resolution)
    p, J = f.p, f.resolution
    T = K + J
    vals = f.values
    n = np.arange(vals.size)
    cell = float(p) ** (-J)

    # class_sums[t][r]: sum of f over cosets whose index is r mod p^t
    class_sums = [vals.reshape(p ** (T - t), p**t).sum(axis=0) for t in range(T + 1)]
    out = np.zeros_like(vals)
    for t in range(T):
        m = K - t  # |x - y| = p^m for indices agreeing in exactly t low digits
        inner = class_sums[t][n % p**t] - class_sums[t + 1][n % p ** (t + 1)]
        sphere = float(p) ** m * (1.0 - 1.0 / p)
        out += float(p) ** (-m * (1.0 + alpha)) * (vals * sphere - inner * cell)
    tail = (1.0 - 1.0 / p) * float(p) ** (-(K + 1) * alpha) / (1.0 - float(p) ** (-alpha))
    out += vals * tail
    return TestFunction(p, K, J, vladimirov_constant(p, alpha) * out)
