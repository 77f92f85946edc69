"""Haar pyramids in real and p-adic arithmetic.

Real mode (averages and half-differences)::

    s[j+1][k] = (s[j][2k] + s[j][2k+1]) / 2
    d[j+1][k] = (s[j][2k] - s[j][2k+1]) / 2
    s[j][2k] = s[j+1][k] + d[j+1][k],  s[j][2k+1] = s[j+1][k] - d[j+1][k]

p-adic mode (plain sums and differences, the halving happens on the way back)::

    s[j+1][k] = s[j][2k+1] + s[j][2k]
    d[j+1][k] = s[j][2k+1] - s[j][2k]
    s[j][2k+1] = (s[j+1][k] + d[j+1][k]) / 2,  s[j][2k] = (s[j+1][k] - d[j+1][k]) / 2

For ``p = 2`` every halving lowers the valuation, so each reconstruction
level costs one digit of absolute precision.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._validation import check_int, check_power_of_two, check_prime
from .exceptions import BaseMismatchError, PadicWaveError, PrecisionError, ShapeMismatchError
from .padic import PadicNumber, format_padic, from_rational, norm, parse_padic

__all__ = [
    "HaarWaveletQp",
    "Pyramid",
    "haar_forward_padic",
    "haar_forward_real",
    "haar_inverse_padic",
    "haar_inverse_real",
    "haar_qp_evaluate",
    "read_signal_csv",
]


@dataclass(frozen=True, eq=False)
class Pyramid:
    """Coarse level ``s^J`` plus details ``d^1 .. d^J`` (finest first).

    In ``"real"`` mode the levels are float arrays; they may carry leading
    batch axes, the transform acting on the last axis. In ``"padic"`` mode
    the levels are tuples of :class:`PadicNumber` over the prime ``p``.
    """

    coarse: object
    details: tuple
    mode: str = "real"
    p: int | None = None

    def __post_init__(self):
        if self.mode not in ("real", "padic"):
            raise PadicWaveError(f"unknown arithmetic mode {self.mode!r}")
        n_coarse = _length(self.coarse)
        for j, d in enumerate(self.details, start=1):
            if _length(d) != n_coarse * 2 ** (self.depth - j):
                raise ShapeMismatchError(
                    f"detail level {j} has length {_length(d)}, "
                    f"expected {n_coarse * 2 ** (self.depth - j)}"
                )

    @property
    def depth(self) -> int:
        return len(self.details)

    @property
    def signal_length(self) -> int:
        return _length(self.coarse) * 2**self.depth

    def to_dict(self) -> dict:
        if self.mode == "real":
            enc = lambda level: np.asarray(level).tolist()  # noqa: E731
        else:
            enc = lambda level: [format_padic(x) for x in level]  # noqa: E731
        out = {"mode": self.mode, "J": self.depth, "coarse": enc(self.coarse),
               "details": [enc(d) for d in self.details]}
        if self.mode == "padic":
            out["p"] = self.p
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Pyramid":
        mode = data.get("mode", "real")
        if mode == "real":
            dec = lambda level: np.asarray(level, dtype=float)  # noqa: E731
        else:
            dec = lambda level: tuple(parse_padic(s) for s in level)  # noqa: E731
        details = tuple(dec(d) for d in data["details"])
        if len(details) != int(data.get("J", len(details))):
            raise ShapeMismatchError("J does not match the number of detail levels")
        return cls(dec(data["coarse"]), details, mode, data.get("p"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_json(cls, text: str) -> "Pyramid":
        return cls.from_dict(json.loads(text))


def _length(level) -> int:
    if isinstance(level, np.ndarray):
        return level.shape[-1]
    return len(level)


def _check_depth(n: int, depth: int) -> int:
    m = check_power_of_two(n, "signal length")
    depth = check_int(depth, "depth", 0)
    if depth > m:
        raise ShapeMismatchError(f"depth {depth} exceeds log2(length) = {m}")
    return depth


# -- real arithmetic -----------------------------------------------------------

def haar_forward_real(s0, depth: int) -> Pyramid:
    """Average/half-difference pyramid of ``s0`` along its last axis."""
    s = np.asarray(s0, dtype=float)
    if s.ndim == 0:
        raise ShapeMismatchError("signal must be at least one-dimensional")
    depth = _check_depth(s.shape[-1], depth)
    details = []
    for _ in range(depth):
        even, odd = s[..., 0::2], s[..., 1::2]
        details.append((even - odd) / 2)
        s = (even + odd) / 2
    return Pyramid(s, tuple(details), "real")


def haar_inverse_real(pyr: Pyramid) -> np.ndarray:
    if pyr.mode != "real":
        raise PadicWaveError("expected a real-mode pyramid")
    s = np.asarray(pyr.coarse, dtype=float)
    for d in reversed(pyr.details):
        d = np.asarray(d, dtype=float)
        if d.shape != s.shape:
            raise ShapeMismatchError(f"detail shape {d.shape} does not match {s.shape}")
        out = np.empty(s.shape[:-1] + (2 * s.shape[-1],))
        out[..., 0::2] = s + d
        out[..., 1::2] = s - d
        s = out
    return s


# -- p-adic arithmetic -------------------------------------------------------------

def _check_padic_signal(values: Sequence[PadicNumber]) -> int:
    if not values:
        raise ShapeMismatchError("empty signal")
    if not all(isinstance(x, PadicNumber) for x in values):
        raise PadicWaveError("p-adic mode needs PadicNumber values")
    p = values[0].p
    if any(x.p != p for x in values):
        raise BaseMismatchError("all samples must share the same prime")
    return p


def haar_forward_padic(s0: Sequence[PadicNumber], depth: int) -> Pyramid:
    """Unnormalized sum/difference pyramid in Q_p; digit-exact."""
    s = tuple(s0)
    p = _check_padic_signal(s)
    depth = _check_depth(len(s), depth)
    details = []
    for _ in range(depth):
        even, odd = s[0::2], s[1::2]
        details.append(tuple(o - e for e, o in zip(even, odd)))
        s = tuple(o + e for e, o in zip(even, odd))
    return Pyramid(s, tuple(details), "padic", p)


def haar_inverse_padic(pyr: Pyramid, min_precision: int = 1) -> tuple[PadicNumber, ...]:
    """Invert :func:`haar_forward_padic`.

    Parameters
    ----------
    pyr : Pyramid
        A p-adic mode pyramid.
    min_precision : int
        Smallest acceptable absolute precision of the reconstructed samples.
        Dividing by 2 in Q_2 costs one digit per level; if the result falls
        below this bound a :class:`PrecisionError` reports the deficit.
    """
    if pyr.mode != "padic":
        raise PadicWaveError("expected a p-adic mode pyramid")
    s = tuple(pyr.coarse)
    for d in reversed(pyr.details):
        if len(d) != len(s):
            raise ShapeMismatchError("detail length does not match the coarse level")
        out = []
        for sk, dk in zip(s, d):
            out.append((sk - dk) / 2)
            out.append((sk + dk) / 2)
        s = tuple(out)
    worst = min(x.absolute_precision for x in s)
    if worst < min_precision:
        raise PrecisionError(
            f"reconstruction keeps only O({pyr.p}^{worst}); "
            f"{min_precision - worst} digit(s) short of O({pyr.p}^{min_precision})"
        )
    return s


# -- Haar analog on Q_p ------------------------------------------------------------------

@dataclass(frozen=True)
class HaarWaveletQp:
    """``h(x) = 1`` for ``|x|_p < 1`` and ``"-1"`` for ``|x|_p >= 1``.

    ``convention="complex"`` uses the real number -1; ``convention="padic"``
    uses ``-1`` in Z_p (all digits ``p - 1``) to ``precision`` digits.
    """

    p: int
    convention: str = "complex"
    precision: int = 20

    def __post_init__(self):
        object.__setattr__(self, "p", check_prime(self.p))
        if self.convention not in ("complex", "padic"):
            raise PadicWaveError(f"unknown convention {self.convention!r}")


def haar_qp_evaluate(w: HaarWaveletQp, x: PadicNumber):
    inside = norm(x) < 1
    if w.convention == "complex":
        return 1.0 + 0j if inside else -1.0 + 0j
    return from_rational(1 if inside else -1, w.p, w.precision)


# -- CSV ingestion -----------------------------------------------------------------

def read_signal_csv(text: str, mode: str = "real", p: int | None = None,
                    precision: int = 20):
    """Parse one sample per line.

    Real mode reads floats. p-adic mode accepts either the textual p-adic
    format or plain rationals, the latter expanded with ``p``/``precision``.
    """
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        # the textual p-adic format contains commas of its own
        if "(base" not in line:
            line = next(csv.reader([line]))[0].strip()
        if line:
            rows.append(line)
    if mode == "real":
        try:
            return np.array([float(r) for r in rows])
        except ValueError as exc:
            raise PadicWaveError(f"bad real sample: {exc}") from exc
    values = []
    for r in rows:
        if "(base" in r:
            values.append(parse_padic(r))
        else:
            if p is None:
                raise PadicWaveError("rational samples need a prime --p")
            values.append(from_rational(Fraction(r), p, precision))
    return tuple(values)
