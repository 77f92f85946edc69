"""Reference implementations used as independent oracles.

Nothing here calls the algorithm it checks: digits come from modular
inversion instead of long division, transforms are brute-force sums over
coset representatives with exact rational phases, and the Vladimirov
operator is a direct sphere sum with an explicitly summed tail.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np


def valuation(q: Fraction, p: int) -> int:
    v, num, den = 0, q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def padic_digits(q, p: int, n: int) -> tuple[int, tuple[int, ...]]:
    """Valuation and first ``n`` digits of ``q`` via ``num * den^-1 mod p^n``."""
    q = Fraction(q)
    v = valuation(q, p)
    u = q / Fraction(p) ** v
    r = u.numerator * pow(u.denominator, -1, p**n) % p**n
    digits = []
    for _ in range(n):
        r, d = divmod(r, p)
        digits.append(d)
    return v, tuple(digits)


def padic_norm(q, p: int) -> Fraction:
    q = Fraction(q)
    return Fraction(0) if q == 0 else Fraction(p) ** -valuation(q, p)


def frac_part(q, p: int) -> Fraction:
    """``{q}_p`` in ``[0, 1)``: the part of ``q`` with p-power denominator."""
    q = Fraction(q)
    if q == 0 or valuation(q, p) >= 0:
        return Fraction(0)
    k = -valuation(q, p)
    m = q.denominator // p**k
    a = q.numerator * pow(m, -1, p**k) % p**k
    return Fraction(a, p**k)


def chi(q, p: int) -> complex:
    f = frac_part(q, p)
    return cmath.exp(2j * math.pi * f)


def representatives(p: int, K: int, J: int) -> list[Fraction]:
    """Coset representatives ``n / p**K`` of ``p**J Z_p`` inside ``p**-K Z_p``."""
    return [Fraction(n, p**K) for n in range(p ** (K + J))]


def brute_fourier(values, p: int, K: int, J: int, xi) -> complex:
    """``sum_b f(b) chi(xi b) p**-J`` with exact phases."""
    xi = Fraction(xi)
    total = sum(v * chi(xi * b, p) for v, b in zip(values, representatives(p, K, J)))
    return complex(total) * p**-J


def brute_vladimirov(values, p: int, K: int, J: int, alpha: float, extra: int = 3,
                     tail_terms: int = 4000) -> np.ndarray:
    """Direct sphere sum of ``D^alpha`` on a window enlarged by ``extra``.

    The integral over ``|y| > p**(K+extra)`` sees ``f = 0`` and is summed
    term by term (no closed form).
    """
    c = (p**alpha - 1) / (1 - p ** (-1 - alpha))
    big = K + extra
    reps = representatives(p, big, J)
    lookup = {b: v for b, v in zip(representatives(p, K, J), values)}
    fv = np.array([lookup.get(b, 0.0) for b in reps], dtype=complex)
    cell = float(p) ** -J
    # sphere |y| = p^m has measure p^m (1 - 1/p)
    tail = sum((1 - 1 / p) * math.exp(-m * alpha * math.log(p))
               for m in range(big + 1, big + 1 + tail_terms))
    out = np.empty(len(values), dtype=complex)
    for i, x in enumerate(representatives(p, K, J)):
        fx = lookup[x]
        acc = 0j
        for y, fy in zip(reps, fv):
            if y != x:
                acc += (fx - fy) * float(padic_norm(x - y, p)) ** (-1 - alpha) * cell
        out[i] = c * (acc + fx * tail)
    return out


def dft_oracle(amplitudes) -> np.ndarray:
    """``F|x> = sum_y exp(2 pi i x y / N)|y> / sqrt(N)`` through numpy's FFT."""
    a = np.asarray(amplitudes, dtype=complex)
    return np.fft.ifft(a) * np.sqrt(a.size)
