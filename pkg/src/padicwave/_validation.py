"""Input validation helpers used across the package."""
from __future__ import annotations

from functools import lru_cache
import numbers

from .exceptions import PadicWaveError, ShapeMismatchError

# Trial division stays cheap below this bound.
MAX_PRIME = 2**31


@lru_cache(maxsize=256)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_prime(n: int) -> bool:
    """Return True if ``n`` is prime (trial division)."""
    return _is_prime(int(n))


def check_prime(p) -> int:
    """Validate a prime base and return it as a plain ``int``.

    Accepts an ``int`` or anything exposing an integer ``p`` attribute
    (such as :class:`padicwave.padic.PrimeBase`).
    """
    p = getattr(p, "p", p)
    if isinstance(p, bool) or not isinstance(p, numbers.Integral):
        raise PadicWaveError(f"prime base must be an integer, got {p!r}")
    p = int(p)
    if not 2 <= p < MAX_PRIME:
        raise PadicWaveError(f"prime base must satisfy 2 <= p < 2**31, got {p}")
    if not _is_prime(p):
        raise PadicWaveError(f"{p} is not prime")
    return p


def check_int(value, name: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise PadicWaveError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise PadicWaveError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_power_of_two(n: int, name: str = "length") -> int:
    """Return ``log2(n)`` or raise if ``n`` is not a positive power of two."""
    if n < 1 or n & (n - 1):
        raise ShapeMismatchError(f"{name} must be a power of two, got {n}")
    return n.bit_length() - 1


def p_adic_valuation(n: int, p: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise PadicWaveError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
