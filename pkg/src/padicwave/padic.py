"""Fixed-precision p-adic numbers.

A nonzero :class:`PadicNumber` stores a valuation ``v`` and ``N`` digits
``a_0 .. a_{N-1}`` (``a_0 != 0``) standing for::

    x = sum(a_i * p**(v + i) for i in range(N)) + O(p**(v + N))

``N`` is the *relative* precision and ``v + N`` the *absolute* precision.
Zero is a flagged value without digits; its ``valuation`` field holds the
absolute precision ``k`` of the statement ``x = O(p**k)``.

Precision rules
---------------
* ``x + y`` and ``x - y``: absolute precision ``min(abs(x), abs(y))``.
* ``x * y`` and ``x / y``: relative precision ``min(rel(x), rel(y))``, which is
  the tightest absolute precision guaranteed for a product.
* Exact operands (``int``, ``Fraction``) never lower the precision.

Negation stores the complement digits (``-1`` is ``(p-1)(p-1)(p-1)...``), so
no sign bit exists anywhere.
"""
from __future__ import annotations

import cmath
import math
import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ._validation import check_int, check_prime, p_adic_valuation
from .exceptions import BaseMismatchError, PadicWaveError, PrecisionError

DEFAULT_PRECISION = 20

__all__ = [
    "DEFAULT_PRECISION",
    "PadicNumber",
    "PadicRationalInput",
    "PrimeBase",
    "add",
    "ball_measure",
    "character",
    "div",
    "format_padic",
    "format_rational",
    "frac_part",
    "from_rational",
    "mul",
    "neg",
    "norm",
    "parse_padic",
    "parse_rational",
    "simplex_address",
    "sphere_measure",
    "sub",
]


@dataclass(frozen=True)
class PrimeBase:
    """A validated prime ``p`` (trial division, ``p < 2**31``)."""

    p: int

    def __post_init__(self):
        object.__setattr__(self, "p", check_prime(self.p))

    def __int__(self) -> int:
        return self.p


@dataclass(frozen=True)
class PadicRationalInput:
    """A rational ``numerator / denominator`` awaiting p-adic expansion."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise PadicWaveError("denominator must be nonzero")

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass(frozen=True)
class PadicNumber:
    """Element of Q_p known to a fixed absolute precision.

    Use :func:`from_rational` or :meth:`from_residue` rather than the raw
    constructor; the constructor only validates the canonical form.
    """

    p: int
    valuation: int
    digits: tuple[int, ...]
    is_zero: bool = False

    def __post_init__(self):
        p = self.p
        if self.is_zero:
            if self.digits:
                raise PadicWaveError("zero carries no digits")
            return
        if not self.digits:
            raise PadicWaveError("nonzero p-adic number needs at least one digit")
        if self.digits[0] == 0:
            raise PadicWaveError("leading digit must be nonzero (canonical valuation)")
        if any(d < 0 or d >= p for d in self.digits):
            raise PadicWaveError(f"digits must lie in [0, {p})")

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, p, absolute_precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls(check_prime(p), int(absolute_precision), (), True)

    @classmethod
    def from_residue(cls, value: int, p, absolute_precision: int) -> "PadicNumber":
        """p-adic integer known only modulo ``p**absolute_precision``."""
        p = check_prime(p)
        check_int(absolute_precision, "absolute_precision", 0)
        return _make(p, 0, int(value), absolute_precision)

    @property
    def base(self) -> PrimeBase:
        return PrimeBase(self.p)

    @property
    def relative_precision(self) -> int:
        return len(self.digits)

    @property
    def absolute_precision(self) -> int:
        return self.valuation + len(self.digits)

    @cached_property
    def unit(self) -> int:
        """The digits read as an integer, ``x / p**valuation`` mod ``p**N``."""
        u = 0
        for d in reversed(self.digits):
            u = u * self.p + d
        return u

    def digit(self, position: int) -> int:
        """Digit multiplying ``p**position``."""
        if position >= self.absolute_precision:
            raise PrecisionError(
                f"digit at position {position} is beyond precision "
                f"O({self.p}^{self.absolute_precision})"
            )
        if self.is_zero or position < self.valuation:
            return 0
        return self.digits[position - self.valuation]

    def residue(self, k: int) -> int:
        """Integer ``r`` in ``[0, p**k)`` with ``x = r mod p**k``."""
        if k > self.absolute_precision:
            raise PrecisionError(f"only known modulo {self.p}^{self.absolute_precision}")
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise PadicWaveError("residue requires a p-adic integer")
        return (self.unit * self.p**self.valuation) % self.p**k

    def to_fraction(self) -> Fraction:
        """The truncated expansion as an exact rational."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def is_integral(self) -> bool:
        return self.is_zero or self.valuation >= 0

    def agrees_with(self, other: "PadicNumber") -> bool:
        """True if both values coincide within their common precision."""
        return sub(self, other).is_zero

    # -- operators ----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other, self, "add")
        return NotImplemented if other is None else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self, "add")
        return NotImplemented if other is None else sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other, self, "add")
        return NotImplemented if other is None else sub(other, self)

    def __mul__(self, other):
        other = _coerce(other, self, "mul")
        return NotImplemented if other is None else mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self, "mul")
        return NotImplemented if other is None else div(self, other)

    def __rtruediv__(self, other):
        other = _coerce(other, self, "mul")
        return NotImplemented if other is None else div(other, self)

    def __neg__(self):
        return neg(self)

    def __str__(self) -> str:
        return format_padic(self)


def _make(p: int, valuation: int, unit: int, relprec: int) -> PadicNumber:
    """Canonicalize ``unit * p**valuation + O(p**(valuation + relprec))``."""
    absprec = valuation + relprec
    if relprec <= 0:
        return PadicNumber(p, absprec, (), True)
    unit %= p**relprec
    if unit == 0:
        return PadicNumber(p, absprec, (), True)
    while unit % p == 0:
        unit //= p
        valuation += 1
    digits = []
    for _ in range(absprec - valuation):
        unit, d = divmod(unit, p)
        digits.append(d)
    return PadicNumber(p, valuation, tuple(digits))


def _as_fraction(q) -> Fraction:
    if isinstance(q, PadicRationalInput):
        return q.as_fraction()
    if isinstance(q, tuple):
        return PadicRationalInput(*q).as_fraction()
    if isinstance(q, (numbers.Rational, str)):
        return Fraction(q)
    raise PadicWaveError(f"cannot read {q!r} as a rational")


def from_rational(q, p, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """Expand a rational to ``precision`` p-adic digits.

    Digits come from p-adic long division: with ``x = (m/n) p**v`` and
    ``p`` dividing neither ``m`` nor ``n``, each step picks the digit
    ``a = m * n**-1 mod p`` and continues with ``(m - a*n) / p``.

    Parameters
    ----------
    q : int, Fraction, str, PadicRationalInput or (num, den) tuple
    p : int or PrimeBase
    precision : int
        Number of digits (relative precision). For ``q == 0`` this is the
        absolute precision of the returned zero.

    Examples
    --------
    >>> from_rational(12, 2, 4).digits
    (1, 1, 0, 0)
    >>> from_rational(-1, 5, 3).digits
    (4, 4, 4)
    """
    p = check_prime(p)
    precision = check_int(precision, "precision", 1)
    q = _as_fraction(q)
    if q == 0:
        return PadicNumber(p, precision, (), True)
    num, den = q.numerator, q.denominator
    vn, vd = p_adic_valuation(num, p), p_adic_valuation(den, p)
    m, n = num // p**vn, den // p**vd
    n_inv = pow(n, -1, p)
    digits = []
    for _ in range(precision):
        a = (m * n_inv) % p
        digits.append(a)
        m = (m - a * n) // p
    return PadicNumber(p, vn - vd, tuple(digits))


def _check_same_base(x: PadicNumber, y: PadicNumber) -> int:
    if x.p != y.p:
        raise BaseMismatchError(f"cannot combine {x.p}-adic and {y.p}-adic numbers")
    return x.p


def _coerce(other, like: PadicNumber, op: str):
    """Turn an exact rational into a PadicNumber that does not cost precision."""
    if isinstance(other, PadicNumber):
        return other
    if not isinstance(other, numbers.Rational):
        return None
    q = Fraction(other)
    if q == 0:
        return PadicNumber(like.p, max(like.absolute_precision, 1) + 1, (), True)
    v = p_adic_valuation(q.numerator, like.p) - p_adic_valuation(q.denominator, like.p)
    if op == "add":
        relprec = like.absolute_precision - v
    else:
        relprec = like.relative_precision
    return from_rational(q, like.p, max(relprec, 1))


def add(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    p = _check_same_base(x, y)
    absprec = min(x.absolute_precision, y.absolute_precision)
    terms = [(t.valuation, t.unit) for t in (x, y) if not t.is_zero]
    if not terms:
        return PadicNumber(p, absprec, (), True)
    v = min(min(t[0] for t in terms), absprec)
    total = sum(u * p ** (tv - v) for tv, u in terms)
    return _make(p, v, total, absprec - v)


def neg(x: PadicNumber) -> PadicNumber:
    """Additive inverse via complement digits (``-1`` is all ``p-1``)."""
    if x.is_zero:
        return x
    return _make(x.p, x.valuation, -x.unit, x.relative_precision)


def sub(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    return add(x, neg(y))


def mul(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    p = _check_same_base(x, y)
    if x.is_zero or y.is_zero:
        # x in p^a Z_p and y in p^b Z_p give x*y in p^(a+b) Z_p
        return PadicNumber(p, x.valuation + y.valuation, (), True)
    relprec = min(x.relative_precision, y.relative_precision)
    return _make(p, x.valuation + y.valuation, x.unit * y.unit, relprec)


def div(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    p = _check_same_base(x, y)
    if y.is_zero:
        raise ZeroDivisionError("p-adic division by zero")
    if x.is_zero:
        return PadicNumber(p, x.valuation - y.valuation, (), True)
    relprec = min(x.relative_precision, y.relative_precision)
    inverse = pow(y.unit, -1, p**relprec)
    return _make(p, x.valuation - y.valuation, x.unit * inverse, relprec)


def norm(x: PadicNumber) -> Fraction:
    """``|x|_p = p**(-valuation)``, and 0 for zero."""
    if x.is_zero:
        return Fraction(0)
    return Fraction(x.p) ** (-x.valuation)


def frac_part(x: PadicNumber) -> Fraction:
    """Sum of the digits attached to negative powers of p, in ``[0, 1)``."""
    if x.absolute_precision < 0:
        raise PrecisionError("fractional part is undetermined below O(p^0)")
    if x.is_zero or x.valuation >= 0:
        return Fraction(0)
    n_frac = -x.valuation
    low = 0
    for d in reversed(x.digits[:n_frac]):
        low = low * x.p + d
    return Fraction(low, x.p**n_frac)


def character(x: PadicNumber) -> complex:
    """Additive character ``exp(2 pi i {x}_p)``."""
    f = frac_part(x)
    return cmath.exp(2j * math.pi * f.numerator / f.denominator)


def ball_measure(p, m: int) -> Fraction:
    """Haar measure of ``{|x|_p <= p**m}`` with ``Z_p`` of measure 1."""
    return Fraction(check_prime(p)) ** m


def sphere_measure(p, m: int) -> Fraction:
    """Haar measure of ``{|x|_p = p**m}``."""
    p = check_prime(p)
    return Fraction(p) ** m * (1 - Fraction(1, p))


def simplex_address(x: PadicNumber, depth: int) -> list[int]:
    """First ``depth`` digits of a p-adic integer.

    The digits select nested cells of a self-similar ``p``-fold partition;
    the cell reached has measure ``p**-depth``.
    """
    depth = check_int(depth, "depth", 0)
    if not x.is_integral():
        raise PadicWaveError("simplex addresses are defined for p-adic integers only")
    return [x.digit(i) for i in range(depth)]


# -- text formats ------------------------------------------------------------

def format_rational(q) -> str:
    """Render an exact rational as ``num/den`` (always with a denominator)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PadicWaveError(f"not a rational number: {text!r}") from exc


def format_padic(x: PadicNumber) -> str:
    """Render digits from high to low powers with a radix point.

    ``12`` in Q_2 with 4 digits renders as
    ``… 0 0 1 1 0 0 . (base 2, valuation 2, precision 4)``: the known
    positions run from ``p**(v+N-1)`` down to ``p**min(v, 0)`` and the point
    sits between ``p**0`` and ``p**-1``.
    """
    if x.is_zero:
        return f"0 (base {x.p}, zero, precision {x.valuation})"
    top = x.absolute_precision - 1
    bottom = min(x.valuation, 0)
    tokens = ["…"]
    if top < 0:
        tokens.append(".")
    for pos in range(top, bottom - 1, -1):
        tokens.append(str(x.digit(pos)))
        if pos == 0:
            tokens.append(".")
    return " ".join(tokens) + (
        f" (base {x.p}, valuation {x.valuation}, precision {x.relative_precision})"
    )


_TRAILER = re.compile(
    r"\(base (\d+), (?:valuation (-?\d+), precision (\d+)|zero, precision (-?\d+))\)\s*$"
)


def parse_padic(text: str) -> PadicNumber:
    """Inverse of :func:`format_padic`."""
    text = text.strip()
    match = _TRAILER.search(text)
    if match is None:
        raise PadicWaveError(f"not a p-adic literal: {text!r}")
    p = check_prime(int(match.group(1)))
    if match.group(4) is not None:
        return PadicNumber(p, int(match.group(4)), (), True)
    valuation, relprec = int(match.group(2)), int(match.group(3))
    body = text[: match.start()].replace("…", " ").replace("...", " ").split()
    values = [int(tok) for tok in body if tok != "."]
    top = valuation + relprec - 1
    by_position = {top - i: d for i, d in enumerate(values)}
    unit = sum(by_position.get(valuation + i, 0) * p**i for i in range(relprec))
    # non-canonical text (zero lowest digit) is normalized, keeping O(p^(v+N))
    return _make(p, valuation, unit, relprec)
