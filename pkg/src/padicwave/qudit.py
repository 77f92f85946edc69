"""Dense state-vector simulation of p-level quantum registers.

Register amplitudes are indexed big-endian: position 0 is the most
significant base-p digit of the basis label.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._validation import check_int, check_prime
from .exceptions import CapacityError, NormalizationError, PadicWaveError

NORM_TOL = 1e-10
DEFAULT_MAX_AMPLITUDES = 10**6
CAP_ENV = "PADICWAVE_MAX_AMPLITUDES"
DENSE_QFT_LIMIT = 4096
PENTABIT_LEVELS = {"-": 0, "A": 1, "C": 2, "T": 3, "G": 4}

__all__ = [
    "GateMatrix",
    "ModPFunction",
    "QuditRegister",
    "apply_gate",
    "basis_register",
    "function_state",
    "hadamard_fourier",
    "hadamard_paper",
    "max_amplitudes",
    "measure",
    "pentabit_encode",
    "pentabit_superpose",
    "qft",
    "qft_dense",
    "qft_fast",
    "qft_on_first",
    "qudit_state",
    "register_hadamard",
    "uf_gate",
]


def max_amplitudes() -> int:
    """Amplitude cap, overridable through ``PADICWAVE_MAX_AMPLITUDES``."""
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_MAX_AMPLITUDES
    try:
        return int(raw)
    except ValueError as exc:
        raise PadicWaveError(f"{CAP_ENV} must be an integer, got {raw!r}") from exc


def _check_cap(p: int, n: int) -> None:
    cap = max_amplitudes()
    if p**n > cap:
        raise CapacityError(f"{p}^{n} amplitudes exceed the cap of {cap}")


@dataclass(frozen=True, eq=False)
class QuditRegister:
    """``n`` qudits of dimension ``p`` as a dense amplitude vector.

    Construction enforces unit norm unless ``check_norm=False``; the only
    producer of unnormalized registers is the non-unitary Hadamard variant.
    """

    p: int
    n: int
    amplitudes: np.ndarray
    check_norm: bool = field(default=True, repr=False)

    def __post_init__(self):
        p = check_prime(self.p)
        n = check_int(self.n, "qudit count", 0)
        _check_cap(p, n)
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != p**n:
            raise PadicWaveError(f"expected {p**n} amplitudes, got {amps.size}")
        if self.check_norm and abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"register norm^2 is {np.vdot(amps, amps).real:.12g}, expected 1"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dimension(self) -> int:
        return self.p**self.n

    @property
    def norm_defect(self) -> float:
        """``| ||psi||**2 - 1 |``."""
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0)

    def normalized(self) -> "QuditRegister":
        nrm = np.linalg.norm(self.amplitudes)
        if nrm == 0:
            raise NormalizationError("cannot normalize the zero vector")
        return QuditRegister(self.p, self.n, self.amplitudes / nrm)

    def digits(self, index: int) -> list[int]:
        out = []
        for _ in range(self.n):
            index, d = divmod(index, self.p)
            out.append(d)
        return out[::-1]

    def to_json(self) -> str:
        return json.dumps([{"re": float(a.real), "im": float(a.imag)} for a in self.amplitudes])

    @classmethod
    def from_json(cls, text: str, p: int, n: int) -> "QuditRegister":
        amps = [complex(e["re"], e["im"]) for e in json.loads(text)]
        return cls(p, n, amps)


def basis_register(p: int, digits) -> QuditRegister:
    """Computational basis state ``|x_1 ... x_n>``."""
    p = check_prime(p)
    digits = [int(d) for d in digits]
    if any(not 0 <= d < p for d in digits):
        raise PadicWaveError(f"basis digits must lie in [0, {p})")
    _check_cap(p, len(digits))
    index = 0
    for d in digits:
        index = index * p + d
    amps = np.zeros(p ** len(digits), dtype=complex)
    amps[index] = 1.0
    return QuditRegister(p, len(digits), amps)


def qudit_state(amplitudes, p: int | None = None) -> QuditRegister:
    """Single p-level system; the amplitudes are normalized on the way in."""
    amps = np.asarray(amplitudes, dtype=complex)
    p = amps.size if p is None else p
    nrm = np.linalg.norm(amps)
    if nrm == 0:
        raise NormalizationError("amplitudes are all zero")
    return QuditRegister(p, 1, amps / nrm)


@dataclass(frozen=True)
class ModPFunction:
    """A map ``Z_p -> Z_p`` given by its value table."""

    p: int
    table: tuple

    def __post_init__(self):
        p = check_prime(self.p)
        table = tuple(int(v) for v in self.table)
        if len(table) != p or any(not 0 <= v < p for v in table):
            raise PadicWaveError(f"table must hold {p} values in [0, {p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        return self.table[x % self.p]


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """A gate and its measured unitarity defect ``max |G^dagger G - I|``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise PadicWaveError("gate must be a square matrix")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @cached_property
    def unitarity_report(self) -> float:
        gram = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(gram - np.eye(self.dimension))))

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_unitary(self) -> bool:
        return self.unitarity_report < 1e-12


def uf_gate(f: ModPFunction) -> GateMatrix:
    """``U_f |x>|s> = |x>|s + f(x) mod p>`` as a ``p**2`` permutation matrix."""
    p = f.p
    x, s = np.divmod(np.arange(p * p), p)
    m = np.zeros((p * p, p * p))
    m[x * p + (s + np.asarray(f.table)[x]) % p, x * p + s] = 1.0
    return GateMatrix(m)


def hadamard_paper(p: int) -> GateMatrix:
    """Entries ``(-1)**((x*y) mod p) / sqrt(p)``; unitary only for ``p = 2``."""
    p = check_prime(p)
    k = np.arange(p)
    return GateMatrix(np.where((np.outer(k, k) % p) % 2 == 0, 1.0, -1.0) / np.sqrt(p))


def hadamard_fourier(p: int) -> GateMatrix:
    """Entries ``exp(2 pi i x y / p) / sqrt(p)``; unitary for every ``p``."""
    p = check_prime(p)
    k = np.arange(p)
    return GateMatrix(np.exp(2j * np.pi * (np.outer(k, k) % p) / p) / np.sqrt(p))


_HADAMARDS = {"paper": hadamard_paper, "fourier": hadamard_fourier}


def apply_gate(reg: QuditRegister, gate: GateMatrix, positions) -> QuditRegister:
    """Apply a ``p**k``-dimensional gate to the qudits at ``positions``."""
    positions = [int(q) for q in np.atleast_1d(positions)]
    k = len(positions)
    if gate.dimension != reg.p**k:
        raise PadicWaveError(f"gate of dimension {gate.dimension} does not act on {k} qudit(s)")
    if len(set(positions)) != k or any(not 0 <= q < reg.n for q in positions):
        raise PadicWaveError(f"invalid qudit positions {positions}")
    psi = reg.amplitudes.reshape((reg.p,) * reg.n)
    g = gate.matrix.reshape((reg.p,) * (2 * k))
    out = np.tensordot(g, psi, axes=(list(range(k, 2 * k)), positions))
    out = np.moveaxis(out, list(range(k)), positions)
    return QuditRegister(reg.p, reg.n, out.reshape(-1), check_norm=gate.is_unitary and reg.check_norm)


def register_hadamard(reg: QuditRegister, variant: str = "fourier") -> tuple[QuditRegister, float]:
    """Hadamard on every qudit; returns the state and its norm defect."""
    if variant not in _HADAMARDS:
        raise PadicWaveError(f"variant must be 'paper' or 'fourier', got {variant!r}")
    gate = _HADAMARDS[variant](reg.p)
    out = reg
    for q in range(reg.n):
        out = apply_gate(out, gate, q)
    return out, out.norm_defect


def qft_dense(amplitudes: np.ndarray) -> np.ndarray:
    """``F|x> = sum_y exp(2 pi i x y / N) |y> / sqrt(N)`` by matrix-vector product."""
    N = amplitudes.shape[-1]
    k = np.arange(N)
    F = np.exp(2j * np.pi * (np.outer(k, k) % N) / N) / np.sqrt(N)
    return amplitudes @ F.T


def _radix_p_dft(a: np.ndarray, p: int) -> np.ndarray:
    """Unnormalized ``sum_x a[x] exp(2 pi i x y / N)`` along the last axis, ``N = p**n``."""
    N = a.shape[-1]
    k = np.arange(p)
    Fp = np.exp(2j * np.pi * np.outer(k, k) / p)
    if N == p:
        return a @ Fp.T
    M = N // p
    batch = a.shape[:-1]
    # split x = p*m + r: sub-transforms of length M over each residue r
    sub = _radix_p_dft(np.swapaxes(a.reshape(batch + (M, p)), -1, -2), p)
    twiddle = np.exp(2j * np.pi * np.outer(k, np.arange(M)) / N)
    # combine: X[k1 + M*k2] = sum_r exp(2 pi i r k2 / p) twiddle[r, k1] sub[r, k1]
    out = np.einsum("sr,...rk->...sk", Fp, sub * twiddle)
    return out.reshape(batch + (N,))


def qft_fast(amplitudes: np.ndarray, p: int) -> np.ndarray:
    N = amplitudes.shape[-1]
    if N == 1:
        return amplitudes.astype(complex)
    return _radix_p_dft(np.asarray(amplitudes, dtype=complex), p) / np.sqrt(N)


def qft(reg: QuditRegister, method: str = "auto") -> QuditRegister:
    """Quantum Fourier transform on the whole register (``omega = p**n``).

    A ``1/sqrt(omega)`` prefactor keeps it unitary. ``method="auto"`` uses
    the dense matrix up to 4096 amplitudes and the radix-p factorization above.
    """
    if method == "auto":
        method = "dense" if reg.dimension <= DENSE_QFT_LIMIT else "fast"
    if method == "dense":
        out = qft_dense(reg.amplitudes)
    elif method == "fast":
        out = qft_fast(reg.amplitudes, reg.p)
    else:
        raise PadicWaveError(f"unknown QFT method {method!r}")
    return QuditRegister(reg.p, reg.n, out, check_norm=reg.check_norm)


def function_state(table, p: int, n: int, m: int | None = None) -> QuditRegister:
    """``(1/sqrt(omega)) sum_x |x> (x) |f(x)>`` with ``x`` on ``n`` qudits, ``f(x)`` on ``m``."""
    p = check_prime(p)
    m = n if m is None else m
    table = np.asarray(table, dtype=int)
    if table.shape != (p**n,):
        raise PadicWaveError(f"table must have {p**n} entries")
    if np.any(table < 0) or np.any(table >= p**m):
        raise PadicWaveError(f"table values must lie in [0, {p**m})")
    _check_cap(p, n + m)
    amps = np.zeros((p**n, p**m), dtype=complex)
    amps[np.arange(p**n), table] = 1.0 / np.sqrt(p**n)
    return QuditRegister(p, n + m, amps.reshape(-1))


def qft_on_first(reg: QuditRegister, n_first: int, method: str = "auto") -> QuditRegister:
    """``F (x) I``: QFT on the leading ``n_first`` qudits."""
    if not 0 <= n_first <= reg.n:
        raise PadicWaveError("n_first out of range")
    a = reg.amplitudes.reshape(reg.p**n_first, reg.p ** (reg.n - n_first))
    if method == "auto":
        method = "dense" if reg.p**n_first <= DENSE_QFT_LIMIT else "fast"
    if method == "dense":
        out = qft_dense(a.T).T
    else:
        out = qft_fast(a.T, reg.p).T
    return QuditRegister(reg.p, reg.n, out.reshape(-1), check_norm=reg.check_norm)


def pentabit_encode(sequence: str, levels: dict | None = None) -> QuditRegister:
    """Basis register (p = 5) for a nucleotide string over ``- A C T G``."""
    levels = PENTABIT_LEVELS if levels is None else levels
    if not sequence:
        raise PadicWaveError("empty nucleotide sequence")
    try:
        digits = [levels[ch] for ch in sequence.upper()]
    except KeyError as exc:
        raise PadicWaveError(f"unknown nucleotide symbol {exc.args[0]!r}") from None
    return basis_register(5, digits)


def pentabit_superpose(weights, levels: dict | None = None) -> QuditRegister:
    """Single pentabit ``a0|0> + a1|A> + a2|C> + a3|T> + a4|G>``.

    ``weights`` is either a length-5 sequence in level order or a mapping
    from symbols to amplitudes. The result is normalized.
    """
    levels = PENTABIT_LEVELS if levels is None else levels
    amps = np.zeros(5, dtype=complex)
    if isinstance(weights, dict):
        for sym, w in weights.items():
            if sym not in levels:
                raise PadicWaveError(f"unknown nucleotide symbol {sym!r}")
            amps[levels[sym]] = w
    else:
        amps[:] = np.asarray(weights, dtype=complex)
    return qudit_state(amps, 5)


def measure(reg: QuditRegister, shots: int, seed=None) -> dict[int, int]:
    """Born-rule sampling; returns ``{basis index: count}`` for nonzero counts."""
    shots = check_int(shots, "shots", 1)
    if reg.norm_defect > NORM_TOL:
        raise NormalizationError(
            f"register is not normalized (defect {reg.norm_defect:.3g}); renormalize first"
        )
    probs = np.abs(reg.amplitudes) ** 2
    probs /= probs.sum()
    counts = np.random.default_rng(seed).multinomial(shots, probs)
    return {int(i): int(c) for i, c in enumerate(counts) if c}
