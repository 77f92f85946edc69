"""p-adic arithmetic, p-adic wavelet analysis, hierarchic states and qudit simulation."""
from .analysis import (
    TestFunction,
    ball_indicator,
    fourier,
    fourier_all,
    integrate,
    inverse_fourier_all,
    kozyrev_wavelet,
    vladimirov,
    wavelet_atom,
)
from .cwt import CwtGrid, admissibility_constant, cwt_forward, cwt_inverse, plancherel_energy
from .exceptions import (
    BaseMismatchError,
    CapacityError,
    NormalizationError,
    PadicWaveError,
    PrecisionError,
    ResolutionError,
    ShapeMismatchError,
    UnsupportedOperationError,
)
from .haar import (
    HaarWaveletQp,
    Pyramid,
    haar_forward_padic,
    haar_forward_real,
    haar_inverse_padic,
    haar_inverse_real,
)
from .hierarchic import HierarchicKet, HierarchicState, inner, norm2, normalize, state_from_padic
from .padic import PadicNumber, character, format_padic, from_rational, norm, parse_padic
from .qudit import (
    GateMatrix,
    ModPFunction,
    QuditRegister,
    apply_gate,
    basis_register,
    hadamard_fourier,
    hadamard_paper,
    measure,
    qft,
    uf_gate,
)

__version__ = "0.1.0"
