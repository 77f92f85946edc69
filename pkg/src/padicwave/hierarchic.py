"""Hierarchic wave functions on full p-ary trees.

A :class:`HierarchicState` stores one complex block of length ``M`` per tree
node. Level ``l`` has ``p**l`` nodes; the node reached by the branch digits
``(a_0, ..., a_{l-1})`` sits at index ``a_0 + a_1 p + ... + a_{l-1} p**(l-1)``,
i.e. the residue mod ``p**l`` of every p-adic integer passing through it.

Two weightings of the componentwise scalar product are available:

``"flat"``
    every node counts once;
``"measure"``
    level ``l`` is weighted by ``p**-l``, the Haar measure of the ball of
    Z_p that the node stands for.

:class:`HierarchicKet` is the sparse, incrementally built form produced by
the creation and annihilation constructors; :meth:`HierarchicKet.to_state`
fills the missing nodes with zero blocks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_int
from .exceptions import PadicWaveError, ShapeMismatchError, UnsupportedOperationError
from .padic import PadicNumber

WEIGHTINGS = ("flat", "measure")

__all__ = [
    "HierarchicKet",
    "HierarchicState",
    "annihilate_entity",
    "create_entity",
    "create_part",
    "inner",
    "level_weights",
    "lin_comb",
    "norm2",
    "normalize",
    "state_from_padic",
]


@dataclass(frozen=True, eq=False)
class HierarchicState:
    """Full p-ary tree of depth ``depth`` with complex blocks of size ``component_dim``.

    ``levels[l]`` is an array of shape ``(p**l, component_dim)``.
    """

    p: int
    depth: int
    component_dim: int
    levels: tuple

    def __post_init__(self):
        check_int(self.p, "branching", 2)
        check_int(self.depth, "depth", 0)
        check_int(self.component_dim, "component_dim", 1)
        if len(self.levels) != self.depth + 1:
            raise ShapeMismatchError(f"expected {self.depth + 1} levels, got {len(self.levels)}")
        levels = []
        for l, block in enumerate(self.levels):
            arr = np.array(block, dtype=complex)
            if arr.shape != (self.p**l, self.component_dim):
                raise ShapeMismatchError(
                    f"level {l} must have shape {(self.p**l, self.component_dim)}, got {arr.shape}"
                )
            arr.setflags(write=False)
            levels.append(arr)
        object.__setattr__(self, "levels", tuple(levels))

    @classmethod
    def zeros(cls, p: int, depth: int, component_dim: int = 1) -> "HierarchicState":
        return cls(p, depth, component_dim,
                   tuple(np.zeros((p**l, component_dim)) for l in range(depth + 1)))

    @classmethod
    def random(cls, p: int, depth: int, component_dim: int = 1, rng=None) -> "HierarchicState":
        rng = np.random.default_rng(rng)
        return cls(p, depth, component_dim, tuple(
            rng.normal(size=(p**l, component_dim)) + 1j * rng.normal(size=(p**l, component_dim))
            for l in range(depth + 1)
        ))

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.p, self.depth, self.component_dim)

    def node(self, path) -> np.ndarray:
        """Block at the node reached by the branch digits ``path``."""
        path = tuple(path)
        if len(path) > self.depth or any(not 0 <= a < self.p for a in path):
            raise PadicWaveError(f"no node at path {path}")
        return self.levels[len(path)][_node_index(path, self.p)]

    def __add__(self, other):
        return lin_comb(1, self, 1, other)

    def __sub__(self, other):
        return lin_comb(1, self, -1, other)

    def __mul__(self, scalar):
        return HierarchicState(self.p, self.depth, self.component_dim,
                               tuple(complex(scalar) * b for b in self.levels))

    __rmul__ = __mul__

    def level_norms(self, weighting: str = "flat") -> list[float]:
        w = level_weights(self.p, self.depth, weighting)
        return [float(wl * np.vdot(b, b).real) for wl, b in zip(w, self.levels)]

    def to_dict(self) -> dict:
        """``{p, L, M, nodes}`` with nodes in level order, each a list of ``[re, im]``."""
        nodes = [[[float(z.real), float(z.imag)] for z in row]
                 for block in self.levels for row in block]
        return {"p": self.p, "L": self.depth, "M": self.component_dim, "nodes": nodes}

    @classmethod
    def from_dict(cls, data: dict) -> "HierarchicState":
        p, L, M = int(data["p"]), int(data["L"]), int(data["M"])
        flat = np.array([[complex(re, im) for re, im in row] for row in data["nodes"]])
        expected = sum(p**l for l in range(L + 1))
        if flat.shape != (expected, M):
            raise ShapeMismatchError(f"expected {expected} nodes of size {M}")
        levels, start = [], 0
        for l in range(L + 1):
            levels.append(flat[start:start + p**l])
            start += p**l
        return cls(p, L, M, tuple(levels))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "HierarchicState":
        return cls.from_dict(json.loads(text))


def _node_index(path, p: int) -> int:
    return sum(a * p**i for i, a in enumerate(path))


def _check_same_shape(s1: HierarchicState, s2: HierarchicState) -> None:
    if s1.shape != s2.shape:
        raise ShapeMismatchError(f"state shapes differ: {s1.shape} vs {s2.shape}")


def level_weights(p: int, depth: int, weighting: str = "flat") -> np.ndarray:
    """Per-node weight at each level for the chosen scalar-product convention."""
    if weighting == "flat":
        return np.ones(depth + 1)
    if weighting == "measure":
        return float(p) ** -np.arange(depth + 1)
    raise PadicWaveError(f"weighting must be one of {WEIGHTINGS}, got {weighting!r}")


def lin_comb(a, s1: HierarchicState, b, s2: HierarchicState) -> HierarchicState:
    """Nodewise ``a * s1 + b * s2``."""
    _check_same_shape(s1, s2)
    a, b = complex(a), complex(b)
    return HierarchicState(s1.p, s1.depth, s1.component_dim,
                           tuple(a * x + b * y for x, y in zip(s1.levels, s2.levels)))


def inner(s1: HierarchicState, s2: HierarchicState, weighting: str = "flat") -> complex:
    """Componentwise scalar product, antilinear in ``s1``."""
    _check_same_shape(s1, s2)
    w = level_weights(s1.p, s1.depth, weighting)
    return complex(sum(wl * np.vdot(x, y) for wl, x, y in zip(w, s1.levels, s2.levels)))


def norm2(s: HierarchicState, weighting: str = "flat") -> float:
    return inner(s, s, weighting).real


def normalize(s: HierarchicState, weighting: str = "flat") -> HierarchicState:
    n2 = norm2(s, weighting)
    if n2 <= 0:
        raise PadicWaveError("cannot normalize the zero state")
    return s * (1.0 / np.sqrt(n2))


def state_from_padic(x: PadicNumber, depth: int, component_dim: int = 1) -> HierarchicState:
    """Basis state labelled by the first ``depth`` digits of a p-adic integer.

    The branch followed at level ``l`` is the digit ``a_l``; the unit
    amplitude (first basis vector of the block) sits on the terminal node
    of that branch, so integers that differ mod ``p**depth`` give
    orthogonal states.
    """
    depth = check_int(depth, "depth", 0)
    if not x.is_integral():
        raise PadicWaveError("state_from_padic needs a p-adic integer")
    path = [x.digit(l) for l in range(depth)]
    state = HierarchicState.zeros(x.p, depth, component_dim)
    levels = [np.array(b) for b in state.levels]
    levels[depth][_node_index(path, x.p), 0] = 1.0
    return HierarchicState(x.p, depth, component_dim, tuple(levels))


# -- second quantization as tree surgery ------------------------------------------

@dataclass(frozen=True, eq=False)
class HierarchicKet:
    """Partially built hierarchic state.

    ``nodes`` maps branch paths (tuples of digits, ``()`` being the entity)
    to amplitude blocks. The vacuum has no nodes. ``amplitude`` is an
    overall coefficient; annihilating the vacuum yields it with amplitude 0.
    """

    p: int
    component_dim: int = 1
    nodes: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)
    amplitude: complex = 1.0

    @classmethod
    def vacuum(cls, p: int, component_dim: int = 1) -> "HierarchicKet":
        return cls(p, component_dim)

    @property
    def is_vacuum(self) -> bool:
        return not self.nodes

    @property
    def depth(self) -> int:
        return max((len(k) for k in self.nodes), default=-1)

    def to_state(self, depth: int | None = None) -> HierarchicState:
        """Zero-fill to a full tree."""
        if self.is_vacuum:
            raise PadicWaveError("the vacuum has no tree to fill")
        depth = self.depth if depth is None else depth
        if depth < self.depth:
            raise ShapeMismatchError(f"ket reaches depth {self.depth}, cannot fit in {depth}")
        levels = [np.zeros((self.p**l, self.component_dim), dtype=complex) for l in range(depth + 1)]
        for path, block in self.nodes.items():
            levels[len(path)][_node_index(path, self.p)] = self.amplitude * np.asarray(block)
        return HierarchicState(self.p, depth, self.component_dim, tuple(levels))


def _basis_block(component_dim: int) -> np.ndarray:
    e = np.zeros(component_dim, dtype=complex)
    e[0] = 1.0
    return e


def create_entity(label="C", p: int = 2, component_dim: int = 1) -> HierarchicKet:
    """``a+(C)|0>``: a bare entity with a basis block at the root."""
    check_int(p, "branching", 2)
    return HierarchicKet(p, component_dim, {(): _basis_block(component_dim)}, {(): label})


def create_part(ket: HierarchicKet, path=(), label: int = 0) -> HierarchicKet:
    """Create the part ``label`` (a digit in Z_p) of the node at ``path``.

    The parent must already exist: parts cannot precede their entity.
    """
    path = tuple(path)
    if path not in ket.nodes:
        raise PadicWaveError(f"cannot create a part of the nonexistent node {path}")
    if not 0 <= label < ket.p:
        raise PadicWaveError(f"part label must lie in Z_{ket.p}, got {label}")
    child = path + (label,)
    if child in ket.nodes:
        raise PadicWaveError(f"part {child} already exists")
    nodes = dict(ket.nodes)
    nodes[child] = _basis_block(ket.component_dim)
    labels = dict(ket.labels)
    labels[child] = label
    return HierarchicKet(ket.p, ket.component_dim, nodes, labels, ket.amplitude)


def annihilate_entity(ket: HierarchicKet, path=()) -> list[HierarchicKet]:
    """Decay of the entity at ``path`` into its parts.

    Returns the child subtrees re-rooted as independent kets. A bare entity
    decays into nothing (empty list: the vacuum). Annihilating the vacuum
    returns the vacuum with amplitude 0. Removing a part while its parent
    entity is still present is rejected.
    """
    path = tuple(path)
    if ket.is_vacuum:
        return [HierarchicKet(ket.p, ket.component_dim, amplitude=0.0)]
    if path not in ket.nodes:
        raise PadicWaveError(f"no entity at {path}")
    if path and path[:-1] in ket.nodes:
        raise UnsupportedOperationError(
            "unsupported: annihilating a part inside an intact entity is questionable "
            "and has no defined result"
        )
    parts = []
    for child_label in range(ket.p):
        prefix = path + (child_label,)
        cut = len(prefix)
        nodes = {k[cut:]: v for k, v in ket.nodes.items() if k[:cut] == prefix}
        if nodes:
            labels = {k[cut:]: lab for k, lab in ket.labels.items() if k[:cut] == prefix}
            parts.append(HierarchicKet(ket.p, ket.component_dim, nodes, labels, ket.amplitude))
    return parts
