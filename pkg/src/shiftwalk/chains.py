"""Transition kernels of the shift-register walks and deterministic replay.

Two chains share the same deterministic move (drop the leading bit, shift,
append the parity): ``q1`` first adds a random bit at a uniformly chosen
coordinate, ``q2`` always updates the middle coordinate of an even-length
state.  All randomness is factored into a DrivingSequence so that every
stochastic operation is a thin wrapper over deterministic replay.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import rng
from .gf2 import BitVector, GF2Matrix, _shift_word

__all__ = [
    "ChainKind",
    "DrivingSequence",
    "AffineState",
    "q1",
    "q2",
    "step_q1",
    "step_q2",
    "simulate",
    "random_driving",
    "simulate_random",
    "evolve_symbolic",
    "trajectory_rows",
]


@dataclass(frozen=True)
class ChainKind:
    """One of the two kernels, with its dimension.

    ``q1`` updates a uniform random coordinate each step; ``q2`` always
    updates coordinate n/2 and requires even n.
    """

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind not in ("q1", "q2"):
            raise ValueError(f"unknown chain kind {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if self.kind == "q2" and self.n % 2 != 0:
            raise ValueError(f"q2 needs even dimension, got n={self.n}")

    @property
    def middle(self) -> int:
        """The fixed 1-based update coordinate of q2."""
        if self.kind != "q2":
            raise ValueError("only q2 has a fixed update coordinate")
        return self.n // 2


def q1(n: int) -> ChainKind:
    return ChainKind("q1", n)


def q2(n: int) -> ChainKind:
    return ChainKind("q2", n)


@dataclass(frozen=True)
class DrivingSequence:
    """Paired update coordinates (1-based) and update bits, one per step."""

    coords: tuple[int, ...]
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != len(self.bits):
            raise ValueError(
                f"{len(self.coords)} coordinates vs {len(self.bits)} bits"
            )
        if any(u < 1 for u in self.coords):
            raise ValueError("update coordinates are 1-based and must be >= 1")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("update bits must be 0 or 1")

    def __len__(self) -> int:
        return len(self.coords)

    def flip_bit(self, i: int) -> DrivingSequence:
        """Copy with the update bit at 1-based time ``i`` toggled."""
        if not 1 <= i <= len(self):
            raise IndexError(f"time {i} out of range 1..{len(self)}")
        bits = list(self.bits)
        bits[i - 1] ^= 1
        return DrivingSequence(self.coords, tuple(bits))

    def replace_coord(self, i: int, u_new: int) -> DrivingSequence:
        """Copy with the update coordinate at 1-based time ``i`` replaced."""
        if not 1 <= i <= len(self):
            raise IndexError(f"time {i} out of range 1..{len(self)}")
        coords = list(self.coords)
        coords[i - 1] = u_new
        return DrivingSequence(tuple(coords), self.bits)


@dataclass(frozen=True)
class AffineState:
    """The state after t steps as an affine map of the update bits.

    For the fixed coordinate sequence, the state equals
    ``map @ (R_1..R_t) ^ offset`` for every realization of the bits.
    """

    map: GF2Matrix
    offset: BitVector

    @property
    def steps(self) -> int:
        return self.map.n_cols

    def apply(self, bits: Union[BitVector, Sequence[int]]) -> BitVector:
        if not isinstance(bits, BitVector):
            bits = tuple(bits)
            if len(bits) != self.steps:
                raise ValueError(f"expected {self.steps} bits, got {len(bits)}")
            if not bits:
                return self.offset
            bits = BitVector.from_bits(bits)
        return self.map.mul_vec(bits) ^ self.offset


def _step_word(n: int, word: int, u: int, r: int) -> int:
    """One step on a packed state: flip bit at 1-based ``u`` if r, then shift."""
    if r:
        word ^= 1 << (u - 1)
    return _shift_word(n, word)


def step_q1(x: BitVector, u: int, r: int) -> BitVector:
    """Add ``r`` at 1-based coordinate ``u`` of ``x``, then shift-register."""
    if not 1 <= u <= x.n:
        raise ValueError(f"coordinate {u} out of range 1..{x.n}")
    if r not in (0, 1):
        raise ValueError(f"update bit must be 0 or 1, got {r!r}")
    return BitVector(x.n, _step_word(x.n, x.word, u, r))


def step_q2(x: BitVector, r: int) -> BitVector:
    """Add ``r`` at the middle coordinate of even-length ``x``, then shift."""
    if x.n % 2 != 0:
        raise ValueError(f"q2 needs even dimension, got n={x.n}")
    return step_q1(x, x.n // 2, r)


def _validate_driving(chain: ChainKind, driving: DrivingSequence) -> None:
    if any(u > chain.n for u in driving.coords):
        raise ValueError(f"update coordinate exceeds n={chain.n}")
    if chain.kind == "q2" and any(u != chain.middle for u in driving.coords):
        raise ValueError(f"q2 driving must use coordinate {chain.middle} only")


def simulate(
    chain: ChainKind, x0: BitVector, driving: DrivingSequence
) -> list[BitVector]:
    """Deterministic replay; returns the configuration sequence x_0..x_t."""
    if x0.n != chain.n:
        raise ValueError(f"start has length {x0.n}, chain has n={chain.n}")
    _validate_driving(chain, driving)
    states = [x0]
    word = x0.word
    for u, r in zip(driving.coords, driving.bits):
        word = _step_word(chain.n, word, u, r)
        states.append(BitVector(chain.n, word))
    return states


def _draw_driving_arrays(chain: ChainKind, t: int, seed: int, stream_index: int):
    """Raw (coords, bits) arrays for one trajectory's stream.

    Shared by random_driving and the vectorized ensembles so that both
    consume the stream in the same order.  coords is None for q2.
    """
    if t < 0:
        raise ValueError(f"trajectory length must be >= 0, got {t}")
    gen = rng.stream(seed, stream_index)
    coords = None
    if chain.kind == "q1":
        coords = gen.integers(1, chain.n + 1, size=t, dtype=np.int64)
    bits = gen.integers(0, 2, size=t, dtype=np.uint8)
    return coords, bits


def random_driving(
    chain: ChainKind, t: int, seed: int, stream_index: int = 0
) -> DrivingSequence:
    """Fresh driving sequence of length ``t`` from stream (seed, stream_index).

    q1 draws coordinates uniform on 1..n and bits uniform on {0,1}; q2
    draws only bits, its coordinate is fixed.
    """
    coords, bits = _draw_driving_arrays(chain, t, seed, stream_index)
    if coords is None:
        coord_tuple = (chain.middle,) * t
    else:
        coord_tuple = tuple(int(u) for u in coords)
    return DrivingSequence(coord_tuple, tuple(int(b) for b in bits))


def simulate_random(
    chain: ChainKind, x0: BitVector, t: int, seed: int, stream_index: int = 0
) -> list[BitVector]:
    """Simulate ``t`` random steps; identical seeds give identical paths."""
    return simulate(chain, x0, random_driving(chain, t, seed, stream_index))


def evolve_symbolic(
    chain: ChainKind, x0: BitVector, coords: Union[Sequence[int], int]
) -> AffineState:
    """Track the state as an affine function of the (symbolic) update bits.

    ``coords`` is the update-coordinate sequence; for q2 an integer step
    count may be given instead, the coordinate being implied.  Column j of
    the returned map is the image of the j-th update bit and the offset is
    the image of the start, so replaying any concrete bits R reproduces
    ``map @ R ^ offset``.
    """
    if x0.n != chain.n:
        raise ValueError(f"start has length {x0.n}, chain has n={chain.n}")
    if isinstance(coords, int):
        if chain.kind != "q2":
            raise ValueError("step count only implies coordinates for q2")
        coords = (chain.middle,) * coords
    coords = tuple(coords)
    _validate_driving(chain, DrivingSequence(coords, (0,) * len(coords)))
    n = chain.n
    offset = x0.word
    columns: list[int] = []
    for u in coords:
        # X_s = shift(X_{s-1} ^ R_s e_u): shift every column and the offset,
        # then open a new column for the fresh bit.
        columns = [_shift_word(n, c) for c in columns]
        columns.append(_shift_word(n, 1 << (u - 1)))
        offset = _shift_word(n, offset)
    return AffineState(
        map=GF2Matrix.from_columns(n, columns),
        offset=BitVector(n, offset),
    )


def trajectory_rows(states: Sequence[BitVector]) -> list[tuple[int, str, int]]:
    """CSV-ready rows (t, state bitstring, Hamming weight)."""
    return [(t, x.to_string(), x.weight()) for t, x in enumerate(states)]
