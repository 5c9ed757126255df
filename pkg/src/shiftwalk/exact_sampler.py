"""The middle-coordinate walk as an exact uniform sampler.

Over n = 2m steps the walk's final state is an affine function
``B @ R ^ offset`` of the n fresh update bits R, where B is an invertible
block matrix.  Uniform bits therefore give an exactly uniform state, and
inverting B recovers the unique driving sequence that reaches any target.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import rng
from .chains import DrivingSequence, _step_word
from .gf2 import BitVector, GF2Matrix, solve_linear

__all__ = [
    "TransferMatrix",
    "build_transfer_matrix",
    "build_offset",
    "exact_sample",
    "solve_driving",
]


@dataclass(frozen=True)
class TransferMatrix:
    """The 2m x 2m map from update bits to the state after 2m steps.

    Block form [[I, C], [I, I]] with C the (m x m) superdiagonal shift
    block; unit determinant for every m, hence a bijection on bit vectors.
    """

    m: int
    matrix: GF2Matrix


def build_transfer_matrix(m: int) -> TransferMatrix:
    """Assemble the block matrix for half-dimension ``m``."""
    if m < 1:
        raise ValueError(f"half-dimension must be >= 1, got {m}")
    n = 2 * m
    rows = []
    for i in range(m):
        word = 1 << i  # left block: identity
        if i < m - 1:
            word |= 1 << (m + i + 1)  # right block C: ones at (i, i+1)
        rows.append(word)
    for i in range(m):
        rows.append((1 << i) | (1 << (m + i)))  # [I I]
    return TransferMatrix(m=m, matrix=GF2Matrix(n, n, tuple(rows)))


def build_offset(x: BitVector) -> BitVector:
    """(parity of x, x_1, ..., x_{n-1}): the image of the start after a
    full 2m-step cycle, equivalently the inverse of the shift map."""
    if x.n % 2 != 0:
        raise ValueError(f"expected even length, got {x.n}")
    word = ((x.word << 1) | x.parity()) & ((1 << x.n) - 1)
    return BitVector(x.n, word)


def exact_sample(x0: BitVector, seed: int, stream_index: int = 0) -> BitVector:
    """Run the middle-coordinate walk for n steps with fresh uniform bits.

    The output is exactly uniform on {0,1}^n for even n, from any start.
    """
    if x0.n % 2 != 0:
        raise ValueError(f"expected even length, got {x0.n}")
    n = x0.n
    m = n // 2
    gen = rng.stream(seed, stream_index)
    word = x0.word
    for r in gen.integers(0, 2, size=n):
        word = _step_word(n, word, m, int(r))
    return BitVector(n, word)


def solve_driving(x0: BitVector, z: BitVector) -> DrivingSequence:
    """The unique n-step driving sequence taking ``x0`` to ``z``.

    Solves ``B @ R == z ^ offset(x0)``; the transfer matrix has unit
    determinant, so a singular solve here would be an internal error.
    """
    if x0.n != z.n:
        raise ValueError(f"length mismatch: {x0.n} vs {z.n}")
    if x0.n % 2 != 0:
        raise ValueError(f"expected even length, got {x0.n}")
    m = x0.n // 2
    b = build_transfer_matrix(m).matrix
    bits = solve_linear(b, z ^ build_offset(x0))
    return DrivingSequence(coords=(m,) * x0.n, bits=bits.bits)
