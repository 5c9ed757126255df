"""Exact evolution of the full state distribution.

Brute-force oracle for small n: the distribution over all 2**n states is a
dense float64 vector indexed by packed state words, and one step applies
the exact kernel by scattering each state's mass to its successors.  The
kernel probabilities are dyadic (1/2 and 1/(2n)), so accumulation error
stays far below the 1e-12 tolerances used by callers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chains import ChainKind
from .gf2 import BitVector

__all__ = [
    "MAX_EXACT_N",
    "DistributionVector",
    "point_mass",
    "uniform",
    "evolve_exact",
    "tv_to_uniform",
    "weight_moments",
    "coordinate_marginal",
    "exact_tv_curve",
]

# 2**24 float64 entries are ~134 MB per buffer; beyond that the dense
# oracle stops being a desk-scale tool.
MAX_EXACT_N = 24


def _check_guard(n: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n > MAX_EXACT_N:
        mib = (1 << n) * 8 / 2**20
        raise ValueError(
            f"exact distributions limited to n <= {MAX_EXACT_N}; "
            f"n={n} would need ~{mib:.0f} MiB per vector"
        )


@dataclass(frozen=True, eq=False)
class DistributionVector:
    """Probability vector over {0,1}^n, indexed by packed state words."""

    n: int
    probs: np.ndarray

    def __post_init__(self) -> None:
        _check_guard(self.n)
        if self.probs.shape != (1 << self.n,):
            raise ValueError(
                f"expected {1 << self.n} entries for n={self.n}, "
                f"got shape {self.probs.shape}"
            )
        if np.any(self.probs < 0):
            raise ValueError("negative probability entry")
        if abs(float(self.probs.sum()) - 1.0) > 1e-12:
            raise ValueError(f"mass {self.probs.sum()!r} not 1 within 1e-12")


def point_mass(n: int, x: BitVector) -> DistributionVector:
    """All mass on state ``x``."""
    _check_guard(n)
    if x.n != n:
        raise ValueError(f"state has length {x.n}, expected {n}")
    probs = np.zeros(1 << n)
    probs[x.word] = 1.0
    return DistributionVector(n, probs)


def uniform(n: int) -> DistributionVector:
    _check_guard(n)
    return DistributionVector(n, np.full(1 << n, 1.0 / (1 << n)))


def _inverse_shift_index(n: int) -> np.ndarray:
    """Index array P with P[y] = the state whose shift-register image is y."""
    idx = np.arange(1 << n, dtype=np.int64)
    par = (np.bitwise_count(idx.astype(np.uint64)).astype(np.int64)) & 1
    forward = (idx >> 1) | (par << (n - 1))
    inverse = np.empty_like(forward)
    inverse[forward] = idx
    return inverse


def _step(chain: ChainKind, probs: np.ndarray, inv: np.ndarray) -> np.ndarray:
    # Pull form of the kernel: the mass at y gathers from the states that
    # map there, i.e. from inv[y] with each possible pre-shift bit flip.
    n = chain.n
    if chain.kind == "q1":
        out = 0.5 * probs[inv]
        w = 1.0 / (2 * n)
        for i in range(n):
            out += w * probs[inv ^ (1 << i)]
        return out
    m = chain.middle
    return 0.5 * (probs[inv] + probs[inv ^ (1 << (m - 1))])


def evolve_exact(
    chain: ChainKind, d: DistributionVector, steps: int
) -> DistributionVector:
    """Apply the exact one-step kernel ``steps`` times (mass preserving)."""
    if chain.n != d.n:
        raise ValueError(f"chain has n={chain.n}, distribution has n={d.n}")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if steps == 0:
        return d
    inv = _inverse_shift_index(chain.n)
    probs = d.probs
    for _ in range(steps):
        probs = _step(chain, probs, inv)
    return DistributionVector(chain.n, probs)


def tv_to_uniform(d: DistributionVector) -> float:
    """Total variation distance to the uniform distribution."""
    return 0.5 * float(np.abs(d.probs - 1.0 / (1 << d.n)).sum())


def _weights(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.uint64)
    return np.bitwise_count(idx).astype(np.float64)


def weight_moments(d: DistributionVector) -> tuple[float, float]:
    """Exact (mean, variance) of the Hamming weight under ``d``."""
    w = _weights(d.n)
    mean = float(w @ d.probs)
    var = float(((w - mean) ** 2) @ d.probs)
    return mean, var


def coordinate_marginal(d: DistributionVector, coord: int) -> float:
    """Exact P(bit at 1-based ``coord`` equals 1) under ``d``."""
    if not 1 <= coord <= d.n:
        raise ValueError(f"coordinate {coord} out of range 1..{d.n}")
    idx = np.arange(1 << d.n, dtype=np.int64)
    mask = (idx >> (coord - 1)) & 1
    return float(d.probs[mask == 1].sum())


def exact_tv_curve(
    chain: ChainKind, x0: BitVector, t_max: int
) -> list[tuple[int, float]]:
    """(t, TV to uniform) for t = 0..t_max from a point mass at ``x0``."""
    if t_max < 0:
        raise ValueError(f"t_max must be >= 0, got {t_max}")
    d = point_mass(chain.n, x0)
    inv = _inverse_shift_index(chain.n)
    curve = [(0, tv_to_uniform(d))]
    probs = d.probs
    for t in range(1, t_max + 1):
        probs = _step(chain, probs, inv)
        curve.append((t, 0.5 * float(np.abs(probs - 1.0 / (1 << chain.n)).sum())))
    return curve
