"""Hamming-weight statistics of the walk: moment formulas, bounded
differences under driving-sequence perturbations, variance bounds, and
distinguishing-statistic lower bounds on the distance to uniform.

Monte Carlo routines run trajectories on independent counter-based streams
(master seed, trajectory index) and merge in fixed order, so results are
reproducible and independent of batching.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .chains import ChainKind, DrivingSequence, _draw_driving_arrays, _step_word
from .gf2 import BitVector

__all__ = [
    "LowerBoundParams",
    "DegenerateWindowError",
    "ReplayDivergence",
    "VarianceReport",
    "mean_weight_closed_form",
    "mean_weight_recursion",
    "prob_first_coord_one",
    "replay_divergence",
    "weight_diff_bit_flip",
    "weight_diff_coord_change",
    "variance_bound_check",
    "chebyshev_lower_bound",
    "empirical_tv_lower_bound",
    "sample_weights",
    "weight_histogram",
    "stationary_weight_pmf",
]


class DegenerateWindowError(ValueError):
    """The concentration window is nonpositive, the bound is vacuous."""


def _check_time(n: int, t: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if not 0 <= t <= n:
        raise ValueError(f"t must be in 0..{n}, got {t}")


def mean_weight_closed_form(n: int, t: int) -> float:
    """E[weight at time t] from the all-zeros start: ((t-n)/2)(1-1/n)^t + n/2."""
    _check_time(n, t)
    return ((t - n) / 2.0) * (1.0 - 1.0 / n) ** t + n / 2.0


def mean_weight_recursion(n: int, t: int) -> float:
    """Same mean, by iterating the one-step recursion from 0."""
    _check_time(n, t)
    c1 = 1.0 - 1.0 / n
    c2 = (2.0 * n - 1.0) / (2.0 * n)
    mu = 0.0
    c1_pow = 1.0  # c1**s
    for _ in range(t):
        mu = c1 * mu - (c1 / 2.0) * (1.0 - c1_pow) + c2
        c1_pow *= c1
    return mu


def prob_first_coord_one(n: int, t: int) -> float:
    """[1 - (1-1/n)^t] / 2: chance the leading bit is set at time t, from 0.

    Valid while the backward trace of the leading bit stays inside the
    word, i.e. for t <= n - 1; at t = n the traced bit is the appended
    parity of the first step, which is exactly uniform.
    """
    _check_time(n, t)
    return (1.0 - (1.0 - 1.0 / n) ** t) / 2.0


@dataclass(frozen=True)
class ReplayDivergence:
    """How far two replays drift apart: final |weight difference| and the
    largest intermediate Hamming distance."""

    weight_diff: int
    max_hamming: int


def replay_divergence(
    chain: ChainKind,
    x0: BitVector,
    driving_a: DrivingSequence,
    driving_b: DrivingSequence,
) -> ReplayDivergence:
    """Jointly replay two driving sequences of equal length from ``x0``."""
    if len(driving_a) != len(driving_b):
        raise ValueError("driving sequences must have equal length")
    if x0.n != chain.n:
        raise ValueError(f"start has length {x0.n}, chain has n={chain.n}")
    n = chain.n
    a = b = x0.word
    max_d = 0
    for ua, ra, ub, rb in zip(
        driving_a.coords, driving_a.bits, driving_b.coords, driving_b.bits
    ):
        if not (1 <= ua <= n and 1 <= ub <= n):
            raise ValueError(f"update coordinate out of range 1..{n}")
        a = _step_word(n, a, ua, ra)
        b = _step_word(n, b, ub, rb)
        d = (a ^ b).bit_count()
        if d > max_d:
            max_d = d
    return ReplayDivergence(
        weight_diff=abs(a.bit_count() - b.bit_count()), max_hamming=max_d
    )


def weight_diff_bit_flip(
    chain: ChainKind, x0: BitVector, driving: DrivingSequence, i: int
) -> int:
    """|weight difference| after flipping the update bit at 1-based time i."""
    return replay_divergence(chain, x0, driving, driving.flip_bit(i)).weight_diff


def weight_diff_coord_change(
    chain: ChainKind, x0: BitVector, driving: DrivingSequence, i: int, u_new: int
) -> int:
    """|weight difference| after replacing the coordinate at time i by u_new."""
    if not 1 <= u_new <= chain.n:
        raise ValueError(f"coordinate {u_new} out of range 1..{chain.n}")
    return replay_divergence(
        chain, x0, driving, driving.replace_coord(i, u_new)
    ).weight_diff


def sample_weights(
    chain: ChainKind,
    x0: BitVector,
    ts: "list[int] | tuple[int, ...]",
    samples: int,
    seed: int,
) -> dict[int, np.ndarray]:
    """Hamming weights of ``samples`` independent trajectories at each time
    in ``ts``, returned as {t: int64 array of length samples}.

    Trajectory i consumes stream (seed, i); one pass serves all snapshot
    times.  The state block is kept as a circular buffer so a step costs
    O(samples) instead of O(samples * n).
    """
    if x0.n != chain.n:
        raise ValueError(f"start has length {x0.n}, chain has n={chain.n}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    ts = sorted(set(int(t) for t in ts))
    if ts and ts[0] < 0:
        raise ValueError("snapshot times must be >= 0")
    n = chain.n
    t_max = ts[-1] if ts else 0

    coords_all = None
    if chain.kind == "q1":
        coords_all = np.empty((samples, t_max), dtype=np.int64)
    bits_all = np.empty((samples, t_max), dtype=np.uint8)
    for i in range(samples):
        coords, bits = _draw_driving_arrays(chain, t_max, seed, i)
        if coords_all is not None:
            coords_all[i] = coords
        bits_all[i] = bits

    states = np.empty((samples, n), dtype=np.uint8)
    states[:] = np.array(list(x0), dtype=np.uint8)
    parity = np.full(samples, x0.parity(), dtype=np.uint8)
    weight = np.full(samples, x0.weight(), dtype=np.int64)
    rows = np.arange(samples)
    origin = 0  # column of coordinate 1 in the circular buffer

    out: dict[int, np.ndarray] = {}
    if ts and ts[0] == 0:
        out[0] = weight.copy()
    wanted = set(ts)
    for s in range(t_max):
        r = bits_all[:, s]
        if chain.kind == "q1":
            col = (coords_all[:, s] - 1 + origin) % n
            old = states[rows, col]
            new = old ^ r
            states[rows, col] = new
        else:
            col = (chain.middle - 1 + origin) % n
            old = states[:, col].copy()  # plain slice is a view
            new = old ^ r
            states[:, col] = new
        weight += new.astype(np.int64) - old.astype(np.int64)
        appended = parity ^ r  # parity of the flipped word
        dropped = states[:, origin].copy()  # leading coordinate after the flip
        weight += appended.astype(np.int64) - dropped.astype(np.int64)
        states[:, origin] = appended
        # Parity of the new word: old parity minus the dropped bit plus the
        # appended bit, which telescopes to the dropped bit itself.
        parity = dropped
        origin = (origin + 1) % n
        if (s + 1) in wanted:
            out[s + 1] = weight.copy()
    return out


def weight_histogram(
    chain: ChainKind, x0: BitVector, t: int, samples: int, seed: int
) -> np.ndarray:
    """Counts of trajectory weights at time ``t`` (length n+1 int64 array)."""
    w = sample_weights(chain, x0, [t], samples, seed)[t]
    return np.bincount(w, minlength=chain.n + 1).astype(np.int64)


def histogram_rows(counts: np.ndarray) -> list[tuple[int, int]]:
    """CSV-ready (weight, count) rows for a histogram from weight_histogram."""
    return [(w, int(c)) for w, c in enumerate(counts)]


def stationary_weight_pmf(n: int) -> np.ndarray:
    """Binomial(n, 1/2) mass function via log-gamma (safe up to n ~ 2**14)."""
    k = np.arange(n + 1, dtype=np.float64)
    logp = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1) - n * math.log(2.0)
    return np.exp(logp)


def empirical_tv_lower_bound(
    chain: ChainKind, x0: BitVector, t: int, samples: int, seed: int
) -> float:
    """TV distance between the sampled weight histogram at time ``t`` and
    the stationary Binomial(n, 1/2) weight law.

    A consistent estimator of a quantity that lower-bounds the distance of
    the chain from uniform at time t, since the weight is a function of
    the state.
    """
    counts = weight_histogram(chain, x0, t, samples, seed)
    emp = counts / counts.sum()
    return 0.5 * float(np.abs(emp - stationary_weight_pmf(chain.n)).sum())


@dataclass(frozen=True)
class VarianceReport:
    """Monte Carlo weight-variance estimate against the 4t bound."""

    n: int
    t: int
    samples: int
    seed: int
    estimate: float
    std_error: float
    bound: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "samples": self.samples,
            "seed": self.seed,
            "estimate": self.estimate,
            "std_error": self.std_error,
            "bound": self.bound,
            "passed": self.passed,
        }


def variance_bound_check(n: int, t: int, samples: int, seed: int) -> VarianceReport:
    """Estimate Var(weight at time t) for the random-coordinate walk from 0
    and compare against 4t; passes when estimate <= 4t + 3 standard errors."""
    _check_time(n, t)
    w = sample_weights(ChainKind("q1", n), BitVector.zeros(n), [t], samples, seed)[t]
    w = w.astype(np.float64)
    if samples > 1:
        est = float(w.var(ddof=1))
    else:
        est = 0.0
    centered = w - w.mean()
    m4 = float((centered**4).mean())
    se = math.sqrt(max(m4 - est**2, 0.0) / samples)
    bound = 4.0 * t
    return VarianceReport(
        n=n,
        t=t,
        samples=samples,
        seed=seed,
        estimate=est,
        std_error=se,
        bound=bound,
        passed=bool(est <= bound + 3.0 * se),
    )


@dataclass(frozen=True)
class LowerBoundParams:
    """Window parameters for the distinguishing-statistic lower bound.

    ``t`` is round(n - n^alpha); ``delta`` = n^(alpha-1/2)/(2e) - c must be
    positive for the bound to say anything.  ``c`` defaults to log n.
    """

    n: int
    alpha: float = 0.75
    c: float = field(default=math.nan)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 0.5 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (1/2, 1), got {self.alpha}")
        if math.isnan(self.c):
            object.__setattr__(self, "c", math.log(self.n))
        if self.c <= 0:
            raise ValueError(f"c must be > 0, got {self.c}")

    @property
    def t(self) -> int:
        return round(self.n - self.n**self.alpha)

    @property
    def delta(self) -> float:
        return self.n ** (self.alpha - 0.5) / (2.0 * math.e) - self.c


def chebyshev_lower_bound(params: LowerBoundParams) -> float:
    """max(0, 1 - 1/(4c^2) - 4/delta^2): a rigorous lower bound on the
    distance to uniform at time round(n - n^alpha).

    Raises DegenerateWindowError when delta <= 0 (the bound is vacuous).
    """
    delta = params.delta
    if delta <= 0:
        raise DegenerateWindowError(
            f"delta = {delta:.4g} <= 0 for n={params.n}, alpha={params.alpha}, "
            f"c={params.c:.4g}; the window bound is vacuous"
        )
    return max(0.0, 1.0 - 1.0 / (4.0 * params.c**2) - 4.0 / delta**2)
