"""Named verification suites behind the ``verify`` command.

Each suite runs a batch of checks with explicit tolerances and returns
CheckResult records carrying the observed extremal values, so reports stay
machine readable and reruns are comparable.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import distribution, rng, spectral, weight_stats
from .chains import DrivingSequence, q1, q2
from .gf2 import BitVector, GF2Matrix, companion_matrix, mat_pow
from .weight_stats import replay_divergence

__all__ = ["CheckResult", "SUITES", "run_suite", "suite_names"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    observed: dict = field(default_factory=dict)


def suite_matrix_order(
    n_max: int = 512, seed: int = 0, spot_n: int = 10_000, **_: object
) -> list[CheckResult]:
    """The shift map's matrix has order n+1: M^(n+1) = I."""
    failures = []
    for n in range(2, n_max + 1):
        a = companion_matrix(n)
        if mat_pow(a, n + 1) != GF2Matrix.identity(n):
            failures.append(n)
    results = [
        CheckResult(
            name=f"power n+1 is identity for 2 <= n <= {n_max}",
            passed=not failures,
            observed={"failures": failures},
        )
    ]
    # Minimality is reported, not asserted: no smaller power should hit I.
    early = []
    for n in range(2, min(n_max, 64) + 1):
        a = companion_matrix(n)
        p = a
        for k in range(1, n + 1):
            if p == GF2Matrix.identity(n):
                early.append((n, k))
            if k < n:
                p = p.mul_mat(a)
    results.append(
        CheckResult(
            name="no smaller power is the identity (n <= 64, informational)",
            passed=True,
            observed={"early_identities": early},
        )
    )
    if spot_n:
        start = time.perf_counter()
        a = companion_matrix(spot_n)
        ok = mat_pow(a, spot_n + 1) == GF2Matrix.identity(spot_n)
        results.append(
            CheckResult(
                name=f"spot check at n = {spot_n}",
                passed=ok,
                observed={"elapsed_s": round(time.perf_counter() - start, 3)},
            )
        )
    return results


def suite_term_bounds(n_max: int = 2000, **_: object) -> list[CheckResult]:
    """Weight-class terms stay below 1/n^2 (interior) and 1/n (k = n-1)."""
    worst_interior = (0.0, 0, 0)  # ratio, n, k
    worst_edge = (0.0, 0)
    failures = []
    for n in range(6, n_max + 1):
        rep = spectral.check_weight_class_bounds(n)
        if not rep.passed:
            failures.append(n)
        if rep.max_interior_ratio > worst_interior[0]:
            worst_interior = (rep.max_interior_ratio, n, rep.argmax_interior_k)
        if rep.edge_ratio > worst_edge[0]:
            worst_edge = (rep.edge_ratio, n)
    return [
        CheckResult(
            name=f"term bounds hold for 6 <= n <= {n_max}",
            passed=not failures,
            observed={
                "failures": failures,
                "max_interior_ratio": worst_interior[0],
                "at_n": worst_interior[1],
                "at_k": worst_interior[2],
                "max_edge_ratio": worst_edge[0],
                "edge_at_n": worst_edge[1],
            },
        )
    ]


def suite_fourier(n_max: int = 2000, **_: object) -> list[CheckResult]:
    """Closed-form transform coefficients against the brute-force oracle."""
    results = []
    worst = 0.0
    for n in (6, 8, 10):
        chain = q1(n)
        d = distribution.evolve_exact(
            chain, distribution.point_mass(n, BitVector.zeros(n)), n + 1
        )
        mags = [
            spectral.fourier_coeff_closed_form(n, BitVector.zeros(n), k)
            for k in range(n + 1)
        ]
        for word in range(1 << n):
            y = BitVector(n, word)
            diff = abs(spectral.fourier_bruteforce(d, y) - mags[y.weight()])
            worst = max(worst, diff)
    results.append(
        CheckResult(
            name="closed form matches brute force at n in {6,8,10}, all frequencies",
            passed=worst <= 1e-12,
            observed={"max_abs_diff": worst},
        )
    )

    n = 6
    d = distribution.evolve_exact(
        q1(n), distribution.point_mass(n, BitVector.zeros(n)), n + 1
    )
    brute_sum = sum(
        spectral.fourier_bruteforce(d, BitVector(n, w)) ** 2
        for w in range(1, 1 << n)
    )
    summary = spectral.fourier_sum(n)
    diff = abs(brute_sum - summary.total)
    results.append(
        CheckResult(
            name="squared-coefficient total matches exhaustive sum at n = 6",
            passed=diff <= 1e-10,
            observed={"exhaustive": brute_sum, "closed_form": summary.total},
        )
    )

    worst_ratio = 0.0
    for n in range(6, n_max + 1):
        s = spectral.fourier_sum(n).total
        worst_ratio = max(worst_ratio, s * n / 2.0)
    results.append(
        CheckResult(
            name=f"coefficient mass stays below 2/n for 6 <= n <= {n_max}",
            passed=worst_ratio <= 1.0,
            observed={"max_of_total_times_n_over_2": worst_ratio},
        )
    )

    n = 10
    exact_tv = dict(distribution.exact_tv_curve(q1(n), BitVector.zeros(n), n + 1))
    bound = spectral.fourier_sum(n).tv_bound
    results.append(
        CheckResult(
            name="spectral bound dominates exact TV at t = n+1 for n = 10",
            passed=exact_tv[n + 1] <= bound + 1e-12,
            observed={"exact_tv": exact_tv[n + 1], "tv_bound": bound},
        )
    )
    return results


def suite_moments(n_max: int = 10, **_: object) -> list[CheckResult]:
    """Mean-weight and first-coordinate formulas against the exact oracle."""
    results = []
    worst_cf = 0.0
    for n in (2, 3, 5, 10, 137, 1000, 10_000):
        for t in sorted({0, 1, n // 3, n // 2, n - 1, n}):
            closed = weight_stats.mean_weight_closed_form(n, t)
            diff = abs(closed - weight_stats.mean_weight_recursion(n, t))
            worst_cf = max(worst_cf, diff / max(1.0, abs(closed)))
    results.append(
        CheckResult(
            name="closed form equals recursion (n up to 10^4, sampled t)",
            passed=worst_cf <= 1e-12,
            observed={"max_scaled_diff": worst_cf},
        )
    )

    n_max = min(n_max, 16)  # exact-oracle sweep, one evolution per (n, t)
    worst_mean = 0.0
    worst_marginal = 0.0
    worst_terminal = 0.0
    for n in range(2, n_max + 1):
        chain = q1(n)
        d = distribution.point_mass(n, BitVector.zeros(n))
        for t in range(n + 1):
            mean, _ = distribution.weight_moments(d)
            worst_mean = max(
                worst_mean, abs(mean - weight_stats.mean_weight_closed_form(n, t))
            )
            marginal = distribution.coordinate_marginal(d, 1)
            if t <= n - 1:
                worst_marginal = max(
                    worst_marginal,
                    abs(marginal - weight_stats.prob_first_coord_one(n, t)),
                )
            else:
                # The traced bit at t = n is the appended parity of step 1,
                # which is exactly uniform.
                worst_terminal = max(worst_terminal, abs(marginal - 0.5))
            if t < n:
                d = distribution.evolve_exact(chain, d, 1)
    results.append(
        CheckResult(
            name=f"exact mean matches closed form (n <= {n_max}, t <= n)",
            passed=worst_mean <= 1e-12,
            observed={"max_abs_diff": worst_mean},
        )
    )
    results.append(
        CheckResult(
            name=f"exact leading-bit marginal matches formula (n <= {n_max}, t <= n-1)",
            passed=worst_marginal <= 1e-12,
            observed={"max_abs_diff": worst_marginal},
        )
    )
    results.append(
        CheckResult(
            name="leading-bit marginal is exactly 1/2 at t = n",
            passed=worst_terminal <= 1e-12,
            observed={"max_abs_diff": worst_terminal},
        )
    )

    worst_gap = -np.inf
    for n in (100, 1000, 10_000):
        for alpha in (0.6, 0.75, 0.9):
            t = round(n - n**alpha)
            mu = weight_stats.mean_weight_closed_form(n, t)
            envelope = n / 2.0 - n**alpha / (2.0 * np.e)
            worst_gap = max(worst_gap, mu - envelope)
    results.append(
        CheckResult(
            name="mean displacement envelope at t = round(n - n^alpha)",
            passed=worst_gap <= 0.0,
            observed={"max_mu_minus_envelope": worst_gap},
        )
    )
    return results


def suite_bounded_diff(
    trials: int = 100_000, seed: int = 0, n_max: int = 64, **_: object
) -> list[CheckResult]:
    """Single-change replays never move the final weight by more than 2."""
    gen = rng.stream(seed, 0)
    max_flip = 0
    max_coord = 0
    max_hamming = 0
    zero_bit_violations = 0
    same_coord_violations = 0
    half = trials // 2
    for trial in range(trials):
        n = int(gen.integers(2, n_max + 1))
        t = int(gen.integers(1, n + 1))
        chain = q1(n)
        x0 = BitVector.random(n, gen)
        coords = tuple(int(u) for u in gen.integers(1, n + 1, size=t))
        bits = tuple(int(b) for b in gen.integers(0, 2, size=t))
        driving = DrivingSequence(coords, bits)
        i = int(gen.integers(1, t + 1))
        if trial < half:
            div = replay_divergence(chain, x0, driving, driving.flip_bit(i))
            max_flip = max(max_flip, div.weight_diff)
        else:
            u_new = int(gen.integers(1, n + 1))
            div = replay_divergence(
                chain, x0, driving, driving.replace_coord(i, u_new)
            )
            max_coord = max(max_coord, div.weight_diff)
            if bits[i - 1] == 0 and div.weight_diff != 0:
                zero_bit_violations += 1
            if u_new == coords[i - 1] and div.weight_diff != 0:
                same_coord_violations += 1
        max_hamming = max(max_hamming, div.max_hamming)
    return [
        CheckResult(
            name=f"bit-flip weight differences <= 2 ({half} trials)",
            passed=max_flip <= 2,
            observed={"max_weight_diff": max_flip},
        ),
        CheckResult(
            name=f"coordinate-change weight differences <= 2 ({trials - half} trials)",
            passed=max_coord <= 2
            and zero_bit_violations == 0
            and same_coord_violations == 0,
            observed={
                "max_weight_diff": max_coord,
                "zero_bit_violations": zero_bit_violations,
                "same_coord_violations": same_coord_violations,
            },
        ),
        CheckResult(
            name="intermediate Hamming distance <= 2 (all trials)",
            passed=max_hamming <= 2,
            observed={"max_hamming": max_hamming},
        ),
    ]


def suite_variance(
    samples: int = 100_000, seed: int = 0, n_max: int = 10, **_: object
) -> list[CheckResult]:
    """Weight variance stays below 4t: exactly at small n, sampled at n = 128."""
    worst = -np.inf
    n_max = min(n_max, 16)
    for n in range(2, n_max + 1):
        chain = q1(n)
        d = distribution.point_mass(n, BitVector.zeros(n))
        for t in range(n + 1):
            _, var = distribution.weight_moments(d)
            worst = max(worst, var - 4.0 * t)
            if t < n:
                d = distribution.evolve_exact(chain, d, 1)
    results = [
        CheckResult(
            name=f"exact variance <= 4t (n <= {n_max}, t <= n)",
            passed=worst <= 1e-12,
            observed={"max_var_minus_4t": worst},
        )
    ]
    for t in (64, 128):
        rep = weight_stats.variance_bound_check(128, t, samples, seed)
        results.append(
            CheckResult(
                name=f"sampled variance at n = 128, t = {t} ({samples} trajectories)",
                passed=rep.passed,
                observed=rep.to_json_dict(),
            )
        )
    return results


def suite_q2_exact(
    n_max: int = 16, seed: int = 0, starts: int = 16, **_: object
) -> list[CheckResult]:
    """The middle-coordinate walk is exactly uniform after n steps."""
    n_max = min(n_max, 16)
    worst = 0.0
    for n in range(4, n_max + 1, 2):
        chain = q2(n)
        gen = rng.stream(seed, n)
        for _ in range(starts):
            x0 = BitVector.random(n, gen)
            d = distribution.evolve_exact(chain, distribution.point_mass(n, x0), n)
            worst = max(worst, distribution.tv_to_uniform(d))
    return [
        CheckResult(
            name=f"exact TV at t = n is 0 (even n <= {n_max}, {starts} starts each)",
            passed=worst <= 1e-12,
            observed={"max_tv": worst},
        )
    ]


SUITES = {
    "matrix-order": suite_matrix_order,
    "term-bounds": suite_term_bounds,
    "fourier": suite_fourier,
    "moments": suite_moments,
    "bounded-diff": suite_bounded_diff,
    "variance": suite_variance,
    "q2-exact": suite_q2_exact,
}


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def run_suite(name: str, **kwargs: object) -> list[CheckResult]:
    """Run one suite (or every suite for ``all``), dropping unknown kwargs."""
    if name == "all":
        out: list[CheckResult] = []
        for fn in SUITES.values():
            out.extend(fn(**{k: v for k, v in kwargs.items() if v is not None}))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {suite_names()}")
    return SUITES[name](**{k: v for k, v in kwargs.items() if v is not None})
