import numpy as np
import pytest

from shiftwalk import (
    MAX_EXACT_N,
    BitVector,
    coordinate_marginal,
    evolve_exact,
    exact_tv_curve,
    point_mass,
    q1,
    q2,
    stream,
    tv_to_uniform,
    uniform,
    weight_moments,
)
from shiftwalk import step_q1
from shiftwalk.chains import _step_word
from shiftwalk.distribution import DistributionVector


class TestConstruction:
    def test_point_mass(self):
        d = point_mass(2, BitVector.zeros(2))
        assert d.probs.tolist() == [1.0, 0.0, 0.0, 0.0]

    def test_point_mass_tv(self):
        for n in (2, 5, 9):
            d = point_mass(n, BitVector.unit(n, 0))
            assert tv_to_uniform(d) == pytest.approx(1 - 2.0**-n, abs=1e-15)

    def test_point_mass_moments(self):
        assert weight_moments(point_mass(6, BitVector.zeros(6))) == (0.0, 0.0)

    def test_guard(self):
        with pytest.raises(ValueError, match="MiB"):
            point_mass(MAX_EXACT_N + 1, BitVector.zeros(MAX_EXACT_N + 1))

    def test_validation(self):
        with pytest.raises(ValueError):
            DistributionVector(2, np.array([0.5, 0.5]))
        with pytest.raises(ValueError):
            DistributionVector(1, np.array([1.5, -0.5]))
        with pytest.raises(ValueError):
            DistributionVector(1, np.array([0.7, 0.7]))


class TestEvolve:
    def test_zero_steps_identity(self):
        d = point_mass(4, BitVector.zeros(4))
        assert evolve_exact(q1(4), d, 0) is d

    def test_q2_uniform_at_n(self):
        d = evolve_exact(q2(4), point_mass(4, BitVector.zeros(4)), 4)
        assert np.max(np.abs(d.probs - 1 / 16)) <= 1e-15

    def test_q1_tv_bound_at_n_plus_1(self):
        n = 6
        d = evolve_exact(q1(n), point_mass(n, BitVector.zeros(n)), n + 1)
        assert tv_to_uniform(d) <= 2 / n

    def test_mass_conserved(self):
        d = point_mass(6, BitVector.from_string("010101"))
        d = evolve_exact(q1(6), d, 25)
        assert abs(d.probs.sum() - 1.0) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evolve_exact(q1(5), point_mass(4, BitVector.zeros(4)), 1)
        with pytest.raises(ValueError):
            evolve_exact(q1(4), point_mass(4, BitVector.zeros(4)), -1)

    def test_one_step_matches_enumerated_kernel_exactly(self):
        # independent dense kernel built by enumerating every (u, r) move
        # through the public step functions
        for chain, moves in (
            (q1(5), [(u, r) for u in range(1, 6) for r in (0, 1)]),
            (q2(6), [(3, 0), (3, 1)]),
        ):
            n = chain.n
            size = 1 << n
            kernel = np.zeros((size, size))
            prob = 1.0 / len(moves)
            for word in range(size):
                x = BitVector(n, word)
                for u, r in moves:
                    kernel[word, step_q1(x, u, r).word] += prob
            gen = stream(55, n)
            d = DistributionVector(n, gen.dirichlet(np.ones(size)))
            stepped = evolve_exact(chain, d, 1)
            assert np.max(np.abs(stepped.probs - d.probs @ kernel)) <= 1e-15

    def test_one_step_matches_empirical_kernel(self):
        # 10^6 sampled single steps (via the chain step, not this module)
        # against the exact one-step distribution
        n, trials = 6, 1_000_000
        x0 = BitVector.from_string("110100")
        exact = evolve_exact(q1(n), point_mass(n, x0), 1).probs
        gen = stream(2024, 0)
        u = gen.integers(1, n + 1, size=trials).tolist()
        r = gen.integers(0, 2, size=trials).tolist()
        counts = np.zeros(1 << n, dtype=np.int64)
        word = x0.word
        for ui, ri in zip(u, r):
            counts[_step_word(n, word, ui, ri)] += 1
        emp = counts / trials
        se = np.sqrt(exact * (1 - exact) / trials)
        assert np.all(np.abs(emp - exact) <= 4 * se + 1e-12)


class TestTV:
    def test_uniform_is_zero(self):
        assert tv_to_uniform(uniform(5)) == 0.0

    def test_two_point_mixture(self):
        probs = np.zeros(4)
        probs[0] = probs[3] = 0.5
        assert tv_to_uniform(DistributionVector(2, probs)) == pytest.approx(0.5)


class TestMoments:
    def test_uniform_moments(self):
        mean, var = weight_moments(uniform(8))
        assert mean == pytest.approx(4.0, abs=1e-12)
        assert var == pytest.approx(2.0, abs=1e-12)

    def test_marginal_bounds(self):
        d = uniform(4)
        assert coordinate_marginal(d, 1) == pytest.approx(0.5)
        with pytest.raises(ValueError):
            coordinate_marginal(d, 5)


class TestCurve:
    def test_starts_at_point_mass_distance(self):
        curve = exact_tv_curve(q1(5), BitVector.zeros(5), 3)
        assert curve[0] == (0, pytest.approx(1 - 2.0**-5))

    def test_q2_hits_zero_at_n(self):
        curve = dict(exact_tv_curve(q2(6), BitVector.zeros(6), 6))
        assert curve[6] <= 1e-12

    def test_nonincreasing(self):
        for chain in (q1(6), q2(6)):
            values = [tv for _, tv in exact_tv_curve(chain, BitVector.zeros(6), 12)]
            for a, b in zip(values, values[1:]):
                assert b <= a + 1e-12

    def test_q2_exact_from_random_starts(self):
        gen = stream(31, 0)
        for n in (4, 6, 8, 10):
            chain = q2(n)
            for _ in range(16):
                x0 = BitVector.random(n, gen)
                d = evolve_exact(chain, point_mass(n, x0), n)
                assert tv_to_uniform(d) <= 1e-12
