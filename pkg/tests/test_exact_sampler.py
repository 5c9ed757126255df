import numpy as np
import pytest
from scipy import stats

from shiftwalk import (
    BitVector,
    DrivingSequence,
    build_offset,
    build_transfer_matrix,
    det_gf2,
    evolve_symbolic,
    exact_sample,
    q2,
    rank,
    shift_register,
    simulate,
    solve_driving,
    stream,
)


class TestTransferMatrix:
    def test_m1_blocks_collapse(self):
        b = build_transfer_matrix(1)
        assert b.matrix.to_array().tolist() == [[1, 0], [1, 1]]
        assert det_gf2(b.matrix) == 1

    def test_m3_explicit_grid(self):
        grid = build_transfer_matrix(3).matrix.to_text().splitlines()
        assert grid == [
            "100010",
            "010001",
            "001000",
            "100100",
            "010010",
            "001001",
        ]

    def test_unit_determinant(self):
        for m in range(1, 13):
            assert det_gf2(build_transfer_matrix(m).matrix) == 1

    def test_matches_symbolic_evolution(self):
        for m in range(1, 11):
            n = 2 * m
            state = evolve_symbolic(q2(n), BitVector.zeros(n), n)
            assert state.map == build_transfer_matrix(m).matrix

    def test_replays_six_step_walk(self):
        chain = q2(6)
        b = build_transfer_matrix(3).matrix
        gen = stream(17, 0)
        for _ in range(64):
            bits = tuple(int(x) for x in gen.integers(0, 2, size=6))
            replay = simulate(chain, BitVector.zeros(6),
                              DrivingSequence((3,) * 6, bits))[-1]
            assert b @ BitVector.from_bits(bits) == replay

    def test_rejects_bad_m(self):
        with pytest.raises(ValueError):
            build_transfer_matrix(0)


class TestOffset:
    def test_zero_maps_to_zero(self):
        assert build_offset(BitVector.zeros(6)) == BitVector.zeros(6)

    def test_parity_then_prefix(self):
        assert build_offset(BitVector.from_string("1000")) == \
            BitVector.from_string("1100")

    def test_inverts_shift(self):
        gen = stream(18, 0)
        for _ in range(100):
            x = BitVector.random(8, gen)
            assert shift_register(build_offset(x)) == x

    def test_is_symbolic_offset(self):
        gen = stream(19, 0)
        for n in (4, 8, 12):
            x = BitVector.random(n, gen)
            state = evolve_symbolic(q2(n), x, n)
            assert state.offset == build_offset(x)

    def test_full_cycle_with_zero_bits(self):
        gen = stream(20, 0)
        for _ in range(20):
            x = BitVector.random(6, gen)
            replay = simulate(q2(6), x, DrivingSequence((3,) * 6, (0,) * 6))[-1]
            assert replay == build_offset(x)

    def test_rejects_odd_length(self):
        with pytest.raises(ValueError):
            build_offset(BitVector.zeros(5))


class TestExactSample:
    def test_deterministic(self):
        a = exact_sample(BitVector.zeros(8), seed=7)
        b = exact_sample(BitVector.zeros(8), seed=7)
        assert a == b
        assert exact_sample(BitVector.zeros(8), seed=7, stream_index=1) != a

    def test_rejects_odd_length(self):
        with pytest.raises(ValueError):
            exact_sample(BitVector.zeros(5), seed=1)

    def test_chi_square_uniformity(self):
        n, trials = 4, 300_000
        counts = np.zeros(16, dtype=np.int64)
        x0 = BitVector.from_string("1010")
        for i in range(trials):
            counts[exact_sample(x0, seed=123, stream_index=i).word] += 1
        null = np.full(16, trials / 16)
        statistic, pvalue = stats.chisquare(counts, null)
        assert pvalue > 1e-4, (statistic, pvalue)


class TestSolveDriving:
    def test_homogeneous_case(self):
        driving = solve_driving(BitVector.zeros(2), BitVector.zeros(2))
        assert driving.coords == (1, 1)
        assert driving.bits == (0, 0)

    def test_round_trip_random(self):
        gen = stream(25, 0)
        for n in (6, 12):
            chain = q2(n)
            for _ in range(100):
                x0 = BitVector.random(n, gen)
                z = BitVector.random(n, gen)
                driving = solve_driving(x0, z)
                assert set(driving.coords) == {n // 2}
                assert simulate(chain, x0, driving)[-1] == z

    def test_recovers_known_driving(self):
        bits = (1, 0, 0, 0, 0, 0)
        chain = q2(6)
        z = simulate(chain, BitVector.zeros(6), DrivingSequence((3,) * 6, bits))[-1]
        assert solve_driving(BitVector.zeros(6), z).bits == bits

    def test_rejects_mismatch(self):
        with pytest.raises(ValueError):
            solve_driving(BitVector.zeros(4), BitVector.zeros(6))
        with pytest.raises(ValueError):
            solve_driving(BitVector.zeros(5), BitVector.zeros(5))


class TestBijectivity:
    def test_affine_map_has_full_rank(self):
        for n in (4, 8, 12):
            state = evolve_symbolic(q2(n), BitVector.zeros(n), n)
            assert rank(state.map) == n

    def test_exhaustive_bijection_small(self):
        chain = q2(6)
        images = {
            simulate(chain, BitVector.zeros(6),
                     DrivingSequence((3,) * 6, tuple((w >> i) & 1 for i in range(6)))
                     )[-1].word
            for w in range(64)
        }
        assert len(images) == 64
