import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab import equidist as eq
from zetalab.beatty import GOLDEN, SQRT2, BeattyPair
from zetalab.errors import AmbiguousFloor, HypothesisViolation

TWO_PI_OVER_LOG2 = 2 * math.pi / math.log(2.0)


class TestCompensatedSum:
    def test_matches_math_fsum(self):
        rng = np.random.default_rng(3)
        xs = rng.uniform(-1, 1, 5000) * 10.0 ** rng.integers(-8, 8, 5000)
        acc = eq.CompensatedSum()
        for x in xs:
            acc.add(complex(x, -x))
        assert abs(acc.value.real - math.fsum(xs)) < 1e-12 * max(1.0, abs(math.fsum(xs)))
        assert acc.value.imag == -acc.value.real

    def test_cancellation_case(self):
        acc = eq.CompensatedSum()
        for x in (1e16, 1.0, -1e16):
            acc.add(complex(x))
        assert acc.value.real == 1.0


class TestFrequencyVector:
    def test_theta_from_primes(self):
        fv = eq.FrequencyVector(primes1={2: 1}, primes2={3: 2}, delta1=1.0, delta2=0.5)
        assert abs(fv.u1 - math.log(2) / (2 * math.pi)) < 1e-15
        assert abs(fv.u2 - 2 * math.log(3) / (2 * math.pi)) < 1e-15
        assert abs(fv.theta2 - fv.u2 * 0.5) < 1e-15

    def test_validation(self):
        with pytest.raises(ValueError):
            eq.FrequencyVector(primes1={2: 0}, primes2={3: 0}, delta1=1.0, delta2=1.0)
        with pytest.raises(ValueError):
            eq.FrequencyVector(primes1={2: 1}, primes2={}, delta1=0.0, delta2=1.0)


class TestWeylSum:
    def test_irrational_rotation_decays(self):
        rep = eq.weyl_sum(lambda n: n * SQRT2, 1.0, 1 << 16)
        assert rep.sum_magnitude < 1e-3
        mags = dict(rep.trajectory)
        assert mags[1 << 16] == rep.sum_magnitude
        # geometric-series ceiling |S_N| <= 1 / |sin(pi beta)|
        ceiling = 1.0 / abs(math.sin(math.pi * SQRT2))
        for n, mag in rep.trajectory:
            assert mag * n <= ceiling + 1e-9

    def test_resonant_beatty_limit_one_half(self):
        # floor(1.5 n) alternates parity with period 2; at freq 1/3 the
        # phases cycle through 6 values whose average has modulus 1/2
        rep = eq.weyl_sum(lambda n: np.floor(1.5 * n), 1.0 / 3.0, 60000)
        assert abs(rep.sum_magnitude - 0.5) < 1e-3

    def test_checkpoints_are_powers_of_two(self):
        rep = eq.weyl_sum(lambda n: n * GOLDEN, 1.0, 5000)
        ns = [n for n, _ in rep.trajectory]
        assert ns[:-1] == [1 << k for k in range(len(ns) - 1)]
        assert ns[-1] == 5000

    def test_validation(self):
        with pytest.raises(ValueError):
            eq.weyl_sum(lambda n: n, 1.0, 0)
        with pytest.raises(ValueError):
            eq.weyl_sum(lambda n: n, 0.0, 10)

    @given(beta=st.floats(0.01, 0.99))
    @settings(max_examples=30, deadline=None)
    def test_magnitude_normalised(self, beta):
        rep = eq.weyl_sum(lambda n: n * beta, 1.0, 512)
        assert 0.0 <= rep.sum_magnitude <= 1.0

    def test_csv(self, tmp_path):
        rep = eq.weyl_sum(lambda n: n * SQRT2, 1.0, 100)
        path = tmp_path / "weyl.csv"
        rep.to_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "N,magnitude"
        assert len(lines) == len(rep.trajectory) + 1


class TestJointBeattyWeyl:
    def test_golden_pair_decays(self):
        pair = BeattyPair.from_alpha(GOLDEN)
        fv = eq.FrequencyVector(primes1={2: 1}, primes2={2: 1}, delta1=1.0, delta2=1.0)
        rep = eq.joint_beatty_weyl(pair, 0.0, 0.0, fv, 1 << 17)
        assert rep.sum_magnitude < 1e-3
        for n, mag in rep.trajectory:
            if n >= 8192:
                assert mag < 0.01

    def test_guarded_floor_raises_on_rational(self):
        # exactly-integer products are fine; near-integer ones must be loud
        pair = BeattyPair.from_alpha(2.0 + 1e-12)
        fv = eq.FrequencyVector(primes1={2: 1}, primes2={2: 1}, delta1=1.0, delta2=1.0)
        with pytest.raises(AmbiguousFloor):
            eq.joint_beatty_weyl(pair, 0.0, 0.0, fv, 100)

    def test_resonant_steps_do_not_decay(self):
        # with delta = 2 pi / log 2 and the prime 2, each floor contributes
        # an integer multiple of a full period: the phase reduces to the
        # constant part and the normalised sum stays near 1
        pair = BeattyPair.from_alpha(GOLDEN)
        fv = eq.FrequencyVector(
            primes1={2: 1}, primes2={2: 1},
            delta1=TWO_PI_OVER_LOG2, delta2=TWO_PI_OVER_LOG2,
        )
        rep = eq.joint_beatty_weyl(pair, 0.0, 0.0, fv, 4096)
        assert rep.sum_magnitude > 0.99


class TestTripleIntegral:
    def test_reference_is_zero(self):
        assert eq.triple_integral_reference() == 0.0

    def test_self_check_guards_nodes(self):
        assert eq.triple_integral_reference(nodes=97) == 0.0


class TestStarDiscrepancy:
    def test_uniform_grid_is_tight(self):
        n = 1000
        pts = (np.arange(n) + 0.5) / n
        assert abs(eq.star_discrepancy_estimate(pts) - 0.5 / n) < 1e-12

    def test_single_point(self):
        assert abs(eq.star_discrepancy_estimate([0.25]) - 0.75) < 1e-15

    def test_golden_rotation_low_discrepancy(self):
        # frozen constant C = 1.0; measured C ~ 0.3 on the first run
        for n in (1000, 10000, 100000):
            pts = np.mod(np.arange(1, n + 1) * GOLDEN, 1.0)
            d = eq.star_discrepancy_estimate(pts)
            assert d <= 1.0 * math.log(n) / n

    def test_clustered_points_large_discrepancy(self):
        pts = np.full(100, 0.5)
        assert eq.star_discrepancy_estimate(pts) >= 0.5

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            eq.star_discrepancy_estimate([])

    @given(st.lists(st.floats(0.0, 0.999999), min_size=1, max_size=200))
    @settings(max_examples=40, deadline=None)
    def test_bounds_property(self, pts):
        d = eq.star_discrepancy_estimate(pts)
        assert 1.0 / (2 * len(pts)) - 1e-12 <= d <= 1.0 + 1e-12


class TestValidateShiftSequence:
    def test_accepts_linear(self):
        eq.validate_shift_sequence(np.arange(1, 1000, dtype=float))

    def test_rejects_small_gap(self):
        with pytest.raises(HypothesisViolation):
            eq.validate_shift_sequence(np.array([1.0, 1.001, 2.0]))

    def test_rejects_decreasing(self):
        with pytest.raises(HypothesisViolation):
            eq.validate_shift_sequence(np.array([2.0, 1.0]))

    def test_rejects_superlinear(self):
        with pytest.raises(HypothesisViolation):
            eq.validate_shift_sequence(np.array([1.0, 500.0]))

    def test_override(self):
        eq.validate_shift_sequence(np.array([2.0, 1.0]), allow_irregular=True)
