"""Amplitude calculus: sequence algebra, propagators, path weights, kernels."""

import math
import random

import numpy as np
import pytest

from causetkit import (
    BoundaryError,
    CapExceededError,
    CheckerboardField,
    DerivedWeighting,
    FeynmanWeighting,
    InfluenceSequence,
    Spinor,
    UnorderedInfluenceCount,
    amp_add,
    amp_mul,
    born,
    kernel,
    kernel_discrepancy,
    kernel_matrix,
    kernel_pathsum,
    make_propagators,
    measurement_amplitude,
    parallel_join,
    path_weight,
    propagators_from_mass,
    propagators_from_theta,
    reversal_count,
    sequence_amplitude,
    series_join,
    step_field,
    transition_magnitude_solutions,
    unordered_amplitude,
    verify_propagator_constraints,
    zero_momentum_propagators,
)

SQRT1_2 = math.sqrt(0.5)

I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


def law_weight(length: int, reversals: int) -> complex:
    """Independent reversal-law oracle: (1/sqrt(2))^L * i^R with sequential products."""
    magnitude = 1.0
    for _ in range(length):
        magnitude *= SQRT1_2
    return (magnitude + 0j) * I_POWERS[reversals % 4]


class TestAmplitudeOps:
    def test_i_squared(self):
        assert amp_mul(1j, 1j) == -1

    def test_born_pythagorean(self):
        assert born(complex(0.6, 0.8)) == 1.0

    def test_componentwise_addition(self):
        assert amp_add(complex(1, 2), complex(3, -2)) == complex(4, 0)


class TestSequenceAlgebra:
    def test_series_join(self):
        assert series_join(("m1", "m2"), ("m2", "m3")) == ("m1", "m2", "m3")

    def test_series_mismatch(self):
        with pytest.raises(ValueError):
            series_join(("m1", "m2"), ("m3", "m4"))

    def test_parallel_join_coarse_grains(self):
        a = ("m1", "m2a", "m3")
        b = ("m1", "m2b", "m3")
        assert parallel_join(a, b) == ("m1", ("m2a", "m2b"), "m3")

    def test_parallel_requires_single_difference(self):
        with pytest.raises(ValueError):
            parallel_join(("m1", "m2"), ("m3", "m4"))
        with pytest.raises(ValueError):
            parallel_join(("m1", "m2"), ("m1", "m2", "m3"))

    def _random_pair_amplitudes(self, rng, atoms):
        return {
            (x, y): complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            for x in atoms
            for y in atoms
        }

    def test_series_homomorphism(self):
        # amplitude of a series join equals the product of the parts
        rng = random.Random(5)
        atoms = "abcd"
        for _ in range(50):
            amps = self._random_pair_amplitudes(rng, atoms)
            a = tuple(rng.choice(atoms) for _ in range(3))
            b = (a[-1],) + tuple(rng.choice(atoms) for _ in range(2))
            joined = series_join(a, b)
            expected = amp_mul(
                measurement_amplitude(a, amps), measurement_amplitude(b, amps)
            )
            assert abs(measurement_amplitude(joined, amps) - expected) < 1e-12

    def test_parallel_homomorphism(self):
        rng = random.Random(6)
        atoms = "abcd"
        for _ in range(50):
            amps = self._random_pair_amplitudes(rng, atoms)
            stem = tuple(rng.choice(atoms) for _ in range(3))
            i = rng.randrange(3)
            x, y = rng.sample(atoms, 2)
            a = stem[:i] + (x,) + stem[i + 1 :]
            b = stem[:i] + (y,) + stem[i + 1 :]
            joined = parallel_join(a, b)
            expected = amp_add(
                measurement_amplitude(a, amps), measurement_amplitude(b, amps)
            )
            assert abs(measurement_amplitude(joined, amps) - expected) < 1e-12


class TestPropagators:
    def test_zero_momentum_matrices(self):
        pp = zero_momentum_propagators()
        assert pp.a == pp.b == SQRT1_2
        assert pp.phase_alpha == 0.0
        assert pp.phase_beta == math.pi / 2
        assert pp.P[0, 0] == complex(SQRT1_2, 0)
        assert pp.P[0, 1] == complex(0, SQRT1_2)
        assert pp.P[1, 0] == pp.P[1, 1] == 0
        assert pp.Q[1, 0] == complex(0, SQRT1_2)
        assert pp.Q[1, 1] == complex(SQRT1_2, 0)
        assert pp.Q[0, 0] == pp.Q[0, 1] == 0

    def test_boundary_case_non_reversing(self):
        pp = make_propagators(1.0, 0.0)
        assert verify_propagator_constraints(pp).ok

    def test_normalization_rejected(self):
        with pytest.raises(ValueError):
            make_propagators(0.9, 0.1)

    def test_negative_magnitude_rejected(self):
        with pytest.raises(ValueError):
            make_propagators(-0.6, 0.8)

    def test_constraints_zero_momentum(self):
        report = verify_propagator_constraints(zero_momentum_propagators())
        assert report.ok
        assert set(report.residuals) == {
            "completeness",
            "norm-preserving-row-p",
            "norm-preserving-row-q",
            "off-diagonal-wz",
            "off-diagonal-zw",
            "unitarity",
        }

    def test_constraints_random_angle_sweep(self):
        rng = random.Random(9)
        for _ in range(50):
            theta = rng.uniform(0, math.pi / 2)
            report = verify_propagator_constraints(propagators_from_theta(theta))
            assert report.ok, report.residuals

    def test_missing_quarter_turn_breaks_off_diagonal(self):
        pp = make_propagators(SQRT1_2, SQRT1_2, phase_beta=0.0)
        report = verify_propagator_constraints(pp)
        assert not report.ok
        assert report.residuals["off-diagonal-wz"] > 0.9
        assert not report.canonical_gauge

    def test_mass_bridge_normalized(self):
        pp = propagators_from_mass(2.0, 0.05)
        assert verify_propagator_constraints(pp).ok
        assert pp.b == math.sin(0.1)

    def test_magnitude_solutions_satisfy_system(self):
        rng = random.Random(21)
        for _ in range(50):
            theta = rng.uniform(0.01, math.pi / 2 - 0.01)
            a, b = math.cos(theta), math.sin(theta)
            for c, d in transition_magnitude_solutions(a, b):
                assert abs(c * c + d * d - 1) < 1e-12
                assert abs(a * c - b * d) < 1e-12
                assert (a == d and b == c) or (b == -c and a == -d)


class TestReversals:
    def test_pqp(self):
        assert reversal_count(InfluenceSequence.from_string("PQP", "P")) == 2

    def test_no_reversals(self):
        assert reversal_count(InfluenceSequence.from_string("PPP", "P")) == 0

    def test_initial_reversal_counts(self):
        assert reversal_count(InfluenceSequence.from_string("QPP", "P")) == 2

    def test_missing_initial_helicity(self):
        with pytest.raises(ValueError):
            reversal_count(InfluenceSequence.from_string("PQ"))


class TestPathWeight:
    def test_feynman_two_reversals(self):
        got = path_weight(
            InfluenceSequence.from_string("PQP", "P"), FeynmanWeighting(1.0, 0.1)
        )
        assert got.reversals == 2
        assert abs(got.weight - (-0.01)) < 1e-15
        assert got.weight.imag == 0.0

    def test_derived_straight_path(self):
        got = path_weight(
            InfluenceSequence.from_string("PP", "P"),
            DerivedWeighting(zero_momentum_propagators()),
        )
        assert got.weight.imag == 0.0
        assert abs(got.weight.real - 0.5) < 1e-15

    def test_derived_single_reversal(self):
        got = path_weight(
            InfluenceSequence.from_string("PQ", "P"),
            DerivedWeighting(zero_momentum_propagators()),
        )
        assert got.weight.real == 0.0
        assert abs(got.weight.imag - 0.5) < 1e-15

    def test_reversal_law_exact(self):
        # each reversal contributes exactly i on top of the (1/sqrt 2)^L magnitude
        rng = random.Random(33)
        weighting = DerivedWeighting(zero_momentum_propagators())
        for _ in range(200):
            length = rng.randint(1, 40)
            moves = "".join(rng.choice("PQ") for _ in range(length))
            initial = rng.choice("PQ")
            seq = InfluenceSequence.from_string(moves, initial)
            # independent reversal count straight off the move string
            transitions = zip(initial + moves, moves)
            oracle_reversals = sum(1 for prev, move in transitions if prev != move)
            got = path_weight(seq, weighting)
            assert got.reversals == oracle_reversals
            assert got.weight == law_weight(length, oracle_reversals)

    def test_unknown_weighting(self):
        with pytest.raises(TypeError):
            path_weight(InfluenceSequence.from_string("P", "P"), object())


class TestSpinorPropagation:
    def test_single_move_formula(self):
        pp = propagators_from_theta(0.7)
        initial = Spinor(complex(0.3, 0.1), complex(-0.2, 0.4))
        out = sequence_amplitude(InfluenceSequence.from_string("P"), pp, initial)
        expected = pp.P[0, 0] * initial.phi_p + pp.P[0, 1] * initial.phi_q
        assert out.phi_p == expected
        assert out.phi_q == 0

    def test_empty_sequence_is_identity(self):
        pp = zero_momentum_propagators()
        initial = Spinor(0.6, 0.8j)
        out = sequence_amplitude(InfluenceSequence.from_string(""), pp, initial)
        assert (out.phi_p, out.phi_q) == (initial.phi_p, initial.phi_q)

    def test_reversed_order_matrix_product(self):
        # [P, Q] acts as the matrix product Q @ P on the initial spinor
        pp = propagators_from_theta(0.4)
        initial = Spinor(complex(0.5, -0.1), complex(0.2, 0.7))
        out = sequence_amplitude(InfluenceSequence.from_string("PQ"), pp, initial)
        expected = pp.Q @ pp.P @ initial.as_array()
        assert np.allclose(out.as_array(), expected, atol=1e-15)

    def test_unordered_two_paths(self):
        pp = zero_momentum_propagators()
        initial = Spinor(1, 0)
        out = unordered_amplitude(UnorderedInfluenceCount(1, 1), pp, initial)
        expected = (pp.Q @ pp.P + pp.P @ pp.Q) @ initial.as_array()
        assert np.allclose(out.as_array(), expected, atol=1e-15)

    def test_unordered_single_ordering(self):
        pp = propagators_from_theta(0.3)
        initial = Spinor(0.6, 0.8)
        out = unordered_amplitude(UnorderedInfluenceCount(1, 0), pp, initial)
        expected = pp.P @ initial.as_array()
        assert np.allclose(out.as_array(), expected, atol=1e-15)

    def test_unordered_three_paths_brute_force(self):
        pp = propagators_from_theta(1.1)
        initial = Spinor(complex(0.1, 0.4), complex(0.9, -0.2))
        out = unordered_amplitude(UnorderedInfluenceCount(2, 1), pp, initial)
        # oracle: explicit reversed-order matrix sums for PPQ, PQP, QPP
        P, Q = pp.P, pp.Q
        expected = (Q @ P @ P + P @ Q @ P + P @ P @ Q) @ initial.as_array()
        assert np.allclose(out.as_array(), expected, atol=1e-14)

    def test_unordered_cap(self):
        with pytest.raises(CapExceededError):
            unordered_amplitude(
                UnorderedInfluenceCount(10, 10), zero_momentum_propagators(), Spinor(1, 0), cap=10
            )

    def test_spinor_norm_and_normalize(self):
        spinor = Spinor(3, 4j)
        assert spinor.norm() == 25
        assert abs(spinor.normalized().norm() - 1) < 1e-15
        with pytest.raises(ValueError):
            Spinor(0, 0).normalized()


class TestFieldStepping:
    def test_single_step_hand_values(self):
        pp = zero_momentum_propagators()
        field = CheckerboardField.point_source("P", 1)
        out = step_field(field, pp)
        assert out.spinor_at(1).phi_p == complex(SQRT1_2, 0)
        assert out.spinor_at(-1).phi_q == complex(0, SQRT1_2)
        probs = [born(out.spinor_at(1).phi_p), born(out.spinor_at(-1).phi_q)]
        assert abs(probs[0] - 0.5) < 1e-15
        assert abs(probs[1] - 0.5) < 1e-15
        assert out.step_count == 1

    def test_non_reversing_limit_translates(self):
        pp = make_propagators(1.0, 0.0)
        field = CheckerboardField.point_source("P", 5)
        for _ in range(5):
            field = step_field(field, pp)
        assert field.spinor_at(5).phi_p == 1
        assert field.total_probability() == 1.0

    def test_probability_conserved(self):
        pp = propagators_from_theta(0.9)
        field = CheckerboardField.point_source("Q", 50)
        for _ in range(50):
            field = step_field(field, pp)
            assert abs(field.total_probability() - 1.0) < 1e-12

    def test_boundary_is_hard_error(self):
        pp = zero_momentum_propagators()
        field = CheckerboardField.point_source("P", 1)  # radius 2
        field = step_field(field, pp)
        field = step_field(field, pp)
        with pytest.raises(BoundaryError):
            step_field(field, pp)

    def test_sites_mapping(self):
        field = CheckerboardField.point_source("P", 2)
        assert set(field.sites) == {0}
        assert field.sites[0].phi_p == 1


class TestKernels:
    def test_one_step_matches_field(self):
        pp = zero_momentum_propagators()
        for method in ("pathsum", "matrix"):
            k = kernel(1, pp, "P", method=method)
            assert k[(1, "P")] == complex(SQRT1_2, 0)
            assert k[(-1, "Q")] == complex(0, SQRT1_2)

    def test_two_step_four_path_oracle(self):
        # enumerate the four move strings by hand with plain complex arithmetic
        a, b = SQRT1_2, SQRT1_2
        same, flip = complex(a, 0), complex(0, b)
        expected = {
            (2, "P"): same * same,          # PP
            (0, "Q"): same * flip,          # PQ
            (0, "P"): flip * flip,          # QP
            (-2, "Q"): flip * same,         # QQ
        }
        pp = zero_momentum_propagators()
        for method in ("pathsum", "matrix"):
            got = kernel(2, pp, "P", method=method)
            assert set(got) == set(expected)
            for key, value in expected.items():
                assert abs(got[key] - value) < 1e-15

    def test_methods_agree_at_depth_ten(self):
        for theta in (0.2, 0.7853981633974483, 1.2):
            pp = propagators_from_theta(theta)
            for initial in ("P", "Q"):
                left = kernel_pathsum(10, pp, initial)
                right = kernel_matrix(10, pp, initial)
                assert kernel_discrepancy(left, right) < 1e-12

    def test_pathsum_cap(self):
        with pytest.raises(CapExceededError):
            kernel_pathsum(40, zero_momentum_propagators(), "P")

    def test_kernel_probabilities_sum_to_one(self):
        pp = propagators_from_theta(0.5)
        k = kernel_matrix(30, pp, "P")
        assert abs(sum(born(v) for v in k.values()) - 1) < 1e-12

    def test_pathsum_endpoints_on_one_parity(self):
        k = kernel_pathsum(5, zero_momentum_propagators(), "P")
        assert all((pos + 5) % 2 == 0 for pos, _ in k)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            kernel(2, zero_momentum_propagators(), "P", method="magic")

    def test_bad_helicity(self):
        with pytest.raises(ValueError):
            kernel_pathsum(2, zero_momentum_propagators(), "X")


class TestSmallStepBridge:
    def test_reversal_amplitude_matches_corner_weight(self):
        # i*sin(m*eps) vs i*m*eps agree to cubic order in the step size
        for m_eps in (0.1, 0.01):
            pp = propagators_from_mass(m_eps, 1.0)
            derived = pp.reversal_entry
            corner = 1j * m_eps
            assert abs(derived - corner) < abs(m_eps) ** 3

    def test_bridge_across_step_sizes(self):
        rng = random.Random(2)
        for _ in range(50):
            mass = rng.uniform(0.1, 2.0)
            eps = rng.uniform(1e-4, 0.2)
            pp = propagators_from_mass(mass, eps)
            assert abs(pp.reversal_entry - 1j * mass * eps) <= abs(mass * eps) ** 3
