import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussent import (
    BudgetExceededError,
    MalformedStateError,
    StandardForm,
    apply_symplectic,
    dense_symplectic_spectrum,
    is_physical,
    is_symplectic,
    local_squeezer,
    random_state,
    tmsv,
    to_standard_form,
    two_mode_squeezer,
    vacuum,
)
from conftest import sample_states


def local_rotation(theta, phi):
    """Independent per-mode phase-space rotations; symplectic by construction."""
    def rot(t):
        return np.array([[math.cos(t), math.sin(t)], [-math.sin(t), math.cos(t)]])

    out = np.zeros((4, 4))
    out[:2, :2] = rot(theta)
    out[2:, 2:] = rot(phi)
    return out


class TestTmsv:
    def test_zero_squeezing_is_vacuum(self):
        assert tmsv(0.0) == vacuum()

    def test_r_one_values_from_chi_arithmetic(self):
        # evaluate (1+chi^2)/(1-chi^2) and 2 chi/(1-chi^2) independently
        chi = math.tanh(1.0)
        sf = tmsv(1.0)
        assert sf.a == pytest.approx((1 + chi**2) / (1 - chi**2), abs=1e-12)
        assert sf.a == pytest.approx(math.cosh(2.0), abs=1e-12)
        assert sf.c1 == pytest.approx(2 * chi / (1 - chi**2), abs=1e-12)
        assert sf.c1 == pytest.approx(math.sinh(2.0), abs=1e-12)
        assert sf.c2 == -sf.c1

    @pytest.mark.parametrize("r", np.linspace(0.0, 3.0, 13))
    def test_purity_both_symplectic_eigenvalues_one(self, r):
        nu_minus, nu_plus = dense_symplectic_spectrum(tmsv(r).matrix())
        assert nu_minus == pytest.approx(1.0, abs=1e-10)
        assert nu_plus == pytest.approx(1.0, abs=1e-10)

    def test_negative_squeezing_rejected(self):
        with pytest.raises(MalformedStateError):
            tmsv(-0.1)


class TestSqueezers:
    def test_two_mode_squeezer_zero_is_identity(self):
        assert np.allclose(two_mode_squeezer(0.0), np.eye(4), atol=1e-15)

    def test_two_mode_squeezer_generates_tmsv(self):
        out = apply_symplectic(two_mode_squeezer(1.0), np.eye(4))
        assert np.max(np.abs(out - tmsv(1.0).matrix())) <= 1e-12

    @pytest.mark.parametrize("r", [0.1, 0.5, 2.0])
    def test_two_mode_squeezer_inverse(self, r):
        prod = two_mode_squeezer(r) @ two_mode_squeezer(-r)
        assert np.max(np.abs(prod - np.eye(4))) <= 1e-12

    def test_local_squeezer_zero_is_identity(self):
        assert np.allclose(local_squeezer(0.0, 0.0), np.eye(4), atol=1e-15)

    @pytest.mark.parametrize("r", [0.3, 1.0])
    def test_local_two_mode_commutation_identity(self, r):
        # L(r,r) S2(r) S2(r)^T L(r,r)^T == S2(r) L(r,r) L(r,r)^T S2(r)^T
        s2, loc = two_mode_squeezer(r), local_squeezer(r, r)
        lhs = loc @ s2 @ s2.T @ loc.T
        rhs = s2 @ loc @ loc.T @ s2.T
        assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_local_squeezer_inverse(self):
        prod = local_squeezer(0.7, -0.3) @ local_squeezer(-0.7, 0.3)
        assert np.max(np.abs(prod - np.eye(4))) <= 1e-12

    @given(
        r=st.floats(-3, 3),
        r1=st.floats(-3, 3),
        r2=st.floats(-3, 3),
    )
    @settings(max_examples=100, deadline=None)
    def test_constructed_operations_are_symplectic(self, r, r1, r2):
        assert is_symplectic(two_mode_squeezer(r), tol=1e-11)
        assert is_symplectic(local_squeezer(r1, r2), tol=1e-11)


class TestApply:
    def test_identity_leaves_state(self, rng):
        sigma = random_state(rng).matrix()
        assert np.allclose(apply_symplectic(np.eye(4), sigma), sigma)

    def test_squeezers_compose_additively(self):
        # S2(r) then S2(s) on vacuum equals tmsv(r+s)
        out = apply_symplectic(
            two_mode_squeezer(0.7),
            apply_symplectic(two_mode_squeezer(0.4), np.eye(4)),
        )
        assert np.max(np.abs(out - tmsv(1.1).matrix())) <= 1e-10


class TestStandardFormReduction:
    def test_standard_form_is_fixed_point(self, rng):
        sf = random_state(rng)
        again = to_standard_form(sf.matrix())
        assert np.allclose(sf.astuple(), again.astuple(), atol=1e-10)

    def test_recovers_parameters_after_local_rotations(self, rng):
        for _ in range(200):
            sf = random_state(rng)
            rot = local_rotation(rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi))
            recovered = to_standard_form(apply_symplectic(rot, sf.matrix()))
            assert np.allclose(sf.astuple(), recovered.astuple(), atol=1e-9)

    def test_tmsv_dense_round_trip(self):
        sf = to_standard_form(tmsv(1.0).matrix())
        expected = (math.cosh(2), math.cosh(2), math.sinh(2), -math.sinh(2))
        assert np.allclose(sf.astuple(), expected, atol=1e-10)

    def test_rejects_unphysical_matrix(self):
        with pytest.raises(MalformedStateError):
            to_standard_form(np.diag([0.5, 0.5, 1.0, 1.0]))


class TestPhysicality:
    def test_vacuum_physical(self):
        assert is_physical(np.eye(4))

    def test_below_vacuum_noise_not_physical(self):
        assert not is_physical(np.diag([0.5, 0.5, 1.0, 1.0]))

    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
    def test_tmsv_physical(self, r):
        assert is_physical(tmsv(r).matrix())


class TestNormalization:
    def test_normalized_flips_signs(self):
        sf = StandardForm.normalized(2.0, 2.0, -1.0, 0.5)
        assert sf.c1 == 1.0 and sf.c2 == -0.5

    def test_normalized_orders_magnitudes(self):
        sf = StandardForm.normalized(2.0, 2.0, 0.3, -0.9)
        assert sf.c1 == 0.9 and sf.c2 == pytest.approx(-0.3)

    def test_constructor_rejects_unnormalized(self):
        with pytest.raises(MalformedStateError):
            StandardForm(2.0, 2.0, 0.3, -0.9)

    def test_constructor_rejects_below_vacuum(self):
        with pytest.raises(MalformedStateError):
            StandardForm(0.9, 2.0, 0.0, 0.0)

    def test_constructor_rejects_entangled_beyond_physicality(self):
        # correlations too strong for the uncertainty principle
        with pytest.raises(MalformedStateError):
            StandardForm(1.2, 1.2, 1.19, -1.19)


class TestSampler:
    def test_deterministic_for_fixed_seed(self):
        assert random_state(123) == random_state(123)

    def test_all_samples_physical(self, rng):
        for sf in sample_states(rng, 1000):
            assert is_physical(sf.matrix())

    def test_entangled_flag(self, rng):
        for sf in sample_states(rng, 1000, entangled=True):
            nu_pt, _ = dense_symplectic_spectrum(sf.matrix(), partial_transposed=True)
            assert nu_pt < 1.0

    def test_symmetric_and_balanced_filters(self, rng):
        for sf in sample_states(rng, 50, symmetric=True):
            assert sf.a == sf.b
        for sf in sample_states(rng, 50, balanced=True):
            assert sf.c2 == -sf.c1

    def test_rejection_budget(self):
        # a_max=1 leaves almost no physical volume with c1 > 0
        with pytest.raises(BudgetExceededError):
            random_state(0, a_max=1.0, entangled=True, max_attempts=50)


class TestRoundTripProperty:
    def test_thousand_state_round_trip(self, rng):
        for _ in range(1000):
            sf = random_state(rng)
            again = to_standard_form(sf.matrix())
            assert np.allclose(sf.astuple(), again.astuple(), atol=1e-10)
