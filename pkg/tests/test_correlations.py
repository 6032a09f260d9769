"""Sender encoding, receiver states, and the two discord measures."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import fullspace
from spindiscord import (
    ChainSpec,
    NumericsError,
    ParameterError,
    ReceiverState,
    amplitudes,
    coupling_profile,
    discord_curves,
    discord_pair,
    perfect_transfer_time,
    q_ext,
    q_ext_from_rsq,
    q_r_closed_form,
    q_r_measurement_oracle,
    receiver_state,
    sender_state,
    spectral_decomposition,
)
from spindiscord.correlations import _min_conditional_entropy, _sqrt_arg

unit = st.floats(min_value=0.0, max_value=1.0)


def _amps(n, phi, t):
    return amplitudes(spectral_decomposition(coupling_profile(ChainSpec(n, phi))), t)


class TestSenderState:
    def test_half_half_amplitudes(self):
        s = sender_state(0.5, 0.5, 0.0, 0.0)
        assert np.allclose(s.a, [0.5, 0.5, math.sqrt(2.0) / 2.0], atol=1e-15)

    def test_site_one_excitation(self):
        s = sender_state(0.0, 0.0)
        assert np.allclose(s.a, [1.0, 0.0, 0.0], atol=1e-15)

    def test_site_three_excitation(self):
        s = sender_state(0.0, 1.0)
        assert abs(s.a[2]) == pytest.approx(1.0, abs=1e-15)

    @given(alpha1=unit, alpha2=unit, varphi1=unit, varphi2=unit)
    @settings(max_examples=200)
    def test_always_normalized(self, alpha1, alpha2, varphi1, varphi2):
        s = sender_state(alpha1, alpha2, varphi1, varphi2)
        assert np.sum(np.abs(s.a) ** 2) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"alpha1": -0.1, "alpha2": 0.0},
            {"alpha1": 1.1, "alpha2": 0.0},
            {"alpha1": 0.0, "alpha2": 2.0},
            {"alpha1": 0.0, "alpha2": 0.0, "varphi1": -0.5},
            {"alpha1": 0.0, "alpha2": 0.0, "varphi2": 1.5},
        ],
    )
    def test_rejects_out_of_range(self, kwargs):
        with pytest.raises(ParameterError):
            sender_state(**kwargs)


class TestReceiverState:
    def test_zero_time_receiver_is_empty(self):
        # sender sites 1..3 and receiver sites n-1, n are disjoint for n >= 5
        rec = receiver_state(_amps(8, 0.3, 0.0), sender_state(0.3, 0.6))
        assert abs(rec.f_n) < 1e-12
        assert abs(rec.f_nm1) < 1e-12

    def test_perfect_transfer_collects_everything(self):
        rec = receiver_state(_amps(20, 0.5, 13.69), sender_state(0.0, 0.0))
        assert rec.rsq == pytest.approx(1.0, abs=1e-6)

    def test_density_matrix_shape_and_structure(self):
        rec = receiver_state(_amps(9, 0.25, 4.2), sender_state(0.3, 0.6, 0.25, 0.75))
        rho = rec.density_matrix()
        assert rho.shape == (4, 4)
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-14
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert rho[3, 3] == 0.0
        assert np.min(np.linalg.eigvalsh(rho)) > -1e-12

    def test_matches_partial_trace_oracle(self):
        n, phi, t = 6, 0.25, 3.7
        prof = coupling_profile(ChainSpec(n, phi))
        snd = sender_state(0.3, 0.6, 0.25, 0.75)
        rec = receiver_state(amplitudes(spectral_decomposition(prof), t), snd)
        psi = fullspace.evolve_sender(prof.d, n, snd.a, t)
        rho_oracle = fullspace.receiver_density_matrix(psi, n)
        assert np.max(np.abs(rho_oracle - rec.density_matrix())) < 1e-10

    def test_rejects_overshooting_amplitudes(self):
        with pytest.raises(ParameterError):
            ReceiverState.from_amplitudes(1.0, 0.1)

    def test_clamps_rounding_spill(self):
        eps = 2e-13
        rec = ReceiverState.from_amplitudes(math.sqrt(0.5 + eps), math.sqrt(0.5))
        assert rec.rsq == 1.0

    @given(b=unit, c=unit)
    @settings(max_examples=200)
    def test_populations_round_trip(self, b, c):
        if b + c > 1.0:
            b, c = b * 0.5, c * 0.5
        rec = ReceiverState.from_populations(b, c)
        assert rec.rsq_nm1 == pytest.approx(b, abs=1e-12)
        assert rec.rsq_n == pytest.approx(c, abs=1e-12)


class TestQExt:
    def test_extremes_vanish(self):
        assert q_ext_from_rsq(0.0) == 0.0
        assert q_ext_from_rsq(1.0) == 0.0

    def test_maximum_at_half(self):
        assert q_ext_from_rsq(0.5) == 1.0

    def test_exact_symmetry_on_dyadic_grid(self):
        # 1 - x is exactly representable for these, so symmetry is bitwise
        for k in range(1025):
            x = k / 1024.0
            assert q_ext_from_rsq(x) == q_ext_from_rsq(1.0 - x)

    @given(x=unit)
    @settings(max_examples=300)
    def test_approximate_symmetry_everywhere(self, x):
        assert abs(q_ext_from_rsq(x) - q_ext_from_rsq(1.0 - x)) < 5e-15

    def test_pure_state_identity(self):
        # q_ext equals the entropy of the receiver density matrix spectrum
        rec = receiver_state(_amps(11, 0.3, 5.5), sender_state(0.4, 0.3))
        lam = np.linalg.eigvalsh(rec.density_matrix())
        entropy = -sum(v * math.log2(v) for v in lam if v > 1e-300)
        assert q_ext(rec) == pytest.approx(entropy, abs=1e-12)

    def test_rejects_bad_rsq(self):
        with pytest.raises(ParameterError):
            q_ext_from_rsq(1.5)


class TestQRClosedForm:
    def test_full_transfer_balanced_pair_is_maximal(self):
        assert q_r_closed_form(ReceiverState.from_populations(0.5, 0.5)) == 1.0

    def test_empty_site_n_gives_zero(self):
        for b in (0.0, 0.2, 0.7, 1.0):
            assert q_r_closed_form(ReceiverState.from_populations(b, 0.0)) == pytest.approx(0.0, abs=1e-14)

    def test_empty_site_nm1_gives_zero(self):
        for c in (0.0, 0.3, 1.0):
            assert q_r_closed_form(ReceiverState.from_populations(0.0, c)) == pytest.approx(0.0, abs=1e-14)

    def test_swap_symmetry(self):
        for b, c in ((0.1, 0.55), (0.4, 0.2), (0.33, 0.33)):
            forward = q_r_closed_form(ReceiverState.from_populations(b, c))
            swapped = q_r_closed_form(ReceiverState.from_populations(c, b))
            assert forward == pytest.approx(swapped, abs=1e-14)

    @given(b=unit, c=unit)
    @settings(max_examples=300)
    def test_range(self, b, c):
        if b + c > 1.0:
            b, c = b * 0.5, c * 0.5
        value = q_r_closed_form(ReceiverState.from_populations(b, c))
        assert -1e-12 <= value <= 1.0 + 1e-12

    def test_phase_independence(self):
        r1, r2 = math.sqrt(0.3), math.sqrt(0.45)
        plain = ReceiverState.from_amplitudes(r1, r2)
        rotated = ReceiverState.from_amplitudes(
            r1 * np.exp(0.73j), r2 * np.exp(-2.1j)
        )
        assert q_r_closed_form(plain) == pytest.approx(q_r_closed_form(rotated), abs=1e-14)
        assert q_ext(plain) == pytest.approx(q_ext(rotated), abs=1e-14)

    def test_domain_guard_fires_on_corrupt_populations(self):
        with pytest.raises(NumericsError):
            _sqrt_arg(-0.6, 0.5)


class TestMeasurementOracle:
    def test_agrees_with_closed_form_spot(self):
        st_ = ReceiverState.from_populations(0.3, 0.4)
        assert q_r_measurement_oracle(st_) == pytest.approx(
            q_r_closed_form(st_), abs=1e-6
        )

    def test_agrees_on_random_states(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            b = rng.uniform(0.0, 1.0)
            c = rng.uniform(0.0, 1.0 - b)
            st_ = ReceiverState.from_populations(b, c)
            assert q_r_measurement_oracle(st_) == pytest.approx(
                q_r_closed_form(st_), abs=1e-6
            )

    def test_minimizer_discovered_at_zero(self):
        for b, c in ((0.3, 0.4), (0.2, 0.1), (0.45, 0.3), (0.05, 0.9)):
            _, eta = _min_conditional_entropy(b, c, 1001)
            assert eta <= 1.0 / 1000.0

    def test_flat_profile_reports_smallest_minimizer(self):
        # an unexcited spin makes the scan profile constant in eta
        _, eta = _min_conditional_entropy(0.0, 0.3, 1001)
        assert eta == 0.0

    def test_rejects_coarse_grid(self):
        with pytest.raises(ParameterError):
            q_r_measurement_oracle(ReceiverState.from_populations(0.2, 0.2), 50)


class TestDiscordPair:
    def test_carries_both_measures(self):
        rec = receiver_state(_amps(10, 0.4, 6.0), sender_state(0.2, 0.7))
        pair = discord_pair(rec)
        assert pair.q_ext == q_ext(rec)
        assert pair.q_r == q_r_closed_form(rec)
        assert pair.rsq == rec.rsq


class TestDiscordCurves:
    def test_row_count_and_schema(self):
        rows = discord_curves(samples=11)
        # ten sweeping families of 11 plus the degenerate point at b = 1
        assert len(rows) == 10 * 11 + 1
        assert all(len(r) == 4 for r in rows)

    def test_rsq_spans_physical_interval(self):
        rows = [r for r in discord_curves(samples=5) if r[1] == 0.4]
        assert rows[0][0] == pytest.approx(0.4)
        assert rows[-1][0] == pytest.approx(1.0)

    def test_degenerate_family_is_single_point(self):
        rows = [r for r in discord_curves(samples=7) if r[1] == 1.0]
        assert len(rows) == 1
        assert rows[0][0] == 1.0
        assert rows[0][2] == pytest.approx(0.0, abs=1e-14)

    def test_zero_population_family_has_no_internal_discord(self):
        rows = [r for r in discord_curves(samples=9) if r[1] == 0.0]
        assert len(rows) == 9
        assert all(abs(r[3]) < 1e-12 for r in rows)

    def test_balanced_endpoint_reaches_unit_discord(self):
        rows = [r for r in discord_curves(samples=5) if r[1] == 0.5]
        assert rows[-1][0] == pytest.approx(1.0)
        assert rows[-1][3] == pytest.approx(1.0, abs=1e-12)

    def test_rejects_bad_samples(self):
        with pytest.raises(ParameterError):
            discord_curves(samples=1)

    def test_rejects_bad_population(self):
        with pytest.raises(ParameterError):
            discord_curves(r_nm1_sq_values=(1.2,), samples=5)
