import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinsense import (
    DensityMatrix,
    OUNoise,
    PureState,
    QFIMethod,
    QFIResult,
    Spin1Params,
    SpinQuantumNumber,
    chi,
    dephase,
    drho_domega,
    ghz_like_state,
    min_error,
    qfi_generic,
    qfi_noisefree_ghz,
    qfi_noisy_ghz,
    qfi_spin1_closed,
    spin1_param_state,
    spin1_qfi_values,
)
from spinsense.validate import oracle_checks


def qfi_spin1_cot_form(theta, phi, chi_val, tau):
    """Direct transcription of the rational expression in cot form.

    Singular on the axes; evaluated only at interior points, as a guard
    against transcription slips in the production rewrite.
    """
    e2, e4, e6, e12 = (math.exp(k * chi_val) for k in (2, 4, 6, 12))
    a = e2 + e4 + e6 + 1
    ct2 = 1.0 / math.tan(theta) ** 2
    cf2 = 1.0 / math.tan(phi) ** 2
    sf2, cf2_cos = math.sin(phi) ** 2, math.cos(phi) ** 2
    num = (
        ct2**2 * (e12 * cf2**2 + 2 * e6 * (e4 + e6 + 2) * cf2 + 4 * a)
        + 2 * e6 * ct2 * cf2_cos * (e2 * (2 * e2 + e4 - 2) * cf2 + (e4 + e6 + 2))
        + e12 * cf2_cos**2
    )
    den = (
        a * ct2 * sf2 * (ct2 + sf2)
        + e6 * cf2_cos**2 * (ct2 + sf2)
        + e2 * cf2_cos * (2 * (e2 + e4 + 1) * ct2 * sf2 + e4 * ct2**2 + e4 * sf2**2)
    )
    return 4 * tau**2 * math.exp(-8 * chi_val) * math.sin(theta) ** 2 * sf2**2 * num / den


class TestNoiseFreeGHZ:
    def test_spin_half_unit(self):
        assert qfi_noisefree_ghz(SpinQuantumNumber(1), 1.0).value == pytest.approx(1.0)

    def test_spin_four(self):
        assert qfi_noisefree_ghz(SpinQuantumNumber(8), 0.2).value == pytest.approx(2.56)

    def test_zero_time(self):
        assert qfi_noisefree_ghz(SpinQuantumNumber(4), 0.0).value == 0.0

    def test_method_tag(self):
        assert qfi_noisefree_ghz(SpinQuantumNumber(1), 1.0).method is QFIMethod.CLOSED_FORM_GHZ


class TestNoisyGHZ:
    def test_spin_four_peak_region(self):
        # 2.56 * exp(-128 * chi(0.2)) with b=1, tau_c=0.1
        value = qfi_noisy_ghz(SpinQuantumNumber(8), OUNoise(1.0, 0.1), 0.2).value
        assert value == pytest.approx(0.5985639531013619, rel=1e-12)

    def test_spin_eight(self):
        value = qfi_noisy_ghz(SpinQuantumNumber(16), OUNoise(1.0, 0.1), 0.07).value
        assert value == pytest.approx(0.4584704746912562, rel=1e-12)

    def test_noise_free_limit(self):
        weak = OUNoise(1e-12, 0.1)
        for tau in (0.1, 1.0, 3.0):
            assert qfi_noisy_ghz(SpinQuantumNumber(8), weak, tau).value == pytest.approx(
                qfi_noisefree_ghz(SpinQuantumNumber(8), tau).value, rel=1e-12
            )

    def test_underflow_returns_zero(self):
        assert qfi_noisy_ghz(SpinQuantumNumber(200), OUNoise(10.0, 10.0), 1e3).value == 0.0

    def test_monotone_degradation_in_b(self):
        s, tau = SpinQuantumNumber(4), 0.3
        values = [qfi_noisy_ghz(s, OUNoise(b, 0.5), tau).value for b in np.linspace(0.1, 3, 30)]
        assert np.all(np.diff(values) < 0)


class TestSpin1ClosedForm:
    def test_ghz_point_reduces_to_spin1_ghz_formula(self):
        for chi_val, tau in [(0.0, 1.0), (0.05, 0.3), (0.4, 2.0), (2.0, 0.5)]:
            value = qfi_spin1_closed(Spin1Params(np.pi / 4, np.pi / 2), chi_val, tau).value
            assert value == pytest.approx(4 * tau**2 * math.exp(-8 * chi_val), rel=1e-12)

    def test_chi_zero_ghz_point(self):
        assert qfi_spin1_closed(Spin1Params(np.pi / 4, np.pi / 2), 0.0, 1.0).value == pytest.approx(4.0)

    def test_chi_zero_equals_pure_state_variance(self):
        # for a pure state the QFI is 4 tau^2 Var(S_z)
        rng = np.random.default_rng(10)
        for _ in range(50):
            theta, phi = rng.uniform(0.05, np.pi / 2 - 0.05, 2)
            tau = rng.uniform(0.1, 2.0)
            w = math.cos(theta) ** 2 + math.sin(theta) ** 2 * math.sin(phi) ** 2
            mz = math.cos(theta) ** 2 - math.sin(theta) ** 2 * math.sin(phi) ** 2
            expected = 4 * tau**2 * (w - mz**2)
            assert qfi_spin1_closed(Spin1Params(theta, phi), 0.0, tau).value == pytest.approx(
                expected, rel=1e-12
            )

    def test_matches_cot_form_at_interior_points(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            theta, phi = rng.uniform(0.1, np.pi / 2 - 0.1, 2)
            chi_val, tau = rng.uniform(0.0, 1.5), rng.uniform(0.05, 2.0)
            ours = qfi_spin1_closed(Spin1Params(theta, phi), chi_val, tau).value
            literal = qfi_spin1_cot_form(theta, phi, chi_val, tau)
            assert ours == pytest.approx(literal, rel=1e-10)

    def test_finite_on_the_axes(self):
        # the rewrite stays finite where the cot form blows up
        for theta, phi in [(0.0, 0.3), (np.pi / 2, 0.0), (np.pi / 2, np.pi / 2), (0.4, 0.0),
                           (0.4, np.pi / 2), (np.pi / 2, 0.8)]:
            value = qfi_spin1_closed(Spin1Params(theta, phi), 0.2, 1.0).value
            assert np.isfinite(value)
            psi = spin1_param_state(Spin1Params(theta, phi))
            rho = dephase(psi, 0.6, 1.0, 0.2)
            oracle = qfi_generic(rho, drho_domega(psi, 0.6, 1.0, 0.2)).value
            assert value == pytest.approx(oracle, abs=1e-10)

    def test_rejects_negative_chi(self):
        with pytest.raises(ValueError):
            qfi_spin1_closed(Spin1Params(0.5, 0.5), -0.1, 1.0)

    def test_monotone_degradation_in_chi(self):
        values = spin1_qfi_values(0.7, 0.9, np.linspace(0, 3, 40), 1.0)
        assert np.all(np.diff(values) < 0)


class TestGenericSLD:
    def test_pure_noisefree_ghz(self):
        s = SpinQuantumNumber(1)
        psi = ghz_like_state(s)
        tau = 0.8
        rho = dephase(psi, 0.5, tau, 0.0)
        result = qfi_generic(rho, drho_domega(psi, 0.5, tau, 0.0))
        assert result.value == pytest.approx(tau**2, rel=1e-10)
        assert result.method is QFIMethod.GENERIC_SLD

    def test_dephased_ghz_matches_closed_form(self):
        s, noise, tau = SpinQuantumNumber(8), OUNoise(1.0, 0.1), 0.2
        chi_val = chi(noise, tau)
        psi = ghz_like_state(s)
        rho = dephase(psi, 1.2, tau, chi_val)
        generic = qfi_generic(rho, drho_domega(psi, 1.2, tau, chi_val)).value
        assert generic == pytest.approx(qfi_noisy_ghz(s, noise, tau).value, rel=1e-10)

    def test_finite_difference_derivative_consistency(self):
        s, tau, omega, chi_val = SpinQuantumNumber(4), 0.7, 0.9, 0.02
        psi = ghz_like_state(s)
        h = 1e-6 * max(1.0, abs(omega))
        drho_fd = (
            dephase(psi, omega + h, tau, chi_val).entries
            - dephase(psi, omega - h, tau, chi_val).entries
        ) / (2 * h)
        drho_fd = 0.5 * (drho_fd + drho_fd.conj().T)  # symmetrize roundoff
        rho = dephase(psi, omega, tau, chi_val)
        fd = qfi_generic(rho, drho_fd).value
        analytic = qfi_generic(rho, drho_domega(psi, omega, tau, chi_val)).value
        assert fd == pytest.approx(analytic, rel=1e-6)

    def test_rejects_non_hermitian_drho(self):
        s = SpinQuantumNumber(1)
        rho = dephase(ghz_like_state(s), 0.1, 1.0, 0.1)
        bad = np.array([[0.0, 1.0], [0.5, 0.0]], dtype=complex)
        with pytest.raises(ValueError):
            qfi_generic(rho, bad)

    def test_basis_invariance(self):
        rng = np.random.default_rng(21)
        psi = spin1_param_state(Spin1Params(0.6, 1.0, 0.3, 0.8))
        rho = dephase(psi, 0.7, 0.9, 0.15).entries
        dr = drho_domega(psi, 0.7, 0.9, 0.15)
        base = qfi_generic(DensityMatrix(rho), dr).value
        for _ in range(5):
            q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
            rho_u = q @ rho @ q.conj().T
            dr_u = q @ dr @ q.conj().T
            rotated = qfi_generic(DensityMatrix(rho_u), dr_u).value
            assert rotated == pytest.approx(base, abs=1e-10)


class TestDrhoDomega:
    def test_zero_at_tau_zero(self):
        psi = ghz_like_state(SpinQuantumNumber(4))
        assert np.all(drho_domega(psi, 1.0, 0.0, 0.1) == 0)

    def test_ghz_spin_half_single_coherence(self):
        psi = ghz_like_state(SpinQuantumNumber(1))
        omega, tau, chi_val = 0.4, 1.3, 0.05
        rho = dephase(psi, omega, tau, chi_val).entries
        dr = drho_domega(psi, omega, tau, chi_val)
        assert dr[0, 1] == pytest.approx(-1j * tau * rho[0, 1])
        assert dr[0, 0] == 0 and dr[1, 1] == 0

    @given(seed=st.integers(0, 2**31 - 1), two_s=st.integers(1, 6))
    @settings(max_examples=25, deadline=None)
    def test_matches_finite_difference(self, seed, two_s):
        rng = np.random.default_rng(seed)
        amps = rng.normal(size=two_s + 1) + 1j * rng.normal(size=two_s + 1)
        psi = PureState(amps / np.linalg.norm(amps))
        omega, tau, chi_val = rng.uniform(-2, 2), rng.uniform(0.1, 2), rng.uniform(0, 0.5)
        h = 1e-5
        fd = (
            dephase(psi, omega + h, tau, chi_val).entries
            - dephase(psi, omega - h, tau, chi_val).entries
        ) / (2 * h)
        dr = drho_domega(psi, omega, tau, chi_val)
        assert np.max(np.abs(fd - dr)) <= 1e-8 * max(1.0, float(np.max(np.abs(dr))))


class TestMinError:
    def test_arithmetic(self):
        assert min_error(QFIResult(4.0, QFIMethod.GENERIC_SLD), 25) == pytest.approx(0.1)

    def test_noisefree_form(self):
        s, tau, nu = SpinQuantumNumber(8), 0.4, 100
        err = min_error(qfi_noisefree_ghz(s, tau), nu)
        assert err == pytest.approx(1.0 / (math.sqrt(nu) * s.two_s * tau))

    def test_noisy_form(self):
        s, noise, tau, nu = SpinQuantumNumber(4), OUNoise(1.0, 0.2), 0.3, 50
        err = min_error(qfi_noisy_ghz(s, noise, tau), nu)
        expected = 1.0 / (
            math.sqrt(nu) * s.two_s * tau * math.exp(-s.two_s**2 * chi(noise, tau))
        )
        assert err == pytest.approx(expected, rel=1e-12)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            min_error(QFIResult(0.0, QFIMethod.GENERIC_SLD), 10)
        with pytest.raises(ValueError):
            min_error(QFIResult(1.0, QFIMethod.GENERIC_SLD), 0)


class TestOracleEquivalence:
    def test_closed_forms_vs_sld_random_tuples(self):
        worst_ghz, worst_spin1, phase_spread = oracle_checks(seed=777, n_tuples=300)
        assert worst_ghz < 1e-8
        assert worst_spin1 < 1e-8
        assert phase_spread < 1e-10

    def test_lambda_scan_invariance_closed_form(self):
        base = qfi_spin1_closed(Spin1Params(0.8, 0.6, 0.0, 0.0), 0.2, 1.1).value
        for l1 in np.linspace(0, 2 * np.pi, 9):
            for l2 in np.linspace(0, 2 * np.pi, 9):
                psi = spin1_param_state(Spin1Params(0.8, 0.6, l1, l2))
                rho = dephase(psi, 0.5, 1.1, 0.2)
                value = qfi_generic(rho, drho_domega(psi, 0.5, 1.1, 0.2)).value
                assert abs(value - base) < 1e-10
