"""Dynamics: propagation, fidelities, traces, revival bookkeeping."""

import numpy as np
import pytest
import scipy.linalg

from spinchain import (
    ChainSpec,
    Spectrum,
    average_fidelity,
    build_hamiltonian,
    check_pst_condition,
    diagonalize_chain,
    propagate,
    revival_peaks,
    trace,
    transfer_fidelity,
    transition_amplitude,
)

from conftest import uniform_chain


class TestPropagate:
    def test_identity_at_t0(self, qpst_es):
        amp = propagate(qpst_es, 0, 0.0)
        expected = np.zeros(5, dtype=complex)
        expected[0] = 1.0
        assert np.abs(amp - expected).max() <= 1e-12

    def test_two_site_rabi(self):
        es = diagonalize_chain(uniform_chain(2))
        for t in np.linspace(0.0, 6.0, 25):
            amp = propagate(es, 0, t)
            assert abs(abs(amp[1]) ** 2 - np.sin(t) ** 2) <= 1e-12

    def test_pst_chain_at_mirror_time(self, pst5_es):
        amp = propagate(pst5_es, 0, 3 * np.pi)
        assert abs(amp[4]) ** 2 >= 0.9999

    def test_norm_conserved(self, qpst_es):
        rng = np.random.default_rng(2)
        for t in rng.uniform(0.0, 100.0, 30):
            amp = propagate(qpst_es, 0, t)
            assert abs(np.sum(np.abs(amp) ** 2) - 1.0) <= 1e-10

    def test_negative_time_rejected(self, qpst_es):
        with pytest.raises(ValueError):
            propagate(qpst_es, 0, -1.0)

    def test_matches_expm_oracle(self):
        # brute-force matrix exponential, independent of the eigensolver path
        rng = np.random.default_rng(17)
        for _ in range(10):
            n = int(rng.integers(2, 7))
            chain = ChainSpec(onsite=tuple(rng.uniform(-1, 3, n)),
                              couplings=tuple(rng.uniform(0.2, 2, n - 1)))
            h = build_hamiltonian(chain)
            es = diagonalize_chain(chain)
            for t in rng.uniform(0.0, 20.0, 5):
                u = scipy.linalg.expm(-1j * h * t)
                assert np.abs(propagate(es, 0, t) - u[:, 0]).max() <= 1e-8


class TestFidelity:
    def test_zero_at_t0(self, qpst_es):
        assert transfer_fidelity(qpst_es, 0.0) <= 1e-20

    def test_table_value(self, qpst_es):
        # best transfer of the quasi-PST chain near t*J = 8.63
        f = transfer_fidelity(qpst_es, 8.6223 / 0.91)
        assert f == pytest.approx(0.9998, abs=5e-4)

    def test_amplitude_bounded(self, qpst_es):
        for t in np.linspace(0, 60, 50):
            assert abs(transition_amplitude(qpst_es, t)) <= 1.0 + 1e-12


class TestAverageFidelity:
    def test_endpoints(self):
        assert average_fidelity(1.0) == pytest.approx(1.0, abs=1e-15)
        assert average_fidelity(0.0) == pytest.approx(0.5, abs=1e-15)

    def test_table_row(self):
        assert average_fidelity(0.9998) == pytest.approx(0.9999, abs=5e-5)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            average_fidelity(1.5)
        with pytest.raises(ValueError):
            average_fidelity(-0.2)


class TestTrace:
    def test_bounds_invariants(self, qpst_chain, qpst_es):
        tr = trace(qpst_es, window=50.0, j_max=qpst_chain.j_max)
        assert np.all(tr.transfer >= 0.0) and np.all(tr.transfer <= 1.0 + 1e-12)
        assert np.all(tr.average >= 0.5 - 1e-12) and np.all(tr.average <= 1.0 + 1e-12)
        expected_avg = np.sqrt(tr.transfer) / 3 + tr.transfer / 6 + 0.5
        assert np.abs(tr.average - expected_avg).max() <= 1e-12

    def test_qpst_peak(self, qpst_chain, qpst_es):
        tr = trace(qpst_es, window=50.0, j_max=qpst_chain.j_max)
        t_peak, f_peak = max(tr.peaks, key=lambda p: p[1])
        assert f_peak == pytest.approx(0.9998, abs=5e-4)
        assert t_peak == pytest.approx(8.63, abs=0.05)

    def test_two_site_peak(self):
        es = diagonalize_chain(uniform_chain(2))
        tr = trace(es, window=10.0, j_max=1.0)
        t_peak, f_peak = tr.peaks[0]
        assert f_peak == pytest.approx(1.0, abs=1e-9)
        assert t_peak == pytest.approx(np.pi / 2, abs=1e-5)

    def test_sample_validation(self, qpst_es):
        with pytest.raises(ValueError):
            trace(qpst_es, window=10.0, samples=1)
        with pytest.raises(ValueError):
            trace(qpst_es, window=10.0, j_max=0.0)


class TestRevivals:
    def test_qpst_envelope_decays(self, qpst_chain, qpst_es):
        tr = trace(qpst_es, window=400.0, j_max=qpst_chain.j_max)
        env = [v for _, v in revival_peaks(tr)]
        assert len(env) >= 20
        assert all(b < a for a, b in zip(env, env[1:]))
        assert 0.75 <= env[-1] <= 0.90

    def test_pst_revivals_stay_near_one(self, pst5_chain, pst5_es):
        tr = trace(pst5_es, window=400.0, j_max=pst5_chain.j_max)
        env = [v for _, v in revival_peaks(tr)]
        assert len(env) >= 20
        assert min(env) >= 0.999


class TestPstTheorem:
    def test_valid_spectrum_gives_unit_fidelity(self, pst5_chain, pst5_es):
        check = check_pst_condition(Spectrum(values=tuple(pst5_es.values)),
                                    tol=1e-6)
        assert check.valid
        assert transfer_fidelity(pst5_es, check.t_m) >= 1.0 - 1e-8

    def test_periodicity(self, pst5_es):
        t_m = 3 * np.pi
        for k in (1, 2, 3):
            assert transfer_fidelity(pst5_es, t_m * (1 + 2 * k)) >= 1.0 - 1e-6

    def test_propagator_unitary(self, pst5_es):
        for t in (0.7, 3.1, 12.9):
            u = pst5_es.vectors @ np.diag(np.exp(-1j * pst5_es.values * t)) \
                @ pst5_es.vectors.T
            assert np.abs(u @ u.conj().T - np.eye(5)).max() <= 1e-10
