import numpy as np
import pytest

from unigate import gates
from unigate.canonical import eta_from_alpha, interaction_content
from unigate.channels import (
    NotUnistochasticError,
    apply_choi,
    apply_kraus,
    bloch_map,
    channel_from_unitary,
    choi_from_unitary,
    env_channel_apply,
    eta_matches,
    is_cp,
    is_unistochastic,
    kraus_from_unitary,
    load_channel,
    pauli_channel,
    pauli_eta,
    save_channel,
    validate_density_matrix,
)
from unigate.linalg import dagger, tensor_product
from unigate.schmidt import schmidt_spectrum, shannon_entropy

from conftest import haar_unitary, random_density_matrix


class TestEnvChannel:
    def test_swap_depolarizes(self, rng):
        rho = random_density_matrix(2, rng)
        out = env_channel_apply(gates.swap(2), rho, (2, 2))
        assert np.allclose(out, np.eye(2) / 2, atol=1e-12)

    def test_local_gate_acts_unitarily(self, rng):
        A = haar_unitary(2, rng)
        B = haar_unitary(2, rng)
        rho = random_density_matrix(2, rng)
        out = env_channel_apply(tensor_product(A, B), rho, (2, 2))
        assert np.allclose(out, A @ rho @ dagger(A), atol=1e-12)

    def test_fourier_depolarizes(self, rng):
        rho = random_density_matrix(2, rng)
        out = env_channel_apply(gates.fourier_gate(2), rho, (2, 2))
        assert np.allclose(out, np.eye(2) / 2, atol=1e-12)

    def test_trace_preserved(self, rng):
        U = haar_unitary(4, rng)
        rho = random_density_matrix(2, rng)
        out = env_channel_apply(U, rho, (2, 2))
        assert np.trace(out).real == pytest.approx(1.0, abs=1e-10)

    def test_invalid_state_rejected(self, rng):
        U = haar_unitary(4, rng)
        with pytest.raises(ValueError):
            env_channel_apply(U, np.eye(2), (2, 2))  # trace 2

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValueError):
            env_channel_apply(haar_unitary(4, rng), random_density_matrix(3, rng), (2, 2))


class TestChoiKraus:
    def test_cnot_choi_eigenvalues(self):
        D = choi_from_unitary(gates.cnot(), (2, 2))
        assert np.allclose(np.sort(np.linalg.eigvalsh(D)), [0, 0, 1, 1], atol=1e-12)

    def test_local_gate_rank_one(self, rng):
        U = tensor_product(haar_unitary(2, rng), haar_unitary(2, rng))
        w = np.linalg.eigvalsh(choi_from_unitary(U, (2, 2)))
        assert np.allclose(np.sort(w), [0, 0, 0, 2], atol=1e-10)
        kraus = kraus_from_unitary(U, (2, 2))
        assert len(kraus) == 1

    def test_choi_spectrum_entropy_matches_gate(self, rng):
        U = haar_unitary(4, rng)
        w = np.linalg.eigvalsh(choi_from_unitary(U, (2, 2)))
        w = np.clip(w, 0, None)
        w = w / w.sum()
        s_choi = float(-(w[w > 0] * np.log(w[w > 0])).sum())
        assert s_choi == pytest.approx(shannon_entropy(schmidt_spectrum(U)), abs=1e-10)

    def test_cnot_kraus(self, rng):
        kraus = kraus_from_unitary(gates.cnot(), (2, 2))
        assert len(kraus) == 2
        comp = sum(dagger(A) @ A for A in kraus)
        assert np.abs(comp - np.eye(2)).max() < 1e-12
        rho = random_density_matrix(2, rng)
        assert np.allclose(
            apply_kraus(kraus, rho), env_channel_apply(gates.cnot(), rho, (2, 2)), atol=1e-12
        )

    def test_fourier_kraus_depolarizing(self, rng):
        kraus = kraus_from_unitary(gates.fourier_gate(2), (2, 2))
        assert len(kraus) == 4
        rho = random_density_matrix(2, rng)
        assert np.allclose(apply_kraus(kraus, rho), np.eye(2) / 2, atol=1e-12)

    def test_three_representations_agree(self, rng):
        for _ in range(20):
            U = haar_unitary(4, rng)
            ch = channel_from_unitary(U, (2, 2))
            for _ in range(3):
                rho = random_density_matrix(2, rng)
                direct = env_channel_apply(U, rho, (2, 2))
                assert np.abs(apply_kraus(ch.kraus, rho) - direct).max() < 1e-10
                assert np.abs(apply_choi(ch.choi, rho) - direct).max() < 1e-10

    def test_k_unistochastic_consistency(self, rng):
        # N = 2, M = 4 environment (K = 2); Choi from the matrix-unit basis
        U = haar_unitary(8, rng)
        D = choi_from_unitary(U, (2, 4))
        assert np.trace(D).real == pytest.approx(2.0, abs=1e-10)
        E = np.zeros((4, 4), dtype=complex)
        for n in range(2):
            for nu in range(2):
                unit = np.zeros((2, 2), dtype=complex)
                unit[n, nu] = 1.0
                big = U @ tensor_product(unit, np.eye(4) / 4) @ dagger(U)
                out = np.trace(big.reshape(2, 4, 2, 4), axis1=1, axis2=3)
                for m in range(2):
                    for mu in range(2):
                        E[m * 2 + n, mu * 2 + nu] = out[m, mu]
        assert np.abs(D - E).max() < 1e-10

    def test_unistochastic_is_bistochastic(self, rng):
        for _ in range(30):
            U = haar_unitary(4, rng)
            out = env_channel_apply(U, np.eye(2) / 2, (2, 2))
            assert np.abs(out - np.eye(2) / 2).max() < 1e-10


class TestPauliChannel:
    def test_identity(self):
        ch = pauli_channel([1, 0, 0, 0])
        assert np.allclose(ch.eta, [1, 1, 1])
        rho = np.array([[0.7, 0.2j], [-0.2j, 0.3]])
        assert np.allclose(ch(rho), rho, atol=1e-14)

    def test_symmetric_channel_eta(self):
        ch = pauli_channel([0, 1 / 3, 1 / 3, 1 / 3])
        assert np.allclose(ch.eta, [-1 / 3, -1 / 3, -1 / 3], atol=1e-14)

    def test_depolarizing(self, rng):
        ch = pauli_channel([0.25] * 4)
        assert np.allclose(ch.eta, 0, atol=1e-14)
        rho = random_density_matrix(2, rng)
        assert np.allclose(ch(rho), np.eye(2) / 2, atol=1e-12)

    def test_choi_eigenvalues_are_two_weights(self, rng):
        w = rng.dirichlet(np.ones(4))
        ch = pauli_channel(w)
        assert np.allclose(np.sort(np.linalg.eigvalsh(ch.choi)), np.sort(2 * w), atol=1e-10)

    def test_block_eigenvalue_formula(self, rng):
        w = rng.dirichlet(np.ones(4))
        e1, e2, e3 = pauli_eta(w)
        d = 0.5 * np.array(
            [1 + e3 + e1 + e2, 1 + e3 - e1 - e2, 1 - e3 + e1 - e2, 1 - e3 - e1 + e2]
        )
        assert np.allclose(np.sort(d), np.sort(2 * w), atol=1e-12)

    def test_invalid_weights(self):
        with pytest.raises(ValueError):
            pauli_channel([0.5, 0.6, 0, 0])


class TestBlochMap:
    def test_identity_channel(self):
        t, eta = bloch_map(pauli_channel([1, 0, 0, 0]))
        assert np.allclose(t, np.eye(3), atol=1e-12)
        assert np.allclose(eta, [1, 1, 1], atol=1e-12)

    def test_sigma_z_rotation(self):
        _, eta = bloch_map(pauli_channel([0, 0, 0, 1]))
        assert eta_matches(eta, np.array([-1.0, -1.0, 1.0]))

    def test_canonical_gate_damping(self, rng):
        from unigate.canonical import weyl_canonicalize

        for _ in range(30):
            a = weyl_canonicalize(rng.uniform(0, np.pi / 2, 3)).alpha
            ch = channel_from_unitary(gates.canonical_gate(a), (2, 2))
            _, eta = bloch_map(ch)
            assert eta_matches(eta, eta_from_alpha(a), tol=1e-8)

    def test_normal_form_ordering(self, rng):
        U = haar_unitary(4, rng)
        _, eta = bloch_map(channel_from_unitary(U, (2, 2)))
        mags = np.abs(eta)
        assert mags[0] >= mags[1] >= mags[2]
        assert (eta[:2] >= 0).all()  # sign carried by the smallest component

    def test_not_bistochastic_rejected(self):
        # amplitude-damping-like Kraus set
        A0 = np.array([[1, 0], [0, np.sqrt(0.5)]], dtype=complex)
        A1 = np.array([[0, np.sqrt(0.5)], [0, 0]], dtype=complex)
        with pytest.raises(ValueError, match="bistochastic"):
            bloch_map([A0, A1])


class TestCPAndUnistochastic:
    def test_cp_vertices(self):
        assert is_cp([1, 1, 1])
        assert is_cp([1, -1, -1])
        assert not is_cp([1, 1, -1])

    def test_cp_symmetric_point_boundary(self):
        assert is_cp([-1 / 3, -1 / 3, -1 / 3])

    def test_symmetric_pauli_not_unistochastic(self):
        verdict = is_unistochastic(np.array([-1 / 3, -1 / 3, -1 / 3]))
        assert not verdict.verdict
        assert verdict.witness is None

    def test_origin_witness_is_dcnot_class(self):
        verdict = is_unistochastic(np.zeros(3))
        assert verdict.verdict
        content, _ = interaction_content(verdict.witness)
        assert np.allclose(content.alpha, (np.pi / 4, np.pi / 4, 0), atol=1e-8)

    def test_identity_witness(self):
        verdict = is_unistochastic(np.array([1.0, 1.0, 1.0]))
        assert verdict.verdict
        assert np.allclose(np.abs(np.trace(verdict.witness)), 4.0, atol=1e-8)

    def test_witness_damping_matches(self, rng):
        for _ in range(50):
            e = np.sort(rng.uniform(0, 1, 3))[::-1]
            if min(e[2] - e[0] * e[1], e[0] - e[1] * e[2], e[1] - e[2] * e[0]) < 1e-3:
                continue
            verdict = is_unistochastic(e)
            assert verdict.verdict
            _, eta_w = bloch_map(channel_from_unitary(verdict.witness, (2, 2)))
            assert eta_matches(eta_w, e, tol=1e-8)

    def test_cp_precondition(self):
        with pytest.raises(ValueError):
            is_unistochastic(np.array([1.0, 1.0, -1.0]))

    def test_haar_channels_never_violate(self, rng):
        for _ in range(200):
            U = haar_unitary(4, rng)
            _, eta = bloch_map(channel_from_unitary(U, (2, 2)))
            e1, e2, e3 = eta
            assert e1 * e2 <= e3 + 1e-10
            assert e2 * e3 <= e1 + 1e-10
            assert e3 * e1 <= e2 + 1e-10


class TestEtaMatches:
    def test_pair_flip(self):
        assert eta_matches([0.5, -0.2, -0.1], [0.5, 0.2, 0.1])

    def test_permutation(self):
        assert eta_matches([0.1, 0.2, 0.3], [0.3, 0.1, 0.2])

    def test_single_flip_is_not_a_match(self):
        assert not eta_matches([0.5, 0.2, 0.1], [-0.5, 0.2, 0.1])


class TestChannelIO:
    def test_roundtrip(self, tmp_path, rng):
        U = haar_unitary(4, rng)
        ch = channel_from_unitary(U, (2, 2))
        path = tmp_path / "channel.json"
        save_channel(path, ch)
        back = load_channel(path)
        assert back.dim == 2
        assert np.allclose(back.choi, ch.choi, atol=0)
        assert len(back.kraus) == len(ch.kraus)
        rho = random_density_matrix(2, rng)
        assert np.allclose(back(rho), ch(rho), atol=1e-12)


def test_validate_density_matrix_rejects_nonpsd():
    bad = np.array([[1.5, 0], [0, -0.5]], dtype=complex)
    with pytest.raises(ValueError, match="positive"):
        validate_density_matrix(bad)
