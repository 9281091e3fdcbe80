"""Quantum channels induced by coupling to a maximally mixed environment.

A unitary U on an N x M system defines the channel
rho -> Tr_env[ U (rho (x) 1/M) U^dagger ] (unistochastic for M = N,
k-unistochastic for M = N^k).  All three representations built here --
Kraus operators, Choi (dynamical) matrix and the direct partial trace --
agree on states, which the test suite enforces; the Choi matrix is
U^R (U^R)^dagger / M so that its spectrum is Lambda_i / M and its trace N.
"""

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .canonical import (
    PAULI,
    NotUnistochasticError,
    alpha_from_eta,
    canonical_gate,
)
from .config import TOL
from .linalg import (
    as_matrix,
    check_dims,
    dagger,
    matrix_from_doc,
    matrix_to_doc,
    partial_trace,
    reshuffle,
    tensor_product,
    unitarity_residual,
)

__all__ = [
    "QubitChannel",
    "NotUnistochasticError",
    "UnistochasticVerdict",
    "validate_density_matrix",
    "env_channel_apply",
    "choi_from_unitary",
    "kraus_from_unitary",
    "channel_from_unitary",
    "apply_kraus",
    "apply_choi",
    "pauli_channel",
    "pauli_eta",
    "bloch_map",
    "is_cp",
    "is_unistochastic",
    "eta_matches",
    "save_channel",
    "load_channel",
]


def validate_density_matrix(rho, tol: float = TOL.density_matrix) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if np.abs(rho - dagger(rho)).max() > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError("density matrix must have unit trace")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def env_channel_apply(U, rho, dims) -> np.ndarray:
    """Direct partial-trace action: Tr_env[U (rho (x) 1/M) U^dagger].

    This is the defining oracle the Kraus and Choi paths are checked
    against.
    """
    U = as_matrix(U)
    N, M = check_dims(U.shape[0], dims)
    if unitarity_residual(U) > TOL.unitary_input:
        raise ValueError("U is not unitary")
    rho = validate_density_matrix(rho)
    if rho.shape[0] != N:
        raise ValueError(f"state has dimension {rho.shape[0]}, expected {N}")
    big = U @ tensor_product(rho, np.eye(M) / M) @ dagger(U)
    return partial_trace(big, (N, M), which=1)


def choi_from_unitary(U, dims) -> np.ndarray:
    """Choi (dynamical) matrix of the induced channel: U^R (U^R)^dagger / M.

    For M != N the rectangular reshuffle is used; the 1/M prefactor makes
    Tr D = N in every case.  (The conjugate-transposed ordering corresponds
    to tracing out the first factor instead and does not reproduce the
    partial-trace action.)
    """
    U = as_matrix(U)
    N, M = check_dims(U.shape[0], dims)
    R = reshuffle(U, (N, M))
    return (R @ dagger(R)) / M


def kraus_from_unitary(U, dims, cutoff: float = 1e-12) -> list:
    """Kraus operators A_k = sqrt(Lambda_k / M) B'_k from the operator
    Schmidt decomposition; B'_k are the reshaped left singular vectors of
    the reshuffled matrix."""
    U = as_matrix(U)
    N, M = check_dims(U.shape[0], dims)
    u, s, _ = np.linalg.svd(reshuffle(U, (N, M)))
    keep = s > cutoff * s[0]
    return [(s[k] / np.sqrt(M)) * u[:, k].reshape(N, N) for k in np.flatnonzero(keep)]


def apply_kraus(kraus, rho) -> np.ndarray:
    out = np.zeros_like(as_matrix(rho))
    for A in kraus:
        out = out + A @ rho @ dagger(A)
    return out


def apply_choi(choi, rho) -> np.ndarray:
    """Index-contraction action rho'[m,mu] = D[(m,n),(mu,nu)] rho[n,nu]."""
    choi = as_matrix(choi)
    N = int(round(np.sqrt(choi.shape[0])))
    if N * N != choi.shape[0] or choi.shape[0] != choi.shape[1]:
        raise ValueError("Choi matrix must be N^2 x N^2")
    D4 = choi.reshape(N, N, N, N)
    return np.einsum("mnuv,nv->mu", D4, as_matrix(rho))


@dataclass(frozen=True)
class QubitChannel:
    """A trace-preserving map on an N-level system (named for the N=2 focus)."""

    dim: int
    choi: np.ndarray
    kraus: list
    eta: Optional[np.ndarray] = None

    def __call__(self, rho) -> np.ndarray:
        return apply_kraus(self.kraus, rho)


def channel_from_unitary(U, dims) -> QubitChannel:
    N, _ = check_dims(as_matrix(U).shape[0], dims)
    return QubitChannel(dim=N, choi=choi_from_unitary(U, dims), kraus=kraus_from_unitary(U, dims))


def pauli_eta(weights) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    return np.array(
        [
            w[0] + w[1] - w[2] - w[3],
            w[0] - w[1] + w[2] - w[3],
            w[0] - w[1] - w[2] + w[3],
        ]
    )


def pauli_channel(weights) -> QubitChannel:
    """One-qubit Pauli channel rho -> sum_i w_i sigma_i rho sigma_i."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (4,) or (w < -1e-12).any() or abs(w.sum() - 1.0) > 1e-10:
        raise ValueError("weights must be four nonnegative reals summing to 1")
    kraus = [np.sqrt(w[i]) * PAULI[i] for i in range(4) if w[i] > 0]
    choi = np.zeros((4, 4), dtype=complex)
    for A in kraus:
        v = A.reshape(-1)
        choi += np.outer(v, v.conj())
    return QubitChannel(dim=2, choi=choi, kraus=kraus, eta=pauli_eta(w))


def bloch_map(channel) -> tuple:
    """Bloch affine matrix t and damping vector of a one-qubit bistochastic map.

    t_ij = Tr[sigma_i Phi(sigma_j)] / 2 is factored as t = O1 diag(eta) O2^T
    with O1, O2 in SO(3): determinant signs are transferred onto the
    smallest singular value, so eta comes out ordered |eta1| >= |eta2| >=
    |eta3| with at most the last component negative.
    """
    kraus = channel.kraus if isinstance(channel, QubitChannel) else channel
    if kraus[0].shape != (2, 2):
        raise ValueError("Bloch map is defined for one-qubit channels")
    fixed = apply_kraus(kraus, np.eye(2) / 2)
    if np.abs(fixed - np.eye(2) / 2).max() > TOL.density_matrix:
        raise ValueError("channel is not bistochastic")
    t = np.empty((3, 3))
    for j in range(3):
        out = apply_kraus(kraus, PAULI[j + 1])
        for i in range(3):
            t[i, j] = np.real(np.trace(PAULI[i + 1] @ out)) / 2
    u, s, vt = np.linalg.svd(t)
    eta = s.copy()
    eta[2] *= np.linalg.det(u) * np.linalg.det(vt)
    return t, eta


def is_cp(eta, slack: float = TOL.cp_slack) -> bool:
    """Fujiwara-Algoet conditions (1 +- eta3)^2 >= (eta1 +- eta2)^2."""
    e1, e2, e3 = np.asarray(eta, dtype=float)
    return bool(
        (1 + e3) ** 2 >= (e1 + e2) ** 2 - slack and (1 - e3) ** 2 >= (e1 - e2) ** 2 - slack
    )


@dataclass(frozen=True)
class UnistochasticVerdict:
    verdict: bool
    witness: Optional[np.ndarray]


def is_unistochastic(eta, tol: float = TOL.eta_membership) -> UnistochasticVerdict:
    """Test eta_i eta_j <= eta_k (all cyclic) and produce a witness gate.

    The witness is the canonical gate at alpha_from_eta(eta); its Bloch
    damping reproduces eta up to the permutation / paired-sign freedom of
    the signed SVD.
    """
    eta = np.asarray(eta, dtype=float)
    if not is_cp(eta):
        raise ValueError(f"eta {eta} is not even completely positive")
    e1, e2, e3 = eta
    ok = (e1 * e2 <= e3 + tol) and (e2 * e3 <= e1 + tol) and (e3 * e1 <= e2 + tol)
    if not ok:
        return UnistochasticVerdict(False, None)
    try:
        content = alpha_from_eta(eta, tol=tol)
    except NotUnistochasticError:
        return UnistochasticVerdict(False, None)
    return UnistochasticVerdict(True, canonical_gate(content.alpha))


def eta_matches(a, b, tol: float = TOL.eta_witness) -> bool:
    """Equality of damping vectors up to permutations and paired sign flips
    (the gauge freedom of the SO(3) x SO(3) Bloch factorization)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        p = a[list(perm)]
        for flips in ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1)):
            if np.abs(p * flips - b).max() <= tol:
                return True
    return False


# ---------------------------------------------------------------------------
# channel file format


def save_channel(path, channel: QubitChannel) -> None:
    doc = {
        "N": channel.dim,
        "choi": matrix_to_doc(channel.choi),
        "kraus": [matrix_to_doc(A) for A in channel.kraus],
        "eta": None if channel.eta is None else [float(x) for x in channel.eta],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_channel(path) -> QubitChannel:
    with open(path) as fh:
        doc = json.load(fh)
    choi, _ = matrix_from_doc(doc["choi"])
    kraus = [matrix_from_doc(d)[0] for d in doc["kraus"]]
    eta = doc.get("eta")
    return QubitChannel(
        dim=int(doc["N"]),
        choi=choi,
        kraus=kraus,
        eta=None if eta is None else np.asarray(eta, dtype=float),
    )
