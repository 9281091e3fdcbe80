"""Operator Schmidt decomposition of bipartite unitaries and spectrum functionals.

The Schmidt vector Lambda of a gate U acting on an N x N system is the
vector of squared singular values of the reshuffled matrix U^R; it sums to
N^2 and lambda = Lambda/N^2 is a probability vector invariant under local
unitaries.
"""

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .linalg import as_matrix, check_dims, reshuffle, tensor_product

__all__ = [
    "SchmidtSpectrum",
    "SchmidtDecomposition",
    "Purity",
    "schmidt_spectrum",
    "schmidt_decomposition",
    "shannon_entropy",
    "renyi_entropy",
    "schmidt_rank",
    "purity",
    "factor_product",
]


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Descending Schmidt vector Lambda with sum N^2, for an N x N gate."""

    Lambda: np.ndarray
    dim: int

    def __post_init__(self):
        lam = np.sort(np.clip(np.asarray(self.Lambda, dtype=float), 0.0, None))[::-1]
        object.__setattr__(self, "Lambda", lam)
        total = lam.sum()
        if abs(total - self.dim**2) > TOL.schmidt_sum * self.dim**2:
            raise ValueError(f"sum(Lambda) = {total}, expected {self.dim ** 2}")

    @property
    def lam(self) -> np.ndarray:
        """Normalized probability vector lambda = Lambda / N^2."""
        return self.Lambda / self.dim**2


@dataclass(frozen=True)
class SchmidtDecomposition:
    """U = sum_k sqrt(Lambda_k) left_ops[k] (x) right_ops[k] with
    orthonormal operator bases on each side."""

    spectrum: SchmidtSpectrum
    left_ops: list
    right_ops: list

    def reconstruct(self) -> np.ndarray:
        s = np.sqrt(self.spectrum.Lambda)
        out = sum(
            s[k] * tensor_product(self.left_ops[k], self.right_ops[k])
            for k in range(len(s))
        )
        return out


def _square_dims(U, dims):
    U = as_matrix(U)
    n = U.shape[0]
    if U.shape[0] != U.shape[1]:
        raise ValueError("need a square matrix")
    if dims is None:
        N = int(round(np.sqrt(n)))
        if N * N != n:
            raise ValueError(f"size {n} is not a perfect square; pass dims")
        dims = (N, N)
    dA, dB = check_dims(n, dims)
    if dA != dB:
        raise ValueError("Schmidt spectrum is defined here for N x N bipartitions")
    return U, dA


def schmidt_spectrum(U, dims=None) -> SchmidtSpectrum:
    """Schmidt vector of a gate: squared singular values of U^R, descending."""
    U, N = _square_dims(U, dims)
    s = np.linalg.svd(reshuffle(U, (N, N)), compute_uv=False)
    return SchmidtSpectrum(s**2, N)


def schmidt_decomposition(U, dims=None) -> SchmidtDecomposition:
    """Full operator Schmidt decomposition via the SVD of U^R.

    Left operators are reshaped left singular vectors of U^R, right
    operators reshaped conjugated right singular vectors, so that
    sum_k sqrt(Lambda_k) B'_k (x) B''_k reproduces U.
    """
    U, N = _square_dims(U, dims)
    u, s, vh = np.linalg.svd(reshuffle(U, (N, N)))
    left = [u[:, k].reshape(N, N) for k in range(N * N)]
    right = [vh[k].reshape(N, N) for k in range(N * N)]
    return SchmidtDecomposition(SchmidtSpectrum(s**2, N), left, right)


def _lam(spectrum) -> np.ndarray:
    if isinstance(spectrum, SchmidtSpectrum):
        return spectrum.lam
    lam = np.asarray(spectrum, dtype=float)
    return lam / lam.sum()


def shannon_entropy(spectrum) -> float:
    """Entanglement entropy S = -sum lambda ln lambda (0 ln 0 = 0)."""
    lam = _lam(spectrum)
    pos = lam[lam > 0]
    return float(-(pos * np.log(pos)).sum())


def schmidt_rank(spectrum, rank_tol: float = TOL.rank) -> int:
    """Number of Schmidt coefficients above ``rank_tol`` (relative)."""
    lam = _lam(spectrum)
    return int((lam > rank_tol).sum())


def renyi_entropy(spectrum, q: float) -> float:
    """Renyi entropy S_q = ln(sum lambda^q) / (1 - q).

    S_1 is the Shannon entropy, S_0 = ln(Schmidt rank).
    """
    if q < 0:
        raise ValueError("Renyi order q must be nonnegative")
    lam = _lam(spectrum)
    if q == 0:
        return float(np.log(schmidt_rank(lam)))
    if q == 1:
        return shannon_entropy(lam)
    return float(np.log((lam**q).sum()) / (1.0 - q))


@dataclass(frozen=True)
class Purity:
    r: float
    linear_entropy: float
    inverse_participation: float


def purity(spectrum) -> Purity:
    """Purity r = sum lambda^2, linear entropy E = 1 - r, and R = 1/r."""
    lam = _lam(spectrum)
    r = float((lam**2).sum())
    return Purity(r=r, linear_entropy=1.0 - r, inverse_participation=1.0 / r)


def factor_product(U, dims=None, rank_tol: float = TOL.rank):
    """Split a product gate U = U_a (x) U_b; returns None when U is nonlocal.

    The split is accepted only when the Schmidt rank is 1.  The phase
    ambiguity is fixed by making the largest-modulus entry of U_a real
    positive; the remaining global phase is absorbed into U_b so that
    U_a (x) U_b reproduces U.
    """
    dec = schmidt_decomposition(U, dims)
    N = dec.spectrum.dim
    if dec.spectrum.Lambda[1] >= rank_tol * N**2:
        return None
    Ua = np.sqrt(N) * dec.left_ops[0]
    Ub = np.sqrt(N) * dec.right_ops[0]
    pivot = Ua.ravel()[np.argmax(np.abs(Ua))]
    phase = pivot / abs(pivot)
    Ua = Ua / phase
    # absorb scale and residual phase so the product matches U itself
    Ub = Ub * (np.sqrt(dec.spectrum.Lambda[0]) / N) * phase
    return Ua, Ub
