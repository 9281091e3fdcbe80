"""Dense complex linear algebra with bipartite index bookkeeping.

Conventions: matrices are row-major numpy arrays; a bipartite system A x B
of dimensions (dA, dB) uses composite indices i = a*dB + b.  Vectorization
of a matrix stacks its rows ("row after row").
"""

import json

import numpy as np

from .config import KRON_DIM_CAP, TOL

__all__ = [
    "tensor_product",
    "partial_trace",
    "reshuffle",
    "fourier_matrix",
    "svd",
    "eigh",
    "dagger",
    "frobenius_norm",
    "save_matrix",
    "load_matrix",
]


def as_matrix(x) -> np.ndarray:
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {m.shape}")
    return m


def dagger(x: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(x, -1, -2))


def frobenius_norm(x) -> float:
    return float(np.linalg.norm(x))


def check_dims(n: int, dims) -> tuple:
    dA, dB = int(dims[0]), int(dims[1])
    if dA < 1 or dB < 1 or dA * dB != n:
        raise ValueError(f"dims {dims} incompatible with size {n}")
    return dA, dB


def tensor_product(A, B) -> np.ndarray:
    """Kronecker product with (A x B)[i*rB+k, j*cB+l] = A[i,j] B[k,l]."""
    A, B = as_matrix(A), as_matrix(B)
    rows = A.shape[0] * B.shape[0]
    cols = A.shape[1] * B.shape[1]
    if max(rows, cols) > KRON_DIM_CAP:
        raise ValueError(
            f"tensor product of {A.shape} and {B.shape} exceeds the "
            f"dimension cap {KRON_DIM_CAP}"
        )
    return np.kron(A, B)


def partial_trace(X, dims, which: int) -> np.ndarray:
    """Trace out one factor of a square bipartite matrix.

    ``which=0`` removes subsystem A (returns a dB x dB matrix), ``which=1``
    removes subsystem B.
    """
    X = as_matrix(X)
    n = X.shape[0]
    if X.shape[0] != X.shape[1]:
        raise ValueError("partial trace needs a square matrix")
    dA, dB = check_dims(n, dims)
    X4 = X.reshape(dA, dB, dA, dB)
    if which == 0:
        return np.trace(X4, axis1=0, axis2=2)
    if which == 1:
        return np.trace(X4, axis1=1, axis2=3)
    raise ValueError("which must be 0 (trace out A) or 1 (trace out B)")


def reshuffle(X, dims) -> np.ndarray:
    """Reshuffle a square bipartite matrix, X^R[(m,n),(mu,nu)] = X[(m,mu),(n,nu)].

    Each row of X (length dA*dB) is reshaped row-major into a dB-column
    block and the blocks are placed in lexicographical order.  For
    dA = dB = N this is an involution; in general the result is dA^2 x dB^2.
    """
    X = as_matrix(X)
    if X.shape[0] != X.shape[1]:
        raise ValueError("reshuffle needs a square matrix")
    dA, dB = check_dims(X.shape[0], dims)
    return np.ascontiguousarray(
        X.reshape(dA, dB, dA, dB).transpose(0, 2, 1, 3).reshape(dA * dA, dB * dB)
    )


def reshuffle_cols(X, dims) -> np.ndarray:
    # Column variant R' (reshapes columns instead of rows); same singular
    # values as R.  Square bipartitions only; used by tests.
    X = as_matrix(X)
    dA, dB = check_dims(X.shape[0], dims)
    if dA != dB:
        raise ValueError("column reshuffle implemented for dA == dB only")
    return np.ascontiguousarray(
        X.reshape(dA, dB, dA, dB).transpose(3, 1, 2, 0).reshape(dA * dA, dB * dB)
    )


def fourier_matrix(d: int) -> np.ndarray:
    """Unitary discrete Fourier matrix, F[k,l] = exp(2 pi i k l / d) / sqrt(d)."""
    if d < 1:
        raise ValueError("Fourier dimension must be positive")
    k = np.arange(d)
    return np.exp(2j * np.pi * np.outer(k, k) / d) / np.sqrt(d)


def is_unitary(U, tol: float = TOL.unitary_input) -> bool:
    U = as_matrix(U)
    if U.shape[0] != U.shape[1]:
        return False
    return unitarity_residual(U) <= tol


def unitarity_residual(U) -> float:
    U = as_matrix(U)
    return float(np.abs(U @ dagger(U) - np.eye(U.shape[0])).max())


def svd(X):
    """Singular value decomposition X = U diag(s) V^dagger.

    Returns (u, s, vh) with s descending; reconstruction and orthonormality
    meet the package tolerances (asserted in the test suite, not here).
    """
    return np.linalg.svd(as_matrix(X))


def eigh(X):
    """Hermitian eigendecomposition with eigenvalues sorted descending."""
    w, v = np.linalg.eigh(as_matrix(X))
    return w[::-1], v[:, ::-1]


# ---------------------------------------------------------------------------
# matrix file format


def matrix_to_doc(X, dims=None) -> dict:
    """JSON document for a matrix: {"rows", "cols", "dims", "data"} with
    data = [[re, im], ...] in row-major order."""
    X = as_matrix(X)
    return {
        "rows": X.shape[0],
        "cols": X.shape[1],
        "dims": None if dims is None else [int(dims[0]), int(dims[1])],
        "data": [[float(z.real), float(z.imag)] for z in X.ravel()],
    }


def matrix_from_doc(doc: dict):
    """Inverse of :func:`matrix_to_doc`; rejects non-finite entries."""
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        data = doc["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix document: {exc}") from exc
    if rows < 1 or cols < 1 or len(data) != rows * cols:
        raise ValueError(f"matrix data length {len(data)} != {rows}*{cols}")
    flat = np.asarray(data, dtype=float)
    if flat.ndim != 2 or flat.shape != (rows * cols, 2):
        raise ValueError("matrix entries must be [re, im] pairs")
    if not np.isfinite(flat).all():
        raise ValueError("matrix has non-finite entries")
    X = (flat[:, 0] + 1j * flat[:, 1]).reshape(rows, cols)
    dims = doc.get("dims")
    if dims is not None:
        dims = (int(dims[0]), int(dims[1]))
        if dims[0] * dims[1] != rows:
            raise ValueError(f"dims {dims} inconsistent with {rows} rows")
    return X, dims


def save_matrix(path, X, dims=None) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_doc(X, dims), fh)


def load_matrix(path):
    """Read a matrix written by :func:`save_matrix`; returns (matrix, dims)."""
    with open(path) as fh:
        doc = json.load(fh)
    try:
        return matrix_from_doc(doc)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc
