"""Two-qubit canonical form: magic-basis algorithm, Weyl chamber, invariants.

Any U in U(4) is locally equivalent to exp(i sum_k alpha_k sigma_k x sigma_k);
the canonical triple alpha (one point per local orbit, picked inside the Weyl
chamber) is extracted from the eigenphases of W W^T with W the gate written
in the magic (Bell) basis.  All conversions between alpha, the interaction
Hamiltonian spectrum delta, the Schmidt vector Lambda and the damping vector
eta live here, together with the perfect-entangler classification.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import TOL
from .linalg import as_matrix, unitarity_residual
from .schmidt import SchmidtSpectrum, purity, renyi_entropy, schmidt_rank, shannon_entropy

__all__ = [
    "PAULI",
    "MAGIC_BASIS",
    "InteractionContent",
    "HamiltonianSpectrum",
    "PEKind",
    "PEClassification",
    "DegenerateSpectrumError",
    "NotRealizableError",
    "NotUnistochasticError",
    "canonical_gate",
    "alpha_to_delta",
    "delta_to_alpha",
    "weyl_canonicalize",
    "in_weyl_chamber",
    "interaction_content",
    "interaction_content_batch",
    "lambda_from_alpha",
    "eta_from_alpha",
    "alpha_from_eta",
    "alpha_from_lambda",
    "locally_equivalent",
    "classify_pe",
    "pe_class_from_alpha",
    "hull_distance",
    "is_special_pe",
    "gate_report",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (np.eye(2, dtype=complex), SIGMA_X, SIGMA_Y, SIGMA_Z)

# Rows are the Bell states -i|psi+>, |phi+>, -i|phi->, |psi->; conjugation by
# this matrix sends SU(2) x SU(2) into SO(4).
MAGIC_BASIS = np.array(
    [[0, -1j, -1j, 0],
     [1, 0, 0, 1],
     [-1j, 0, 0, 1j],
     [0, 1, -1, 0]],
    dtype=complex,
) / np.sqrt(2)


class DegenerateSpectrumError(ValueError):
    """Raised when a conversion is ill defined for the given spectrum."""


class NotUnistochasticError(ValueError):
    """Raised for damping vectors outside the unistochastic set."""


class NotRealizableError(ValueError):
    """Raised when a vector cannot belong to any two-qubit gate."""


@dataclass(frozen=True)
class InteractionContent:
    alpha: np.ndarray
    canonical: bool

    def __post_init__(self):
        object.__setattr__(self, "alpha", np.asarray(self.alpha, dtype=float))


@dataclass(frozen=True)
class HamiltonianSpectrum:
    delta: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.delta, dtype=float)
        object.__setattr__(self, "delta", d)
        if abs(d.sum()) > 1e-10:
            raise ValueError(f"delta must sum to zero, got {d.sum()}")


class PEKind(Enum):
    NOT_PE = "N"
    BOUNDARY = "B"
    INTERIOR = "Y"


@dataclass(frozen=True)
class PEClassification:
    kind: PEKind
    hull_distance: float


# ---------------------------------------------------------------------------
# alpha <-> delta and the canonical gate


def alpha_to_delta(alpha) -> np.ndarray:
    """Spectrum of the interaction Hamiltonian for a given alpha."""
    a1, a2, a3 = np.asarray(alpha, dtype=float)
    return np.array([a1 + a2 - a3, a1 - a2 + a3, -a1 + a2 + a3, -a1 - a2 - a3])


def delta_to_alpha(delta) -> np.ndarray:
    """Inverse linear map; requires sum(delta) = 0."""
    d = np.asarray(delta, dtype=float)
    if abs(d.sum()) > 1e-9:
        raise ValueError(f"delta must sum to zero, got sum {d.sum()}")
    return np.array([(d[0] + d[1]) / 2, (d[0] + d[2]) / 2, (d[1] + d[2]) / 2])


def canonical_gate(alpha) -> np.ndarray:
    """exp(i sum_k alpha_k sigma_k x sigma_k), built exactly in the magic basis.

    The interaction Hamiltonian is diagonal there with eigenvalues
    alpha_to_delta(alpha) in the row order of :data:`MAGIC_BASIS`.
    """
    phases = np.exp(1j * alpha_to_delta(alpha))
    M = MAGIC_BASIS
    return M.conj().T @ (phases[:, None] * M)


# ---------------------------------------------------------------------------
# Weyl chamber

_PERMS = np.array([(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)])
# simultaneous sign flips of two components (even sign changes)
_FLIPS = np.array([(1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1)], dtype=float)


def in_weyl_chamber(alpha, tol: float = TOL.chamber) -> bool:
    """Two-branch chamber test: pi/4 >= a1 >= a2 >= a3 >= 0, or
    pi/2 >= a1 > pi/4 with pi/2 - a1 >= a2 >= a3 >= 0."""
    a1, a2, a3 = np.asarray(alpha, dtype=float)
    if a3 < -tol or a2 < a3 - tol or a1 > np.pi / 2 + tol:
        return False
    if a1 <= np.pi / 4 + tol:
        return a1 >= a2 - tol
    return (np.pi / 2 - a1) >= a2 - tol


def _orbit_candidates(alphas: np.ndarray) -> np.ndarray:
    """All orbit members inside [0, pi/2)^3 for a batch of alpha triples.

    The local-equivalence symmetries are per-component shifts by pi/2,
    simultaneous sign flips of any two components, and permutations; modulo
    the shifts the orbit is the 24-element set enumerated here.
    """
    base = np.mod(alphas, np.pi / 2)  # (b, 3)
    flipped = np.mod(base[:, None, :] * _FLIPS[None, :, :], np.pi / 2)  # (b, 4, 3)
    return flipped[:, :, _PERMS].reshape(alphas.shape[0], 24, 3)


def _chamber_mask(c: np.ndarray, tol: float = TOL.chamber) -> np.ndarray:
    a1, a2, a3 = c[..., 0], c[..., 1], c[..., 2]
    ordered = (a3 >= -tol) & (a2 >= a3 - tol)
    branch1 = (a1 <= np.pi / 4 + tol) & (a1 >= a2 - tol)
    branch2 = (a1 > np.pi / 4 + tol) & (np.pi / 2 - a1 >= a2 - tol)
    return ordered & (branch1 | branch2)


def _canonicalize_batch(alphas: np.ndarray) -> np.ndarray:
    """Weyl representative for each row; ties on the chamber boundary are
    broken by the lexicographically smallest triple (this keeps the local
    gate at (0,0,0) and sqrt(CNOT) at (pi/8,0,0))."""
    b = alphas.shape[0]
    cand = _orbit_candidates(alphas)
    mask = _chamber_mask(cand)
    if not mask.all(axis=1).any() and not mask.any(axis=1).all():
        bad = ~mask.any(axis=1)
        if bad.any():
            raise RuntimeError(f"no chamber representative found for {alphas[bad][0]}")
    big = np.where(mask[..., None], cand, np.inf)
    flat = big.reshape(b * 24, 3)
    rows = np.repeat(np.arange(b), 24)
    order = np.lexsort((flat[:, 2], flat[:, 1], flat[:, 0], rows))
    first = order[np.searchsorted(rows[order], np.arange(b))]
    out = flat[first]
    if not np.isfinite(out).all():
        raise RuntimeError("no chamber representative found")
    return out


def weyl_canonicalize(alpha) -> InteractionContent:
    """Map an alpha triple to its Weyl-chamber representative."""
    out = _canonicalize_batch(np.asarray(alpha, dtype=float).reshape(1, 3))[0]
    return InteractionContent(out, canonical=True)


# ---------------------------------------------------------------------------
# interaction content of a gate


def _magic_eigenphases(Us: np.ndarray) -> np.ndarray:
    """Eigenphase angles of W W^T for a batch of U(4) matrices, W = M U' M^dag."""
    chi = np.angle(np.linalg.det(Us))
    Up = Us * np.exp(-1j * chi / 4)[..., None, None]
    M = MAGIC_BASIS
    W = np.einsum("ij,...jk,lk->...il", M, Up, M.conj())
    return np.angle(np.linalg.eigvals(W @ np.swapaxes(W, -1, -2)))


def _deltas_from_angles(angles: np.ndarray) -> np.ndarray:
    """Resolve eigenphases of W W^T = {e^{2 i delta_k}} into a zero-sum delta.

    Each delta_k is defined mod pi; principal values lie in (-pi/2, pi/2]
    and the total is driven to zero by moving the extremal component by pi,
    at most twice.  Any consistent choice lands in the same Weyl orbit.

    Note the sign: for the magic basis used here the spectrum of W W^T is
    exp(+2 i delta), so the eigenphases are divided by plus two.  Dividing
    by minus two would conjugate the local class (it flips the sign of the
    Makhlin invariant g2), which the round-trip tests reject.
    """
    delta = 0.5 * angles
    total = delta.sum(axis=-1)
    for _ in range(2):
        over = total > 1e-9
        under = total < -1e-9
        if not (over.any() or under.any()):
            break
        hi = np.argmax(delta, axis=-1)
        lo = np.argmin(delta, axis=-1)
        rows = np.arange(delta.shape[0])
        delta[over, hi[over]] -= np.pi
        delta[under, lo[under]] += np.pi
        total = delta.sum(axis=-1)
    if np.abs(total).max() > 1e-8:
        raise RuntimeError("eigenphase branch resolution failed to zero the sum")
    return -np.sort(-delta, axis=-1)


def interaction_content_batch(Us: np.ndarray, self_check: bool = True) -> np.ndarray:
    """Canonical alpha triples for a stack of U(4) matrices."""
    Us = np.asarray(Us, dtype=complex)
    squeeze = Us.ndim == 2
    if squeeze:
        Us = Us[None]
    delta = _deltas_from_angles(_magic_eigenphases(Us))
    a = np.stack(
        [
            (delta[:, 0] + delta[:, 1]) / 2,
            (delta[:, 0] + delta[:, 2]) / 2,
            (delta[:, 1] + delta[:, 2]) / 2,
        ],
        axis=1,
    )
    alphas = _canonicalize_batch(a)
    if self_check:
        from .linalg import reshuffle  # local import to keep module load light

        s = np.linalg.svd(
            Us.reshape(-1, 2, 2, 2, 2).transpose(0, 1, 3, 2, 4).reshape(-1, 4, 4),
            compute_uv=False,
        )
        expected = np.sort(lambda_from_alpha_raw(alphas), axis=-1)[:, ::-1]
        got = s**2
        err = np.abs(expected - got).max()
        if err > TOL.self_check:
            raise RuntimeError(
                f"Lambda(alpha) disagrees with the SVD spectrum by {err}; "
                "eigenphase branch resolution is inconsistent"
            )
    return alphas[0] if squeeze else alphas


def interaction_content(U):
    """Canonical interaction content and Hamiltonian spectrum of a U(4) gate.

    Follows the five-step magic-basis algorithm: strip the determinant
    phase, rotate to the magic basis, take the eigenphases of W W^T, fix
    the zero-sum branch of delta, convert to alpha and canonicalize.  A
    built-in cross-check compares Lambda(alpha) with the singular values of
    the reshuffled gate and raises rather than return a wrong branch.
    """
    U = as_matrix(U)
    if U.shape != (4, 4):
        raise ValueError("interaction content is defined for 4 x 4 unitaries")
    res = unitarity_residual(U)
    if res > TOL.unitary_input:
        raise ValueError(f"input is not unitary (residual {res:.3e})")
    alpha = interaction_content_batch(U)
    return (
        InteractionContent(alpha, canonical=True),
        HamiltonianSpectrum(alpha_to_delta(alpha)),
    )


def locally_equivalent(U, V, tol: float = TOL.alpha_compare) -> bool:
    """True iff the canonical alpha triples agree componentwise."""
    a, _ = interaction_content(U)
    b, _ = interaction_content(V)
    return bool(np.abs(a.alpha - b.alpha).max() <= tol)


# ---------------------------------------------------------------------------
# invariant conversions


def lambda_from_alpha_raw(alpha) -> np.ndarray:
    """Unsorted Schmidt vector from alpha (vectorized over leading axes)."""
    c = np.cos(2 * np.asarray(alpha, dtype=float))
    e1 = c[..., 1] * c[..., 2]
    e2 = c[..., 0] * c[..., 2]
    e3 = c[..., 0] * c[..., 1]
    one = np.ones_like(e1)
    return np.stack(
        [one + e1 + e2 + e3, one + e1 - e2 - e3, one - e1 + e2 - e3, one - e1 - e2 + e3],
        axis=-1,
    )


def lambda_from_alpha(alpha) -> SchmidtSpectrum:
    """Schmidt spectrum of the canonical gate with interaction content alpha."""
    return SchmidtSpectrum(lambda_from_alpha_raw(alpha), dim=2)


def eta_from_alpha(alpha) -> np.ndarray:
    """Damping vector: eta = (c2 c3, c1 c3, c1 c2) with c_k = cos(2 alpha_k)."""
    c = np.cos(2 * np.asarray(alpha, dtype=float))
    return np.stack([c[..., 1] * c[..., 2], c[..., 0] * c[..., 2], c[..., 0] * c[..., 1]], axis=-1)


def _eta_constraints_ok(eta, tol: float) -> bool:
    e1, e2, e3 = eta
    return (e1 * e2 <= e3 + tol) and (e2 * e3 <= e1 + tol) and (e3 * e1 <= e2 + tol)


def alpha_from_eta(eta, tol: float = TOL.eta_membership) -> InteractionContent:
    """Invert eta = (c2 c3, c1 c3, c1 c2) for eta inside the unistochastic set.

    Away from zeros, |c_k| = sqrt(eta_i eta_j / eta_k) and the signs are
    fixed by the products; zero components are handled by direct case
    analysis (valid vectors have zero or at least two vanishing entries).
    The result reproduces eta exactly through :func:`eta_from_alpha`, which
    is verified before returning.
    """
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (3,):
        raise ValueError("eta must be a real triple")
    if not _eta_constraints_ok(eta, tol):
        raise NotUnistochasticError(f"eta {eta} violates the unistochasticity conditions")
    zero = np.abs(eta) <= tol
    nz = int((~zero).sum())
    if nz == 3:
        prod = eta[0] * eta[1] * eta[2]
        if prod <= 0:
            raise NotUnistochasticError(f"eta {eta} has no real cosine solution")
        c2sq = np.array(
            [eta[1] * eta[2] / eta[0], eta[0] * eta[2] / eta[1], eta[0] * eta[1] / eta[2]]
        )
        if (c2sq > 1 + 1e-9).any():
            raise NotUnistochasticError(f"eta {eta}: cosine magnitudes exceed 1")
        c = np.sqrt(np.clip(c2sq, 0, 1))
        # s2 s3 = sgn eta1, s1 s3 = sgn eta2; fix s3 = +1
        c[1] *= np.sign(eta[0])
        c[0] *= np.sign(eta[1])
    elif nz == 1:
        k = int(np.flatnonzero(~zero)[0])
        if eta[k] < 0:
            raise NotUnistochasticError(f"eta {eta} is outside the unistochastic set")
        c = np.zeros(3)
        root = np.sqrt(eta[k])
        others = [i for i in range(3) if i != k]
        # eta_k = c_i c_j for the two other indices; split symmetrically
        c[others[0]] = root
        c[others[1]] = root
    elif nz == 0:
        c = np.array([0.0, 0.0, 1.0])
    else:
        # exactly one zero cannot satisfy the constraints away from tol fuzz
        raise NotUnistochasticError(f"eta {eta} is outside the unistochastic set")
    alpha = 0.5 * np.arccos(np.clip(c, -1.0, 1.0))
    back = eta_from_alpha(alpha)
    if np.abs(back - eta).max() > TOL.eta_witness:
        raise RuntimeError(f"eta inversion failed: {eta} -> {alpha} -> {back}")
    return InteractionContent(alpha, canonical=bool(in_weyl_chamber(alpha)))


def alpha_from_lambda(spectrum, tol: float = 1e-8) -> InteractionContent:
    """Recover alpha from a Schmidt vector via the arccos-square-root form.

    Rank-deficient spectra hit 0/0 ratios and fall back to the eta-based
    inversion; the maximally mixed vector (1,1,1,1) is rejected as
    degenerate (all gates with alpha = (pi/4, pi/4, x) share it).
    """
    if isinstance(spectrum, SchmidtSpectrum):
        L = spectrum.Lambda
    else:
        L = np.sort(np.asarray(spectrum, dtype=float))[::-1]
    if L.shape != (4,):
        raise ValueError("expected a length-4 Schmidt vector")
    if abs(L.sum() - 4.0) > 1e-6:
        raise NotRealizableError(f"sum(Lambda) = {L.sum()}, expected 4")
    eta = np.array(
        [(L[0] + L[1]) / 2 - 1, (L[0] + L[2]) / 2 - 1, (L[0] + L[3]) / 2 - 1]
    )
    if np.abs(eta).max() <= tol:
        raise DegenerateSpectrumError(
            "Lambda = (1,1,1,1) does not determine alpha"
        )
    denom_dead = np.abs(eta) <= tol
    if denom_dead.any():
        try:
            return alpha_from_eta(eta)
        except Exception as exc:
            raise NotRealizableError(str(exc)) from exc
    w = np.array(
        [eta[1] * eta[2] / eta[0], eta[0] * eta[2] / eta[1], eta[0] * eta[1] / eta[2]]
    )
    if (w < -tol).any() or (w > 1 + tol).any():
        raise NotRealizableError(f"w = {w} outside [0, 1]; not a two-qubit Schmidt vector")
    alpha = 0.5 * np.arccos(np.sqrt(np.clip(w, 0.0, 1.0)))
    back = np.sort(lambda_from_alpha_raw(alpha))[::-1]
    if np.abs(back - L).max() > 1e-8:
        try:
            return alpha_from_eta(eta)
        except Exception as exc:
            raise NotRealizableError(str(exc)) from exc
    return InteractionContent(alpha, canonical=bool(in_weyl_chamber(alpha)))


# ---------------------------------------------------------------------------
# perfect entanglers


def hull_distance(points) -> float:
    """Signed distance of the origin to the hull of unit-circle points.

    With angular gaps g between consecutive points, the distance is
    -cos(g_max / 2): negative inside, zero when the origin sits on a hull
    edge, positive outside (1 when all points coincide).
    """
    theta = np.sort(np.mod(np.angle(np.asarray(points, dtype=complex)), 2 * np.pi), axis=-1)
    gaps = np.diff(theta, axis=-1, append=theta[..., :1] + 2 * np.pi)
    return -np.cos(gaps.max(axis=-1) / 2)


def _classify_distance(d: float, tol: float) -> PEKind:
    if d > tol:
        return PEKind.NOT_PE
    if d < -tol:
        return PEKind.INTERIOR
    return PEKind.BOUNDARY


def classify_pe(gate_or_alpha, tol: float = TOL.pe_boundary) -> PEClassification:
    """Perfect-entangler class via the hull test: the gate is a perfect
    entangler iff the origin lies in the convex hull of {e^{2 i delta_k}}."""
    x = np.asarray(gate_or_alpha)
    if x.shape == (3,):
        z = np.exp(2j * alpha_to_delta(x))
    elif x.shape == (4, 4):
        U = as_matrix(x)
        if unitarity_residual(U) > TOL.unitary_input:
            raise ValueError("input is not unitary")
        z = np.exp(1j * _magic_eigenphases(U[None])[0])
    else:
        raise ValueError("expected a 4x4 gate or an alpha triple")
    d = float(hull_distance(z))
    return PEClassification(_classify_distance(d, tol), d)


def pe_class_from_alpha(alpha, tol: float = TOL.pe_boundary) -> PEKind:
    """Half-space form of the PE polytope (cross-check for the hull test):
    a1 + a2 >= pi/4, a1 - a2 <= pi/4, a2 + a3 <= pi/4 inside the chamber."""
    a1, a2, a3 = np.asarray(alpha, dtype=float)
    margins = (
        a1 + a2 - np.pi / 4,
        np.pi / 4 - (a1 - a2),
        np.pi / 4 - (a2 + a3),
    )
    worst = min(margins)
    if worst < -tol:
        return PEKind.NOT_PE
    if worst <= tol:
        return PEKind.BOUNDARY
    return PEKind.INTERIOR


def pe_letters_from_alpha_batch(alphas: np.ndarray, tol: float = TOL.pe_boundary) -> np.ndarray:
    a1, a2, a3 = alphas[:, 0], alphas[:, 1], alphas[:, 2]
    worst = np.minimum(
        a1 + a2 - np.pi / 4, np.minimum(np.pi / 4 - (a1 - a2), np.pi / 4 - (a2 + a3))
    )
    out = np.full(alphas.shape[0], "B", dtype="<U1")
    out[worst < -tol] = "N"
    out[worst > tol] = "Y"
    return out


def is_special_pe(alpha, tol: float = TOL.spe) -> bool:
    """Special perfect entanglers: the segment alpha = (pi/4, s, 0) with
    s in [0, pi/4], interpolating between CNOT and DCNOT."""
    a1, a2, a3 = np.asarray(alpha, dtype=float)
    return bool(
        abs(a1 - np.pi / 4) <= tol
        and abs(a3) <= tol
        and -tol <= a2 <= np.pi / 4 + tol
    )


# ---------------------------------------------------------------------------
# report


def gate_report(U) -> dict:
    """All canonical-form invariants of a two-qubit gate as a JSON-ready dict."""
    content, ham = interaction_content(U)
    spec = lambda_from_alpha(content.alpha)
    pe = classify_pe(U)
    return {
        "alpha": [float(a) for a in content.alpha],
        "delta": [float(d) for d in ham.delta],
        "Lambda": [float(v) for v in spec.Lambda],
        "schmidt_rank": schmidt_rank(spec),
        "eta": [float(e) for e in eta_from_alpha(content.alpha)],
        "pe_class": pe.kind.value,
        "spe": is_special_pe(content.alpha),
        "entropy": {
            "S": shannon_entropy(spec),
            "S2": renyi_entropy(spec, 2),
            "S4": renyi_entropy(spec, 4),
        },
        "purity": purity(spec).r,
    }
