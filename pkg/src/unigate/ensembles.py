"""Haar-measure ensembles, analytic densities, and Monte Carlo estimators.

Sampling is deterministic in (seed, index): every sample owns a Philox
counter block, so serial and thread-pooled runs produce bit-identical
streams.  Normal variates come from the polar Box-Muller transform on the
counter-based uniforms; the QR phase convention (divide each column of Q by
the phase of the matching R diagonal) makes the distribution Haar.
"""

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from numpy.random import Generator, Philox

from .canonical import (
    alpha_to_delta,
    eta_from_alpha,
    hull_distance,
    interaction_content_batch,
    lambda_from_alpha_raw,
)
from .config import TOL

__all__ = [
    "EnsembleSpec",
    "EstimateWithCI",
    "Histogram",
    "sample_unitary",
    "sample_block",
    "gate_records",
    "write_sample_csv",
    "write_histogram_csv",
    "write_mean_entropy_csv",
    "pdf_alpha",
    "chamber_pdf_alpha",
    "pdf_eta",
    "pdf_coe4_marginal",
    "coe_eigenphase_triples",
    "integrate_volumes",
    "purity_curve",
    "mc_purity",
    "mc_pe_fraction",
    "mc_mean_entropy",
    "random_vector_mean_entropy",
    "alpha_bin_masses",
    "coe_bin_masses",
    "CUBE_NORMALIZATION",
    "CHAMBER_COPIES",
]

BLOCK = 1024  # fixed batch size; independent of the worker count

# 2/pi normalizes the alpha density over the cube [-pi/2, pi/2]^3, which
# tiles into 192 copies of the Weyl chamber; the chamber-restricted density
# therefore carries the extra factor below.
CUBE_NORMALIZATION = 2.0 / np.pi
CHAMBER_COPIES = 192


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str  # "cue", "scue" or "coe"
    dim: int
    count: int
    seed: int

    def __post_init__(self):
        if self.kind not in ("cue", "scue", "coe"):
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.dim < 2 or self.count < 1:
            raise ValueError("need dim >= 2 and count >= 1")


@dataclass(frozen=True)
class EstimateWithCI:
    mean: float
    std_error: float
    samples: int


@dataclass(frozen=True)
class Histogram:
    lo: float
    hi: float
    bins: int
    counts: np.ndarray
    density: np.ndarray

    @classmethod
    def from_samples(cls, x, bins: int, lo: float, hi: float) -> "Histogram":
        counts, _ = np.histogram(x, bins=bins, range=(lo, hi))
        width = (hi - lo) / bins
        density = counts / (counts.sum() * width)
        return cls(lo=lo, hi=hi, bins=bins, counts=counts, density=density)


# ---------------------------------------------------------------------------
# samplers


def _substream(seed: int, index: int, lane: int = 0) -> Generator:
    return Generator(Philox(key=seed, counter=[0, 0, lane, index]))


def _ginibre(dim: int, seed: int, index: int) -> np.ndarray:
    u = _substream(seed, index).random((2, dim, dim))
    return np.sqrt(-np.log1p(-u[0])) * np.exp(2j * np.pi * u[1])


def _haar_from_ginibre(z: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def sample_unitary(spec: EnsembleSpec, index: int) -> np.ndarray:
    """The index-th matrix of the ensemble; bit-identical across runs."""
    if not 0 <= index < spec.count:
        raise IndexError(f"index {index} outside 0..{spec.count - 1}")
    U = _haar_from_ginibre(_ginibre(spec.dim, spec.seed, index))
    if spec.kind == "cue":
        return U
    det = np.linalg.det(U)
    W = U * np.exp(-1j * np.angle(det) / spec.dim)
    if spec.kind == "scue":
        return W
    return W @ W.T  # coe


def sample_block(spec: EnsembleSpec, start: int, stop: int) -> np.ndarray:
    """Samples start..stop-1 stacked into one array (batched linalgebra)."""
    stop = min(stop, spec.count)
    z = np.stack([_ginibre(spec.dim, spec.seed, i) for i in range(start, stop)])
    U = _haar_from_ginibre(z)
    if spec.kind == "cue":
        return U
    det = np.linalg.det(U)
    W = U * np.exp(-1j * np.angle(det) / spec.dim)[:, None, None]
    if spec.kind == "scue":
        return W
    return W @ np.swapaxes(W, 1, 2)


def _map_blocks(spec: EnsembleSpec, fn, threads: int = 1):
    """Apply fn(start, stop) over fixed-size index blocks, in index order.

    The block size never depends on the worker count, so reductions over
    the concatenated results are reproducible for any ``threads``.
    """
    ranges = [(a, min(a + BLOCK, spec.count)) for a in range(0, spec.count, BLOCK)]
    if threads <= 1:
        return [fn(a, b) for a, b in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda ab: fn(*ab), ranges))


# ---------------------------------------------------------------------------
# per-sample gate records


def _reshuffle_batch(Us: np.ndarray, N: int) -> np.ndarray:
    b = Us.shape[0]
    return Us.reshape(b, N, N, N, N).transpose(0, 1, 3, 2, 4).reshape(b, N * N, N * N)


def _spectra(Us: np.ndarray) -> np.ndarray:
    N = int(round(np.sqrt(Us.shape[-1])))
    s = np.linalg.svd(_reshuffle_batch(Us, N), compute_uv=False)
    return s**2 / N**2  # normalized lambda vectors


def _entropies(lam: np.ndarray):
    r = (lam**2).sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        entr = np.where(lam > 0, -lam * np.log(np.where(lam > 0, lam, 1.0)), 0.0)
    return r, entr.sum(axis=1), -np.log(r)


def gate_records(spec: EnsembleSpec, threads: int = 1) -> dict:
    """Per-sample invariants: purity, entropies, and for dim 4 the
    canonical alpha, damping vector and perfect-entangler letter."""
    two_qubit = spec.dim == 4

    def block(a, b):
        Us = sample_block(spec, a, b)
        lam = _spectra(Us)
        r, S1, S2 = _entropies(lam)
        out = {"index": np.arange(a, b), "r": r, "S1": S1, "S2": S2}
        if two_qubit:
            alpha = interaction_content_batch(Us)
            z = np.exp(2j * alpha_to_delta(alpha.T).T)
            d = hull_distance(z)
            pe = np.full(len(d), "B", dtype="<U1")
            pe[d > TOL.pe_boundary] = "N"
            pe[d < -TOL.pe_boundary] = "Y"
            out["alpha"] = alpha
            out["eta"] = eta_from_alpha(alpha)
            out["pe"] = pe
        return out

    parts = _map_blocks(spec, block, threads)
    keys = parts[0].keys()
    return {k: np.concatenate([p[k] for p in parts]) for k in keys}


def write_sample_csv(path, records: dict) -> None:
    """CSV stream: index,r,S1,S2,alpha1..3,eta1..3,pe (blank where absent)."""
    has_alpha = "alpha" in records
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["index", "r", "S1", "S2", "alpha1", "alpha2", "alpha3", "eta1", "eta2", "eta3", "pe"]
        )
        n = len(records["index"])
        for i in range(n):
            row = [
                int(records["index"][i]),
                repr(float(records["r"][i])),
                repr(float(records["S1"][i])),
                repr(float(records["S2"][i])),
            ]
            if has_alpha:
                row += [repr(float(x)) for x in records["alpha"][i]]
                row += [repr(float(x)) for x in records["eta"][i]]
                row += [records["pe"][i]]
            else:
                row += [""] * 7
            w.writerow(row)


def write_histogram_csv(path, hist: Histogram) -> None:
    edges = np.linspace(hist.lo, hist.hi, hist.bins + 1)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["bin_lo", "bin_hi", "count", "density"])
        for i in range(hist.bins):
            w.writerow(
                [repr(float(edges[i])), repr(float(edges[i + 1])), int(hist.counts[i]), repr(float(hist.density[i]))]
            )


def write_mean_entropy_csv(path, rows) -> None:
    """rows: iterable of (n, q, EstimateWithCI)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "q", "mean", "std_error", "samples"])
        for n, q, est in rows:
            w.writerow([n, repr(float(q)), repr(est.mean), repr(est.std_error), est.samples])


# ---------------------------------------------------------------------------
# analytic densities


def pdf_alpha(alpha) -> np.ndarray:
    """Joint density of the interaction content induced by the Haar measure,
    (2/pi) times the six |sin 2(alpha_i +- alpha_j)| factors.

    The 2/pi constant normalizes the density over the cube
    [-pi/2, pi/2]^3; restricted to the Weyl chamber the density integrates
    to 1/192 (see :data:`CHAMBER_COPIES`).
    """
    a = np.asarray(alpha, dtype=float)
    a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2]
    prod = (
        np.abs(np.sin(2 * (a1 + a2)))
        * np.abs(np.sin(2 * (a1 + a3)))
        * np.abs(np.sin(2 * (a2 + a3)))
        * np.abs(np.sin(2 * (a1 - a2)))
        * np.abs(np.sin(2 * (a1 - a3)))
        * np.abs(np.sin(2 * (a2 - a3)))
    )
    return CUBE_NORMALIZATION * prod


def chamber_pdf_alpha(alpha) -> np.ndarray:
    """Density of the canonical (Weyl-chamber) alpha of a Haar-random gate."""
    return CHAMBER_COPIES * pdf_alpha(alpha)


def _eta_density_raw(e1, e2, e3):
    """Jacobian form of the eta density, no domain checks (vectorized)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        c2 = np.array([e2 * e3 / e1, e1 * e3 / e2, e1 * e2 / e3])
        s2 = 1.0 - c2
        num = np.abs(c2[0] - c2[1]) * np.abs(c2[0] - c2[2]) * np.abs(c2[1] - c2[2])
        den = 16.0 * np.sqrt(np.clip(c2[0] * s2[0] * c2[1] * s2[1] * c2[2] * s2[2], 0, None))
    return CUBE_NORMALIZATION * num / den


def pdf_eta(eta) -> float:
    """Density of the damping vector, by change of variables from the alpha
    density: with c_k^2 = eta_i eta_j / eta_k and s_k^2 = 1 - c_k^2,

        P(eta) = (2/pi) prod_{i<j} |c_i^2 - c_j^2| / (16 prod_k |s_k c_k|).

    Defined strictly inside the unistochastic region; it diverges on the
    boundary (where some s_k c_k -> 0) and raises outside.
    """
    e1, e2, e3 = np.asarray(eta, dtype=float)
    margin = min(e3 - e1 * e2, e1 - e2 * e3, e2 - e3 * e1)
    if margin <= 0:
        raise ValueError(f"eta {eta} is not strictly inside the unistochastic set")
    if min(abs(e1), abs(e2), abs(e3)) < 1e-12:
        raise ValueError(f"eta {eta} lies on a coordinate plane (boundary)")
    c2 = np.array([e2 * e3 / e1, e1 * e3 / e2, e1 * e2 / e3])
    if (c2 <= 0).any() or (c2 >= 1).any():
        raise ValueError(f"eta {eta} is on or outside the region boundary")
    return float(_eta_density_raw(e1, e2, e3))


_COE_NORM_CACHE = {}


def _coe_product(t1, t2, t3):
    t4 = -t1 - t2 - t3

    def gap(a, b):
        return 2.0 * np.abs(np.sin((a - b) / 2.0))

    return (
        gap(t4, t3) * gap(t4, t2) * gap(t4, t1) * gap(t3, t2) * gap(t3, t1) * gap(t2, t1)
    )


def _coe_normalization(grid: int = 200) -> float:
    if grid not in _COE_NORM_CACHE:
        t = -np.pi + (np.arange(grid) + 0.5) * (2 * np.pi / grid)
        T2, T3 = np.meshgrid(t, t, indexing="ij")
        total = 0.0
        for t1 in t:
            total += _coe_product(t1, T2, T3).sum()
        _COE_NORM_CACHE[grid] = total * (2 * np.pi / grid) ** 3
    return _COE_NORM_CACHE[grid]


def pdf_coe4_marginal(theta) -> np.ndarray:
    """Marginal eigenphase density of symmetric 4 x 4 unitary matrices
    after integrating out the fourth phase; normalized numerically over
    [-pi, pi]^3."""
    t = np.asarray(theta, dtype=float)
    return _coe_product(t[..., 0], t[..., 1], t[..., 2]) / _coe_normalization()


def coe_eigenphase_triples(spec: EnsembleSpec, threads: int = 1) -> np.ndarray:
    """Eigenphase triples of COE samples (a random 3 of the 4 phases,
    drawn from a separate substream lane so the matrix stream is untouched)."""
    if spec.kind != "coe":
        raise ValueError("need a coe ensemble")

    def block(a, b):
        Y = sample_block(spec, a, b)
        th = np.angle(np.linalg.eigvals(Y))
        out = np.empty((b - a, 3))
        for i in range(b - a):
            sel = _substream(spec.seed, a + i, lane=1).permutation(4)[:3]
            out[i] = th[i, sel]
        return out

    return np.concatenate(_map_blocks(spec, block, threads))


# ---------------------------------------------------------------------------
# quadrature over the chamber and the PE polytope


def _tri_nodes(order: int, a1_lo, a1_hi, a2_hi_of_a1):
    """Gauss-Legendre nodes/weights for the wedge a1 in [lo,hi],
    a2 in [0, f(a1)], a3 in [0, a2]."""
    x, w = leggauss(order)
    x = (x + 1) / 2
    w = w / 2
    a1 = a1_lo + (a1_hi - a1_lo) * x
    w1 = w * (a1_hi - a1_lo)
    a2hi = a2_hi_of_a1(a1)
    a2 = np.einsum("i,j->ij", a2hi, x)
    w2 = np.einsum("i,j->ij", a2hi, w)
    a3 = np.einsum("ij,k->ijk", a2, x)
    w3 = np.einsum("ij,k->ijk", a2, w)
    A1 = np.broadcast_to(a1[:, None, None], a3.shape)
    A2 = np.broadcast_to(a2[:, :, None], a3.shape)
    W = w1[:, None, None] * w2[:, :, None] * w3
    return np.stack([A1, A2, a3], axis=-1).reshape(-1, 3), W.reshape(-1)


def _tri_nodes_c(order: int, a1_lo, a1_hi, a2_hi_of_a1):
    """Same wedge but with a2 in [pi/8, f(a1)] and a3 in [pi/4 - a2, a2]
    (the alpha2 + alpha3 > pi/4 violation region)."""
    x, w = leggauss(order)
    x = (x + 1) / 2
    w = w / 2
    a1 = a1_lo + (a1_hi - a1_lo) * x
    w1 = w * (a1_hi - a1_lo)
    span2 = np.clip(a2_hi_of_a1(a1) - np.pi / 8, 0, None)
    a2 = np.pi / 8 + np.einsum("i,j->ij", span2, x)
    w2 = np.einsum("i,j->ij", span2, w)
    span3 = 2 * a2 - np.pi / 4
    a3 = (np.pi / 4 - a2)[:, :, None] + np.einsum("ij,k->ijk", span3, x)
    w3 = np.einsum("ij,k->ijk", span3, w)
    A1 = np.broadcast_to(a1[:, None, None], a3.shape)
    A2 = np.broadcast_to(a2[:, :, None], a3.shape)
    W = w1[:, None, None] * w2[:, :, None] * w3
    return np.stack([A1, A2, a3], axis=-1).reshape(-1, 3), W.reshape(-1)


def _chamber_pieces(order: int):
    yield _tri_nodes(order, 0.0, np.pi / 4, lambda a1: a1)
    yield _tri_nodes(order, np.pi / 4, np.pi / 2, lambda a1: np.pi / 2 - a1)


def _not_pe_pieces(order: int):
    # alpha1 + alpha2 < pi/4
    yield _tri_nodes(order, 0.0, np.pi / 8, lambda a1: a1)
    yield _tri_nodes(order, np.pi / 8, np.pi / 4, lambda a1: np.pi / 4 - a1)
    # alpha1 - alpha2 > pi/4
    yield _tri_nodes(order, np.pi / 4, 3 * np.pi / 8, lambda a1: a1 - np.pi / 4)
    yield _tri_nodes(order, 3 * np.pi / 8, np.pi / 2, lambda a1: np.pi / 2 - a1)
    # alpha2 + alpha3 > pi/4
    yield _tri_nodes_c(order, np.pi / 8, np.pi / 4, lambda a1: a1)
    yield _tri_nodes_c(order, np.pi / 4, 3 * np.pi / 8, lambda a1: np.pi / 2 - a1)


def _volumes_at(order: int):
    vw = sum(float(pdf_alpha(nodes) @ w) for nodes, w in _chamber_pieces(order))
    cut = sum(float(pdf_alpha(nodes) @ w) for nodes, w in _not_pe_pieces(order))
    vpe = vw - cut
    return vw, vpe


def integrate_volumes(order: int = 64) -> dict:
    """Chamber and perfect-entangler volumes of the alpha density.

    The three half-space violations are pairwise disjoint inside the
    chamber, so V_pe is the chamber integral minus the three cuts.  A
    doubled-order evaluation guards convergence.
    """
    vw, vpe = _volumes_at(order)
    vw2, vpe2 = _volumes_at(2 * order)
    ratio, ratio2 = vpe / vw, vpe2 / vw2
    if abs(ratio - ratio2) > TOL.quadrature or abs(vw - vw2) > TOL.quadrature * abs(vw2):
        raise RuntimeError(f"volume quadrature did not converge: {ratio} vs {ratio2}")
    return {"V_w": vw2, "V_pe": vpe2, "ratio": ratio2}


def purity_curve(bins: int = 100, order: int = 96):
    """Quadrature estimate of the purity density P(r) for two-qubit gates.

    Chamber nodes weighted by the canonical-alpha density are binned in
    r = sum(lambda^2); returns (edges, density) with unit total mass.
    """
    edges = np.linspace(0.25, 1.0, bins + 1)
    mass = np.zeros(bins)
    for nodes, w in _chamber_pieces(order):
        lam = lambda_from_alpha_raw(nodes) / 4.0
        r = (lam**2).sum(axis=-1)
        mass += np.histogram(r, bins=edges, weights=w * chamber_pdf_alpha(nodes))[0]
    width = edges[1] - edges[0]
    return edges, mass / (mass.sum() * width)


# ---------------------------------------------------------------------------
# Monte Carlo estimators


def _estimate(x: np.ndarray) -> EstimateWithCI:
    n = len(x)
    sd = float(np.std(x, ddof=1)) if n > 1 else 0.0
    return EstimateWithCI(mean=float(np.mean(x)), std_error=sd / np.sqrt(n), samples=n)


def purity_from_eta(eta) -> np.ndarray:
    """Two-qubit fast path: r = (1 + |eta|^2) / 4."""
    e = np.asarray(eta, dtype=float)
    return (1.0 + (e**2).sum(axis=-1)) / 4.0


def mc_purity(
    N: int,
    samples: int,
    seed: int,
    kind: str = "scue",
    threads: int = 1,
    bins: int = 50,
):
    """Mean and histogram of the purity r over Haar-random N x N gates."""
    spec = EnsembleSpec(kind=kind, dim=N * N, count=samples, seed=seed)

    def block(a, b):
        lam = _spectra(sample_block(spec, a, b))
        return (lam**2).sum(axis=1)

    r = np.concatenate(_map_blocks(spec, block, threads))
    hist = Histogram.from_samples(r, bins=bins, lo=1.0 / N**2, hi=1.0)
    return _estimate(r), hist


def mc_pe_fraction(samples: int, seed: int, threads: int = 1, return_counts: bool = False):
    """Haar probability that a two-qubit gate is a perfect entangler
    (hull test on the magic-basis eigenphases)."""
    spec = EnsembleSpec(kind="scue", dim=4, count=samples, seed=seed)

    def block(a, b):
        alpha = interaction_content_batch(sample_block(spec, a, b))
        z = np.exp(2j * alpha_to_delta(alpha.T).T)
        return hull_distance(z)

    d = np.concatenate(_map_blocks(spec, block, threads))
    is_pe = d <= TOL.pe_boundary
    est = _estimate(is_pe.astype(float))
    if not return_counts:
        return est
    counts = {
        "N": int((d > TOL.pe_boundary).sum()),
        "B": int((np.abs(d) <= TOL.pe_boundary).sum()),
        "Y": int((d < -TOL.pe_boundary).sum()),
    }
    return est, counts


def mc_mean_entropy(N: int, q: float, samples: int, seed: int, threads: int = 1) -> EstimateWithCI:
    """Mean Renyi entropy S_q of the Schmidt vector over CUE(N^2)."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    spec = EnsembleSpec(kind="cue", dim=N * N, count=samples, seed=seed)

    def block(a, b):
        lam = _spectra(sample_block(spec, a, b))
        if q == 1:
            with np.errstate(divide="ignore", invalid="ignore"):
                t = np.where(lam > 0, -lam * np.log(np.where(lam > 0, lam, 1.0)), 0.0)
            return t.sum(axis=1)
        if q == 0:
            return np.log((lam > TOL.rank).sum(axis=1).astype(float))
        return np.log((lam**q).sum(axis=1)) / (1.0 - q)

    return _estimate(np.concatenate(_map_blocks(spec, block, threads)))


def random_vector_mean_entropy(N: int) -> float:
    """Mean Shannon entropy of a Haar-random unit vector of size N^2,
    Psi(N^2 + 1) - Psi(2) = sum_{k=2}^{N^2} 1/k."""
    return float(sum(1.0 / k for k in range(2, N * N + 1)))


# ---------------------------------------------------------------------------
# binned expected masses (goodness-of-fit helpers)


def alpha_bin_masses(bins=(20, 20, 20), subdiv: int = 5) -> np.ndarray:
    """Expected probability per bin for canonical alpha over the box
    [0, pi/2] x [0, pi/4]^2, via midpoint refinement of the chamber density."""
    from .canonical import _chamber_mask  # internal reuse

    b1, b2, b3 = bins
    g1 = (np.arange(b1 * subdiv) + 0.5) * (np.pi / 2) / (b1 * subdiv)
    g2 = (np.arange(b2 * subdiv) + 0.5) * (np.pi / 4) / (b2 * subdiv)
    g3 = (np.arange(b3 * subdiv) + 0.5) * (np.pi / 4) / (b3 * subdiv)
    G = np.stack(np.meshgrid(g1, g2, g3, indexing="ij"), axis=-1)
    dens = chamber_pdf_alpha(G) * _chamber_mask(G, tol=0.0)
    cell = (np.pi / 2 / (b1 * subdiv)) * (np.pi / 4 / (b2 * subdiv)) * (np.pi / 4 / (b3 * subdiv))
    mass = dens.reshape(b1, subdiv, b2, subdiv, b3, subdiv).sum(axis=(1, 3, 5)) * cell
    return mass / mass.sum()


def coe_bin_masses(bins: int = 20, subdiv: int = 5) -> np.ndarray:
    """Expected probability per bin for COE eigenphase triples on [-pi, pi]^3."""
    n = bins * subdiv
    g = -np.pi + (np.arange(n) + 0.5) * (2 * np.pi / n)
    T2, T3 = np.meshgrid(g, g, indexing="ij")
    mass = np.empty((n, n, n))
    for i, t1 in enumerate(g):
        mass[i] = _coe_product(t1, T2, T3)
    mass = mass.reshape(bins, subdiv, bins, subdiv, bins, subdiv).sum(axis=(1, 3, 5))
    return mass / mass.sum()
