"""Numerical tolerances and limits, collected in one place."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances used across the package.

    Matrix comparisons are scaled by the norm of the operands where that
    makes sense; entries here are the base constants.
    """

    reconstruction: float = 1e-10     # SVD/eig reconstruction residual (relative)
    orthonormality: float = 1e-10     # vector-set orthonormality
    unitarity: float = 1e-12          # built gates
    unitary_input: float = 1e-8       # accepted unitarity of user input
    rank: float = 1e-10               # Schmidt-rank cutoff, relative to sum(Lambda)
    schmidt_sum: float = 1e-8         # |sum(Lambda) - N^2|
    self_check: float = 1e-6          # Lambda(alpha) vs SVD spectrum cross-check
    alpha_compare: float = 1e-7       # local-equivalence comparison of canonical alpha
    chamber: float = 1e-12            # Weyl-chamber membership slack
    pe_boundary: float = 1e-9         # hull-distance / polytope boundary band
    spe: float = 1e-9                 # special-perfect-entangler segment band
    eta_membership: float = 1e-10     # unistochasticity inequalities slack
    cp_slack: float = 1e-12           # Fujiwara-Algoet inequalities slack
    density_matrix: float = 1e-8      # Hermiticity/PSD/trace of input states
    channel_equiv: float = 1e-10      # Kraus vs partial trace vs Choi agreement
    eta_witness: float = 1e-8         # witness damping vs requested eta
    quadrature: float = 1e-4          # volume-ratio refinement agreement


TOL = Tolerances()

# Largest dimension a tensor product is allowed to produce.
KRON_DIM_CAP = 4096
