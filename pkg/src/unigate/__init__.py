"""Nonlocal properties of bipartite unitary gates and unistochastic channels.

Submodules: :mod:`unigate.linalg` (bipartite dense linear algebra),
:mod:`unigate.schmidt` (operator Schmidt decomposition and entropies),
:mod:`unigate.gates` (named gate constructors), :mod:`unigate.canonical`
(two-qubit canonical form and perfect entanglers), :mod:`unigate.channels`
(unistochastic channel machinery), :mod:`unigate.ensembles` (Haar sampling
and statistics).
"""

from . import canonical, channels, ensembles, gates, linalg, schmidt
from .canonical import (
    classify_pe,
    eta_from_alpha,
    interaction_content,
    lambda_from_alpha,
    locally_equivalent,
    weyl_canonicalize,
)
from .channels import channel_from_unitary, env_channel_apply, is_unistochastic
from .ensembles import EnsembleSpec, sample_unitary
from .gates import build, table1
from .linalg import fourier_matrix, partial_trace, reshuffle, tensor_product
from .schmidt import renyi_entropy, schmidt_decomposition, schmidt_spectrum

__all__ = [
    "canonical",
    "channels",
    "ensembles",
    "gates",
    "linalg",
    "schmidt",
    "classify_pe",
    "eta_from_alpha",
    "interaction_content",
    "lambda_from_alpha",
    "locally_equivalent",
    "weyl_canonicalize",
    "channel_from_unitary",
    "env_channel_apply",
    "is_unistochastic",
    "EnsembleSpec",
    "sample_unitary",
    "build",
    "table1",
    "fourier_matrix",
    "partial_trace",
    "reshuffle",
    "tensor_product",
    "renyi_entropy",
    "schmidt_decomposition",
    "schmidt_spectrum",
]

__version__ = "0.1.0"
