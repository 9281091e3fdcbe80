"""One-qubit channels from two-qubit gates: damping vectors and witnesses.

Run: python demos/03_unistochastic_maps.py
"""

import numpy as np

from unigate import gates
from unigate.channels import (
    bloch_map,
    channel_from_unitary,
    env_channel_apply,
    is_cp,
    is_unistochastic,
    pauli_channel,
)
from unigate.canonical import interaction_content

np.set_printoptions(precision=4, suppress=True)

print("=== Coupling to a maximally mixed environment ===")
rho = np.array([[0.85, 0.3 - 0.1j], [0.3 + 0.1j, 0.15]])
for name in ("cnot", "sqrt-cnot", "swap"):
    out = env_channel_apply(gates.build(name), rho, (2, 2))
    print(f"{name:10s} rho' diag = {np.diag(out).real}  off-diag = {out[0, 1]:.4f}")
print("(SWAP erases the state entirely: the maximally depolarizing channel)")

print("\n=== Three equivalent channel representations ===")
U = gates.sqrt_cnot()
ch = channel_from_unitary(U, (2, 2))
print("Kraus operators:", len(ch.kraus), " Choi eigenvalues:", np.linalg.eigvalsh(ch.choi))
print("Choi spectrum = Lambda/2 of the gate; its entropy equals S(U).")
t, eta = bloch_map(ch)
print("Bloch matrix t:\n", t)
print("damping vector eta =", eta, " (Bloch ball -> ellipsoid semi-axes)")

print("\n=== Which Pauli channels are unistochastic? ===")
for w in ([1, 0, 0, 0], [0.25, 0.25, 0.25, 0.25], [0, 1 / 3, 1 / 3, 1 / 3]):
    ch = pauli_channel(w)
    cp = is_cp(ch.eta)
    verdict = is_unistochastic(ch.eta) if cp else None
    print(f"weights {np.array(w)}: eta = {ch.eta}  CP = {cp}  unistochastic = "
          f"{verdict.verdict if verdict else 'n/a'}")
print("(the symmetric Pauli channel sits at a face center of the CP")
print(" tetrahedron, as far from the unistochastic set as possible)")

print("\n=== Witness gates ===")
verdict = is_unistochastic(np.zeros(3))
alpha = interaction_content(verdict.witness)[0].alpha
print("eta = (0,0,0) is realized by a gate with alpha/(pi/8) =", alpha / (np.pi / 8))
print("i.e. the DCNOT local class; its channel maps every state to I/2.")

print("\n=== Coarse census of the CP tetrahedron ===")
g = np.linspace(-1, 1, 13)
cp_count = uni_count = 0
for e1 in g:
    for e2 in g:
        for e3 in g:
            eta = np.array([e1, e2, e3])
            if not is_cp(eta):
                continue
            cp_count += 1
            if is_unistochastic(eta).verdict:
                uni_count += 1
print(f"grid points inside the CP tetrahedron: {cp_count}; unistochastic: {uni_count}")
