"""Truncated GNS construction: Gram matrix over a word window, quotient by
null vectors, and operator matrices in the orthonormalized basis."""

import numpy as np

from ncalg.algebra import AlgebraElement, Conjugation
from ncalg.gns import build_gns
from ncalg.states import FockOracle

swap = Conjugation("matrix", [[0, 1], [1, 0]])  # ladder involution g1* = g2

# Bosonic vacuum, inner window of words up to length 3: the 15 basis words
# collapse to the 4 occupation classes |0>, |1>, |2>, |3>.
state = FockOracle.ladder_vacuum(1, "boson")
rep = build_gns(state, block_dim=2, inner_degree=3, conjugation=swap)
print("basis words:", len(rep.basis_words))
print("kernel rank:", rep.kernel_rank, "-> space dim", rep.dim)

# The orthonormal basis diagonalizes the Gram matrix: B* G B = 1.
G, B = rep.gram, rep.ortho_basis
print("B* G B == 1:", np.abs(B.conj().T @ G @ B - np.eye(rep.dim)).max() < 1e-10)

# The vacuum class reproduces the state: <Omega, pi(op) Omega> = omega(op).
op = AlgebraElement({(1, 2): 1.0, (): 0.5})
print("vacuum expectation:", rep.vacuum_expectation(op))
print("state evaluation:  ", state.evaluate(op))

# The involution is represented by the matrix adjoint.
M = rep.represent(op)
Mstar = rep.represent(op.adjoint(swap))
print("pi(op*) == pi(op)^dag:", np.abs(Mstar - M.conj().T).max() < 1e-10)

# Columns whose classes stay inside the window under op are exact; the
# rest are edge-truncated compressions.
print("exact columns for a*:", rep.exact_columns(AlgebraElement({(2,): 1.0})))

# Fermionic vacuum: the nilpotent word c* c* is a genuine null vector, so
# it lands in the kernel and the GNS space is two dimensional.
fstate = FockOracle.ladder_vacuum(1, "fermion")
frep = build_gns(fstate, block_dim=2, inner_degree=3, conjugation=swap)
idx = frep.basis_words.index((2, 2))
print("fermion dim:", frep.dim)
print("||G e_{c*c*}|| =", np.abs(frep.gram[:, idx]).max())
