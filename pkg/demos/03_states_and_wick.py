"""States as moment evaluators: quasi-free evaluation by Wick pairings,
brute-force Fock oracles, and the moment-matrix positivity check."""

import numpy as np

from ncalg import algebra
from ncalg.algebra import AlgebraElement, Conjugation
from ncalg.states import (
    FockOracle,
    MomentTableState,
    QuasiFreeState,
    positivity_check,
    two_point_from_state,
)

# A one-mode bosonic vacuum as an explicit truncated-matrix oracle.
vac = FockOracle.ladder_vacuum(1, "boson")
print("<a a*>       =", vac.moment((1, 2)))
print("<a a a* a*>  =", vac.moment((1, 1, 2, 2)))

# Its two-point matrix determines a quasi-free state; Wick's theorem
# reproduces every higher moment from pairings.
W = two_point_from_state(vac, 2)
qf = QuasiFreeState(W, "boson")
for word in [(1, 2), (2, 1), (1, 1, 2, 2), (1, 2, 1, 2)]:
    print(f"wick{word} = {qf.moment(word):.6f}  fock = {vac.moment(word):.6f}")

# The field Phi = (a* + a)/sqrt(2) has the textbook Gaussian moments.
phi = (algebra.generator(1) + algebra.generator(2)) / np.sqrt(2)
print("<Phi^2> =", vac.evaluate(phi * phi))
print("<Phi^4> =", vac.evaluate(phi * phi * phi * phi), "(= 3/4)")

# Fermionic oracles are exact (dimension 2^modes); odd anticommutators
# show up as signed pairings.
fvac = FockOracle.ladder_vacuum(2, "fermion")
Wf = two_point_from_state(fvac, 4)
qff = QuasiFreeState(Wf, "fermion")
word = (1, 2, 3, 4)
print("fermion wick vs fock:", qff.moment(word), fvac.moment(word))

# Positivity: the moment matrix of any genuine state is PSD; a fabricated
# table with a negative variance is rejected.
swap = Conjugation("matrix", [[0, 1], [1, 0]])
report = positivity_check(qf, block_dim=2, max_degree=2, conjugation=swap)
print("vacuum moment matrix: min eig =", f"{report.min_eigenvalue:.2e}")
bad = MomentTableState({(1, 1): -1.0}, degree_bound=2, block_dim=1)
print("negative table positive?", positivity_check(bad, 1, 1).positive)
