"""Lattice scalar-field continuum limit: ground states at increasing
resolution, embedded through fixed probes, tested for convergence level by
level."""

import numpy as np

from ncalg.lattice import (
    EmbeddingScheme,
    LatticeScalarModel,
    Probe,
    continuum_experiment,
    embed,
    ground_two_point,
)
from ncalg.states import positivity_check

# The harmonic chain at N sites on volume L = 1; its ground state follows
# from diagonalizing the coupling matrix.
model = LatticeScalarModel.with_length(16, 1.0, 1.0)
tp = ground_two_point(model)
print("site variance <phi^2>   =", f"{tp.phi_phi[0, 0].real:.6f}")
print("Heisenberg <phi^2><pi^2> =",
      f"{(tp.phi_phi[0, 0] * tp.pi_pi[0, 0]).real:.4f}", ">= 0.25")

# Probes are piecewise-constant profiles fixed in physical coordinates;
# each contributes a smeared field/momentum generator pair.
amp = 1 / 128
probes = [
    Probe.flat(amp),
    Probe.staircase([amp * np.cos(2 * np.pi * (k + 0.5) / 16)
                     for k in range(16)]),
]
scheme = EmbeddingScheme(tuple(probes))

# Every embedded state is quasi-free and passes the positivity check.
state = embed(model, scheme)
report = positivity_check(state, block_dim=4, max_degree=2)
print("embedded state PSD:", report.positive,
      f"(min eig {report.min_eigenvalue:.1e})")

# Refining the grid with the probes held fixed produces a sequence of
# states on the same generators; the convergence test compares consecutive
# reduced states at every sub-algebra level.
result = continuum_experiment(
    length=1.0, mass=1.0, sizes=[8, 16, 32, 64, 128],
    probes=probes, dmax=4, eps=1e-6,
)
print("verdict:", result.verdict)
for level, deltas in sorted(result.deltas.items()):
    pretty = "  ".join(f"{d:.2e}" for d in deltas)
    print(f"  level {level}: {pretty}")

# The deltas halve with each doubling of the grid: first-order convergence
# of the midpoint-sampled smearing, uniformly over the levels.
print(result.to_csv_text())
