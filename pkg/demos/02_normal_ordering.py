"""Normal ordering against CCR/CAR relations: the rewrite engine, its
confluence, and vacuum expectations read off the normal form."""

import numpy as np

from ncalg.algebra import AlgebraElement
from ncalg.rewrite import (
    catalog_phi6,
    ladder_relations,
    ladder_spec,
    normal_order,
    normal_order_stats,
    vacuum_expectation,
)

# One bosonic mode: g1 = a, g2 = a*, [a, a*] = 1.
rel = ladder_relations(1, "boson")
spec = ladder_spec(1)

# a a* = a* a + 1 once sorted with creators first.
e = AlgebraElement({(1, 2): 1.0})
print("a a*  ->", normal_order(e, rel, order=spec.vacuum_order()))

# The number-operator moment <a a a* a*> counts the two pairings.
e4 = AlgebraElement({(1, 1, 2, 2): 1.0})
print("<a a a* a*> =", vacuum_expectation(e4, rel, spec))

# Leftmost and rightmost rewriting reach the same normal form, and the
# exchange count stays within the bubble-sort bound |w|^2.
rng = np.random.default_rng(0)
word = tuple(rng.integers(1, 3, size=8))
left, steps = normal_order_stats(AlgebraElement({word: 1.0}), rel)
right = normal_order(AlgebraElement({word: 1.0}), rel, strategy="rightmost")
print("confluent:", left.isclose(right), "| steps", steps, "<=", len(word) ** 2)

# The mixed catalog: m symmetric pairs (q, p) with [q, p] = i and n
# antisymmetric pairs (qt, pt) with {qt, pt} = i.
gmap, rel6 = catalog_phi6(1, 1)
print("generators:", gmap.labels)
comm = AlgebraElement({(1, 2): 1.0, (2, 1): -1.0})  # q p - p q
print("q p - p q ->", normal_order(comm, rel6))
anti = AlgebraElement({(3, 4): 1.0, (4, 3): 1.0})  # qt pt + pt qt
print("qt pt + pt qt ->", normal_order(anti, rel6))

# Fermionic squares vanish: qt^2 rewrites to zero.
print("qt qt ->", normal_order(AlgebraElement({(3, 3): 1.0}), rel6))
