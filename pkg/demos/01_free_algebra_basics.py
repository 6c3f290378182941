"""Tour of the free *-algebra: words, products, the involution, and the
canonical text form that the parser round-trips."""

import numpy as np

from ncalg import algebra
from ncalg.algebra import Conjugation
from ncalg.expr import parse_expression

# Elements are linear combinations of words in generators g1, g2, ...
g1, g2, g3 = (algebra.generator(i) for i in (1, 2, 3))

a = g1 * g2 + g3 * 2j
print("a          =", a)
print("a * a      =", a * a)

# The product concatenates words, so the algebra is genuinely noncommutative.
print("g1*g2      =", g1 * g2)
print("g2*g1      =", g2 * g1)

# The default involution reverses words and conjugates coefficients.
print("a*         =", a.adjoint())
print("(a*)*      =", a.adjoint().adjoint())

# A matrix conjugation can permute generators, e.g. a ladder pair where
# g1 = annihilator and g2 = its creator partner.
swap = Conjugation("matrix", [[0, 1], [1, 0]])
print("g1* (swap) =", g1.adjoint(swap))

# Truncation to the first n generators is a *-homomorphism.
print("P_2(a)     =", a.project(2))

# The canonical text form is a real interchange format: printing and
# parsing are inverse to each other.
text = algebra.to_text(a)
print("text       =", text)
print("round trip =", parse_expression(text) == a)

# Degree-1 elements embed coordinate vectors; the embedding is linear.
v = np.array([0.5, 0.0, -1.5])
print("embed(v)   =", algebra.from_vector(v))
