"""Free noncommutative *-algebra over a countable generator family.

Elements are finite complex-linear combinations of words in the generators
``g1, g2, ...``.  The product is word concatenation, extended bilinearly.
The involution reverses words, conjugates coefficients, and pushes each
letter through an (antilinear) conjugation acting on the generator block.
"""

from __future__ import annotations

import numpy as np

from .errors import IndexOutOfBlockError

#: coefficients with modulus at or below this are dropped on canonicalization
PRUNE_TOL = 1e-15

#: tolerance for checking that a matrix conjugation is involutive
_INVOLUTIVE_TOL = 1e-12

Word = tuple  # tuple of positive ints; the empty tuple is the unit word


def _canonical(terms):
    return {w: complex(c) for w, c in terms.items() if abs(c) > PRUNE_TOL}


def word_key(word):
    """Canonical term order: by length first, then lexicographically."""
    return (len(word), word)


class Conjugation:
    """Antilinear involution on the generator block.

    The ``coordinate`` kind fixes every basis generator (coordinates are
    conjugated entrywise).  The ``matrix`` kind acts on a finite generator
    block as v -> K conj(v); K must satisfy K conj(K) = 1.
    """

    __slots__ = ("kind", "matrix")

    def __init__(self, kind, matrix=None):
        if kind not in ("coordinate", "matrix"):
            raise ValueError(f"unknown conjugation kind {kind!r}")
        if kind == "matrix":
            matrix = np.asarray(matrix, dtype=complex)
            if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
                raise ValueError("conjugation matrix must be square")
            err = np.abs(matrix @ matrix.conj() - np.eye(matrix.shape[0])).max()
            if err > _INVOLUTIVE_TOL:
                raise ValueError(
                    f"conjugation matrix is not involutive (K conj(K) != 1, err={err:.3e})"
                )
        self.kind = kind
        self.matrix = matrix

    @property
    def dim(self):
        return None if self.kind == "coordinate" else self.matrix.shape[0]

    def apply_vector(self, v):
        """Apply the conjugation to a coordinate vector."""
        v = np.asarray(v, dtype=complex)
        if self.kind == "coordinate":
            return v.conj()
        if v.shape[0] != self.dim:
            raise IndexOutOfBlockError(
                f"vector of length {v.shape[0]} outside conjugation block of dim {self.dim}"
            )
        return self.matrix @ v.conj()

    def generator_image(self, index):
        """Image of generator ``g_index`` as a degree-1 element."""
        if self.kind == "coordinate":
            return generator(index)
        if not 1 <= index <= self.dim:
            raise IndexOutOfBlockError(
                f"generator g{index} outside conjugation block of dim {self.dim}"
            )
        col = self.matrix[:, index - 1]
        return AlgebraElement({(j + 1,): col[j] for j in range(self.dim)})

    def __eq__(self, other):
        if not isinstance(other, Conjugation):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "coordinate":
            return True
        return self.matrix.shape == other.matrix.shape and np.array_equal(
            self.matrix, other.matrix
        )

    def __repr__(self):
        if self.kind == "coordinate":
            return "Conjugation.COORDINATE"
        return f"Conjugation(matrix, dim={self.dim})"


Conjugation.COORDINATE = Conjugation("coordinate")

#: the conjugation fixing every basis generator (entrywise conjugation)
C0 = Conjugation.COORDINATE


class AlgebraElement:
    """Finite complex-linear combination of generator words.

    Values are immutable after construction; all arithmetic returns new
    canonicalized instances (no duplicate words, no stored coefficients of
    modulus <= 1e-15).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = _canonical(terms or {})

    @property
    def terms(self):
        """Mapping word -> coefficient (do not mutate)."""
        return self._terms

    @property
    def degree(self):
        """Maximal word length; 0 for the zero element."""
        return max((len(w) for w in self._terms), default=0)

    def is_zero(self):
        return not self._terms

    def coefficient(self, word):
        return self._terms.get(tuple(word), 0j)

    def generators(self):
        """Set of generator indices appearing in any word."""
        return {i for w in self._terms for i in w}

    def sorted_terms(self):
        """Terms in the canonical (length, letters) order."""
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    # -- vector-space and ring structure -------------------------------------

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0j) + c
        return AlgebraElement(out)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return AlgebraElement({w: -c for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            out = {}
            for wa, ca in self._terms.items():
                for wb, cb in other._terms.items():
                    w = wa + wb
                    out[w] = out.get(w, 0j) + ca * cb
            return AlgebraElement(out)
        if isinstance(other, (int, float, complex)):
            return AlgebraElement({w: c * other for w, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, float, complex)):
            return AlgebraElement({w: c * scalar for w, c in self._terms.items()})
        return NotImplemented

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def adjoint(self, conjugation=C0):
        """The involution a -> a*: reverse words, conjugate coefficients,
        map each letter through the conjugation's action on generators."""
        if conjugation.kind == "coordinate":
            return AlgebraElement(
                {w[::-1]: c.conjugate() for w, c in self._terms.items()}
            )
        out = zero()
        for w, c in self._terms.items():
            factor = unit() * c.conjugate()
            for letter in w[::-1]:
                factor = factor * conjugation.generator_image(letter)
            out = out + factor
        return out

    def project(self, n):
        """Drop every word containing a generator index above ``n``."""
        return AlgebraElement(
            {w: c for w, c in self._terms.items() if all(i <= n for i in w)}
        )

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def isclose(self, other, tol=1e-12):
        """Coefficient-wise comparison within ``tol``."""
        words = set(self._terms) | set(other._terms)
        return all(
            abs(self._terms.get(w, 0j) - other._terms.get(w, 0j)) <= tol
            for w in words
        )

    def norm1(self):
        """Sum of coefficient moduli (used as a cheap size gauge)."""
        return sum(abs(c) for c in self._terms.values())

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"AlgebraElement({to_text(self)!r})"


def zero():
    return AlgebraElement()


def unit():
    return AlgebraElement({(): 1.0})


def generator(index):
    """The degree-1 element ``g_index`` (1-based)."""
    index = int(index)
    if index < 1:
        raise ValueError(f"generator index must be >= 1, got {index}")
    return AlgebraElement({(index,): 1.0})


def from_vector(v):
    """Degree-1 embedding of a finite coordinate vector: sum_n v[n] g_{n+1}.

    This is the universal degree-1 map from the coordinate test space into
    the free algebra; it is complex linear.
    """
    v = np.asarray(v, dtype=complex)
    return AlgebraElement({(n + 1,): v[n] for n in range(v.shape[0])})


def words_up_to(block_dim, max_degree):
    """All words over generators ``1..block_dim`` of length <= max_degree,
    in canonical (length, letters) order.  Includes the empty word."""
    out = [()]
    level = [()]
    for _ in range(max_degree):
        level = [w + (i,) for w in level for i in range(1, block_dim + 1)]
        out.extend(level)
    return out


# -- canonical text form ------------------------------------------------------

def format_scalar(z):
    """Canonical complex literal, e.g. ``(1+0i)`` or ``(0-2.5i)``."""
    z = complex(z)
    re = z.real if z.real != 0.0 else 0.0  # normalize -0.0
    im = z.imag if z.imag != 0.0 else 0.0
    return "({0}{1}i)".format(format(re, ".17g"), format(im, "+.17g"))


def to_text(element):
    """Canonical text form: terms joined by ``+``, each ``coeff*g<i>*...``;
    the unit word prints as ``1``."""
    if element.is_zero():
        return "(0+0i)*1"
    parts = []
    for w, c in element.sorted_terms():
        body = "*".join(f"g{i}" for i in w) if w else "1"
        parts.append(f"{format_scalar(c)}*{body}")
    return " + ".join(parts)
