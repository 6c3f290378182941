"""Conjugation-compatible linear maps between coordinate test spaces and the
*-homomorphisms of the free algebra they induce.

A ``CHom`` is a linear map between finite coordinate blocks that intertwines
the conjugations.  A ``GeneratorMap`` sends each source generator to an
arbitrary element of a target algebra; applying it to a word multiplies the
generator images in order, which extends to the unique algebra homomorphism
on the free algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import algebra
from .algebra import C0, AlgebraElement, Conjugation
from .errors import ConjugationMismatchError, IndexOutOfBlockError

_COMPAT_TOL = 1e-12

#: singular values above this count towards the rank in density checks
RANK_TOL = 1e-10


@dataclass(frozen=True)
class TestSpace:
    """A finite coordinate block with its conjugation."""

    dim: int
    conjugation: Conjugation = C0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")


class CHom:
    """Linear map between test spaces commuting with the conjugations."""

    def __init__(self, source, target, matrix):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match "
                f"target dim {target.dim} x source dim {source.dim}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        self._check_compatibility()

    def _check_compatibility(self):
        # h(C_src e_i) must equal C_tgt(h e_i) on the source basis
        for i in range(self.source.dim):
            e = np.zeros(self.source.dim, dtype=complex)
            e[i] = 1.0
            lhs = self.matrix @ self.source.conjugation.apply_vector(e)
            rhs = self.target.conjugation.apply_vector(self.matrix @ e)
            if np.abs(lhs - rhs).max() > _COMPAT_TOL:
                raise ConjugationMismatchError(
                    f"map does not commute with the conjugations on basis vector {i + 1}"
                )

    def __call__(self, v):
        return self.matrix @ np.asarray(v, dtype=complex)

    def as_generator_map(self):
        """Degree-1 generator images of the map's matrix columns."""
        images = [
            algebra.from_vector(self.matrix[:, i]) for i in range(self.source.dim)
        ]
        return GeneratorMap(
            images,
            target_conjugation=self.target.conjugation,
            source_conjugation=self.source.conjugation,
        )

    @classmethod
    def identity(cls, space):
        return cls(space, space, np.eye(space.dim))

    def to_json_dict(self):
        return {
            "source_dim": self.source.dim,
            "target_dim": self.target.dim,
            "matrix": [
                [[z.real, z.imag] for z in row] for row in self.matrix
            ],
        }


@dataclass
class GeneratorMap:
    """Images of source generators inside a target algebra.

    ``apply`` extends the images to the induced algebra homomorphism: each
    word maps to the ordered product of generator images, linearly in the
    element.
    """

    images: list
    target_conjugation: Conjugation = C0
    source_conjugation: Conjugation = C0
    labels: list = field(default=None)

    @property
    def source_dim(self):
        return len(self.images)

    def apply(self, element):
        out = algebra.zero()
        for word, coeff in element.terms.items():
            factor = algebra.unit() * coeff
            for letter in word:
                if letter > self.source_dim:
                    raise IndexOutOfBlockError(
                        f"generator g{letter} outside source block of dim {self.source_dim}"
                    )
                factor = factor * self.images[letter - 1]
            out = out + factor
        return out

    def __call__(self, element):
        return self.apply(element)

    def check_star_compatibility(self, tol=1e-12):
        """Verify image(g_i)* equals the image of the conjugated generator."""
        for i in range(1, self.source_dim + 1):
            lhs = self.images[i - 1].adjoint(self.target_conjugation)
            rhs = self.apply(
                algebra.generator(i).adjoint(self.source_conjugation)
            )
            if not lhs.isclose(rhs, tol):
                return False
        return True

    def to_json_dict(self):
        return {
            "source_dim": self.source_dim,
            "images": [algebra.to_text(im) for im in self.images],
            "labels": self.labels,
        }


def project(value, n):
    """Truncate to the first ``n`` coordinates / generators.

    On a coordinate vector, coordinates beyond ``n`` are zeroed (the length
    is preserved).  On an algebra element, every word containing a generator
    index above ``n`` is dropped.
    """
    if isinstance(value, AlgebraElement):
        return value.project(n)
    v = np.array(value, dtype=complex)
    v[n:] = 0.0
    return v


def induce_star_hom(h, element):
    """Apply the *-homomorphism induced by a CHom or GeneratorMap."""
    if isinstance(h, CHom):
        h = h.as_generator_map()
    return h.apply(element)


def combine_qmaps(maps):
    """Direct-sum combination of generator maps over a common target.

    Generator blocks are concatenated in order; the combined source
    conjugation is block diagonal.
    """
    if not maps:
        raise ValueError("need at least one generator map")
    target = maps[0].target_conjugation
    for m in maps[1:]:
        if m.target_conjugation != target:
            raise ConjugationMismatchError(
                "generator maps target different conjugations"
            )
    images = [im for m in maps for im in m.images]
    labels = None
    if all(m.labels is not None for m in maps):
        labels = [lb for m in maps for lb in m.labels]
    src_conjs = [m.source_conjugation for m in maps]
    if all(c.kind == "coordinate" for c in src_conjs):
        source = C0
    else:
        blocks = []
        for m, c in zip(maps, src_conjs):
            d = m.source_dim
            blocks.append(np.eye(d) if c.kind == "coordinate" else c.matrix)
        total = sum(b.shape[0] for b in blocks)
        K = np.zeros((total, total), dtype=complex)
        off = 0
        for b in blocks:
            K[off : off + b.shape[0], off : off + b.shape[0]] = b
            off += b.shape[0]
        source = Conjugation("matrix", K)
    return GeneratorMap(
        images,
        target_conjugation=target,
        source_conjugation=source,
        labels=labels,
    )


@dataclass(frozen=True)
class CoreReport:
    dense_image: bool
    surjective: bool
    rank: int


def check_core(h):
    """Decide density/surjectivity of a CHom between finite blocks.

    In finite dimensions a dense image is the same as surjectivity, i.e.
    full row rank; the rank is read off the singular values.
    """
    s = np.linalg.svd(h.matrix, compute_uv=False)
    rank = int((s > RANK_TOL).sum())
    onto = rank == h.target.dim
    return CoreReport(dense_image=onto, surjective=onto, rank=rank)
