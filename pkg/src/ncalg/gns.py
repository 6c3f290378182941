"""Truncated GNS construction.

The pre-Hilbert space is spanned by equivalence classes of words of length
at most an inner degree d; inner products come from the state via
<[a], [b]> = omega(a* b).  Null directions of the Gram matrix are the
zero-norm classes and are quotiented away; the remaining eigenvectors,
scaled to unit Gram norm, form the orthonormal basis in which operators
are represented.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import algebra
from .algebra import C0, AlgebraElement

#: relative eigenvalue threshold assigning near-null directions to the kernel
KERNEL_TOL = 1e-10


def build_gram(state, block_dim, inner_degree, conjugation=C0):
    """Gram matrix G_IJ = omega(w_I* w_J) over the canonical word basis.

    Returns ``(words, G)`` with G hermitized as (G + G*)/2.
    """
    words = algebra.words_up_to(block_dim, inner_degree)
    elems = [AlgebraElement({w: 1.0}) for w in words]
    adjoints = [e.adjoint(conjugation) for e in elems]
    dim = len(words)
    G = np.empty((dim, dim), dtype=complex)
    for I in range(dim):
        for J in range(dim):
            G[I, J] = state.evaluate(adjoints[I] * elems[J])
    return words, (G + G.conj().T) / 2.0


def quotient_and_orthonormalize(gram, tol=KERNEL_TOL):
    """Split the Gram matrix into kernel and orthonormalized complement.

    Eigenvectors with eigenvalue <= tol * max_eigenvalue span the kernel
    (zero-norm classes); the rest are scaled to unit Gram norm.  Returns
    ``(kernel_rank, ortho_basis)`` with ortho_basis columns satisfying
    B* G B = 1.
    """
    gram = np.asarray(gram)
    eigvals, eigvecs = np.linalg.eigh(gram)
    cutoff = tol * max(eigvals.max(), 0.0)
    keep = eigvals > cutoff
    kernel_rank = int((~keep).sum())
    ortho = eigvecs[:, keep] / np.sqrt(eigvals[keep])
    return kernel_rank, ortho


@dataclass
class GNSRep:
    """Truncated GNS data: basis words, Gram matrix, quotient, and the
    orthonormal basis used for operator matrix elements."""

    state: object
    conjugation: object
    block_dim: int
    inner_degree: int
    basis_words: list
    gram: np.ndarray
    kernel_rank: int
    ortho_basis: np.ndarray
    kernel_basis: np.ndarray = field(default=None, repr=False)

    @property
    def dim(self):
        return self.ortho_basis.shape[1]

    @property
    def vacuum_vector(self):
        """Coordinates of the class of 1 in the orthonormal basis."""
        e = np.zeros(len(self.basis_words), dtype=complex)
        e[self.basis_words.index(())] = 1.0
        return self.ortho_basis.conj().T @ self.gram @ e

    def represent(self, op):
        """Matrix of ``op`` in the orthonormal basis:
        M_kl = omega(w_k* op w_l) with w_k the orthonormal basis vectors.

        The matrix is the compression of the true GNS action onto the
        truncated space; columns where op keeps the basis class inside the
        inner window are exact (see :meth:`exact_columns`).
        """
        words = self.basis_words
        elems = [AlgebraElement({w: 1.0}) for w in words]
        adjoints = [e.adjoint(self.conjugation) for e in elems]
        dim = len(words)
        Gop = np.empty((dim, dim), dtype=complex)
        for I in range(dim):
            left = adjoints[I] * op
            for J in range(dim):
                Gop[I, J] = self.state.evaluate(left * elems[J])
        B = self.ortho_basis
        return B.conj().T @ Gop @ B

    def exact_columns(self, op, support_tol=1e-12):
        """Boolean mask over orthonormal basis columns: True where op maps
        the column's class to an element still inside the inner window, so
        the represented column is exact rather than edge-truncated."""
        deg = op.degree
        lengths = np.array([len(w) for w in self.basis_words])
        out = np.empty(self.dim, dtype=bool)
        for k in range(self.dim):
            support = np.abs(self.ortho_basis[:, k]) > support_tol
            out[k] = (lengths[support].max(initial=0) + deg) <= self.inner_degree
        return out

    def vacuum_expectation(self, op):
        """<Omega, pi(op) Omega> computed in the truncated representation."""
        v = self.vacuum_vector
        return complex(v.conj() @ self.represent(op) @ v)

    def to_json_dict(self):
        def cmat(M):
            return [[[z.real, z.imag] for z in row] for row in np.asarray(M)]

        return {
            "block_dim": self.block_dim,
            "inner_degree": self.inner_degree,
            "basis_words": [list(w) for w in self.basis_words],
            "gram": cmat(self.gram),
            "kernel_rank": self.kernel_rank,
            "ortho_basis": cmat(self.ortho_basis),
            "vacuum_vector": [[z.real, z.imag] for z in self.vacuum_vector],
        }


def build_gns(state, block_dim, inner_degree, conjugation=C0, tol=KERNEL_TOL):
    """Assemble the truncated GNS representation for a state."""
    words, gram = build_gram(state, block_dim, inner_degree, conjugation)
    kernel_rank, ortho = quotient_and_orthonormalize(gram, tol)
    eigvals, eigvecs = np.linalg.eigh(gram)
    cutoff = tol * max(eigvals.max(), 0.0)
    kernel = eigvecs[:, eigvals <= cutoff]
    return GNSRep(
        state=state,
        conjugation=conjugation,
        block_dim=block_dim,
        inner_degree=inner_degree,
        basis_words=words,
        gram=gram,
        kernel_rank=kernel_rank,
        ortho_basis=ortho,
        kernel_basis=kernel,
    )
