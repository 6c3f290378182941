"""States over the free algebra: moment tables, quasi-free evaluation via
pairings, brute-force truncated-Fock oracles, moment-matrix positivity, and
restriction to sub-algebras.

Every state is a normalized linear moment evaluator; ``evaluate`` extends
the per-word moments linearly over an element's terms.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import C0, AlgebraElement
from .errors import (
    DegreeBoundError,
    GeneratorBlockError,
    InvalidRelationError,
)

#: default occupation cutoff for bosonic Fock oracles
DEFAULT_BOSON_CUTOFF = 12

#: eigenvalue slack for positive-semidefiniteness decisions
PSD_TOL = 1e-9


def perfect_matchings(positions):
    """Yield all perfect matchings of ``positions`` as lists of index pairs,
    each pair in original order.  A matching of 2k positions is produced
    ``(2k-1)!!`` times total."""
    if not positions:
        yield []
        return
    first = positions[0]
    for t in range(1, len(positions)):
        rest = positions[1:t] + positions[t + 1 :]
        for sub in perfect_matchings(rest):
            yield [(first, positions[t])] + sub


def _matching_sign(pairs):
    # sign of the permutation (p1 q1 p2 q2 ...) of the flattened positions
    flat = [x for pair in pairs for x in pair]
    order = {p: r for r, p in enumerate(sorted(flat))}
    perm = [order[x] for x in flat]
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def wick_evaluate(two_point, word, statistics):
    """Quasi-free moment of a word from its two-point matrix.

    Sums over all perfect matchings of the positions; each pair contributes
    the two-point entry taken in original position order.  Fermionic
    matchings are weighted by the sign of the matching as a permutation of
    positions.  Odd-length words vanish.
    """
    n = len(word)
    if n == 0:
        return 1.0 + 0j
    if n % 2:
        return 0j
    W = np.asarray(two_point)
    total = 0j
    for pairs in perfect_matchings(tuple(range(n))):
        prod = 1.0 + 0j
        for p, q in pairs:
            prod *= W[word[p] - 1, word[q] - 1]
        if statistics == "fermion":
            prod *= _matching_sign(pairs)
        elif statistics != "boson":
            raise ValueError(f"unknown statistics {statistics!r}")
        total += prod
    return total


class State:
    """Base moment evaluator.  Subclasses implement ``moment(word)``."""

    kind = "abstract"
    block_dim = None
    degree_bound = None

    def moment(self, word):
        raise NotImplementedError

    def evaluate(self, element):
        """Linear extension of the word moments."""
        if isinstance(element, AlgebraElement):
            items = element.terms.items()
        else:
            items = {tuple(element): 1.0}.items()
        total = 0j
        for word, coeff in items:
            self._check_word(word)
            total += coeff * self.moment(word)
        return total

    def _check_word(self, word):
        if self.block_dim is not None and any(i > self.block_dim for i in word):
            raise GeneratorBlockError(
                f"word {word} uses generators beyond block of dim {self.block_dim}"
            )
        if self.degree_bound is not None and len(word) > self.degree_bound:
            raise DegreeBoundError(
                f"word of length {len(word)} exceeds degree bound {self.degree_bound}"
            )

    def restrict(self, n):
        """The reduced state on the sub-algebra of the first ``n`` generators:
        it evaluates exactly as this state there and rejects anything else."""
        if n < 1:
            raise ValueError("restriction level must be >= 1")
        return RestrictedState(self, n)


class RestrictedState(State):
    kind = "restricted"

    def __init__(self, base, level):
        # restrict(restrict(s, m), n) collapses to restrict(s, min(m, n))
        while isinstance(base, RestrictedState):
            level = min(level, base.block_dim)
            base = base.base
        self.base = base
        self.block_dim = (
            level if base.block_dim is None else min(level, base.block_dim)
        )
        self.degree_bound = base.degree_bound

    def moment(self, word):
        return self.base.moment(word)


class MomentTableState(State):
    """State given by an explicit table of word moments up to a degree bound.

    Stored moments must be hermitian (the reversed word carries the
    conjugate value) and the unit word maps to 1.  Words inside the bound
    but absent from the table evaluate to zero.
    """

    kind = "moment-table"

    def __init__(self, table, degree_bound, block_dim=None, check_tol=1e-10):
        table = {tuple(w): complex(c) for w, c in table.items()}
        table.setdefault((), 1.0 + 0j)
        if abs(table[()] - 1.0) > check_tol:
            raise ValueError("moment table is not normalized: table[()] != 1")
        for w, c in table.items():
            if len(w) > degree_bound:
                raise DegreeBoundError(
                    f"stored word {w} exceeds degree bound {degree_bound}"
                )
            rev = w[::-1]
            if rev in table and abs(table[rev] - c.conjugate()) > check_tol:
                raise ValueError(f"moment table not hermitian at word {w}")
        self._table = table
        self.degree_bound = degree_bound
        self.block_dim = block_dim

    def moment(self, word):
        return self._table.get(tuple(word), 0j)


class QuasiFreeState(State):
    """Quasi-free state determined by its two-point matrix W_ij = omega(g_i g_j).

    W need not be entrywise hermitian: for ladder generator blocks the
    involution permutes generators, so hermiticity of the state shows up as
    a relation between W entries at swapped indices instead.
    """

    def __init__(self, two_point, statistics):
        W = np.asarray(two_point, dtype=complex)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValueError("two-point matrix must be square")
        if statistics not in ("boson", "fermion"):
            raise ValueError(f"unknown statistics {statistics!r}")
        self.two_point = W
        self.statistics = statistics
        self.block_dim = W.shape[0]
        self.kind = f"quasi-free-{statistics}"

    def moment(self, word):
        return wick_evaluate(self.two_point, word, self.statistics)


class FockOracle(State):
    """Brute-force vacuum moments from explicit operator matrices.

    Generator ``i`` acts by ``matrices[i-1]`` on a finite-dimensional space
    with a distinguished vacuum vector; a word's moment is the
    vacuum-vacuum entry of the ordered operator product.
    """

    kind = "fock-oracle"

    def __init__(self, matrices, vacuum, statistics, modes=None, cutoff=None,
                 ladder=None, overflow_mask=None):
        self.matrices = [np.asarray(M, dtype=complex) for M in matrices]
        self.vacuum = np.asarray(vacuum, dtype=complex)
        self.statistics = statistics
        self.modes = modes
        self.cutoff = cutoff
        self.ladder = ladder
        self._overflow_mask = overflow_mask
        self.block_dim = len(self.matrices)

    @classmethod
    def ladder_vacuum(cls, modes, statistics, cutoff=DEFAULT_BOSON_CUTOFF):
        """Vacuum oracle over raw ladder generators: index ``2k-1``
        annihilates mode k, index ``2k`` creates it.

        Bosonic modes are truncated at occupation ``cutoff`` (with overflow
        detection); fermionic spaces are exact with dimension ``2**modes``.
        """
        from .rewrite import ladder_spec  # local import avoids a cycle

        if statistics == "boson":
            if cutoff < 1:
                raise ValueError("boson cutoff must be >= 1")
            d = cutoff + 1
            a = np.diag(np.sqrt(np.arange(1, d)), k=1)
            per_mode = [(a, a.conj().T)]
            dims = [d] * modes
            annih, creat = a, a.conj().T
            mats = []
            for k in range(modes):
                ops = [np.eye(d)] * modes
                ops[k] = annih
                mats.append(_kron_chain(ops))
                ops[k] = creat
                mats.append(_kron_chain(ops))
            total = d**modes
            occ = _boson_occupations(modes, d)
            overflow = (occ == cutoff).any(axis=1)
        elif statistics == "fermion":
            lower = np.array([[0.0, 1.0], [0.0, 0.0]])
            sign = np.diag([1.0, -1.0])
            mats = []
            for k in range(modes):
                ops = [sign] * k + [lower] + [np.eye(2)] * (modes - k - 1)
                c = _kron_chain(ops)
                mats.append(c)
                mats.append(c.conj().T)
            total = 2**modes
            overflow = None
        else:
            raise ValueError(f"unknown statistics {statistics!r}")
        vac = np.zeros(total)
        vac[0] = 1.0
        return cls(
            mats,
            vac,
            statistics,
            modes=modes,
            cutoff=cutoff if statistics == "boson" else None,
            ladder=ladder_spec(modes),
            overflow_mask=overflow,
        )

    def moment(self, word):
        v = self.vacuum
        for letter in reversed(word):
            v = self.matrices[letter - 1] @ v
            if self._overflow_mask is not None:
                weight = np.abs(v[self._overflow_mask]).max(initial=0.0)
                if weight > 1e-13:
                    warnings.warn(
                        "bosonic occupation reached the truncation cutoff; "
                        "moment may be truncated",
                        RuntimeWarning,
                        stacklevel=2,
                    )
        return complex(self.vacuum.conj() @ v)


def _kron_chain(ops):
    out = ops[0]
    for M in ops[1:]:
        out = np.kron(out, M)
    return out


def _boson_occupations(modes, d):
    # basis index -> per-mode occupation, matching the kron ordering above
    idx = np.arange(d**modes)
    occ = np.empty((d**modes, modes), dtype=int)
    for k in reversed(range(modes)):
        occ[:, k] = idx % d
        idx //= d
    return occ


def fock_moment(oracle, element):
    """Vacuum moment of an element under a Fock oracle."""
    return oracle.evaluate(element)


def phi6_fock_oracle(m, n, cutoff=DEFAULT_BOSON_CUTOFF):
    """Explicit-matrix realization of the mixed CCR/CAR catalog.

    Symmetric pairs are built from bosonic ladder matrices as
    q = (a + a*)/sqrt(2), p = i(a* - a)/sqrt(2) (so [q, p] = i);
    antisymmetric pairs use qt = c, pt = i c* (so {qt, pt} = i with all
    squares zero).  Generator order matches :func:`ncalg.rewrite.catalog_phi6`.
    """
    if m + n < 1:
        raise ValueError("need m + n >= 1")
    dims = []
    bos_ops = []
    if m > 0:
        d = cutoff + 1
        a = np.diag(np.sqrt(np.arange(1, d)), k=1)
        dims += [d] * m
        bos_ops = [a] * m
    fer_ops = []
    if n > 0:
        lower = np.array([[0.0, 1.0], [0.0, 0.0]])
        dims += [2] * n
        fer_ops = [lower] * n
    sign = np.diag([1.0, -1.0])

    def site_op(site, M):
        ops = []
        for s in range(m + n):
            if s == site:
                ops.append(M)
            elif s > site and site >= m and s >= m:
                # Jordan-Wigner string sits to the right in this ordering
                ops.append(np.eye(dims[s]))
            else:
                ops.append(np.eye(dims[s]))
        return _kron_chain(ops)

    # fermionic lowering with Jordan-Wigner signs over the fermionic block
    def fermion_lower(site):
        ops = [np.eye(dims[s]) for s in range(m + n)]
        for s in range(m, site):
            ops[s] = sign
        ops[site] = np.array([[0.0, 1.0], [0.0, 0.0]])
        return _kron_chain(ops)

    mats = [None] * (2 * m + 2 * n)
    for k in range(m):
        A = site_op(k, bos_ops[k])
        Ad = A.conj().T
        mats[k] = (A + Ad) / np.sqrt(2.0)  # q_k
        mats[m + k] = 1j * (Ad - A) / np.sqrt(2.0)  # p_k
    for k in range(n):
        Cm = fermion_lower(m + k)
        mats[2 * m + k] = Cm  # qt_k
        mats[2 * m + n + k] = 1j * Cm.conj().T  # pt_k

    total = int(np.prod(dims))
    vac = np.zeros(total)
    vac[0] = 1.0
    occ_mask = None
    if m > 0:
        d = cutoff + 1
        occ = _boson_occupations(m, d)
        top = (occ == cutoff).any(axis=1)
        if n > 0:
            occ_mask = np.repeat(top, 2**n)
        else:
            occ_mask = top
    return FockOracle(
        mats,
        vac,
        "boson" if m > 0 else "fermion",
        modes=m + n,
        cutoff=cutoff if m > 0 else None,
        overflow_mask=occ_mask,
    )


def two_point_from_state(state, block_dim):
    """Two-point matrix W_ij = omega(g_i g_j) on a generator block."""
    W = np.empty((block_dim, block_dim), dtype=complex)
    for i in range(1, block_dim + 1):
        for j in range(1, block_dim + 1):
            W[i - 1, j - 1] = state.moment((i, j))
    return W


@dataclass(frozen=True)
class PositivityReport:
    min_eigenvalue: float
    positive: bool
    matrix_dim: int


def positivity_check(state, block_dim, max_degree, tol=PSD_TOL, conjugation=C0):
    """Positive-semidefiniteness of the moment matrix
    M_IJ = omega(w_I* w_J) over all words of length <= max_degree."""
    words = algebra.words_up_to(block_dim, max_degree)
    dim = len(words)
    M = np.empty((dim, dim), dtype=complex)
    elems = [AlgebraElement({w: 1.0}) for w in words]
    adjoints = [e.adjoint(conjugation) for e in elems]
    for I in range(dim):
        for J in range(dim):
            M[I, J] = state.evaluate(adjoints[I] * elems[J])
    M = (M + M.conj().T) / 2.0  # suppress round-off asymmetry
    eigs = np.linalg.eigvalsh(M)
    return PositivityReport(
        min_eigenvalue=float(eigs[0]),
        positive=bool(eigs[0] >= -tol),
        matrix_dim=dim,
    )


def restrict(state, n):
    """Module-level alias for :meth:`State.restrict`."""
    return state.restrict(n)


# -- JSON interchange ---------------------------------------------------------

def _complex_from_json(v):
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def state_from_json(data):
    """Build a state from its JSON document form.

    Schema: {kind, block_dim, degree_bound, two_point, moments, fock}; the
    parameter group used depends on the kind.
    """
    kind = data.get("kind")
    if kind == "moment-table":
        table = {
            tuple(entry["word"]): _complex_from_json(entry["value"])
            for entry in data.get("moments", [])
        }
        return MomentTableState(
            table,
            degree_bound=data["degree_bound"],
            block_dim=data.get("block_dim"),
        )
    if kind in ("quasi-free-boson", "quasi-free-fermion"):
        W = [[_complex_from_json(v) for v in row] for row in data["two_point"]]
        return QuasiFreeState(np.array(W), statistics=kind.split("-")[-1])
    if kind == "fock-oracle":
        fock = data["fock"]
        return FockOracle.ladder_vacuum(
            modes=fock["modes"],
            statistics=fock["statistics"],
            cutoff=fock.get("cutoff", DEFAULT_BOSON_CUTOFF),
        )
    raise InvalidRelationError(f"unknown state kind {kind!r}")


def state_to_json(state):
    out = {"kind": state.kind, "block_dim": state.block_dim,
           "degree_bound": state.degree_bound}
    if isinstance(state, QuasiFreeState):
        out["two_point"] = [
            [[z.real, z.imag] for z in row] for row in state.two_point
        ]
    elif isinstance(state, MomentTableState):
        out["moments"] = [
            {"word": list(w), "value": [c.real, c.imag]}
            for w, c in sorted(state._table.items(), key=lambda kv: algebra.word_key(kv[0]))
        ]
    elif isinstance(state, FockOracle):
        out["fock"] = {
            "modes": state.modes,
            "statistics": state.statistics,
            "cutoff": state.cutoff,
        }
    return out
