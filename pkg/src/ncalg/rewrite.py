"""Quotients of the free algebra by constant-valued (anti)commutation
relations, via confluent normal-ordering rewriting.

Only central constants are supported: ``g_i g_j - g_j g_i = c`` or
``g_i g_j + g_j g_i = d`` with c, d complex numbers.  Reading the relations
left-to-right as rewrite rules and sorting every word against a total
generator order terminates (bubble-sort bound) and is confluent.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra
from .algebra import C0, AlgebraElement
from .errors import InvalidRelationError, UnclassifiedGeneratorError
from .qmaps import GeneratorMap

CCR = "ccr"
CAR = "car"
FREE = "free"


class RelationSet:
    """Pairwise relations between generators.

    Each unordered pair is governed by at most one kind:

    * ``ccr``: ``[g_i, g_j] = c_ij * 1`` (constants antisymmetric),
    * ``car``: ``{g_i, g_j} = d_ij * 1`` (constants symmetric),
    * ``free``: no relation; such pairs are never exchanged.

    A ``car`` diagonal entry encodes the square rule ``g_i^2 = d_ii/2``.
    """

    def __init__(self):
        self._pairs = {}  # frozenset-ish key (min,max) -> (kind, constant for (min,max))

    @staticmethod
    def _key(i, j):
        return (min(i, j), max(i, j))

    def set_commutator(self, i, j, constant):
        """Declare [g_i, g_j] = constant."""
        if i == j:
            if constant != 0:
                raise InvalidRelationError("[g_i, g_i] must be zero")
            return
        key = self._key(i, j)
        stored = constant if (i, j) == key else -constant
        self._set(key, CCR, complex(stored))

    def set_anticommutator(self, i, j, constant):
        """Declare {g_i, g_j} = constant."""
        key = self._key(i, j)
        self._set(key, CAR, complex(constant))

    def _set(self, key, kind, constant):
        if key in self._pairs and self._pairs[key][0] != kind:
            raise InvalidRelationError(
                f"pair {key} already governed by {self._pairs[key][0]}"
            )
        self._pairs[key] = (kind, constant)

    def bracket(self, i, j):
        """Return (kind, constant) for the ordered pair (i, j).

        For ``ccr`` the constant is [g_i, g_j]; for ``car`` it is symmetric;
        ungoverned pairs return ("free", None).
        """
        key = self._key(i, j)
        if key not in self._pairs:
            return (FREE, None)
        kind, c = self._pairs[key]
        if kind == CCR and (i, j) != key:
            return (kind, -c)
        return (kind, c)

    def governed_pairs(self):
        return dict(self._pairs)

    def to_json_dict(self):
        pairs = []
        for (i, j), (kind, c) in sorted(self._pairs.items()):
            pairs.append(
                {"i": i, "j": j, "kind": kind, "constant": [c.real, c.imag]}
            )
        return {"pairs": pairs}

    @classmethod
    def from_json_dict(cls, data):
        rel = cls()
        for entry in data["pairs"]:
            c = complex(entry["constant"][0], entry["constant"][1])
            if entry["kind"] == CCR:
                rel.set_commutator(entry["i"], entry["j"], c)
            elif entry["kind"] == CAR:
                rel.set_anticommutator(entry["i"], entry["j"], c)
            else:
                raise InvalidRelationError(f"unknown relation kind {entry['kind']!r}")
        return rel


@dataclass(frozen=True)
class LadderSpec:
    """Partition of generators into creators and annihilators.

    ``pairing`` maps each annihilator to its creator partner (a bijection);
    the vacuum is annihilated by every annihilation generator.
    """

    creators: tuple
    annihilators: tuple
    pairing: dict

    def __post_init__(self):
        if set(self.pairing) != set(self.annihilators) or set(
            self.pairing.values()
        ) != set(self.creators):
            raise ValueError("pairing must be a bijection annihilators -> creators")

    def classify(self, index):
        if index in self.creators:
            return "create"
        if index in self.annihilators:
            return "annihilate"
        raise UnclassifiedGeneratorError(f"generator g{index} is unclassified")

    def vacuum_order(self):
        """Total order with creators before annihilators (single-pass vacuum
        evaluation once words are sorted against it)."""
        return tuple(sorted(self.creators)) + tuple(sorted(self.annihilators))


def _find_site(word, rank, rel, reverse):
    positions = range(len(word) - 1)
    if reverse:
        positions = reversed(positions)
    for k in positions:
        i, j = word[k], word[k + 1]
        if i == j:
            kind, _ = rel.bracket(i, i)
            if kind == CAR:
                return k, "square"
            continue
        if rank[i] > rank[j]:
            kind, _ = rel.bracket(i, j)
            if kind != FREE:
                return k, kind
    return None


def _make_rank(order, indices):
    if order is None:
        return {i: i for i in indices}
    rank = {g: pos for pos, g in enumerate(order)}
    missing = [i for i in indices if i not in rank]
    if missing:
        raise ValueError(f"generator order does not cover {sorted(missing)}")
    return rank


def normal_order_stats(element, relations, order=None, strategy="leftmost"):
    """Normal-order and report the largest per-word exchange count.

    Returns ``(result, max_steps)``.  ``order`` is a sequence of generator
    indices giving the target precedence (defaults to ascending index);
    ``strategy`` picks the leftmost or rightmost rewrite site on each pass.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    reverse = strategy == "rightmost"
    rank = _make_rank(order, element.generators())
    result = {}
    stack = [(w, c, 0) for w, c in element.terms.items()]
    max_steps = 0
    while stack:
        word, coeff, steps = stack.pop()
        site = _find_site(word, rank, relations, reverse)
        if site is None:
            result[word] = result.get(word, 0j) + coeff
            continue
        k, action = site
        if action == "square":
            _, d = relations.bracket(word[k], word[k])
            if d != 0:
                stack.append((word[:k] + word[k + 2 :], coeff * d / 2.0, 0))
            continue
        steps += 1
        if steps > len(word) * len(word):
            raise RuntimeError(
                "exchange count exceeded the bubble-sort bound; "
                "non-constant relations are not supported"
            )
        max_steps = max(max_steps, steps)
        i, j = word[k], word[k + 1]
        swapped = word[:k] + (j, i) + word[k + 2 :]
        kind, c = relations.bracket(i, j)
        if kind == CCR:
            # g_i g_j = g_j g_i + [g_i, g_j]
            stack.append((swapped, coeff, steps))
            if c != 0:
                stack.append((word[:k] + word[k + 2 :], coeff * c, 0))
        else:
            # g_i g_j = -g_j g_i + {g_i, g_j}
            stack.append((swapped, -coeff, steps))
            if c != 0:
                stack.append((word[:k] + word[k + 2 :], coeff * c, 0))
    return AlgebraElement(result), max_steps


def normal_order(element, relations, order=None, strategy="leftmost"):
    """Rewrite ``element`` so every word is sorted against ``order``.

    The result equals the input in the quotient algebra defined by the
    relations; free pairs are never exchanged.
    """
    result, _ = normal_order_stats(element, relations, order, strategy)
    return result


def vacuum_expectation(element, relations, ladder):
    """Vacuum moment of ``element`` in the Fock representation the ladder
    spec describes: normal-order with creators left of annihilators and read
    off the coefficient of the unit word."""
    for index in element.generators():
        ladder.classify(index)  # raises for unclassified generators
    ordered = normal_order(element, relations, order=ladder.vacuum_order())
    return ordered.coefficient(())


# -- ladder building blocks ----------------------------------------------------

def ladder_relations(modes, statistics):
    """Relations of ``modes`` independent ladder pairs.

    Generators ``2k-1`` annihilate and ``2k`` create (k = 1..modes).  Bosonic
    pairs satisfy [a_k, a_k*] = 1; fermionic pairs {c_k, c_k*} = 1 with all
    other anticommutators (squares included) zero.
    """
    rel = RelationSet()
    n = 2 * modes
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            same_pair = (i + 1) // 2 == (j + 1) // 2
            if statistics == "boson":
                if i == j:
                    continue
                if same_pair:
                    rel.set_commutator(i, j, 1.0 if i < j else -1.0)
                else:
                    rel.set_commutator(i, j, 0.0)
            elif statistics == "fermion":
                if same_pair and i != j:
                    rel.set_anticommutator(i, j, 1.0)
                else:
                    rel.set_anticommutator(i, j, 0.0)
            else:
                raise ValueError(f"unknown statistics {statistics!r}")
    return rel


def ladder_spec(modes):
    """Ladder classification matching :func:`ladder_relations`."""
    annihilators = tuple(2 * k - 1 for k in range(1, modes + 1))
    creators = tuple(2 * k for k in range(1, modes + 1))
    pairing = {2 * k - 1: 2 * k for k in range(1, modes + 1)}
    return LadderSpec(creators=creators, annihilators=annihilators, pairing=pairing)


# -- generator catalogs --------------------------------------------------------

def catalog_phi6(m, n):
    """Mixed CCR/CAR generator family with ``m`` symmetric pairs (q_a, p_a)
    and ``n`` antisymmetric pairs (qt_c, pt_d).

    Generator layout: q_1..q_m, p_1..p_m, qt_1..qt_n, pt_1..pt_n mapped to
    indices 1..2m+2n.  Relations: [q_a, p_b] = i delta_ab with all other
    commutators zero; {qt_c, pt_d} = i delta_cd with all other
    anticommutators (squares included) zero; mixed pairs commute.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 with m + n >= 1")
    dim = 2 * m + 2 * n
    labels = (
        [f"q{a}" for a in range(1, m + 1)]
        + [f"p{a}" for a in range(1, m + 1)]
        + [f"qt{c}" for c in range(1, n + 1)]
        + [f"pt{c}" for c in range(1, n + 1)]
    )
    boson = set(range(1, 2 * m + 1))
    rel = RelationSet()
    for i in range(1, dim + 1):
        for j in range(i, dim + 1):
            bi, bj = i in boson, j in boson
            if bi and bj:
                if i == j:
                    continue
                const = 1j if (j - i == m and i <= m) else 0.0
                rel.set_commutator(i, j, const)
            elif not bi and not bj:
                ii, jj = i - 2 * m, j - 2 * m
                const = 1j if (jj - ii == n and ii <= n) else 0.0
                rel.set_anticommutator(i, j, const)
            else:
                rel.set_commutator(i, j, 0.0)
    gmap = GeneratorMap(
        [algebra.generator(i) for i in range(1, dim + 1)],
        target_conjugation=C0,
        source_conjugation=C0,
        labels=labels,
    )
    return gmap, rel


def catalog_phi7(k, mode_cutoff, dims):
    """Finite truncation of the oscillator generator families of closed
    strings, expressed through self-adjoint position/momentum combinations.

    ``k = 4`` gives two bosonic families (plain and tilde) per target-space
    direction plus one zero-mode pair; ``k = 6`` adds two fermionic families.
    Raising/lowering operators are normalized to [a_n, a_n*] = 1 per mode,
    which induces [x_n, p_n] = -i/2 for n >= 1 via
    x_n = (a_n + a_{-n})/2 and p_n = i(a_n - a_{-n})/2; the zero-mode pair
    satisfies [x_0, p_0] = i.  Fermionic combinations analogously satisfy
    {xi_r, xi_r} = {eta_r, eta_r} = 1/2 and {xi_r, eta_s} = 0.
    """
    if k not in (4, 6):
        raise ValueError("k must be 4 or 6")
    if mode_cutoff < 1 or dims < 1:
        raise ValueError("mode_cutoff and dims must be >= 1")

    labels = []
    kind_of = []  # per generator: ("zero"|"boson"|"fermion", family, mu, mode, which)
    for mu in range(dims):
        labels += [f"x{mu}_0", f"p{mu}_0"]
        kind_of += [("zero", 0, mu, 0, "x"), ("zero", 0, mu, 0, "p")]
        for fam, tag in ((0, ""), (1, "t")):
            for nmode in range(1, mode_cutoff + 1):
                labels += [f"x{tag}{mu}_{nmode}", f"p{tag}{mu}_{nmode}"]
                kind_of += [
                    ("boson", fam, mu, nmode, "x"),
                    ("boson", fam, mu, nmode, "p"),
                ]
    if k == 6:
        for mu in range(dims):
            for fam in (0, 1):
                tag = "" if fam == 0 else "t"
                for rmode in range(1, mode_cutoff + 1):
                    labels += [f"xi{tag}{mu}_{rmode}", f"eta{tag}{mu}_{rmode}"]
                    kind_of += [
                        ("fermion", fam, mu, rmode, "xi"),
                        ("fermion", fam, mu, rmode, "eta"),
                    ]

    dim = len(labels)
    rel = RelationSet()
    for i in range(1, dim + 1):
        ki = kind_of[i - 1]
        for j in range(i, dim + 1):
            kj = kind_of[j - 1]
            fermionic = ki[0] == "fermion" and kj[0] == "fermion"
            if fermionic:
                same = ki[1:4] == kj[1:4] and ki[4] == kj[4]
                rel.set_anticommutator(i, j, 0.5 if same else 0.0)
                continue
            if i == j:
                continue
            same_osc = ki[0] == kj[0] and ki[1:4] == kj[1:4]
            if same_osc and ki[4] == "x" and kj[4] == "p":
                rel.set_commutator(i, j, 1j if ki[0] == "zero" else -0.5j)
            else:
                rel.set_commutator(i, j, 0.0)

    gmap = GeneratorMap(
        [algebra.generator(i) for i in range(1, dim + 1)],
        target_conjugation=C0,
        source_conjugation=C0,
        labels=labels,
    )
    return gmap, rel
