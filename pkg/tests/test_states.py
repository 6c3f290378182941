import math
import warnings

import numpy as np
import pytest

from ncalg import algebra, states
from ncalg.algebra import AlgebraElement
from ncalg.errors import DegreeBoundError, GeneratorBlockError
from ncalg.states import (
    FockOracle,
    MomentTableState,
    QuasiFreeState,
    perfect_matchings,
    phi6_fock_oracle,
    positivity_check,
    state_from_json,
    state_to_json,
    two_point_from_state,
    wick_evaluate,
)


def double_factorial(n):
    return math.prod(range(n, 0, -2))


def test_perfect_matching_counts():
    for k in range(1, 5):
        count = sum(1 for _ in perfect_matchings(tuple(range(2 * k))))
        assert count == double_factorial(2 * k - 1)


def test_wick_odd_words_vanish():
    W = np.eye(2)
    assert wick_evaluate(W, (1, 2, 1), "boson") == 0


def test_wick_two_and_four_point():
    W = np.array([[0.0, 1.0], [0.0, 0.0]])  # <a a*> = 1 only
    assert wick_evaluate(W, (1, 2), "boson") == 1.0
    # <a a a* a*> = pairings (1-3)(2-4) + (1-4)(2-3) = 2
    assert wick_evaluate(W, (1, 1, 2, 2), "boson") == 2.0
    # fermion: same pairings with signs +1 and -1... plus ordering
    assert wick_evaluate(W, (1, 1, 2, 2), "fermion") == 0.0
    assert wick_evaluate(W, (1, 2, 1, 2), "fermion") == 1.0


def test_quasi_free_requires_square_matrix():
    with pytest.raises(ValueError):
        QuasiFreeState(np.zeros((2, 3)), "boson")
    with pytest.raises(ValueError):
        QuasiFreeState(np.zeros((2, 2)), "anyon")


def test_moment_table_validation():
    with pytest.raises(ValueError):
        MomentTableState({(): 2.0}, degree_bound=2)
    with pytest.raises(ValueError):
        MomentTableState({(1, 2): 1j, (2, 1): 1j}, degree_bound=2)
    with pytest.raises(DegreeBoundError):
        MomentTableState({(1, 1, 1): 1.0}, degree_bound=2)


def test_moment_table_defaults_and_bounds():
    s = MomentTableState({(1, 1): 2.0}, degree_bound=2, block_dim=2)
    assert s.evaluate(AlgebraElement({(1, 1): 1.0})) == 2.0
    assert s.moment((2, 2)) == 0.0
    with pytest.raises(DegreeBoundError):
        s.evaluate(AlgebraElement({(1, 1, 1): 1.0}))
    with pytest.raises(GeneratorBlockError):
        s.evaluate(AlgebraElement({(3,): 1.0}))


def test_fock_oracle_boson_ladder():
    o = FockOracle.ladder_vacuum(1, "boson")
    assert o.moment(()) == 1.0
    assert o.moment((1, 2)) == pytest.approx(1.0)
    assert o.moment((2, 1)) == 0.0
    assert o.moment((1, 1, 2, 2)) == pytest.approx(2.0)


def test_fock_oracle_fermion_ladder():
    o = FockOracle.ladder_vacuum(2, "fermion")
    assert o.moment((1, 2)) == 1.0
    assert o.moment((2, 2)) == 0.0
    # anticommutation across modes: c1 c2* + c2* c1 = 0 in every moment
    e = AlgebraElement({(1, 4): 1.0, (4, 1): 1.0})
    assert abs(o.evaluate(e)) < 1e-12


def test_fock_oracle_overflow_warns():
    o = FockOracle.ladder_vacuum(1, "boson", cutoff=2)
    with pytest.warns(RuntimeWarning):
        o.moment((1, 1, 2, 2))  # occupation reaches the cutoff of 2


def test_quasi_free_matches_boson_oracle():
    o = FockOracle.ladder_vacuum(1, "boson")
    W = two_point_from_state(o, 2)
    qf = QuasiFreeState(W, "boson")
    for word in algebra.words_up_to(2, 4):
        assert qf.moment(word) == pytest.approx(o.moment(word), abs=1e-10)


def test_quasi_free_matches_fermion_oracle():
    o = FockOracle.ladder_vacuum(1, "fermion")
    W = two_point_from_state(o, 2)
    qf = QuasiFreeState(W, "fermion")
    for word in algebra.words_up_to(2, 4):
        assert qf.moment(word) == pytest.approx(o.moment(word), abs=1e-12)


def test_phi6_oracle_relations():
    o = phi6_fock_oracle(1, 1)
    q, p, qt, pt = o.matrices
    d = q.shape[0]
    assert np.abs(q @ p - p @ q - 1j * np.eye(d))[: d - 2, : d - 2].max() < 1e-10
    assert np.abs(qt @ pt + pt @ qt - 1j * np.eye(d)).max() < 1e-12
    assert np.abs(qt @ qt).max() == 0.0
    # mixed pairs commute
    assert np.abs(q @ qt - qt @ q).max() < 1e-12


def test_phi6_phi4_moment():
    # Phi = (a* + a)/sqrt(2) = q has <Phi^4> = 3/4
    o = phi6_fock_oracle(1, 0)
    assert o.moment((1, 1, 1, 1)) == pytest.approx(0.75, abs=1e-12)


def test_restrict_blocks_and_collapses():
    o = FockOracle.ladder_vacuum(2, "boson")
    r = o.restrict(3).restrict(2)
    assert r.block_dim == 2
    with pytest.raises(GeneratorBlockError):
        r.evaluate(AlgebraElement({(3,): 1.0}))
    assert r.moment((1, 2)) == pytest.approx(1.0)


def test_positivity_of_quasi_free():
    o = FockOracle.ladder_vacuum(1, "boson")
    W = two_point_from_state(o, 2)
    qf = QuasiFreeState(W, "boson")
    # the ladder involution swaps a and a*
    swap = algebra.Conjugation("matrix", [[0, 1], [1, 0]])
    report = positivity_check(qf, block_dim=2, max_degree=2, conjugation=swap)
    assert report.positive
    assert report.min_eigenvalue >= -1e-9


def test_positivity_rejects_negative_table():
    # <g1 g1> < 0 cannot come from a state
    table = {(1, 1): -1.0}
    s = MomentTableState(table, degree_bound=2, block_dim=1)
    report = positivity_check(s, block_dim=1, max_degree=1)
    assert not report.positive
    assert report.min_eigenvalue < -1e-9


def test_state_json_round_trips():
    o = FockOracle.ladder_vacuum(1, "boson")
    doc = state_to_json(o)
    back = state_from_json(doc)
    assert back.moment((1, 2)) == pytest.approx(1.0)

    W = two_point_from_state(o, 2)
    qf = QuasiFreeState(W, "boson")
    back = state_from_json(state_to_json(qf))
    assert back.moment((1, 1, 2, 2)) == pytest.approx(qf.moment((1, 1, 2, 2)))

    table = MomentTableState({(1, 1): 0.5}, degree_bound=2, block_dim=1)
    back = state_from_json(state_to_json(table))
    assert back.moment((1, 1)) == 0.5
