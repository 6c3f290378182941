import numpy as np
import pytest

from ncalg import algebra, lattice
from ncalg.algebra import AlgebraElement
from ncalg.errors import EmptyProbeError, GeneratorBlockError
from ncalg.lattice import (
    EmbeddingScheme,
    LatticeScalarModel,
    Probe,
    continuum_experiment,
    convergence_test,
    embed,
    ground_two_point,
)
from ncalg.states import MomentTableState, positivity_check


def test_model_validation():
    with pytest.raises(ValueError):
        LatticeScalarModel(sites=1, spacing=0.1, mass=1.0)
    with pytest.raises(ValueError):
        LatticeScalarModel(sites=4, spacing=-1.0, mass=1.0)
    with pytest.raises(ValueError):
        LatticeScalarModel(sites=4, spacing=0.1, mass=0.0)


def test_two_point_symmetric_translation_invariant():
    model = LatticeScalarModel.with_length(8, 1.0, 1.0)
    tp = ground_two_point(model)
    C = tp.phi_phi
    assert np.abs(C - C.T).max() < 1e-12
    # depends only on x - y mod N
    for shift in range(1, 8):
        rolled = np.roll(np.roll(C, shift, axis=0), shift, axis=1)
        assert np.abs(C - rolled).max() < 1e-10


def test_heisenberg_bound_per_site():
    model = LatticeScalarModel.with_length(16, 1.0, 1.0)
    tp = ground_two_point(model)
    prod = np.real(np.diag(tp.phi_phi) * np.diag(tp.pi_pi))
    assert (prod >= 0.25 - 1e-12).all()


def test_single_oscillator_closed_form():
    # N=2, large m: modes have stiffness a(m^2 + 4/a^2) and a m^2; compare
    # ground_two_point against the independent 2x2 diagonalization
    a, m = 0.5, 200.0
    model = LatticeScalarModel(sites=2, spacing=a, mass=m)
    tp = ground_two_point(model)
    K = a * np.array([[m * m + 2 / a**2, -2 / a**2],
                      [-2 / a**2, m * m + 2 / a**2]])
    k, V = np.linalg.eigh(K)
    expect = (V * (0.5 * np.sqrt(a / k))) @ V.T
    assert np.abs(tp.phi_phi - expect).max() < 1e-12
    # dominant-mass behavior: site variance approaches 1/(2m)
    assert tp.phi_phi[0, 0] == pytest.approx(1 / (2 * m), rel=1e-3)


def test_probe_sampling_and_errors():
    model = LatticeScalarModel.with_length(8, 1.0, 1.0)
    flat = Probe.flat(2.0)
    assert np.allclose(flat.sample(model), 2.0)
    half = Probe((0.0, 0.5), (1.0, 0.0))
    f = half.sample(model)
    assert np.allclose(f, [1, 1, 1, 1, 0, 0, 0, 0])
    with pytest.raises(EmptyProbeError):
        Probe((0.9999, 0.99995), (0.0, 1.0)).sample(model)
    with pytest.raises(ValueError):
        Probe((0.5, 0.0), (1.0, 1.0))


def test_staircase_probe():
    model = LatticeScalarModel.with_length(8, 1.0, 1.0)
    p = Probe.staircase([1.0, 2.0, 3.0, 4.0])
    assert np.allclose(p.sample(model), [1, 1, 2, 2, 3, 3, 4, 4])


def test_embed_deterministic_and_hermitian():
    model = LatticeScalarModel.with_length(8, 1.0, 1.0)
    scheme = EmbeddingScheme((Probe.flat(), Probe((0.0, 0.5), (1.0, 0.0))))
    s1 = embed(model, scheme)
    s2 = embed(model, scheme)
    assert np.array_equal(s1.two_point, s2.two_point)
    g = AlgebraElement({(1, 1): 1.0})
    val = s1.evaluate(g)
    assert abs(val.imag) < 1e-12 and val.real > 0


def test_embed_ccr_consistency():
    model = LatticeScalarModel.with_length(8, 1.0, 1.0)
    f = Probe((0.0, 0.5), (1.0, 0.0))
    s = embed(model, EmbeddingScheme((f,)))
    comm = s.evaluate(AlgebraElement({(1, 2): 1.0, (2, 1): -1.0}))
    a = model.spacing
    expected = 1j * a * a * np.sum(f.sample(model) ** 2)
    assert abs(comm - expected) < 1e-12


def test_embedded_states_pass_positivity():
    scheme = EmbeddingScheme((Probe.flat(), Probe((0.0, 0.5), (1.0, 0.0))))
    for N in (8, 16, 32):
        s = embed(LatticeScalarModel.with_length(N, 1.0, 1.0), scheme)
        report = positivity_check(s, block_dim=4, max_degree=2)
        assert report.positive


def test_restrict_compatibility_exact():
    model = LatticeScalarModel.with_length(8, 1.0, 1.0)
    scheme = EmbeddingScheme((Probe.flat(), Probe((0.0, 0.5), (1.0, 0.0))))
    s = embed(model, scheme)
    for word in algebra.words_up_to(2, 3):
        if word == ():
            continue
        direct = s.restrict(2).evaluate(AlgebraElement({word: 1.0}))
        nested = s.restrict(3).restrict(2).evaluate(AlgebraElement({word: 1.0}))
        assert direct == nested


def test_convergence_constant_sequence():
    table = MomentTableState({(1, 1): 0.5}, degree_bound=4, block_dim=2)
    report = convergence_test([table, table, table, table], K=1, dmax=4)
    assert report.verdict == "converged"
    assert all(d == 0.0 for ds in report.deltas.values() for d in ds)


def test_convergence_alternating_sequence():
    s1 = MomentTableState({(1, 1): 0.5}, degree_bound=4, block_dim=2)
    s2 = MomentTableState({(1, 1): 1.5}, degree_bound=4, block_dim=2)
    report = convergence_test([s1, s2, s1, s2, s1], K=1, dmax=4)
    assert report.verdict == "not-converged"


def test_convergence_rejects_small_blocks():
    s = MomentTableState({(1, 1): 0.5}, degree_bound=4, block_dim=1)
    with pytest.raises(GeneratorBlockError):
        convergence_test([s, s, s], K=1, dmax=2)


def test_free_field_sequence_converges():
    amp = 1 / 128
    probes = [
        Probe.flat(amp),
        Probe.staircase(
            [amp * np.cos(2 * np.pi * (k + 0.5) / 16) for k in range(16)]
        ),
    ]
    report = continuum_experiment(
        1.0, 1.0, [8, 16, 32, 64, 128], probes, dmax=4, eps=1e-6
    )
    assert report.verdict == "converged"
    for ds in report.deltas.values():
        assert ds[-1] < 1e-6
        for i in range(len(ds) - 1):
            assert ds[i + 1] <= 0.6 * ds[i]


def test_report_serialization():
    table = MomentTableState({(1, 1): 0.5}, degree_bound=4, block_dim=2)
    report = convergence_test(
        [table, table, table], K=1, dmax=2, labels=["8", "16", "32"]
    )
    doc = report.to_json_dict()
    assert doc["verdict"] == "converged"
    assert set(doc["levels"]) == {"1", "2"}
    csv = report.to_csv_text()
    lines = csv.strip().split("\n")
    assert lines[0] == "step,level_1,level_2"
    assert lines[1].startswith("16,")
    assert csv.endswith("\n")
