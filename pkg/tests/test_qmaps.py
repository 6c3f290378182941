import numpy as np
import pytest

from ncalg import algebra, qmaps
from ncalg.algebra import C0, AlgebraElement, Conjugation
from ncalg.errors import ConjugationMismatchError, IndexOutOfBlockError
from ncalg.qmaps import CHom, GeneratorMap, TestSpace


def random_element(rng, gens=3, max_degree=3, terms=3):
    out = {}
    for _ in range(terms):
        length = rng.integers(0, max_degree + 1)
        word = tuple(rng.integers(1, gens + 1, size=length))
        out[word] = complex(rng.normal(), rng.normal())
    return AlgebraElement(out)


def test_chom_identity_acts_trivially():
    space = TestSpace(3)
    h = CHom.identity(space)
    v = np.array([1.0, 2j, -1.0])
    assert np.allclose(h(v), v)
    gmap = h.as_generator_map()
    e = algebra.generator(1) * algebra.generator(3)
    assert gmap(e) == e


def test_chom_rejects_conjugation_incompatible_matrix():
    swap = Conjugation("matrix", [[0, 1], [1, 0]])
    src = TestSpace(2, swap)
    tgt = TestSpace(2, C0)
    with pytest.raises(ConjugationMismatchError):
        CHom(src, tgt, [[1, 0], [0, 1j]])


def test_chom_real_matrix_compatible_with_c0():
    src, tgt = TestSpace(2), TestSpace(3)
    M = np.array([[1.0, 2.0], [0.0, 1.0], [3.0, 0.0]])
    h = CHom(src, tgt, M)
    gmap = h.as_generator_map()
    assert gmap.images[0] == algebra.from_vector(M[:, 0])


def test_induced_hom_is_multiplicative():
    rng = np.random.default_rng(11)
    images = [random_element(rng) for _ in range(3)]
    gmap = GeneratorMap(images)
    for _ in range(20):
        a, b = random_element(rng), random_element(rng)
        assert gmap(a * b).isclose(gmap(a) * gmap(b), 1e-10)
        assert gmap(a + b).isclose(gmap(a) + gmap(b), 1e-12)


def test_induced_hom_fixes_unit():
    gmap = GeneratorMap([algebra.generator(2)])
    assert gmap(algebra.unit()) == algebra.unit()


def test_star_compatibility_of_hermitian_images():
    rng = np.random.default_rng(12)
    images = []
    for _ in range(3):
        h = random_element(rng)
        images.append(h + h.adjoint())
    gmap = GeneratorMap(images)
    assert gmap.check_star_compatibility()
    a = random_element(rng)
    assert gmap(a.adjoint()).isclose(gmap(a).adjoint(), 1e-12)


def test_star_compatibility_fails_for_skewed_images():
    gmap = GeneratorMap([algebra.generator(1) * 1j])
    assert not gmap.check_star_compatibility()


def test_apply_rejects_out_of_block_generators():
    gmap = GeneratorMap([algebra.generator(1)])
    with pytest.raises(IndexOutOfBlockError):
        gmap(algebra.generator(2))


def test_project_vector_and_element():
    v = qmaps.project(np.array([1.0, 2.0, 3.0]), 2)
    assert np.allclose(v, [1.0, 2.0, 0.0])
    e = algebra.generator(1) + algebra.generator(3)
    assert qmaps.project(e, 2) == algebra.generator(1)


def test_projection_intertwines_embedding():
    # P_n(from_vector(v)) == from_vector(P_n v)
    rng = np.random.default_rng(13)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    n = 2
    lhs = qmaps.project(algebra.from_vector(v), n)
    rhs = algebra.from_vector(qmaps.project(v, n))
    assert lhs.isclose(rhs, 1e-12)


def test_combine_qmaps_concatenates_blocks():
    m1 = GeneratorMap([algebra.generator(1)], labels=["a"])
    m2 = GeneratorMap([algebra.generator(2)], labels=["b"])
    combined = qmaps.combine_qmaps([m1, m2])
    assert combined.source_dim == 2
    assert combined.labels == ["a", "b"]
    assert combined(algebra.generator(2)) == algebra.generator(2)


def test_combine_qmaps_block_diagonal_conjugation():
    swap = Conjugation("matrix", [[0, 1], [1, 0]])
    m1 = GeneratorMap(
        [algebra.generator(1), algebra.generator(2)], source_conjugation=swap
    )
    m2 = GeneratorMap([algebra.generator(3)])
    combined = qmaps.combine_qmaps([m1, m2])
    K = combined.source_conjugation.matrix
    assert K.shape == (3, 3)
    assert np.allclose(K, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])


def test_combine_qmaps_rejects_mismatched_targets():
    swap = Conjugation("matrix", [[0, 1], [1, 0]])
    m1 = GeneratorMap([algebra.generator(1)], target_conjugation=swap)
    m2 = GeneratorMap([algebra.generator(2)])
    with pytest.raises(ConjugationMismatchError):
        qmaps.combine_qmaps([m1, m2])


def test_check_core_full_rank():
    h = CHom(TestSpace(2), TestSpace(2), np.eye(2))
    report = qmaps.check_core(h)
    assert report.surjective and report.dense_image and report.rank == 2


def test_check_core_rank_deficient():
    h = CHom(TestSpace(2), TestSpace(2), [[1, 1], [1, 1]])
    report = qmaps.check_core(h)
    assert not report.surjective
    assert report.rank == 1


def test_chom_json_dict():
    h = CHom(TestSpace(1), TestSpace(2), [[1.0], [2.0]])
    doc = h.to_json_dict()
    assert doc["source_dim"] == 1 and doc["target_dim"] == 2
    assert doc["matrix"][1][0] == [2.0, 0.0]
