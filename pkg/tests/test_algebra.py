import numpy as np
import pytest

from ncalg import algebra
from ncalg.algebra import C0, AlgebraElement, Conjugation


def random_element(rng, gens=5, max_degree=4, terms=4):
    out = {}
    for _ in range(terms):
        length = rng.integers(0, max_degree + 1)
        word = tuple(rng.integers(1, gens + 1, size=length))
        out[word] = complex(rng.normal(), rng.normal())
    return AlgebraElement(out)


def test_unit_and_zero():
    a = algebra.generator(3)
    assert algebra.unit() * a == a
    assert a * algebra.unit() == a
    assert (algebra.zero() + a) == a
    assert algebra.zero().is_zero()
    assert algebra.zero().degree == 0


def test_product_concatenates_words():
    a = algebra.generator(1) * algebra.generator(2)
    assert a.terms == {(1, 2): 1.0 + 0j}
    assert a.degree == 2


def test_noncommutativity():
    g1, g2 = algebra.generator(1), algebra.generator(2)
    assert g1 * g2 != g2 * g1


def test_ring_laws_random():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b, c = (random_element(rng) for _ in range(3))
        assert ((a * b) * c).isclose(a * (b * c), 1e-12)
        assert (a * (b + c)).isclose(a * b + a * c, 1e-12)
        assert ((a + b) * c).isclose(a * c + b * c, 1e-12)


def test_involution_laws_random():
    rng = np.random.default_rng(8)
    for _ in range(50):
        a, b = random_element(rng), random_element(rng)
        assert (a * b).adjoint().isclose(b.adjoint() * a.adjoint(), 1e-12)
        assert a.adjoint().adjoint().isclose(a, 1e-12)
        z = complex(rng.normal(), rng.normal())
        assert (a * z).adjoint().isclose(a.adjoint() * z.conjugate(), 1e-12)


def test_adjoint_fixes_generators_under_c0():
    g = algebra.generator(4)
    assert g.adjoint() == g


def test_matrix_conjugation_swap():
    K = Conjugation("matrix", [[0, 1], [1, 0]])
    g1, g2 = algebra.generator(1), algebra.generator(2)
    assert g1.adjoint(K) == g2
    assert (g1 * g1).adjoint(K) == g2 * g2
    # involutive on elements too
    e = g1 * g2 * 2.5 + g2 * (1 + 1j)
    assert e.adjoint(K).adjoint(K).isclose(e, 1e-12)


def test_matrix_conjugation_requires_involutive():
    with pytest.raises(ValueError):
        Conjugation("matrix", [[0, 2], [2, 0]])


def test_project_is_multiplicative_on_compatible_words():
    g1, g3 = algebra.generator(1), algebra.generator(3)
    e = g1 * g3 + g1 * g1
    assert e.project(2) == g1 * g1
    assert e.project(3) == e


def test_words_up_to_order_and_count():
    words = algebra.words_up_to(2, 2)
    assert words == [(), (1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_from_vector_linear():
    v = np.array([1.0, 2j, 0.0])
    e = algebra.from_vector(v)
    assert e == algebra.generator(1) + algebra.generator(2) * 2j


def test_text_form_canonical():
    e = algebra.generator(2) + algebra.generator(1) * 1j
    assert algebra.to_text(e) == "(0+1i)*g1 + (1+0i)*g2"
    assert algebra.to_text(algebra.zero()) == "(0+0i)*1"
    assert algebra.to_text(algebra.unit() * (1 - 2.5j)) == "(1-2.5i)*1"


def test_no_negative_zero_in_text():
    e = (algebra.generator(1) * algebra.generator(2)).adjoint()
    assert algebra.to_text(e) == "(1+0i)*g2*g1"


def test_prune_tiny_coefficients():
    e = algebra.generator(1) * 1e-16
    assert e.is_zero()
