import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtwist.errors import AlphabetMismatch, DegreeTooLarge, FormatError, NotAnAutomorphism
from qtwist.frt import oq_matrix_relations
from qtwist.ncpoly import NCPoly
from qtwist.quadratic import (
    GradedAut,
    QuadraticAlgebra,
    bullet,
    bullet_automorphism,
    dual_automorphism,
    dumps_algebra,
    exterior_algebra,
    free_algebra,
    graded_component,
    hilbert_function,
    koszul_dual,
    loads_algebra,
    normal_form,
    polynomial_algebra,
    relation_span_equal,
    twisted_multiply,
    zhang_twist_relations,
)
from qtwist.randgen import random_algebra, random_algebra_with_aut, random_second_aut

seeds = st.integers(min_value=0, max_value=10**6)
X, Y = NCPoly.gen("x"), NCPoly.gen("y")


def diag_aut(A, *d):
    return GradedAut(A, [[d[i] if i == j else 0 for j in range(len(d))] for i in range(len(d))])


def span(*polys, gens=("x", "y")):
    return QuadraticAlgebra(gens, list(polys))


# graded components


def test_commutative_degree_two():
    comp = graded_component(polynomial_algebra(["x", "y"]), 2)
    assert comp.dimension == 3
    assert comp.basis == (("x", "x"), ("x", "y"), ("y", "y"))


def test_oq_m2_degree_two():
    assert graded_component(oq_matrix_relations(2), 2).dimension == 10


def test_free_algebra_degree_three():
    assert graded_component(free_algebra(["x", "y"]), 3).dimension == 8


def test_degree_cap():
    with pytest.raises(DegreeTooLarge):
        graded_component(free_algebra(["x", "y"]), 7)
    with pytest.raises(DegreeTooLarge):
        graded_component(free_algebra(["x", "y"]), 3, cap=2)


def test_normal_form_commutes():
    A = polynomial_algebra(["x", "y"])
    assert normal_form(A, Y * X * Y) == X * Y * Y


# Koszul duals


def test_dual_of_polynomial_ring():
    D = koszul_dual(polynomial_algebra(["x", "y"]))
    assert D.gens == ("x*", "y*")
    xs, ys = NCPoly.gen("x*"), NCPoly.gen("y*")
    assert relation_span_equal(D, span(xs * xs, ys * ys, xs * ys + ys * xs, gens=D.gens))


def test_dual_of_free_algebra_is_everything():
    assert koszul_dual(free_algebra(["x", "y"])).dim_relations() == 4


def test_dual_of_exterior_is_polynomial():
    D = koszul_dual(exterior_algebra(["x", "y", "z"]))
    assert relation_span_equal(D, polynomial_algebra(["x*", "y*", "z*"]))


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_double_dual(seed):
    A = random_algebra(random.Random(seed))
    assert koszul_dual(koszul_dual(A)) == A


# bullet products


def test_bullet_of_dual_numbers():
    A = QuadraticAlgebra(["x"], [X * X])
    B = bullet(A, A)
    assert B.m == 1 and B.relations == ((((0, 0), 1),),)


def test_bullet_for_end_of_polynomial_ring():
    A = polynomial_algebra(["x", "y"])
    B = bullet(koszul_dual(A), A)
    assert B.m == 4 and B.dim_relations() == 3


def test_bullet_with_free_algebra():
    assert bullet(free_algebra(["x", "y"]), polynomial_algebra(["u", "v"])).dim_relations() == 0


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_bullet_dimension_count(seed):
    rng = random.Random(seed)
    A, B = random_algebra(rng), random_algebra(rng)
    assert bullet(A, B).dim_relations() == A.dim_relations() * B.dim_relations()


# Zhang twists


def test_twist_of_polynomial_ring_is_skew():
    c = Fraction(3)
    A = polynomial_algebra(["x", "y"])
    T = zhang_twist_relations(A, diag_aut(A, 1, c))
    assert relation_span_equal(T, span(X * Y - c * Y * X))
    assert not relation_span_equal(T, A)


def test_identity_twist_and_round_trip():
    rng = random.Random(5)
    for _ in range(10):
        A, phi = random_algebra_with_aut(rng)
        assert zhang_twist_relations(A, GradedAut.identity(A)) == A
        T = zhang_twist_relations(A, phi)
        back = zhang_twist_relations(T, GradedAut(T, phi._inverse, check=False))
        assert back == A


def test_twisted_multiply_free_algebra():
    A = free_algebra(["x", "y"])
    phi = diag_aut(A, 1, 5)
    assert twisted_multiply(X, Y, phi) == 5 * X * Y
    one = NCPoly.const(1)
    assert twisted_multiply(one, Y * X, phi) == Y * X
    assert twisted_multiply(Y * X, one, phi) == Y * X


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_twisted_multiply_associative(seed):
    rng = random.Random(seed)
    A, phi = random_algebra_with_aut(rng)
    gens = [NCPoly.gen(g) for g in A.gens]

    def rand_elem():
        d = rng.randint(0, 2)
        p = NCPoly()
        for _ in range(2):
            word = tuple(rng.choice(A.gens) for _ in range(d))
            p = p + NCPoly.word(word, rng.randint(-2, 2))
        return p

    r, s, t = rand_elem(), rand_elem(), rand_elem()
    lhs = twisted_multiply(twisted_multiply(r, s, phi), t, phi)
    rhs = twisted_multiply(r, twisted_multiply(s, t, phi), phi)
    assert normal_form(A, lhs - rhs).is_zero()
    assert gens  # alphabet is nonempty


def test_non_automorphism_is_rejected():
    A = QuadraticAlgebra(["x", "y"], [X * Y])
    with pytest.raises(NotAnAutomorphism):
        GradedAut(A, [[0, 1], [1, 0]])
    with pytest.raises(NotAnAutomorphism):
        GradedAut(A, [[1, 1], [1, 1]])


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_hilbert_function_is_twist_invariant(seed):
    A, phi = random_algebra_with_aut(random.Random(seed))
    assert hilbert_function(A, 4) == hilbert_function(zhang_twist_relations(A, phi), 4)


# dual automorphisms and the twist theorems


def test_dual_of_identity_and_diagonal():
    A = polynomial_algebra(["x", "y"])
    assert dual_automorphism(GradedAut.identity(A)).matrix == GradedAut.identity(koszul_dual(A)).matrix
    assert dual_automorphism(diag_aut(A, 2, 3)).matrix == diag_aut(A, 2, 3).matrix


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_dual_is_an_anti_homomorphism(seed):
    rng = random.Random(seed)
    A, phi = random_algebra_with_aut(rng)
    psi = random_second_aut(rng, phi)
    lhs = dual_automorphism(phi.compose(psi))
    rhs = dual_automorphism(psi).compose(dual_automorphism(phi))
    assert lhs.matrix == rhs.matrix


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_twist_of_dual(seed):
    A, phi = random_algebra_with_aut(random.Random(seed), m=random.Random(seed).choice((2, 3, 4)))
    lhs = koszul_dual(zhang_twist_relations(A, phi.inverse()))
    rhs = zhang_twist_relations(koszul_dual(A), dual_automorphism(phi))
    assert relation_span_equal(lhs, rhs)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_bullet_twist(seed):
    rng = random.Random(seed)
    A, phi = random_algebra_with_aut(rng)
    B, psi = random_algebra_with_aut(rng, labels=["u", "v", "w"][: rng.choice((2, 3))])
    lhs = bullet(zhang_twist_relations(A, phi), zhang_twist_relations(B, psi))
    rhs = zhang_twist_relations(bullet(A, B), bullet_automorphism(phi, psi))
    assert relation_span_equal(lhs, rhs)


# comparison and documents


def test_span_equality_with_bijection():
    A = polynomial_algebra(["x", "y"])
    assert relation_span_equal(A, A)
    B = polynomial_algebra(["u", "v"])
    assert relation_span_equal(A, B, {"x": "v", "y": "u"})
    with pytest.raises(AlphabetMismatch):
        relation_span_equal(A, polynomial_algebra(["u", "v", "w"]))


@given(seeds)
def test_algebra_round_trip(seed):
    A = random_algebra(random.Random(seed))
    assert loads_algebra(dumps_algebra(A)) == A


def test_documents_accept_positions():
    doc = '{"gens": ["x", "y"], "relations": [[{"a": 1, "b": 2, "value": "1"}, {"a": "y", "b": "x", "value": "-1"}]]}'
    assert loads_algebra(doc) == polynomial_algebra(["x", "y"])


def test_document_errors():
    with pytest.raises(FormatError) as info:
        loads_algebra('{"gens": ["x"], "relations": [[{"a": "z", "b": "x", "value": "1"}]]}')
    assert info.value.where == "relations[0][0].a"
