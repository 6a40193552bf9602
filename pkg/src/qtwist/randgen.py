"""Random small instances for property checks.

Plain algebras: m ∈ {2, 3} generators, 1..m²−1 independent relations with
integer entries in −2..2.  Algebras paired with a graded automorphism are
built so that the automorphism is guaranteed to exist: weight-homogeneous
relations for a diagonal φ, orbit-closed relation spaces for a signed
permutation φ, and the symmetric or exterior algebra for an arbitrary φ.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .linalg import Echelon
from .matrices import det
from .quadratic import GradedAut, QuadraticAlgebra, exterior_algebra, polynomial_algebra, _tensor_apply

ENTRIES = (-2, -1, 0, 1, 2)
UNITS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(3))


def default_labels(m):
    return ["x", "y", "z", "w"][:m] if m <= 4 else [f"x{i}" for i in range(1, m + 1)]


def random_algebra(rng: random.Random, m: int | None = None, labels=None) -> QuadraticAlgebra:
    m = m or rng.choice((2, 3))
    keys = list(product(range(m), repeat=2))
    count = rng.randint(1, m * m - 1)
    ech = Echelon()
    rels = []
    while len(rels) < count:
        vec = {k: Fraction(rng.choice(ENTRIES)) for k in keys}
        vec = {k: v for k, v in vec.items() if v != 0}
        if vec and ech.add(vec):
            rels.append(vec)
    return QuadraticAlgebra(labels or default_labels(m), rels)


def random_invertible(rng: random.Random, m: int, pool=UNITS, zero_weight=2):
    choices = tuple(pool) + (Fraction(0),) * zero_weight
    while True:
        a = tuple(tuple(rng.choice(choices) for _ in range(m)) for _ in range(m))
        if det(a) != 0:
            return a


def _diagonal_instance(rng, m, labels):
    d = [rng.choice(UNITS[:4]) for _ in range(m)]
    classes = {}
    for a, b in product(range(m), repeat=2):
        classes.setdefault(d[a] * d[b], []).append((a, b))
    ech = Echelon()
    rels = []
    target = rng.randint(1, m * m - 1)
    for _ in range(4 * target):
        keys = rng.choice(list(classes.values()))
        vec = {k: Fraction(rng.choice(ENTRIES)) for k in keys}
        vec = {k: v for k, v in vec.items() if v != 0}
        if vec and ech.add(vec):
            rels.append(vec)
            if len(rels) == target:
                break
    if not rels:
        rels = [{(0, 0): 1}]
    A = QuadraticAlgebra(labels, rels)
    mat = tuple(tuple(d[i] if i == j else Fraction(0) for j in range(m)) for i in range(m))
    return A, GradedAut(A, mat)


def _signed_permutation_instance(rng, m, labels):
    perm = list(range(m))
    rng.shuffle(perm)
    mat = tuple(
        tuple(Fraction(rng.choice((1, -1))) if perm[i] == j else Fraction(0) for j in range(m)) for i in range(m)
    )
    keys = list(product(range(m), repeat=2))
    for _ in range(50):
        seeds = rng.randint(1, 2)
        ech = Echelon()
        frontier = []
        for _ in range(seeds):
            vec = {k: Fraction(rng.choice(ENTRIES)) for k in keys if rng.random() < 0.4}
            vec = {k: v for k, v in vec.items() if v != 0}
            if vec:
                frontier.append(vec)
        rels = []
        while frontier:
            vec = frontier.pop()
            if ech.add(vec):
                rels.append(vec)
                frontier.append(_tensor_apply(vec, mat, mat))
        if 1 <= len(rels) <= m * m - 1:
            A = QuadraticAlgebra(labels, rels)
            return A, GradedAut(A, mat)
    A = polynomial_algebra(labels)
    return A, GradedAut(A, mat)


def _classical_instance(rng, m, labels):
    A = polynomial_algebra(labels) if rng.random() < 0.5 else exterior_algebra(labels)
    return A, GradedAut(A, random_invertible(rng, m))


def random_algebra_with_aut(rng: random.Random, m: int | None = None, labels=None):
    """A random (A, φ) with φ a graded automorphism of A."""
    m = m or (len(labels) if labels else rng.choice((2, 3)))
    labels = labels or default_labels(m)
    kind = rng.choice(("diagonal", "permutation", "classical"))
    if kind == "diagonal":
        return _diagonal_instance(rng, m, labels)
    if kind == "permutation":
        return _signed_permutation_instance(rng, m, labels)
    return _classical_instance(rng, m, labels)


def random_second_aut(rng: random.Random, phi: GradedAut) -> GradedAut:
    """Another automorphism of the same algebra, drawn from the group generated by φ."""
    k = rng.choice((-2, -1, 2, 3))
    psi = phi.power(k)
    if rng.random() < 0.5:
        scale = rng.choice(UNITS)
        psi = GradedAut(phi.algebra, tuple(tuple(scale * x for x in row) for row in psi.matrix), check=False)
    return psi

