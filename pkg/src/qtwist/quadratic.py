"""Quadratic algebras presented by a subspace of relations R ⊆ V⊗V.

Generators are ordered as declared.  Words of equal length are compared
lexicographically in that order, the largest word of a relation is its
leading word, and relation bases are kept in fully reduced echelon form,
so two presentations on the same generators are equal exactly when their
stored bases are identical.

Graded pieces are computed by linear algebra in each degree:
A_d = V^{⊗d} / Σ_i V^{⊗i} ⊗ R ⊗ V^{⊗(d-2-i)}.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from itertools import product

from .errors import (
    AlphabetMismatch,
    DegreeTooLarge,
    DimensionMismatch,
    FormatError,
    NotAnAutomorphism,
    ScalarParseError,
)
from .linalg import Echelon, orthogonal_complement, rref
from .matrices import identity, inverse, matmul, matpow, to_matrix, transpose
from .ncpoly import NCPoly
from .scalars import as_scalar, format_scalar, parse_scalar

DEFAULT_DEGREE_CAP = 6
MAX_TENSOR_DIM = 10**6


def dual_label(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


class QuadraticAlgebra:
    """k<gens>/(R) with R given by a canonical reduced basis.

    ``relations`` may be given as dicts keyed by ``(a, b)`` where ``a`` and
    ``b`` are generator labels or 0-based generator positions.
    """

    __slots__ = ("gens", "relations", "_index", "_hash")

    def __init__(self, gens, relations=()):
        gens = tuple(str(g) for g in gens)
        if not gens:
            raise DimensionMismatch("a quadratic algebra needs at least one generator")
        if len(set(gens)) != len(gens):
            raise DimensionMismatch(f"duplicate generator labels in {gens}")
        self.gens = gens
        self._index = {g: i for i, g in enumerate(gens)}
        vectors = [self._coerce_vector(r) for r in relations]
        basis = rref(vectors)
        self.relations = tuple(tuple(sorted(v.items(), reverse=True)) for v in basis)
        self._hash = hash((self.gens, self.relations))

    def _coerce_vector(self, rel):
        if isinstance(rel, NCPoly):
            rel = rel.terms
        vec = {}
        for key, c in dict(rel).items():
            key = tuple(self._index[x] if isinstance(x, str) else int(x) for x in key)
            if len(key) != 2 or not all(0 <= x < len(self.gens) for x in key):
                raise DimensionMismatch(f"relation term {key} is not a pair of generators")
            vec[key] = vec.get(key, 0) + as_scalar(c)
        return vec

    @property
    def m(self):
        return len(self.gens)

    def index(self, label):
        return self._index[label]

    def relation_vectors(self):
        return [dict(r) for r in self.relations]

    def relation_polys(self):
        return [
            NCPoly({(self.gens[a], self.gens[b]): c for (a, b), c in r}) for r in self.relations
        ]

    def dim_relations(self):
        return len(self.relations)

    def __eq__(self, other):
        if not isinstance(other, QuadraticAlgebra):
            return NotImplemented
        return self.gens == other.gens and self.relations == other.relations

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"QuadraticAlgebra(gens={list(self.gens)}, relations={len(self.relations)})"

    def words_to_labels(self, word):
        return tuple(self.gens[i] for i in word)

    def labels_to_words(self, word):
        return tuple(self._index[x] for x in word)


# graded components -----------------------------------------------------------


@dataclass(frozen=True)
class GradedComponent:
    algebra: QuadraticAlgebra
    degree: int
    dimension: int
    basis: tuple
    echelon: Echelon

    def normal_form(self, poly: NCPoly) -> NCPoly:
        A = self.algebra
        vec = {}
        for w, c in poly.terms.items():
            if len(w) != self.degree:
                raise DimensionMismatch(f"word {w} is not of degree {self.degree}")
            vec[A.labels_to_words(w)] = c
        red = self.echelon.reduce(vec)
        return NCPoly({A.words_to_labels(w): c for w, c in red.items()})


def _check_size(m, d, cap):
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d > cap:
        raise DegreeTooLarge(f"degree {d} exceeds the cap {cap}")
    if m**d > MAX_TENSOR_DIM:
        raise DegreeTooLarge(f"tensor space of dimension {m}^{d} exceeds {MAX_TENSOR_DIM}")


@functools.lru_cache(maxsize=64)
def _component(algebra: QuadraticAlgebra, d: int) -> GradedComponent:
    m = algebra.m
    ech = Echelon()
    rels = algebra.relation_vectors()
    if d >= 2 and rels:
        for i in range(d - 1):
            for pre in product(range(m), repeat=i):
                for suf in product(range(m), repeat=d - 2 - i):
                    for r in rels:
                        ech.add({pre + ab + suf: c for ab, c in r.items()})
    pivots = ech.pivots
    basis = tuple(
        algebra.words_to_labels(w) for w in product(range(m), repeat=d) if w not in pivots
    )
    return GradedComponent(algebra, d, len(basis), basis, ech)


def graded_component(A: QuadraticAlgebra, d: int, cap: int = DEFAULT_DEGREE_CAP) -> GradedComponent:
    """Dimension, monomial basis and normal-form map of A_d."""
    _check_size(A.m, d, cap)
    return _component(A, d)


def hilbert_function(A: QuadraticAlgebra, top: int, cap: int = DEFAULT_DEGREE_CAP):
    return [graded_component(A, d, cap).dimension for d in range(top + 1)]


def normal_form(A: QuadraticAlgebra, poly: NCPoly, cap: int = DEFAULT_DEGREE_CAP) -> NCPoly:
    out = NCPoly()
    for d, part in poly.homogeneous_parts().items():
        out = out + graded_component(A, d, cap).normal_form(part)
    return out


# constructions ---------------------------------------------------------------


def free_algebra(gens):
    return QuadraticAlgebra(gens, ())


def polynomial_algebra(gens):
    """The commutative polynomial ring, relations ab - ba."""
    m = len(gens)
    rels = [{(a, b): 1, (b, a): -1} for a in range(m) for b in range(a + 1, m)]
    return QuadraticAlgebra(gens, rels)


def exterior_algebra(gens):
    m = len(gens)
    rels = [{(a, a): 1} for a in range(m)]
    rels += [{(a, b): 1, (b, a): 1} for a in range(m) for b in range(a + 1, m)]
    return QuadraticAlgebra(gens, rels)


def koszul_dual(A: QuadraticAlgebra) -> QuadraticAlgebra:
    """k<V*>/(R^⊥) for the pairing <x^a⊗x^b, x_c⊗x_d> = δ^a_c δ^b_d."""
    keys = list(product(range(A.m), repeat=2))
    perp = orthogonal_complement(A.relation_vectors(), keys)
    return QuadraticAlgebra([dual_label(g) for g in A.gens], perp)


def bullet(A: QuadraticAlgebra, B: QuadraticAlgebra, label=None) -> QuadraticAlgebra:
    """A • B on generators (a, b), relations S_(23)(R(A) ⊗ R(B))."""
    label = label or (lambda a, b: f"({a},{b})")
    mb = B.m
    gens = [label(a, b) for a in A.gens for b in B.gens]
    rels = []
    for ra in A.relation_vectors():
        for rb in B.relation_vectors():
            vec = {}
            for (a1, a2), c1 in ra.items():
                for (b1, b2), c2 in rb.items():
                    key = (a1 * mb + b1, a2 * mb + b2)
                    vec[key] = vec.get(key, 0) + c1 * c2
            rels.append(vec)
    return QuadraticAlgebra(gens, rels)


def relation_span_equal(A: QuadraticAlgebra, B: QuadraticAlgebra, bijection=None) -> bool:
    """True iff R(A) = R(B), identifying generators by position or by ``bijection``.

    ``bijection`` maps labels of A to labels of B.
    """
    if A.m != B.m:
        raise AlphabetMismatch(f"{A.m} generators versus {B.m}")
    if bijection is None:
        return A.relations == B.relations
    if set(bijection) != set(A.gens) or set(bijection.values()) != set(B.gens):
        raise AlphabetMismatch("bijection does not match the generator sets")
    moved = [
        {(B.index(bijection[A.gens[a]]), B.index(bijection[A.gens[b]])): c for (a, b), c in r}
        for r in A.relations
    ]
    return QuadraticAlgebra(B.gens, moved).relations == B.relations


# automorphisms ---------------------------------------------------------------


def _tensor_apply(vec, left, right):
    """(left ⊗ right)(vec) with matrices in the row convention x_j -> Σ_s M[j][s] x_s."""
    out = {}
    m = len(left)
    for (a, b), c in vec.items():
        for s in range(m):
            ls = left[a][s]
            if ls == 0:
                continue
            for t in range(m):
                rt = right[b][t]
                if rt == 0:
                    continue
                out[(s, t)] = out.get((s, t), 0) + c * ls * rt
    return out


def preserves_relations(A: QuadraticAlgebra, matrix) -> bool:
    ech = Echelon(A.relation_vectors())
    return all(ech.contains(_tensor_apply(r, matrix, matrix)) for r in A.relation_vectors())


class GradedAut:
    """A graded automorphism of A determined by its degree-one matrix.

    Row convention: φ(x_j) = Σ_s matrix[j][s] x_s.
    """

    __slots__ = ("algebra", "matrix", "_inverse")

    def __init__(self, algebra: QuadraticAlgebra, matrix, check=True):
        matrix = to_matrix(matrix)
        if len(matrix) != algebra.m:
            raise DimensionMismatch(f"matrix size {len(matrix)} but {algebra.m} generators")
        try:
            inv = inverse(matrix)
        except ZeroDivisionError:
            raise NotAnAutomorphism("matrix is singular") from None
        if check and not preserves_relations(algebra, matrix):
            raise NotAnAutomorphism("matrix does not preserve the relation space")
        self.algebra = algebra
        self.matrix = matrix
        self._inverse = inv

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, identity(algebra.m), check=False)

    def inverse(self):
        return GradedAut(self.algebra, self._inverse, check=False)

    def compose(self, other: "GradedAut") -> "GradedAut":
        """self ∘ other."""
        return GradedAut(self.algebra, matmul(other.matrix, self.matrix), check=False)

    def power(self, k: int) -> "GradedAut":
        return GradedAut(self.algebra, matpow(self.matrix, k), check=False)

    def images(self, matrix=None):
        matrix = matrix or self.matrix
        g = self.algebra.gens
        return {
            g[j]: NCPoly({(g[s],): matrix[j][s] for s in range(len(g)) if matrix[j][s] != 0})
            for j in range(len(g))
        }

    def apply(self, poly: NCPoly, power: int = 1) -> NCPoly:
        if power == 0:
            return poly
        return poly.substitute(self.images(matpow(self.matrix, power)))

    def __eq__(self, other):
        if not isinstance(other, GradedAut):
            return NotImplemented
        return self.algebra == other.algebra and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.algebra, self.matrix))

    def __repr__(self):
        return f"GradedAut(m={self.algebra.m})"


def bullet_automorphism(phi: GradedAut, psi: GradedAut, label=None) -> GradedAut:
    """φ•ψ on A•B, acting by φ⊗ψ on the generators (a, b)."""
    A, B = phi.algebra, psi.algebra
    rows = []
    for a in range(A.m):
        for b in range(B.m):
            rows.append([phi.matrix[a][s] * psi.matrix[b][t] for s in range(A.m) for t in range(B.m)])
    return GradedAut(bullet(A, B, label), rows)


def zhang_twist_relations(A: QuadraticAlgebra, phi: GradedAut) -> QuadraticAlgebra:
    """Presentation of the right Zhang twist A^φ: relations (id ⊗ φ⁻¹)(R)."""
    ident = identity(A.m)
    rels = [_tensor_apply(r, ident, phi._inverse) for r in A.relation_vectors()]
    return QuadraticAlgebra(A.gens, rels)


def twisted_multiply(r: NCPoly, s: NCPoly, phi: GradedAut, algebra: QuadraticAlgebra | None = None) -> NCPoly:
    """r *_φ s = r φ^{|r|}(s), extended bilinearly over homogeneous parts.

    With ``algebra`` given the product is returned in normal form.
    """
    out = NCPoly()
    for d, part in r.homogeneous_parts().items():
        out = out + part * phi.apply(s, d)
    if algebra is not None:
        out = normal_form(algebra, out)
    return out


def dual_automorphism(phi: GradedAut) -> GradedAut:
    """φ^! on A^!: the dual map on the dual basis, i.e. the transposed matrix."""
    dual = koszul_dual(phi.algebra)
    mat = transpose(phi.matrix)
    if not preserves_relations(dual, mat):
        raise NotAnAutomorphism("dual map does not preserve R^⊥")
    return GradedAut(dual, mat, check=False)


# documents -------------------------------------------------------------------


def algebra_to_doc(A: QuadraticAlgebra) -> dict:
    return {
        "gens": list(A.gens),
        "relations": [
            [{"a": A.gens[a], "b": A.gens[b], "value": format_scalar(c)} for (a, b), c in r]
            for r in A.relations
        ],
    }


def algebra_from_doc(doc) -> QuadraticAlgebra:
    """Parse an algebra document; ``a``/``b`` are labels or 1-based positions."""
    if not isinstance(doc, dict):
        raise FormatError("algebra document must be a JSON object")
    gens = doc.get("gens")
    if not isinstance(gens, list) or not gens or not all(isinstance(g, str) for g in gens):
        raise FormatError("must be a nonempty list of strings", "gens")
    if len(set(gens)) != len(gens):
        raise FormatError("duplicate labels", "gens")
    index = {g: i for i, g in enumerate(gens)}
    rels = doc.get("relations", [])
    if not isinstance(rels, list):
        raise FormatError("must be a list", "relations")
    vectors = []
    for ri, rel in enumerate(rels):
        if not isinstance(rel, list):
            raise FormatError("relation must be a list of terms", f"relations[{ri}]")
        vec = {}
        for ti, term in enumerate(rel):
            where = f"relations[{ri}][{ti}]"
            if not isinstance(term, dict):
                raise FormatError("term must be an object", where)
            key = []
            for name in ("a", "b"):
                v = term.get(name)
                if isinstance(v, str) and v in index:
                    key.append(index[v])
                elif isinstance(v, int) and not isinstance(v, bool) and 1 <= v <= len(gens):
                    key.append(v - 1)
                else:
                    raise FormatError(f"unknown generator {v!r}", f"{where}.{name}")
            try:
                value = parse_scalar(term.get("value"))
            except ScalarParseError as exc:
                raise FormatError(str(exc), f"{where}.value") from None
            key = tuple(key)
            vec[key] = vec.get(key, 0) + value
        vectors.append(vec)
    return QuadraticAlgebra(gens, vectors)


def dumps_algebra(A: QuadraticAlgebra) -> str:
    return json.dumps(algebra_to_doc(A), indent=2, ensure_ascii=False) + "\n"


def loads_algebra(text: str) -> QuadraticAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return algebra_from_doc(doc)
