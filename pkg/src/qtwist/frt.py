"""The FRT bialgebra A(R), its twisting pairs, winding maps and 2-cocycles.

Generators t^j_i (upper index = row) are listed in (j, i) lexicographic
order and carry the matrix coalgebra

    Δ(t^j_i) = Σ_k t^j_k ⊗ t^k_i,    ε(t^j_i) = δ^j_i.

A twisting pair is given by an invertible matrix α with β = α⁻¹:

    φ1(T) = T·α,  i.e. φ1(t^j_i) = Σ_u α^u_i t^j_u,
    φ2(T) = β·T,  i.e. φ2(t^j_i) = Σ_u β^j_u t^u_i,

with matrices stored as rows, ``alpha[j-1][i-1] = α^j_i``.  The same matrix
coalgebra helpers serve O_q(M_n) (labels ``x{i}{j}``, row i) and the
Manin end-construction (labels ``z^{k}_{j}``, row j).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    DegreeTooLarge,
    DimensionMismatch,
    InvalidPair,
    NotACharacter,
    NotAnAutomorphism,
)
from .matrices import (
    all_permutations,
    coxeter_length,
    det,
    identity,
    inverse,
    is_diagonal,
    is_generalized_permutation,
    matmul,
    matpow,
    permutation_support,
    to_matrix,
)
from .ncpoly import NCPoly, NCTensor
from .quadratic import (
    DEFAULT_DEGREE_CAP,
    GradedAut,
    QuadraticAlgebra,
    bullet,
    graded_component,
    koszul_dual,
    normal_form,
)
from .scalars import as_scalar, q as Q
from .tensor import EndTensor

# labels and matrix coalgebras -------------------------------------------------

_LABEL_RE = {
    "t": re.compile(r"^t\^(\d+)_(\d+)$"),
    "x": re.compile(r"^x(\d)(\d)$"),
    "z": re.compile(r"^z\^(\d+)_(\d+)$"),
}


def t_label(j, i):
    return f"t^{j}_{i}"


def x_label(i, j):
    return f"x{i}{j}"


def z_label(k, j):
    return f"z^{k}_{j}"


def grid(family: str, n: int):
    """n×n label grid G with Δ(G[r][c]) = Σ_k G[r][k] ⊗ G[k][c] (1-based labels)."""
    rng = range(1, n + 1)
    if family == "t":
        return tuple(tuple(t_label(r, c) for c in rng) for r in rng)
    if family == "x":
        return tuple(tuple(x_label(r, c) for c in rng) for r in rng)
    if family == "z":
        return tuple(tuple(z_label(c, r) for c in rng) for r in rng)
    raise ValueError(f"unknown label family {family!r}")


def grid_position(label: str):
    """(family, row, col), 0-based, of a matrix-coalgebra label."""
    for family, rx in _LABEL_RE.items():
        m = rx.match(label)
        if m:
            a, b = int(m.group(1)) - 1, int(m.group(2)) - 1
            return (family, b, a) if family == "z" else (family, a, b)
    raise DimensionMismatch(f"{label!r} is not a matrix-coalgebra generator")


def grid_labels(family, n):
    return [lab for row in grid(family, n) for lab in row]


def _family_of(labels, default="t"):
    fams = {grid_position(lab)[0] for lab in labels}
    if len(fams) > 1:
        raise DimensionMismatch(f"mixed generator families {sorted(fams)}")
    return fams.pop() if fams else default


def comultiply(m: NCPoly, n: int, family: str | None = None) -> NCTensor:
    """Δ(m) for the matrix coalgebra on n×n generators, extended multiplicatively."""
    family = family or _family_of(m.labels())
    G = grid(family, n)
    gen_delta = {}
    for r, c in product(range(n), repeat=2):
        gen_delta[G[r][c]] = {((G[r][k],), (G[k][c],)): Fraction(1) for k in range(n)}
    out = NCTensor()
    for word, coeff in m.terms.items():
        acc = {((), ()): coeff}
        for x in word:
            nxt = {}
            for (l1, r1), c1 in acc.items():
                for (l2, r2), c2 in gen_delta[x].items():
                    key = (l1 + l2, r1 + r2)
                    nxt[key] = nxt.get(key, 0) + c1 * c2
            acc = nxt
        out = out + NCTensor(acc)
    return out


def counit(m: NCPoly):
    """ε extended multiplicatively from ε(G[r][c]) = δ_rc."""
    total = Fraction(0)
    for word, coeff in m.terms.items():
        if all(_diag(x) for x in word):
            total = total + coeff
    return total


def _diag(label):
    _, r, c = grid_position(label)
    return r == c


def character_values(matrix, family, n=None):
    """Map G[r][c] -> matrix[r][c]; the character of the matrix coalgebra given by ``matrix``."""
    n = n or len(matrix)
    G = grid(family, n)
    return {G[r][c]: matrix[r][c] for r in range(n) for c in range(n)}


def winding(pi, side: str, m: NCPoly, algebra: QuadraticAlgebra | None = None, family=None) -> NCPoly:
    """Ξ^l[π](m) = Σ π(m₁)m₂ or Ξ^r[π](m) = Σ m₁π(m₂).

    ``pi`` is the matrix of generator values in grid position.  When
    ``algebra`` is given, π must kill its relations or NotACharacter is raised.
    """
    pi = to_matrix(pi)
    n = len(pi)
    family = family or _family_of(m.labels() or (algebra.gens if algebra else ()))
    values = character_values(pi, family, n)
    if algebra is not None:
        for idx, rel in enumerate(algebra.relation_polys()):
            if rel.evaluate(values) != 0:
                raise NotACharacter(f"character does not vanish on relation {idx}")
    delta = comultiply(m, n, family)

    def ev(word):
        return NCPoly.word(word).evaluate(values)

    if side == "left":
        return delta.contract(left_fn=ev)
    if side == "right":
        return delta.contract(right_fn=ev)
    raise ValueError("side must be 'left' or 'right'")


# FRT relations -------------------------------------------------------------


@dataclass(frozen=True)
class Convention:
    """Index placement for R·T1T2 = T1T2·R' style relations.

    The relation indexed by (k, l, i, j) is
    Σ_{p,q} R'^{kl}_{pq} T[p][i] T[q][j] − Σ_{p,q} T[k][p] T[l][q] R'^{pq}_{ij},
    where R' is R with its inputs and/or outputs swapped and T[a][b] is
    t^a_b, or t^b_a when ``transpose`` is set.
    """

    transpose: bool = False
    flip_in: bool = False
    flip_out: bool = False

    @property
    def tag(self):
        bits = [name for name, on in (("T", self.transpose), ("in", self.flip_in), ("out", self.flip_out)) if on]
        return "+".join(bits) or "plain"

    @classmethod
    def from_tag(cls, tag):
        parts = set() if tag == "plain" else set(tag.split("+"))
        if not parts <= {"T", "in", "out"}:
            raise ValueError(f"unknown convention tag {tag!r}")
        return cls("T" in parts, "in" in parts, "out" in parts)


ALL_CONVENTIONS = tuple(Convention(a, b, c) for a, b, c in product((False, True), repeat=3))

# Fixed by requiring frt_relations(R_q) = O_q(M_n) for n = 2, 3 (see
# convention_search); the relations read [τ∘R, T⊗T] = 0.
FRT_CONVENTION = Convention(transpose=False, flip_in=False, flip_out=True)


def _primed(r: EndTensor, conv: Convention):
    out = {}
    for (a, b, c, d), v in r.coeffs.items():
        if conv.flip_out:
            a, b = b, a
        if conv.flip_in:
            c, d = d, c
        out[(a, b, c, d)] = v
    return out


def frt_raw_relations(r: EndTensor, conv: Convention = FRT_CONVENTION):
    """All n⁴ relations as ((k, l, i, j), {(gen, gen): coeff}), gens 0-based in (j, i) order."""
    n = r.n

    def T(a, b):
        if conv.transpose:
            a, b = b, a
        return (a - 1) * n + (b - 1)

    rels = {key: {} for key in product(range(1, n + 1), repeat=4)}
    rp = _primed(r, conv)
    rng = range(1, n + 1)
    for (k, l, p, qq), v in rp.items():
        for i in rng:
            for j in rng:
                vec = rels[(k, l, i, j)]
                key = (T(p, i), T(qq, j))
                vec[key] = vec.get(key, 0) + v
    for (p, qq, i, j), v in rp.items():
        for k in rng:
            for l in rng:
                vec = rels[(k, l, i, j)]
                key = (T(k, p), T(l, qq))
                vec[key] = vec.get(key, 0) - v
    return [(key, {kk: c for kk, c in vec.items() if c != 0}) for key, vec in rels.items()]


def frt_relations(r: EndTensor, conv: Convention = FRT_CONVENTION) -> QuadraticAlgebra:
    return QuadraticAlgebra(grid_labels("t", r.n), [v for _, v in frt_raw_relations(r, conv)])


def oq_matrix_relations(n: int, q=None) -> QuadraticAlgebra:
    """O_q(M_n) on x11, x12, ..., xnn; ``q=None`` keeps q symbolic."""
    if n < 1:
        raise DimensionMismatch("n must be positive")
    qq = Q if q is None else as_scalar(q)
    idx = {(i, j): (i - 1) * n + (j - 1) for i in range(1, n + 1) for j in range(1, n + 1)}
    rng = range(1, n + 1)
    rels = []
    for k, u, s in product(rng, rng, rng):
        if k < u:
            rels.append({(idx[k, s], idx[u, s]): qq, (idx[u, s], idx[k, s]): -1})
    for k, s, v in product(rng, rng, rng):
        if s < v:
            rels.append({(idx[k, s], idx[k, v]): qq, (idx[k, v], idx[k, s]): -1})
    for k, u, s, v in product(rng, rng, rng, rng):
        if s < v and k < u:
            # x_us x_kv = x_kv x_us and x_uv x_ks = x_ks x_uv + (q - q^-1) x_kv x_us
            rels.append({(idx[u, s], idx[k, v]): 1, (idx[k, v], idx[u, s]): -1})
            rels.append(
                {
                    (idx[u, v], idx[k, s]): 1,
                    (idx[k, s], idx[u, v]): -1,
                    (idx[k, v], idx[u, s]): -(qq - 1 / qq),
                }
            )
    return QuadraticAlgebra(grid_labels("x", n), rels)


def convention_search(n_values=(2, 3)):
    """Conventions for which frt_relations(R_q) equals O_q(M_n) for every n given."""
    from .twist import classical_rq

    passing = []
    for conv in ALL_CONVENTIONS:
        if all(
            frt_relations(classical_rq(n), conv).relations == oq_matrix_relations(n).relations
            for n in n_values
        ):
            passing.append(conv)
    return passing


class FRTBialgebra:
    """A(R) with its relations, matrix coalgebra and convention tag."""

    def __init__(self, r: EndTensor, convention: Convention = FRT_CONVENTION):
        self.n = r.n
        self.R = r
        self.convention = convention
        self.algebra = frt_relations(r, convention)

    @property
    def gens(self):
        return self.algebra.gens

    def generator(self, j, i):
        return NCPoly.gen(t_label(j, i))

    def comultiply(self, m: NCPoly) -> NCTensor:
        return comultiply(m, self.n, "t")

    def counit(self, m: NCPoly):
        return counit(m)

    def graded_component(self, d, cap=DEFAULT_DEGREE_CAP):
        return graded_component(self.algebra, d, cap)

    def is_bi_ideal(self) -> bool:
        """Δ(R) ⊆ R⊗F₁ ... at degree 2, i.e. Δ(R) ⊆ R⊗F + F⊗R, and ε(R) = 0."""
        return relations_are_bi_ideal(self.algebra, self.n, "t")


def relations_are_bi_ideal(algebra: QuadraticAlgebra, n: int, family: str) -> bool:
    """Degree-two check that the relation span is a coideal for the matrix coalgebra.

    Δ(r) lies in the (2,2)-bigraded part; it is in R⊗F₂ + F₂⊗R exactly when
    its image in A₂⊗A₂ vanishes, which is tested by reducing both factors.
    """
    comp = graded_component(algebra, 2)
    for rel in algebra.relation_polys():
        if counit(rel) != 0:
            return False
        delta = comultiply(rel, n, family)
        reduced = delta.map_left(lambda w: comp.normal_form(NCPoly.word(w))).map_right(
            lambda w: comp.normal_form(NCPoly.word(w))
        )
        if not reduced.is_zero():
            return False
    return True


# twisting pairs -------------------------------------------------------------


def first_violated_relation(r: EndTensor, alpha, conv: Convention = FRT_CONVENTION):
    """(position, (k, l, i, j)) of the first raw FRT relation not killed by t ↦ α, or None."""
    alpha = to_matrix(alpha)
    n = r.n
    flat = [alpha[a][b] for a in range(n) for b in range(n)]
    for pos, (key, vec) in enumerate(frt_raw_relations(r, conv)):
        total = Fraction(0)
        for (x, y), c in vec.items():
            if flat[x] != 0 and flat[y] != 0:
                total = total + c * flat[x] * flat[y]
        if total != 0:
            return pos, key
    return None


def check_twisting_pair(r: EndTensor, alpha, conv: Convention = FRT_CONVENTION) -> bool:
    alpha = to_matrix(alpha)
    if len(alpha) != r.n:
        raise DimensionMismatch(f"alpha is {len(alpha)}×{len(alpha)} but n = {r.n}")
    if det(alpha) == 0:
        return False
    return first_violated_relation(r, alpha, conv) is None


class TwistingPair:
    """(φ1, φ2) determined by α; β = α⁻¹.

    ``q`` is the parameter of the ambient O_q(GL_n) (``None`` = symbolic);
    it only enters through the value of the q-determinant on α.  When ``R``
    is given the pair is validated against A(R).
    """

    __slots__ = ("alpha", "beta", "q", "n")

    def __init__(self, alpha, R: EndTensor | None = None, q=None):
        alpha = to_matrix(alpha)
        if det(alpha) == 0:
            raise InvalidPair("alpha is singular")
        if R is not None:
            if len(alpha) != R.n:
                raise DimensionMismatch(f"alpha is {len(alpha)}×{len(alpha)} but n = {R.n}")
            bad = first_violated_relation(R, alpha)
            if bad is not None:
                pos, key = bad
                raise InvalidPair(f"alpha violates FRT relation {pos} (k,l,i,j)={key}", pos)
        self.alpha = alpha
        self.beta = inverse(alpha)
        self.q = None if q is None else as_scalar(q)
        self.n = len(alpha)

    @classmethod
    def identity(cls, n, q=None):
        return cls(identity(n), q=q)

    def compose(self, other: "TwistingPair") -> "TwistingPair":
        """The pair of α·α′ (group law on twisting pairs)."""
        return TwistingPair(matmul(self.alpha, other.alpha), q=self.q)

    def inverse(self) -> "TwistingPair":
        return TwistingPair(self.beta, q=self.q)

    def matrix(self, which: str, power: int = 1):
        """Matrix of π = ε∘φ^power: α^power for φ1, β^power for φ2."""
        base = self.alpha if which == "phi1" else self.beta
        if which not in ("phi1", "phi2"):
            raise ValueError("which must be 'phi1' or 'phi2'")
        return matpow(base, power)

    def tau(self):
        """Permutation read off α's support (row i -> column τ(i)); identity otherwise."""
        supp = permutation_support(self.alpha)
        return supp if supp is not None else tuple(range(self.n))

    def g_factor(self, which: str, power: int = 1):
        """The scalar c with φ^power(g) = c·g, i.e. the q-determinant evaluated at π."""
        base = self.alpha if which == "phi1" else self.beta
        g = q_determinant(self.n, self.q)
        c = g.evaluate(character_values(base, "x"))
        return c**power

    def __eq__(self, other):
        return isinstance(other, TwistingPair) and self.alpha == other.alpha and self.q == other.q

    def __hash__(self):
        return hash((self.alpha, self.q))

    def __repr__(self):
        return f"TwistingPair(n={self.n})"


def phi_images(pair: TwistingPair, which: str, power: int, family: str = "t"):
    """Generator images of φ1^power (T ↦ T·α^p) or φ2^power (T ↦ β^p·T)."""
    n = pair.n
    G = grid(family, n)
    mat = pair.matrix(which, power)
    images = {}
    for r, c in product(range(n), repeat=2):
        if which == "phi1":
            terms = {(G[r][u],): mat[u][c] for u in range(n) if mat[u][c] != 0}
        else:
            terms = {(G[u][c],): mat[r][u] for u in range(n) if mat[r][u] != 0}
        images[G[r][c]] = NCPoly(terms)
    return images


def phi_automorphism(pair: TwistingPair, which: str, algebra: QuadraticAlgebra, power: int = 1, family="t"):
    """φ as a GradedAut on ``algebra`` (row convention)."""
    images = phi_images(pair, which, power, family)
    index = {g: i for i, g in enumerate(algebra.gens)}
    m = len(algebra.gens)
    rows = []
    for g in algebra.gens:
        row = [Fraction(0)] * m
        for (w,), c in images[g].terms.items():
            row[index[w]] = c
        rows.append(row)
    try:
        return GradedAut(algebra, rows)
    except NotAnAutomorphism as exc:
        raise InvalidPair(str(exc)) from None


@dataclass(frozen=True)
class LaurentElement:
    """poly · g^{-gpower} in O_q(GL_n), with poly in the x-generators."""

    poly: NCPoly
    gpower: int = 0

    def __post_init__(self):
        if self.gpower < 0:
            raise ValueError("gpower must be nonnegative")

    def __mul__(self, other):
        return LaurentElement(self.poly * other.poly, self.gpower + other.gpower)

    def homogeneous_parts(self, n):
        """{degree: LaurentElement} with deg x = 1 and deg g⁻¹ = −n."""
        return {
            d - n * self.gpower: LaurentElement(p, self.gpower)
            for d, p in self.poly.homogeneous_parts().items()
        }

    def degree(self, n):
        parts = self.homogeneous_parts(n)
        if len(parts) > 1:
            raise ValueError("element is not homogeneous")
        return next(iter(parts)) if parts else 0


def laurent_equal(a: LaurentElement, b: LaurentElement, n: int, q=None, cap=DEFAULT_DEGREE_CAP):
    """Equality in O_q(GL_n) after clearing g-powers and reducing to normal form."""
    top = max(a.gpower, b.gpower)
    g = q_determinant(n, q)
    lhs = a.poly * g ** (top - a.gpower)
    rhs = b.poly * g ** (top - b.gpower)
    return normal_form(oq_matrix_relations(n, q), lhs - rhs, cap).is_zero()


def apply_phi(pair: TwistingPair, which: str, power: int, m, family: str | None = None):
    """φ1^power or φ2^power applied to an NCPoly or a LaurentElement."""
    if isinstance(m, LaurentElement):
        images = phi_images(pair, which, power, "x")
        poly = m.poly.substitute(images)
        if m.gpower:
            poly = poly * (1 / pair.g_factor(which, power) ** m.gpower)
        return LaurentElement(poly, m.gpower)
    family = family or _family_of(m.labels())
    return m.substitute(phi_images(pair, which, power, family))


# 2-cocycles -------------------------------------------------------------------


def _as_laurent(x):
    if isinstance(x, LaurentElement):
        return x
    if isinstance(x, NCPoly):
        return LaurentElement(x, 0)
    return LaurentElement(NCPoly.const(x), 0)


def _character_on(pair: TwistingPair, which: str, power: int, y: LaurentElement):
    """ε(φ^power(y)) computed as the character π^power on y."""
    mat = pair.matrix(which, power)
    val = y.poly.evaluate(character_values(mat, "x"))
    if y.gpower and val != 0:
        val = val / pair.g_factor(which, power) ** y.gpower
    return val


def cocycle_sigma(pair: TwistingPair, x, y, which: str = "phi2"):
    """σ(x, y) = ε(x) ε(φ2^{|x|}(y)), bilinear over homogeneous parts of x.

    ``which='phi1'`` gives the convolution inverse σ⁻¹(x, y) = ε(x) ε(φ1^{|x|}(y)).
    """
    x, y = _as_laurent(x), _as_laurent(y)
    total = Fraction(0)
    for d, part in x.homogeneous_parts(pair.n).items():
        ex = counit(part.poly)
        if ex != 0:
            total = total + ex * _character_on(pair, which, d, y)
    return total


def cocycle_sigma_inverse(pair, x, y):
    return cocycle_sigma(pair, x, y, which="phi1")


def cocycle_closed_form(pair: TwistingPair, xword, r: int, yword, t: int):
    """Closed form of σ on monomials x_{i1 j1}⋯ g^{-r} and x_{u1 v1}⋯ g^{-t}.

    Words are sequences of 1-based (i, j) pairs.
    """
    n = pair.n
    for i, j in xword:
        if i != j:
            return Fraction(0)
    mexp = len(xword) - n * r
    inv_pow = matpow(pair.alpha, -mexp)
    val = Fraction(1)
    for u, v in yword:
        val = val * inv_pow[u - 1][v - 1]
        if val == 0:
            return val
    tau_len = coxeter_length(pair.tau()) if pair.q == -1 else 0
    sign = -1 if (mexp * t * tau_len) % 2 else 1
    return sign * val * det(pair.alpha) ** (mexp * t)


def _monomials(n, max_degree):
    labels = grid_labels("x", n)
    out = [()]
    for d in range(1, max_degree + 1):
        out.extend(product(labels, repeat=d))
    return out


def check_cocycle_identity(
    pair: TwistingPair,
    max_degree: int = 1,
    *,
    sigma=None,
    sigma_inv=None,
    algebra: QuadraticAlgebra | None = None,
    random_triples: int = 0,
    random_degree: int = 2,
    gpowers=(0,),
    rng: random.Random | None = None,
    return_failure: bool = False,
):
    """Check the 2-cocycle and convolution-inverse identities on monomial triples.

    All triples of monomials of degree ≤ ``max_degree`` (times g^{-r} for r in
    ``gpowers``) are checked, plus ``random_triples`` random triples of
    degree ``random_degree``.  Products are reduced to normal form in
    ``algebra`` (default O_q(M_n) at the pair's q) before σ is evaluated.
    ``sigma``/``sigma_inv`` override the bilinear forms (useful for testing
    that corrupted forms are rejected).
    """
    if max_degree > 2:
        raise DegreeTooLarge("cocycle checks are limited to degree 2")
    n = pair.n
    sigma = sigma or (lambda a, b: cocycle_sigma(pair, a, b))
    sigma_inv = sigma_inv or (lambda a, b: cocycle_sigma_inverse(pair, a, b))
    algebra = algebra or oq_matrix_relations(n, pair.q)
    labels = grid_labels("x", n)
    G = grid("x", n)
    pos = {G[r][c]: (r, c) for r in range(n) for c in range(n)}
    nf_cache = {}

    def nf(word):
        if word not in nf_cache:
            nf_cache[word] = normal_form(algebra, NCPoly.word(word))
        return nf_cache[word]

    def delta(word):
        acc = {((), ()): Fraction(1)}
        for x in word:
            r, c = pos[x]
            nxt = {}
            for (a, b), v in acc.items():
                for k in range(n):
                    key = (a + (G[r][k],), b + (G[k][c],))
                    nxt[key] = nxt.get(key, 0) + v
            acc = nxt
        return acc

    def elem(word, gp):
        return LaurentElement(nf(word), gp)

    def eps(word):
        return counit(NCPoly.word(word))

    def check(x, y, z):
        (wx, rx), (wy, ry), (wz, rz) = x, y, z
        dx, dy, dz = delta(wx), delta(wy), delta(wz)
        # Σ σ(x1,y1) σ(x2y2,z) = Σ σ(y1,z1) σ(x,y2z2)
        lhs = Fraction(0)
        for (x1, x2), c1 in dx.items():
            for (y1, y2), c2 in dy.items():
                a = sigma(elem(x1, rx), elem(y1, ry))
                if a != 0:
                    lhs += c1 * c2 * a * sigma(elem(x2 + y2, rx + ry), elem(wz, rz))
        rhs = Fraction(0)
        for (y1, y2), c1 in dy.items():
            for (z1, z2), c2 in dz.items():
                a = sigma(elem(y1, ry), elem(z1, rz))
                if a != 0:
                    rhs += c1 * c2 * a * sigma(elem(wx, rx), elem(y2 + z2, ry + rz))
        if lhs != rhs:
            return "cocycle"
        # Σ σ⁻¹(x1y1,z) σ⁻¹(x2,y2) = Σ σ⁻¹(x,y1z1) σ⁻¹(y2,z2)
        lhs = Fraction(0)
        for (x1, x2), c1 in dx.items():
            for (y1, y2), c2 in dy.items():
                a = sigma_inv(elem(x2, rx), elem(y2, ry))
                if a != 0:
                    lhs += c1 * c2 * a * sigma_inv(elem(x1 + y1, rx + ry), elem(wz, rz))
        rhs = Fraction(0)
        for (y1, y2), c1 in dy.items():
            for (z1, z2), c2 in dz.items():
                a = sigma_inv(elem(y2, ry), elem(z2, rz))
                if a != 0:
                    rhs += c1 * c2 * a * sigma_inv(elem(wx, rx), elem(y1 + z1, ry + rz))
        if lhs != rhs:
            return "inverse cocycle"
        return None

    def check_pair(x, y):
        (wx, rx), (wy, ry) = x, y
        ex, ey = eps(wx), eps(wy)
        # unit axioms
        one = elem((), 0)
        if sigma(elem(wx, rx), one) != ex or sigma(one, elem(wx, rx)) != ex:
            return "unit"
        if sigma_inv(elem(wx, rx), one) != ex or sigma_inv(one, elem(wx, rx)) != ex:
            return "inverse unit"
        # convolution inverse: Σ σ(x1,y1)σ⁻¹(x2,y2) = ε(x)ε(y) = Σ σ⁻¹(x1,y1)σ(x2,y2)
        dx, dy = delta(wx), delta(wy)
        s1 = s2 = Fraction(0)
        for (x1, x2), c1 in dx.items():
            for (y1, y2), c2 in dy.items():
                c = c1 * c2
                s1 += c * sigma(elem(x1, rx), elem(y1, ry)) * sigma_inv(elem(x2, rx), elem(y2, ry))
                s2 += c * sigma_inv(elem(x1, rx), elem(y1, ry)) * sigma(elem(x2, rx), elem(y2, ry))
        if s1 != ex * ey or s2 != ex * ey:
            return "convolution inverse"
        return None

    monos = [(w, r) for w in _monomials(n, max_degree) for r in gpowers]
    failure = None
    for x, y in product(monos, repeat=2):
        why = check_pair(x, y)
        if why:
            failure = (why, x, y)
            break
    if failure is None:
        for x, y, z in product(monos, repeat=3):
            why = check(x, y, z)
            if why:
                failure = (why, x, y, z)
                break
    if failure is None and random_triples:
        rng = rng or random.Random(0)
        for _ in range(random_triples):
            trip = tuple(
                (tuple(rng.choice(labels) for _ in range(rng.randint(0, random_degree))), rng.choice(gpowers))
                for _ in range(3)
            )
            why = check(*trip)
            if why:
                failure = (why,) + trip
                break
    if return_failure:
        return failure
    return failure is None


# q-determinant ---------------------------------------------------------------


def q_determinant(n: int, q=None) -> NCPoly:
    """g = Σ_σ (−q)^{−l(σ)} x_{σ(1)1} ⋯ x_{σ(n)n}."""
    if not 1 <= n <= 4:
        raise DimensionMismatch("q-determinant is supported for 1 ≤ n ≤ 4")
    qq = Q if q is None else as_scalar(q)
    terms = {}
    for perm in all_permutations(n):
        word = tuple(x_label(perm[c] + 1, c + 1) for c in range(n))
        terms[word] = (-qq) ** (-coxeter_length(perm))
    return NCPoly(terms)


def is_grouplike_central(g: NCPoly, A: QuadraticAlgebra, cap=DEFAULT_DEGREE_CAP, family=None) -> bool:
    """Centrality of g and Δ(g) = g⊗g in A, both checked on normal forms."""
    if not g.is_homogeneous():
        raise ValueError("g must be homogeneous")
    d = g.degree()
    n = int(round(len(A.gens) ** 0.5))
    family = family or _family_of(A.gens)
    top = graded_component(A, d + 1, cap)
    for x in A.gens:
        xg = NCPoly.gen(x)
        if not top.normal_form(g * xg - xg * g).is_zero():
            return False
    comp = graded_component(A, d, cap)
    diff = comultiply(g, n, family) - NCTensor.pure(g, g)

    def red(w):
        return comp.normal_form(NCPoly.word(w))

    return diff.map_left(red).map_right(red).is_zero()


# twisting-pair families ------------------------------------------------------

SAMPLE_SCALARS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2), Fraction(3))
QCASES = ("one", "minus-one", "generic")


def admissible(qcase: str, alpha) -> bool:
    """Membership in the classified family of twisting pairs of O_q(GL_n)."""
    alpha = to_matrix(alpha)
    if det(alpha) == 0:
        return False
    if qcase == "one":
        return True
    if qcase == "minus-one":
        return is_generalized_permutation(alpha)
    if qcase == "generic":
        return is_diagonal(alpha)
    raise ValueError(f"unknown q-case {qcase!r}")


def sample_admissible(qcase: str, n: int, rng: random.Random):
    s = lambda: rng.choice(SAMPLE_SCALARS)  # noqa: E731
    if qcase == "one":
        while True:
            a = tuple(tuple(rng.choice(SAMPLE_SCALARS + (Fraction(0),) * 3) for _ in range(n)) for _ in range(n))
            if det(a) != 0:
                return a
    if qcase == "minus-one":
        perm = list(range(n))
        rng.shuffle(perm)
        return tuple(tuple(s() if perm[i] == j else Fraction(0) for j in range(n)) for i in range(n))
    if qcase == "generic":
        return tuple(tuple(s() if i == j else Fraction(0) for j in range(n)) for i in range(n))
    raise ValueError(f"unknown q-case {qcase!r}")


def sample_non_member(qcase: str, n: int, rng: random.Random):
    """A random matrix outside the family (singular for ``one``)."""
    while True:
        if qcase == "one":
            rows = [[rng.choice(SAMPLE_SCALARS) for _ in range(n)] for _ in range(n - 1)]
            c = rng.choice(SAMPLE_SCALARS)
            rows.append([c * x for x in rows[0]])
            rng.shuffle(rows)
            a = to_matrix(rows)
        else:
            a = sample_admissible(qcase, n, rng)
            i, j = rng.sample(range(n), 2)
            a = tuple(
                tuple(rng.choice(SAMPLE_SCALARS) if (r, c) == (i, j) else a[r][c] for c in range(n))
                for r in range(n)
            )
        if not admissible(qcase, a):
            return a


def qcase_parameter(qcase: str):
    """Representative q for each case; generic q stays symbolic."""
    return {"one": Fraction(1), "minus-one": Fraction(-1), "generic": None}[qcase]


@dataclass(frozen=True)
class PairFamily:
    qcase: str
    n: int

    def contains(self, alpha) -> bool:
        return admissible(self.qcase, alpha)

    def sample(self, rng: random.Random):
        return sample_admissible(self.qcase, self.n, rng)

    def sample_non_member(self, rng: random.Random):
        return sample_non_member(self.qcase, self.n, rng)


def twisting_pair_family(qcase: str, n: int) -> PairFamily:
    if qcase not in QCASES:
        raise ValueError(f"q-case must be one of {QCASES}")
    if n < 2:
        raise DimensionMismatch("n must be at least 2")
    return PairFamily(qcase, n)


# Manin end-construction -------------------------------------------------------


@dataclass(frozen=True)
class ManinEnd:
    """A!•A on generators z^k_j = x^k ⊗ x_j with Δ(z^k_j) = Σ_i z^i_j ⊗ z^k_i."""

    source: QuadraticAlgebra
    algebra: QuadraticAlgebra

    @property
    def m(self):
        return self.source.m

    def comultiply(self, p: NCPoly) -> NCTensor:
        return comultiply(p, self.m, "z")

    def counit(self, p: NCPoly):
        return counit(p)


def manin_end(A: QuadraticAlgebra) -> ManinEnd:
    m = A.m
    if m > 9:
        raise DimensionMismatch("at most 9 generators are supported")
    dual = koszul_dual(A)
    kpos = {g: i + 1 for i, g in enumerate(dual.gens)}
    jpos = {g: i + 1 for i, g in enumerate(A.gens)}
    alg = bullet(dual, A, label=lambda a, b: z_label(kpos[a], jpos[b]))
    return ManinEnd(A, alg)


def manin_twisting_pair(A: QuadraticAlgebra, phi: GradedAut):
    """(φ1, φ2) = (end^r((φ⁻¹)^!), end^l(φ)) as GradedAuts on manin_end(A).

    end^l(φ)(z^k_j) = Σ_s a_js z^k_s and end^r((φ⁻¹)^!)(z^k_j) = Σ_l b_lk z^l_j
    with (a_js) the matrix of φ and (b_lk) its inverse.
    """
    if phi.algebra != A:
        raise NotAnAutomorphism("automorphism belongs to a different algebra")
    E = manin_end(A)
    m = A.m
    a = phi.matrix
    b = inverse(a)
    size = m * m

    def idx(k, j):
        return k * m + j

    left = [[Fraction(0)] * size for _ in range(size)]
    right = [[Fraction(0)] * size for _ in range(size)]
    for k, j in product(range(m), repeat=2):
        for s in range(m):
            left[idx(k, j)][idx(k, s)] += a[j][s]
        for l in range(m):
            right[idx(k, j)][idx(l, j)] += b[l][k]
    phi1 = GradedAut(E.algebra, right)
    phi2 = GradedAut(E.algebra, left)
    return E, phi1, phi2


def pair_characters(E: ManinEnd, phi1: GradedAut, phi2: GradedAut):
    """Grid matrices of π1 = ε∘φ1 and π2 = ε∘φ2."""
    m = E.m
    G = grid("z", m)
    out = []
    for phi in (phi1, phi2):
        imgs = phi.images()
        out.append(
            tuple(tuple(counit(imgs[G[r][c]]) for c in range(m)) for r in range(m))
        )
    return tuple(out)
