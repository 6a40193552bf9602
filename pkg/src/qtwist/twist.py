"""The classical Yang–Baxter operator R_q and its twists by twisting pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CaseMismatch, InvalidPair, ZeroParameter
from .frt import (
    TwistingPair,
    admissible,
    counit,
    first_violated_relation,
    grid_position,
    phi_images,
)
from .matrices import det, permutation_support, to_matrix
from .ncpoly import NCPoly
from .scalars import as_scalar, q as Q
from .tensor import EndTensor, _check_n


def classical_rq(n: int, q=None) -> EndTensor:
    """R_q(v_i⊗v_j) = q v_i⊗v_i (i=j), v_i⊗v_j (i<j), v_i⊗v_j + (q−q⁻¹) v_j⊗v_i (i>j).

    ``q=None`` gives the operator over ℚ(q).
    """
    _check_n(n)
    qq = Q if q is None else as_scalar(q)
    if qq == 0:
        raise ZeroParameter("q must be nonzero")
    cross = qq - 1 / qq
    coeffs = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                coeffs[(i, i, i, i)] = qq
            else:
                coeffs[(i, j, i, j)] = 1
                if i > j:
                    coeffs[(j, i, i, j)] = cross
    return EndTensor(n, coeffs)


def _as_pair(pair, n=None):
    if isinstance(pair, TwistingPair):
        return pair
    try:
        return TwistingPair(pair)
    except ZeroDivisionError:
        raise InvalidPair("alpha is singular") from None


def twist_r(r: EndTensor, pair, check: bool = True) -> EndTensor:
    """(R^σ)^{kl}_{ij} = Σ_{p,v} α^p_i R^{kv}_{pj} β^l_v, i.e. R^σ = (1⊗β)·R·(α⊗1)."""
    pair = _as_pair(pair)
    if pair.n != r.n:
        raise InvalidPair(f"alpha is {pair.n}×{pair.n} but n = {r.n}")
    if check:
        bad = first_violated_relation(r, pair.alpha)
        if bad is not None:
            pos, key = bad
            raise InvalidPair(f"alpha violates FRT relation {pos} (k,l,i,j)={key}", pos)
    a, b, n = pair.alpha, pair.beta, r.n
    out = {}
    for (k, v, p, j), x in r.coeffs.items():
        for i in range(1, n + 1):
            api = a[p - 1][i - 1]
            if api == 0:
                continue
            for l in range(1, n + 1):
                blv = b[l - 1][v - 1]
                if blv == 0:
                    continue
                key = (k, l, i, j)
                out[key] = out.get(key, 0) + api * x * blv
    return EndTensor(n, out)


def _qcase_of(q):
    if q is None:
        return "generic"
    if q == 1:
        return "one"
    if q == -1:
        return "minus-one"
    return "generic"


@dataclass(frozen=True)
class TwistSpec:
    """R_q together with an admissible α for one of the three q-cases."""

    n: int
    alpha: tuple
    q: object = None
    qcase: str | None = None
    base: EndTensor = field(init=False, compare=False)
    pair: TwistingPair = field(init=False, compare=False)

    def __post_init__(self):
        alpha = to_matrix(self.alpha)
        q = None if self.q is None else as_scalar(self.q)
        qcase = self.qcase or _qcase_of(q)
        if qcase != _qcase_of(q):
            raise CaseMismatch(f"q-case {qcase!r} does not match q = {q}")
        if len(alpha) != self.n:
            raise CaseMismatch(f"alpha is {len(alpha)}×{len(alpha)} but n = {self.n}")
        if not admissible(qcase, alpha):
            raise CaseMismatch(f"alpha is not admissible in the {qcase!r} case")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "qcase", qcase)
        object.__setattr__(self, "base", classical_rq(self.n, q))
        object.__setattr__(self, "pair", TwistingPair(alpha, q=q))

    @property
    def tau(self):
        """Support permutation of α (0-based row -> column); only meaningful for minus-one."""
        return permutation_support(self.alpha)


def twist_rq_closed_form(spec: TwistSpec) -> EndTensor:
    """Closed-form twisted R_q for the three classified q-cases."""
    n, a, b = spec.n, spec.pair.alpha, spec.pair.beta
    rng = range(n)
    out = {}
    if spec.qcase == "one":
        for k in rng:
            for l in rng:
                for i in rng:
                    for j in rng:
                        out[(k + 1, l + 1, i + 1, j + 1)] = a[k][i] * b[l][j]
    elif spec.qcase == "minus-one":
        tau = spec.tau
        tau_inv = [0] * n
        for row, col in enumerate(tau):
            tau_inv[col] = row
        for i in rng:
            for j in rng:
                k, l = tau_inv[i], tau[j]
                sign = -1 if k == j else 1
                out[(k + 1, l + 1, i + 1, j + 1)] = sign * a[k][i] / a[j][tau[j]]
    else:
        for (k, l, i, j), v in spec.base.coeffs.items():
            out[(k, l, i, j)] = v * a[i - 1][i - 1] / a[l - 1][l - 1]
    return EndTensor(n, out)


# coquasitriangular forms -----------------------------------------------------


def _as_linear(x):
    """Coerce a label, scalar or NCPoly of degree ≤ 1 to an NCPoly."""
    if isinstance(x, NCPoly):
        poly = x
    elif isinstance(x, str):
        poly = NCPoly.gen(x)
    else:
        poly = NCPoly.const(x)
    if any(len(w) > 1 for w in poly.terms):
        raise ValueError("θ is only evaluated on elements of degree ≤ 1")
    return poly


def _bilinear(gen_form):
    def theta(x, y):
        px, py = _as_linear(x), _as_linear(y)
        total = Fraction(0)
        for wx, cx in px.terms.items():
            for wy, cy in py.terms.items():
                if not wx and not wy:
                    val = Fraction(1)
                elif not wx:
                    val = counit(NCPoly.word(wy))
                elif not wy:
                    val = counit(NCPoly.word(wx))
                else:
                    val = gen_form(wx[0], wy[0])
                total = total + cx * cy * val
        return total

    return theta


def theta_on_generators(r: EndTensor):
    """θ(t^i_v, t^j_u) = R^{ij}_{vu}, extended bilinearly with θ(1, x) = θ(x, 1) = ε(x)."""

    def gen_form(x, y):
        _, i, v = grid_position(x)
        _, j, u = grid_position(y)
        return r[(i + 1, j + 1, v + 1, u + 1)]

    return _bilinear(gen_form)


def theta_twisted(r: EndTensor, pair) -> object:
    """θ^σ(x, y) = θ(φ1^{|y|}(x), φ2^{|x|}(y)) on generators and the unit."""
    pair = _as_pair(pair)
    theta = theta_on_generators(r)
    phi1 = phi_images(pair, "phi1", 1, "t")
    phi2 = phi_images(pair, "phi2", 1, "t")

    def gen_form(x, y):
        return theta(phi1[x], phi2[y])

    return _bilinear(gen_form)


def pair_determinant_sign(pair: TwistingPair):
    """(−1)^{l(τ)}|α|, the value of the q-determinant on α in the minus-one case."""
    return pair.g_factor("phi1") if pair.q is not None else det(pair.alpha)
