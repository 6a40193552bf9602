import random
from fractions import Fraction

import pytest

from qtwist.errors import CaseMismatch, InvalidPair, ZeroParameter
from qtwist.frt import QCASES, TwistingPair, counit, grid, qcase_parameter, twisting_pair_family
from qtwist.matrices import matmul
from qtwist.ncpoly import NCPoly
from qtwist.scalars import q
from qtwist.tensor import EndTensor, is_qybe_solution
from qtwist.twist import (
    TwistSpec,
    classical_rq,
    pair_determinant_sign,
    theta_on_generators,
    theta_twisted,
    twist_r,
    twist_rq_closed_form,
)

UNIPOTENT = ((1, 1), (0, 1))


def test_rq_entries():
    r = classical_rq(2)
    assert r.coeffs == {
        (1, 1, 1, 1): q,
        (2, 2, 2, 2): q,
        (1, 2, 1, 2): 1,
        (2, 1, 2, 1): 1,
        (1, 2, 2, 1): q - 1 / q,
    }


@pytest.mark.parametrize("n", [2, 3, 5])
def test_rq_at_one_is_identity(n):
    assert classical_rq(n, 1) == EndTensor.identity(n)


def test_rq_rejects_zero():
    with pytest.raises(ZeroParameter):
        classical_rq(2, 0)


def test_rq3_is_a_solution():
    assert is_qybe_solution(classical_rq(3))


def test_identity_pair_leaves_r_unchanged():
    r = classical_rq(3)
    assert twist_r(r, TwistingPair.identity(3)) == r


def test_unipotent_twist_at_one():
    rs = twist_r(classical_rq(2, 1), UNIPOTENT)
    assert rs[(1, 1, 1, 2)] == -1


def test_diagonal_cross_term():
    a, b = Fraction(2), Fraction(3)
    rs = twist_r(classical_rq(2), [[a, 0], [0, b]])
    # the factor is α_i^i (α_l^l)⁻¹ and the cross term has i = l = 2
    assert rs[(1, 2, 2, 1)] == q - 1 / q
    assert rs[(1, 2, 1, 2)] == a / b
    assert rs[(2, 1, 2, 1)] == b / a


def test_invalid_alpha():
    with pytest.raises(InvalidPair):
        twist_r(classical_rq(2), [[1, 2], [2, 4]])
    with pytest.raises(InvalidPair) as info:
        twist_r(classical_rq(2, 5), UNIPOTENT)
    assert info.value.relation_index == 1


def test_closed_form_examples():
    assert twist_rq_closed_form(TwistSpec(2, [[1, 0], [0, 1]])) == classical_rq(2)
    spec = TwistSpec(2, UNIPOTENT, q=1)
    assert twist_rq_closed_form(spec) == twist_r(spec.base, spec.pair)
    spec = TwistSpec(2, [[0, 1], [1, 0]], q=-1)
    assert spec.tau == (1, 0)
    assert twist_rq_closed_form(spec) == twist_r(spec.base, spec.pair)


def test_spec_case_mismatch():
    with pytest.raises(CaseMismatch):
        TwistSpec(2, [[1, 0], [0, 1]], q=2, qcase="one")
    with pytest.raises(CaseMismatch):
        TwistSpec(2, [[0, 1], [1, 0]], q=2)


@pytest.mark.parametrize("seed", range(12))
def test_closed_form_oracle(seed):
    rng = random.Random(seed)
    qcase = QCASES[seed % 3]
    n = rng.choice((2, 3))
    spec = TwistSpec(n, twisting_pair_family(qcase, n).sample(rng), qcase_parameter(qcase))
    assert twist_rq_closed_form(spec) == twist_r(spec.base, spec.pair)


@pytest.mark.parametrize(
    "n, qv, qcase",
    [(2, None, "generic"), (3, None, "generic"), (4, Fraction(2), "generic"), (4, Fraction(5, 3), "generic"),
     (3, 1, "one"), (3, -1, "minus-one")],
)
def test_twists_stay_solutions(n, qv, qcase, rng):
    r = classical_rq(n, qv)
    fam = twisting_pair_family(qcase, n)
    for _ in range(4):
        assert is_qybe_solution(twist_r(r, fam.sample(rng)))


@pytest.mark.parametrize("qcase", QCASES)
def test_twist_formula_composes(qcase, rng):
    # the second α need not be a twisting pair of the first twist, so only the formula is compared
    r = classical_rq(3, qcase_parameter(qcase))
    fam = twisting_pair_family(qcase, 3)
    a, b = fam.sample(rng), fam.sample(rng)
    assert twist_r(twist_r(r, a), b, check=False) == twist_r(r, matmul(a, b))


def test_q_one_degeneration(rng):
    fam = twisting_pair_family("one", 3)
    for _ in range(5):
        pair = TwistingPair(fam.sample(rng))
        rs = twist_rq_closed_form(TwistSpec(3, pair.alpha, q=1))
        for k in range(3):
            for l in range(3):
                for i in range(3):
                    for j in range(3):
                        assert rs[(k + 1, l + 1, i + 1, j + 1)] == pair.alpha[k][i] * pair.beta[l][j]


def test_theta_on_rq():
    theta = theta_on_generators(classical_rq(2))
    assert theta("t^1_1", "t^1_1") == q
    assert theta("t^1_2", "t^2_1") == q - 1 / q
    assert theta("t^1_1", "t^2_2") == 1


def test_theta_twisted_examples():
    r = classical_rq(2)
    labels = [lab for row in grid("t", 2) for lab in row]
    plain = theta_on_generators(r)
    ident = theta_twisted(r, TwistingPair.identity(2))
    assert all(plain(a, b) == ident(a, b) for a in labels for b in labels)
    r1 = classical_rq(2, 1)
    tw = theta_twisted(r1, UNIPOTENT)
    rs = twist_r(r1, UNIPOTENT)
    for k in (1, 2):
        for u in (1, 2):
            for l in (1, 2):
                for v in (1, 2):
                    assert tw(f"t^{k}_{u}", f"t^{l}_{v}") == rs[(k, l, u, v)]
    for lab in labels:
        assert tw(NCPoly.const(1), lab) == counit(NCPoly.gen(lab))


@pytest.mark.parametrize("qcase", QCASES)
def test_theta_consistency(qcase, rng):
    r = classical_rq(3, qcase_parameter(qcase))
    labels = [lab for row in grid("t", 3) for lab in row]
    for _ in range(3):
        pair = TwistingPair(twisting_pair_family(qcase, 3).sample(rng))
        lhs, rhs = theta_twisted(r, pair), theta_on_generators(twist_r(r, pair))
        assert all(lhs(a, b) == rhs(a, b) for a in labels for b in labels)


def test_determinant_sign_minus_one():
    pair = TwistingPair([[0, 2], [3, 0]], q=-1)
    # x11 x22 + x21 x12 at α gives α21 α12 = 6, the sign (−1)^{l(τ)} cancels det = −6
    assert pair_determinant_sign(pair) == 6
