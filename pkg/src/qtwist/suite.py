"""Named invariant checks shared by the ``verify-suite`` command.

Each check takes a seeded ``random.Random`` and returns ``(passed, detail)``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .frt import (
    FRT_CONVENTION,
    LaurentElement,
    QCASES,
    TwistingPair,
    check_cocycle_identity,
    check_twisting_pair,
    cocycle_closed_form,
    cocycle_sigma,
    comultiply,
    counit,
    frt_relations,
    grid,
    is_grouplike_central,
    manin_end,
    manin_twisting_pair,
    oq_matrix_relations,
    phi_automorphism,
    phi_images,
    q_determinant,
    qcase_parameter,
    relations_are_bi_ideal,
    twisting_pair_family,
    winding,
)
from .matrices import matmul
from .ncpoly import NCPoly
from .quadratic import (
    bullet,
    bullet_automorphism,
    dual_automorphism,
    hilbert_function,
    koszul_dual,
    relation_span_equal,
    zhang_twist_relations,
)
from .randgen import random_algebra, random_algebra_with_aut
from .tensor import is_qybe_solution
from .twist import TwistSpec, classical_rq, theta_on_generators, theta_twisted, twist_r, twist_rq_closed_form


def check_qybe(rng):
    cases = [(2, None), (3, None), (4, Fraction(2)), (4, Fraction(5, 3))]
    bad = [c for c in cases if not is_qybe_solution(classical_rq(*c))]
    return not bad, f"{len(cases)} operators, failures: {bad}"


def check_twisted_solutions(rng, samples=5):
    count = 0
    for qcase in QCASES:
        q = qcase_parameter(qcase)
        n = 2 if q is None else 3
        R = classical_rq(n, q)
        fam = twisting_pair_family(qcase, n)
        for _ in range(samples):
            if not is_qybe_solution(twist_r(R, TwistingPair(fam.sample(rng), R, q))):
                return False, f"{qcase}: twisted operator is not a solution"
            count += 1
    return True, f"{count} twisted operators"


def check_closed_form(rng, samples=10):
    for k in range(samples):
        qcase = QCASES[k % 3]
        q = qcase_parameter(qcase)
        n = rng.choice((2, 3))
        spec = TwistSpec(n, twisting_pair_family(qcase, n).sample(rng), q)
        if twist_rq_closed_form(spec) != twist_r(spec.base, spec.pair):
            return False, f"{qcase}, n={n}: closed form differs"
    return True, f"{samples} specs"


def check_frt_oq(rng):
    for n in (2, 3):
        if not relation_span_equal(frt_relations(classical_rq(n)), oq_matrix_relations(n)):
            return False, f"n={n}"
    return True, f"convention {FRT_CONVENTION.tag}"


def check_flatness(rng):
    dims = hilbert_function(oq_matrix_relations(2), 3)
    return dims == [1, 4, 10, 20], f"dimensions {dims}"


def check_qdet(rng):
    ok = is_grouplike_central(q_determinant(2), oq_matrix_relations(2))
    mutant = NCPoly.word(("x11", "x22"))
    ok = ok and not is_grouplike_central(mutant, oq_matrix_relations(2))
    return ok, "n=2 symbolic, mutant rejected"


def check_cocycle(rng, pairs=3):
    R = classical_rq(2)
    fam = twisting_pair_family("generic", 2)
    for _ in range(pairs):
        pair = TwistingPair(fam.sample(rng), R)
        if not check_cocycle_identity(pair, 1, random_triples=20, rng=rng):
            return False, f"cocycle identity fails for alpha={pair.alpha}"
        for _ in range(20):
            xw = [(rng.randint(1, 2), rng.randint(1, 2)) for _ in range(rng.randint(0, 3))]
            yw = [(rng.randint(1, 2), rng.randint(1, 2)) for _ in range(rng.randint(0, 3))]
            r, t = rng.randint(0, 2), rng.randint(0, 2)
            x = LaurentElement(NCPoly.word([f"x{i}{j}" for i, j in xw]), r)
            y = LaurentElement(NCPoly.word([f"x{i}{j}" for i, j in yw]), t)
            if cocycle_sigma(pair, x, y) != cocycle_closed_form(pair, xw, r, yw, t):
                return False, "closed form mismatch"
    return True, f"{pairs} pairs"


def check_pair_structure(rng, pairs=3):
    for _ in range(pairs):
        qcase = rng.choice(QCASES)
        q = qcase_parameter(qcase)
        n = 2
        R = classical_rq(n, q)
        fam = twisting_pair_family(qcase, n)
        a, b = fam.sample(rng), fam.sample(rng)
        if not (check_twisting_pair(R, matmul(a, b)) and check_twisting_pair(R, TwistingPair(a).beta)):
            return False, "group law"
        pair = TwistingPair(a, R, q)
        if not pair_identities_hold(pair, R):
            return False, f"pair identities fail for alpha={a}"
    return True, f"{pairs} pairs"


def pair_identities_hold(pair: TwistingPair, R) -> bool:
    """Winding identities, ε∘φ1∘φ2 = ε, φ1∘φ2 = φ2∘φ1 and (φ1⊗φ2)∘Δ = Δ on every generator."""
    n = pair.n
    G = grid("t", n)
    phi1 = phi_images(pair, "phi1", 1)
    phi2 = phi_images(pair, "phi2", 1)
    A = frt_relations(R)
    for row in G:
        for lab in row:
            t = NCPoly.gen(lab)
            if winding(pair.alpha, "right", t, A) != phi1[lab]:
                return False
            if winding(pair.beta, "left", t, A) != phi2[lab]:
                return False
            if counit(phi1[lab].substitute(phi2)) != counit(t):
                return False
            if phi1[lab].substitute(phi2) != phi2[lab].substitute(phi1):
                return False
            delta = comultiply(t, n, "t")
            moved = delta.map_left(lambda w: NCPoly.word(w).substitute(phi1)).map_right(
                lambda w: NCPoly.word(w).substitute(phi2)
            )
            if moved != delta:
                return False
    return True


def check_quadratic_theorems(rng, samples=5):
    for _ in range(samples):
        A = random_algebra(rng)
        if not relation_span_equal(koszul_dual(koszul_dual(A)), A):
            return False, "double dual"
        A, phi = random_algebra_with_aut(rng)
        B, psi = random_algebra_with_aut(rng)
        lhs = koszul_dual(zhang_twist_relations(A, phi.inverse()))
        if not relation_span_equal(lhs, zhang_twist_relations(koszul_dual(A), dual_automorphism(phi))):
            return False, "twist of dual"
        lhs = bullet(zhang_twist_relations(A, phi), zhang_twist_relations(B, psi))
        if not relation_span_equal(lhs, zhang_twist_relations(bullet(A, B), bullet_automorphism(phi, psi))):
            return False, "bullet twist"
        E, p1, p2 = manin_twisting_pair(A, phi)
        lhs = manin_end(zhang_twist_relations(A, phi)).algebra
        if not relation_span_equal(lhs, zhang_twist_relations(E.algebra, p1.compose(p2))):
            return False, "twist of end"
    return True, f"{samples} instances"


def check_envelope_twist(rng, pairs=3):
    """Zhang twist of A(R_q) versus A(R^σ); holds with the inverse of φ1∘φ2 here."""
    R = classical_rq(2)
    A = frt_relations(R)
    fam = twisting_pair_family("generic", 2)
    for _ in range(pairs):
        pair = TwistingPair(fam.sample(rng), R)
        phi = phi_automorphism(pair, "phi1", A).compose(phi_automorphism(pair, "phi2", A))
        if not relation_span_equal(zhang_twist_relations(A, phi.inverse()), frt_relations(twist_r(R, pair))):
            return False, f"alpha={pair.alpha}"
    return True, f"{pairs} diagonal pairs, twisting by (φ1∘φ2)⁻¹"


def check_bi_ideal(rng):
    ok = relations_are_bi_ideal(frt_relations(classical_rq(2)), 2, "t")
    R = classical_rq(2, 1)
    pair = TwistingPair(twisting_pair_family("one", 2).sample(rng), R, 1)
    ok = ok and relations_are_bi_ideal(frt_relations(twist_r(R, pair)), 2, "t")
    return ok, "R_q and one twisted operator"


def check_theta(rng, pairs=3):
    R = classical_rq(2)
    G = grid("t", 2)
    labels = [x for row in G for x in row]
    for _ in range(pairs):
        pair = TwistingPair(twisting_pair_family("generic", 2).sample(rng), R)
        lhs = theta_twisted(R, pair)
        rhs = theta_on_generators(twist_r(R, pair))
        if any(lhs(x, y) != rhs(x, y) for x in labels for y in labels):
            return False, "θ^σ differs from the twisted operator"
    return True, f"{pairs} pairs"


def check_hilbert_twist(rng, samples=3):
    for _ in range(samples):
        A, phi = random_algebra_with_aut(rng)
        if hilbert_function(A, 4) != hilbert_function(zhang_twist_relations(A, phi), 4):
            return False, "Hilbert function changed"
    return True, f"{samples} instances"


CHECKS = {
    "bi-ideal": check_bi_ideal,
    "closed-form": check_closed_form,
    "cocycle": check_cocycle,
    "envelope-twist": check_envelope_twist,
    "flatness": check_flatness,
    "frt-oq": check_frt_oq,
    "hilbert-twist": check_hilbert_twist,
    "pair-structure": check_pair_structure,
    "q-determinant": check_qdet,
    "quadratic-theorems": check_quadratic_theorems,
    "qybe": check_qybe,
    "theta": check_theta,
    "twisted-solutions": check_twisted_solutions,
}


def run_suite(seed: int, names=None):
    """Run checks in name order, each with its own generator seeded from ``seed``."""
    results = []
    for name in sorted(names or CHECKS):
        rng = random.Random(f"{seed}:{name}")
        try:
            passed, detail = CHECKS[name](rng)
        except Exception as exc:  # a crash is reported as a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append({"name": name, "passed": bool(passed), "detail": detail})
    return results

