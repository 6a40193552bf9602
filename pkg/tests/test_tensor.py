import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtwist.errors import DimensionMismatch, FormatError, IndexOutOfRange
from qtwist.scalars import q
from qtwist.tensor import (
    EndTensor,
    EndTensor3,
    act,
    compose3,
    dumps_tensor,
    is_qybe_solution,
    loads_tensor,
    place,
    qybe_residual,
)
from qtwist.twist import classical_rq


def apply3(t, a, b, c):
    """Image of the basis vector v_a⊗v_b⊗v_c as {(i, j, k): coeff}."""
    return {key[:3]: v for key, v in t.coeffs.items() if key[3:] == (a, b, c)}


def test_place_identity():
    assert place(EndTensor.identity(3), 12) == EndTensor3.identity(3)


def test_place_flip_on_last_legs():
    assert apply3(place(EndTensor.flip(2), 23), 1, 1, 2) == {(1, 2, 1): 1}


def test_place_rq_on_outer_legs():
    image = apply3(place(classical_rq(2), 13), 2, 1, 1)
    assert image == {(2, 1, 1): 1, (1, 1, 2): q - 1 / q}


def test_compose3_identity_and_flip_square():
    x = place(classical_rq(2), 13)
    assert compose3(EndTensor3.identity(2), x) == x
    tau = place(EndTensor.flip(2), 12)
    assert compose3(tau, tau) == EndTensor3.identity(2)


def test_compose3_single_entries():
    a = EndTensor3(2, {(1, 1, 2, 2, 1, 1): 3})
    b = EndTensor3(2, {(2, 1, 1, 1, 2, 2): Fraction(1, 2)})
    assert compose3(a, b) == EndTensor3(2, {(1, 1, 2, 1, 2, 2): Fraction(3, 2)})


@pytest.mark.parametrize("r", [EndTensor.identity(2), EndTensor.flip(3), classical_rq(2)])
def test_qybe_residual_vanishes(r):
    assert qybe_residual(r).is_zero()


def test_act_on_rq():
    r = classical_rq(2)
    assert act(r, 1, 2) == [(1, 2, 1)]
    assert act(r, 2, 1) == [(1, 2, q - 1 / q), (2, 1, 1)]
    assert act(r, 1, 1) == [(1, 1, q)]
    with pytest.raises(IndexOutOfRange):
        act(r, 3, 1)


def test_zero_entries_are_dropped():
    assert len(EndTensor(2, {(1, 1, 1, 1): 0, (1, 2, 1, 2): 1})) == 1


@pytest.mark.parametrize("n", [1, 9])
def test_dimension_cap(n):
    with pytest.raises(DimensionMismatch):
        EndTensor(n)


def test_perturbed_rq_is_not_a_solution():
    coeffs = dict(classical_rq(2).coeffs)
    coeffs[(1, 2, 1, 2)] = Fraction(2)
    assert not is_qybe_solution(EndTensor(2, coeffs))


sparse_entries = st.dictionaries(
    st.tuples(*[st.integers(1, 2)] * 4), st.integers(-3, 3), max_size=6
)


@given(sparse_entries, sparse_entries, st.sampled_from(["12", "13", "23"]))
@settings(max_examples=40, deadline=None)
def test_place_respects_composition(e1, e2, legs):
    a, b = EndTensor(2, e1), EndTensor(2, e2)
    assert place(a @ b, legs) == compose3(place(a, legs), place(b, legs))


@given(sparse_entries)
def test_serialization_round_trip(entries):
    r = EndTensor(2, entries)
    assert loads_tensor(dumps_tensor(r)) == r


def test_symbolic_round_trip():
    r = classical_rq(3)
    assert loads_tensor(dumps_tensor(r)) == r


@pytest.mark.parametrize(
    "doc, where",
    [
        ({"entries": []}, "n"),
        ({"n": 2, "entries": [{"i": 1, "j": 1, "k": 1, "l": 3, "value": "1"}]}, "entries[0].l"),
        ({"n": 2, "entries": [{"i": 1, "j": 1, "k": 1, "l": 1, "value": "x"}]}, "entries[0].value"),
    ],
)
def test_format_errors_name_the_field(doc, where):
    with pytest.raises(FormatError) as info:
        loads_tensor(json.dumps(doc))
    assert info.value.where == where
