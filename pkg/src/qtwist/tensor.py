"""Endomorphisms of V⊗V and V⊗V⊗V with exact coefficients.

Index convention (the single authority for the whole package): an
:class:`EndTensor` entry ``coeffs[(i, j, k, l)]`` is the coefficient
R^{ij}_{kl} in

    R(x_k ⊗ x_l) = Σ_{i,j} R^{ij}_{kl} x_i ⊗ x_j,

so the first two indices are outputs and the last two are inputs.  Indices
are 1-based.  :class:`EndTensor3` stores (out1, out2, out3, in1, in2, in3)
in the same way.  Zero coefficients are never stored.
"""

from __future__ import annotations

import json
from collections import defaultdict
from fractions import Fraction
from itertools import product

from .errors import DimensionMismatch, FormatError, IndexOutOfRange, ScalarParseError
from .scalars import as_scalar, format_scalar, parse_scalar, specialize

MAX_DIM = 8


def _check_n(n):
    if not isinstance(n, int) or isinstance(n, bool):
        raise DimensionMismatch(f"dimension must be an integer, got {n!r}")
    if n < 2 or n > MAX_DIM:
        raise DimensionMismatch(f"dimension {n} outside the supported range 2..{MAX_DIM}")


class _SparseEnd:
    arity = 0

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        _check_n(n)
        clean = {}
        for key, value in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != 2 * self.arity:
                raise DimensionMismatch(f"expected {2 * self.arity} indices, got {key}")
            for idx in key:
                if not 1 <= idx <= n:
                    raise IndexOutOfRange(f"index {idx} outside 1..{n}")
            value = as_scalar(value)
            if value != 0:
                clean[key] = value
        self.n = n
        self.coeffs = clean

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.n, frozenset(self.coeffs.items())))

    def __getitem__(self, key):
        return self.coeffs.get(tuple(key), Fraction(0))

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def _combine(self, other, sign):
        if type(other) is not type(self):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")
        out = dict(self.coeffs)
        for key, value in other.coeffs.items():
            out[key] = out.get(key, 0) + sign * value
        return type(self)(self.n, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c):
        c = as_scalar(c)
        return type(self)(self.n, {k: c * v for k, v in self.coeffs.items()})

    def specialize(self, q0):
        return type(self)(self.n, {k: specialize(v, q0) for k, v in self.coeffs.items()})

    def by_output(self):
        """Group entries by their output multi-index."""
        table = defaultdict(list)
        a = self.arity
        for key, value in self.coeffs.items():
            table[key[:a]].append((key[a:], value))
        return table

    def by_input(self):
        table = defaultdict(list)
        a = self.arity
        for key, value in self.coeffs.items():
            table[key[a:]].append((key[:a], value))
        return table

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, nnz={len(self.coeffs)})"


class EndTensor(_SparseEnd):
    """An element of End(V⊗V), dim V = n."""

    arity = 2
    __slots__ = ()

    @classmethod
    def identity(cls, n):
        return cls(n, {(i, j, i, j): 1 for i in range(1, n + 1) for j in range(1, n + 1)})

    @classmethod
    def flip(cls, n):
        return cls(n, {(j, i, i, j): 1 for i in range(1, n + 1) for j in range(1, n + 1)})

    def compose(self, other):
        return _compose(self, other)

    def __matmul__(self, other):
        return _compose(self, other)


class EndTensor3(_SparseEnd):
    """An element of End(V⊗V⊗V)."""

    arity = 3
    __slots__ = ()

    @classmethod
    def identity(cls, n):
        r = range(1, n + 1)
        return cls(n, {(a, b, c, a, b, c): 1 for a, b, c in product(r, r, r)})

    def __matmul__(self, other):
        return compose3(self, other)


def _compose(a, b):
    """a ∘ b for tensors of equal arity."""
    if type(a) is not type(b):
        raise DimensionMismatch("cannot compose tensors of different arity")
    if a.n != b.n:
        raise DimensionMismatch(f"dimensions {a.n} and {b.n} differ")
    arity = a.arity
    b_out = b.by_output()
    acc = {}
    for key, x in a.coeffs.items():
        out, mid = key[:arity], key[arity:]
        for inp, y in b_out.get(mid, ()):
            k = out + inp
            acc[k] = acc.get(k, 0) + x * y
    return type(a)(a.n, acc)


def compose3(a: EndTensor3, b: EndTensor3) -> EndTensor3:
    return _compose(a, b)


def place(r: EndTensor, legs) -> EndTensor3:
    """Embed R into End(V⊗3) acting on the given pair of legs (12, 13 or 23)."""
    legs = str(legs)
    n = r.n
    out = {}
    rng = range(1, n + 1)
    for (i, j, k, l), v in r.coeffs.items():
        for m in rng:
            if legs == "12":
                key = (i, j, m, k, l, m)
            elif legs == "13":
                key = (i, m, j, k, m, l)
            elif legs == "23":
                key = (m, i, j, m, k, l)
            else:
                raise ValueError(f"legs must be one of 12, 13, 23, got {legs!r}")
            out[key] = v
    return EndTensor3(n, out)


def qybe_residual(r: EndTensor) -> EndTensor3:
    """R¹²R¹³R²³ − R²³R¹³R¹²; empty exactly when R solves the QYBE."""
    r12, r13, r23 = place(r, 12), place(r, 13), place(r, 23)
    return compose3(compose3(r12, r13), r23) - compose3(compose3(r23, r13), r12)


def is_qybe_solution(r: EndTensor) -> bool:
    return qybe_residual(r).is_zero()


def act(r: EndTensor, k: int, l: int):
    """Nonzero coefficients of R(x_k ⊗ x_l) as (i, j, value) triples."""
    for idx in (k, l):
        if not 1 <= idx <= r.n:
            raise IndexOutOfRange(f"index {idx} outside 1..{r.n}")
    return sorted(
        ((i, j, v) for (i, j, kk, ll), v in r.coeffs.items() if (kk, ll) == (k, l)),
        key=lambda t: (t[0], t[1]),
    )


# interchange documents ------------------------------------------------------


def tensor_to_doc(r: EndTensor) -> dict:
    entries = [
        {"i": i, "j": j, "k": k, "l": l, "value": format_scalar(v)}
        for (i, j, k, l), v in sorted(r.coeffs.items())
    ]
    return {"n": r.n, "entries": entries}


def tensor_from_doc(doc) -> EndTensor:
    if not isinstance(doc, dict):
        raise FormatError("R-matrix document must be a JSON object")
    if "n" not in doc or not isinstance(doc["n"], int) or isinstance(doc["n"], bool):
        raise FormatError("missing or non-integer field", "n")
    n = doc["n"]
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise FormatError("must be a list", "entries")
    coeffs = {}
    for pos, e in enumerate(entries):
        where = f"entries[{pos}]"
        if not isinstance(e, dict):
            raise FormatError("entry must be an object", where)
        key = []
        for name in "ijkl":
            v = e.get(name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise FormatError("missing or non-integer index", f"{where}.{name}")
            if not 1 <= v <= n:
                raise FormatError(f"index {v} outside 1..{n}", f"{where}.{name}")
            key.append(v)
        try:
            value = parse_scalar(e.get("value"))
        except ScalarParseError as exc:
            raise FormatError(str(exc), f"{where}.value") from None
        if value == 0:
            raise FormatError("zero entries are not allowed", f"{where}.value")
        key = tuple(key)
        if key in coeffs:
            raise FormatError(f"duplicate entry {key}", where)
        coeffs[key] = value
    try:
        return EndTensor(n, coeffs)
    except DimensionMismatch as exc:
        raise FormatError(str(exc), "n") from None


def dumps_tensor(r: EndTensor) -> str:
    return json.dumps(tensor_to_doc(r), indent=2) + "\n"


def loads_tensor(text: str) -> EndTensor:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return tensor_from_doc(doc)
