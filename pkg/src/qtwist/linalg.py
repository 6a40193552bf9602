"""Sparse exact linear algebra on vectors stored as ``{key: scalar}`` dicts.

Keys must be mutually comparable; the *largest* key of a vector is its
leading key, and pivots are always taken there.  With words ordered
lexicographically this makes the leading key the leading monomial, so
normal forms are supported on the smaller, non-pivot words.
"""

from __future__ import annotations

import heapq

from .scalars import field_inv


def _clean(vec):
    return {k: v for k, v in vec.items() if v != 0}


def _axpy(target, coeff, vec):
    """target -= coeff * vec, in place."""
    for k, v in vec.items():
        nv = target.get(k, 0) - coeff * v
        if nv == 0:
            target.pop(k, None)
        else:
            target[k] = nv


class Echelon:
    """Incrementally built semi-echelon basis of a subspace.

    Each stored row is monic at its leading key and no two rows share a
    leading key.  ``reduce`` returns the unique representative of
    ``vec + span`` supported on non-pivot keys.
    """

    def __init__(self, vectors=()):
        self.rows = {}
        for v in vectors:
            self.add(v)

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return set(self.rows)

    def _reduce_leading(self, vec):
        vec = _clean(vec)
        while vec:
            lead = max(vec)
            row = self.rows.get(lead)
            if row is None:
                return vec, lead
            _axpy(vec, vec[lead], row)
        return vec, None

    def add(self, vec):
        """Insert a vector; returns False when it was already in the span."""
        vec, lead = self._reduce_leading(vec)
        if lead is None:
            return False
        inv = field_inv(vec[lead])
        self.rows[lead] = {k: v * inv for k, v in vec.items()}
        return True

    def reduce(self, vec):
        vec = _clean(vec)
        if not self.rows:
            return vec
        out = {}
        heap = [_Neg(k) for k in vec]
        heapq.heapify(heap)
        seen = set(vec)
        while heap:
            k = heapq.heappop(heap).key
            seen.discard(k)
            c = vec.pop(k, 0)
            if c == 0:
                continue
            row = self.rows.get(k)
            if row is None:
                out[k] = c
                continue
            for rk, rv in row.items():
                if rk == k:
                    continue
                nv = vec.get(rk, 0) - c * rv
                if nv == 0:
                    vec.pop(rk, None)
                else:
                    vec[rk] = nv
                    if rk not in seen:
                        seen.add(rk)
                        heapq.heappush(heap, _Neg(rk))
        return out

    def contains(self, vec):
        return not self.reduce(vec)

    def reduced_basis(self):
        """Fully reduced echelon basis, sorted by leading key, largest first."""
        keys = sorted(self.rows, reverse=True)
        full = {}
        # back-substitute from the smallest pivot upwards
        for k in reversed(keys):
            row = dict(self.rows[k])
            for other in list(row):
                if other != k and other in full:
                    _axpy(row, row[other], full[other])
            full[k] = row
        return [full[k] for k in keys]


class _Neg:
    """Max-heap adaptor for arbitrary comparable keys."""

    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __lt__(self, other):
        return self.key > other.key


def rref(vectors):
    """Canonical reduced echelon basis of the span of ``vectors``."""
    return Echelon(vectors).reduced_basis()


def orthogonal_complement(vectors, keys):
    """Basis of {f : Σ_k f[k] v[k] = 0 for all v} inside the space spanned by ``keys``."""
    basis = rref(vectors)
    pivots = {max(row): row for row in basis}
    out = []
    for free in keys:
        if free in pivots:
            continue
        f = {free: 1}
        for p, row in pivots.items():
            c = row.get(free, 0)
            if c != 0:
                f[p] = -c
        out.append(f)
    return rref(out)
