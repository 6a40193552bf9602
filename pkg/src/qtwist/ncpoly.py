"""Noncommutative polynomials and their tensor squares.

Words are tuples of generator labels; the empty tuple is the unit.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import RatFunc, as_scalar, format_scalar

_SCALARS = (int, Fraction, RatFunc)


def _add_into(acc, key, value):
    nv = acc.get(key, 0) + value
    if nv == 0:
        acc.pop(key, None)
    else:
        acc[key] = nv


def _coeff_prefix(c):
    """Render a coefficient in front of a word, returning (negative, text)."""
    if isinstance(c, Fraction):
        neg = c < 0
        a = -c if neg else c
        return neg, "" if a == 1 else f"{a}*"
    text = format_scalar(c)
    if text.startswith("-") and " " not in text and "(" not in text:
        return True, f"{text[1:]}*"
    if " " in text and not text.startswith("("):
        text = f"({text})"
    return False, f"{text}*"


class NCPoly:
    """A finitely supported element of the free algebra on some labels."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for word, c in (terms or {}).items():
            c = as_scalar(c)
            if c != 0:
                clean[tuple(word)] = c
        self.terms = clean

    @classmethod
    def gen(cls, label, coeff=1):
        return cls({(label,): coeff})

    @classmethod
    def word(cls, word, coeff=1):
        return cls({tuple(word): coeff})

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    # algebra ------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, _SCALARS):
            other = NCPoly.const(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return NCPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            other = NCPoly.const(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c = as_scalar(other)
            if c == 0:
                return NCPoly()
            return NCPoly._raw({w: v * c for w, v in self.terms.items()})
        if not isinstance(other, NCPoly):
            return NotImplemented
        acc = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(acc, w1 + w2, c1 * c2)
        return NCPoly._raw(acc)

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self * other
        return NotImplemented

    def __pow__(self, k):
        out = NCPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = NCPoly.const(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # grading ------------------------------------------------------------
    def degrees(self):
        return {len(w) for w in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        """Degree of a homogeneous polynomial (0 for the zero polynomial)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop() if degs else 0

    def homogeneous_parts(self):
        parts = {}
        for w, c in self.terms.items():
            parts.setdefault(len(w), {})[w] = c
        return {d: NCPoly._raw(t) for d, t in sorted(parts.items())}

    def labels(self):
        return {x for w in self.terms for x in w}

    # maps ---------------------------------------------------------------
    def substitute(self, images):
        """Apply the algebra map sending each label to ``images[label]``.

        Images may be NCPolys or scalars; a missing label is left fixed.
        """
        cache = {}

        def image(x):
            if x not in cache:
                v = images.get(x, None)
                if v is None:
                    v = NCPoly.gen(x)
                elif isinstance(v, _SCALARS):
                    v = NCPoly.const(v)
                cache[x] = v
            return cache[x]

        acc = {}
        for w, c in self.terms.items():
            prod = {(): c}
            for x in w:
                img = image(x).terms
                nxt = {}
                for pw, pc in prod.items():
                    for iw, ic in img.items():
                        _add_into(nxt, pw + iw, pc * ic)
                prod = nxt
                if not prod:
                    break
            for pw, pc in prod.items():
                _add_into(acc, pw, pc)
        return NCPoly._raw(acc)

    def evaluate(self, values):
        """Evaluate at commuting scalar values for every label (a character)."""
        total = Fraction(0)
        for w, c in self.terms.items():
            term = c
            for x in w:
                term = term * values[x]
                if term == 0:
                    break
            total = total + term
        return total

    # text ---------------------------------------------------------------
    def sorted_terms(self, key=None):
        return sorted(self.terms.items(), key=key or (lambda t: (len(t[0]), t[0])))

    def to_string(self, key=None):
        if not self.terms:
            return "0"
        parts = []
        for idx, (w, c) in enumerate(self.sorted_terms(key)):
            if not w:
                text = format_scalar(c)
                neg = text.startswith("-") and " " not in text
                body = text[1:] if neg else (f"({text})" if " " in text and idx else text)
            else:
                neg, prefix = _coeff_prefix(c)
                body = prefix + "*".join(str(x) for x in w)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"NCPoly({self.to_string()!r})"


class NCTensor:
    """An element of F ⊗ F for a free algebra F, keyed by pairs of words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (w1, w2), c in (terms or {}).items():
            c = as_scalar(c)
            if c != 0:
                clean[(tuple(w1), tuple(w2))] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def pure(cls, left: NCPoly, right: NCPoly):
        acc = {}
        for w1, c1 in left.terms.items():
            for w2, c2 in right.terms.items():
                _add_into(acc, (w1, w2), c1 * c2)
        return cls._raw(acc)

    def __add__(self, other):
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return NCTensor._raw(acc)

    def __neg__(self):
        return NCTensor._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c = as_scalar(other)
            return NCTensor._raw({k: v * c for k, v in self.terms.items()} if c != 0 else {})
        acc = {}
        for (a1, a2), c1 in self.terms.items():
            for (b1, b2), c2 in other.terms.items():
                _add_into(acc, (a1 + b1, a2 + b2), c1 * c2)
        return NCTensor._raw(acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, NCTensor):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def map_left(self, fn):
        """Apply a linear map word -> NCPoly (or scalar) to the left factor."""
        return self._map(fn, 0)

    def map_right(self, fn):
        return self._map(fn, 1)

    def _map(self, fn, side):
        acc = {}
        cache = {}
        for (w1, w2), c in self.terms.items():
            w = (w1, w2)[side]
            if w not in cache:
                cache[w] = fn(w)
            img = cache[w]
            if isinstance(img, _SCALARS):
                img = NCPoly.const(img)
            for iw, ic in img.terms.items():
                key = (iw, w2) if side == 0 else (w1, iw)
                _add_into(acc, key, c * ic)
        return NCTensor._raw(acc)

    def contract(self, left_fn=None, right_fn=None):
        """Apply a scalar-valued functional to one side, returning an NCPoly."""
        acc = {}
        for (w1, w2), c in self.terms.items():
            if left_fn is not None:
                s, w = left_fn(w1), w2
            else:
                s, w = right_fn(w2), w1
            if s != 0:
                _add_into(acc, w, c * s)
        return NCPoly._raw(acc)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, ((w1, w2), c) in enumerate(sorted(self.terms.items(), key=lambda t: t[0])):
            neg, prefix = _coeff_prefix(c) if c != 1 else (False, "")
            body = prefix + ("*".join(w1) or "1") + " ⊗ " + ("*".join(w2) or "1")
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"NCTensor({str(self)!r})"
