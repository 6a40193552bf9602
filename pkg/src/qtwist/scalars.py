"""Exact coefficient field: rationals and rational functions in one variable q.

Rationals are plain :class:`fractions.Fraction` values.  Rational functions
are :class:`RatFunc` instances holding a coprime numerator/denominator pair
of dense polynomials over Q with a monic denominator.  Every arithmetic
result that happens to be constant collapses back to a ``Fraction``, so a
``RatFunc`` always genuinely depends on q and ``x - x`` is ``Fraction(0)``.

Textual form (used by every interchange document)::

    expr  := term (('+'|'-') term)*
    term  := coeff ('*' 'q^' int)? | 'q^' int
    coeff := int ('/' posint)?

optionally wrapped as ``(expr)/(expr)`` for non-Laurent rational functions.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, PoleAtPoint, ScalarParseError

# Polynomials are tuples of Fractions, lowest degree first, no trailing zeros.
Poly = tuple

_ZERO: Poly = ()
_ONE: Poly = (Fraction(1),)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return _ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    if c == 0:
        return _ZERO
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    """Euclidean division of polynomials over Q."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    rem = list(a)
    lead = b[-1]
    db = len(b) - 1
    quot = [Fraction(0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = rem[k + db] / lead
        if c:
            quot[k] = c
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return _trim(quot), _trim(rem[:db])


def _monic(a):
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(x / lead for x in a)


def _low_zeros(a):
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    return k


def _is_monomial(a):
    return bool(a) and _low_zeros(a) == len(a) - 1


def _pgcd(a, b):
    """Monic gcd."""
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _monic(a)


def _peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _from_scalar_poly(x):
    if isinstance(x, RatFunc):
        return x.num, x.den
    x = Fraction(x)
    return ((x,) if x else _ZERO), _ONE


def _make(num, den):
    """Normalize num/den and collapse constants to Fraction."""
    if not den:
        raise DivisionByZero("rational function with zero denominator")
    if not num:
        return Fraction(0)
    if _is_monomial(den):
        # fast path for Laurent polynomials: only powers of q can cancel
        k = min(len(den) - 1, _low_zeros(num))
        if k:
            num = num[k:]
            den = den[k:]
    else:
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        num = tuple(x / lead for x in num)
        den = tuple(x / lead for x in den)
    if len(num) == 1 and len(den) == 1:
        return num[0]
    obj = object.__new__(RatFunc)
    obj.num = num
    obj.den = den
    return obj


class RatFunc:
    """An element of Q(q) that is not a constant.

    Construct through :data:`q`, :func:`ratfunc` or :func:`parse_scalar`;
    arithmetic with ints and Fractions is supported on either side.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        raise TypeError("use ratfunc(num, den) to build rational functions")

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (RatFunc, int, Fraction)):
            return NotImplemented
        b, d = _from_scalar_poly(other)
        if d == self.den:
            return _make(_padd(self.num, b), d)
        return _make(_padd(_pmul(self.num, d), _pmul(b, self.den)), _pmul(self.den, d))

    __radd__ = __add__

    def __neg__(self):
        return _make(_pneg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (RatFunc, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Fraction(0)
            return _make(_pscale(self.num, Fraction(other)), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return _make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, int, Fraction)):
            return NotImplemented
        return self * field_inv(other)

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return field_inv(self) * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return field_inv(self) ** (-k)
        num, den = _ONE, _ONE
        bn, bd = self.num, self.den
        while k:
            if k & 1:
                num, den = _pmul(num, bn), _pmul(den, bd)
            bn, bd = _pmul(bn, bn), _pmul(bd, bd)
            k >>= 1
        return _make(num, den)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, RatFunc]

#: The indeterminate q.
q = _make((Fraction(0), Fraction(1)), _ONE)


def ratfunc(num, den=(1,)):
    """Build ``num/den`` from coefficient sequences (lowest degree first)."""
    return _make(_trim(Fraction(c) for c in num), _trim(Fraction(c) for c in den))


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, RatFuncs and scalar strings to a field element."""
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def is_symbolic(x) -> bool:
    return isinstance(x, RatFunc)


def field_add(a, b) -> Scalar:
    return as_scalar(a) + as_scalar(b)


def field_mul(a, b) -> Scalar:
    return as_scalar(a) * as_scalar(b)


def field_inv(a) -> Scalar:
    a = as_scalar(a)
    if isinstance(a, RatFunc):
        return _make(a.den, a.num)
    if a == 0:
        raise DivisionByZero("inverse of zero")
    return 1 / a


def specialize(f, q0) -> Fraction:
    """Evaluate ``f`` at ``q = q0``; constants pass through unchanged."""
    f = as_scalar(f)
    if not isinstance(f, RatFunc):
        return f
    q0 = Fraction(q0)
    d = _peval(f.den, q0)
    if d == 0:
        raise PoleAtPoint(f"denominator of {format_scalar(f)} vanishes at q = {q0}")
    return _peval(f.num, q0) / d


# formatting -----------------------------------------------------------------


def _laurent_terms(num, shift):
    """(coefficient, exponent) pairs of num * q^shift, descending exponent."""
    return [(c, i + shift) for i, c in reversed(list(enumerate(num))) if c]


def _format_terms(terms):
    parts = []
    for idx, (c, e) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = str(a)
        elif a == 1:
            body = f"q^{e}"
        else:
            body = f"{a}*q^{e}"
        if idx == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


def format_scalar(x) -> str:
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return str(x)
    if _is_monomial(x.den):
        return _format_terms(_laurent_terms(x.num, -(len(x.den) - 1)))
    return f"({_format_terms(_laurent_terms(x.num, 0))})/({_format_terms(_laurent_terms(x.den, 0))})"


# parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|([-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarParseError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos} in {text!r}")
        num, qq, op = m.groups()
        out.append(("int", int(num)) if num else ("q", None) if qq else ("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise ScalarParseError(f"expected {want!r} at token {self.i} in {self.text!r}")
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def signed_int(self):
        sign = 1
        while self.at("op", "-") or self.at("op", "+"):
            if self.take()[1] == "-":
                sign = -sign
        return sign * self.take("int")[1]

    def qpower(self):
        self.take("q")
        if self.at("op", "^"):
            self.take()
            return self.signed_int()
        return 1

    def term(self):
        """Returns (coefficient, exponent)."""
        if self.at("q"):
            return Fraction(1), self.qpower()
        c = Fraction(self.take("int")[1])
        if self.at("op", "/") and self.i + 1 < len(self.toks) and self.toks[self.i + 1][0] == "int":
            self.take()
            d = self.take("int")[1]
            if d == 0:
                raise ScalarParseError(f"zero denominator in {self.text!r}")
            c /= d
        if self.at("op", "*"):
            self.take()
            return c, self.qpower()
        return c, 0

    def expr(self):
        terms = {}
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            c, e = self.term()
            terms[e] = terms.get(e, Fraction(0)) + sign * c
            if self.at("op", "+") or self.at("op", "-"):
                sign = -1 if self.take()[1] == "-" else 1
                continue
            break
        return _laurent_to_scalar(terms)

    def parse(self):
        if self.at("op", "("):
            self.take()
            num = self.expr()
            self.take("op", ")")
            self.take("op", "/")
            self.take("op", "(")
            den = self.expr()
            self.take("op", ")")
            value = num * field_inv(den)
        else:
            value = self.expr()
        if self.i != len(self.toks):
            raise ScalarParseError(f"trailing input at token {self.i} in {self.text!r}")
        return value


def _laurent_to_scalar(terms):
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        return Fraction(0)
    low = min(min(terms), 0)
    top = max(terms)
    num = [Fraction(0)] * (top - low + 1)
    for e, c in terms.items():
        num[e - low] = c
    den = [Fraction(0)] * (-low) + [Fraction(1)]
    return _make(_trim(num), tuple(den))


def parse_scalar(text: str) -> Scalar:
    if not isinstance(text, str):
        raise ScalarParseError(f"scalar must be a string, got {type(text).__name__}")
    if not text.strip():
        raise ScalarParseError("empty scalar")
    return _Parser(text).parse()
