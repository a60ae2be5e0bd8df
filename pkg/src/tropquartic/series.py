"""Exact truncated Puiseux series over Q.

A series is a finite list of (exponent, coefficient) pairs with rational
exponents (negative exponents allowed) plus a truncation order: every
exponent >= trunc is unknown.  Polynomial data has trunc = +infinity and
all arithmetic on it is exact, which is what the re-embedding pipeline
relies on to decide coefficient cancellations soundly.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf, isinf, isqrt

__all__ = [
    "PuiseuxSeries",
    "PrecisionExhausted",
    "NotASquare",
    "t_power",
    "rational",
    "ZERO",
    "ONE",
]


class PrecisionExhausted(ArithmeticError):
    """All known terms cancelled below the truncation order."""


class NotASquare(ArithmeticError):
    """Leading coefficient has no rational square root."""


def _frac(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def _addb(a, b):
    if isinf(a) or isinf(b):
        return inf
    return a + b


class PuiseuxSeries:
    """Immutable truncated series sum c_e * t^e, exponents strictly increasing."""

    __slots__ = ("terms", "trunc")

    def __init__(self, terms=(), trunc=inf):
        merged = {}
        for e, c in terms:
            e = _frac(e)
            c = _frac(c)
            merged[e] = merged.get(e, Fraction(0)) + c
        if not isinf(trunc):
            trunc = _frac(trunc)
        clean = tuple(
            (e, c) for e, c in sorted(merged.items()) if c != 0 and e < trunc
        )
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, *a):
        raise AttributeError("PuiseuxSeries is immutable")

    # -- basic queries ---------------------------------------------------

    def is_exact_zero(self):
        return not self.terms and isinf(self.trunc)

    def val(self):
        """Least exponent.  +inf only for the exact zero series."""
        if self.terms:
            return self.terms[0][0]
        if isinf(self.trunc):
            return inf
        raise PrecisionExhausted(
            "no terms known below truncation order %s" % (self.trunc,)
        )

    def val_lower_bound(self):
        """A sound lower bound for the valuation (never raises)."""
        if self.terms:
            return self.terms[0][0]
        return self.trunc

    def leading(self):
        """(exponent, coefficient) of the lowest term."""
        if not self.terms:
            raise PrecisionExhausted("series has no known terms")
        return self.terms[0]

    def coefficient(self, e):
        e = _frac(e)
        if e >= self.trunc:
            raise PrecisionExhausted("coefficient at %s is beyond truncation" % e)
        for ee, c in self.terms:
            if ee == e:
                return c
        return Fraction(0)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return PuiseuxSeries(self.terms + other.terms, min(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(tuple((e, -c) for e, c in self.terms), self.trunc)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_exact_zero() or other.is_exact_zero():
            return ZERO
        trunc = min(
            _addb(other.val_lower_bound(), self.trunc),
            _addb(self.val_lower_bound(), other.trunc),
        )
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return PuiseuxSeries(acc.items(), trunc)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0 or k != int(k):
            raise ValueError("exponent must be a nonnegative integer")
        result, base, k = ONE, self, int(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        c = _frac(c)
        if c == 0:
            return PuiseuxSeries((), self.trunc) if not isinf(self.trunc) else ZERO
        return PuiseuxSeries(tuple((e, c * k) for e, k in self.terms), self.trunc)

    def shift(self, e):
        """Multiply by t^e."""
        e = _frac(e)
        return PuiseuxSeries(
            tuple((ee + e, c) for ee, c in self.terms), _addb(e, self.trunc)
        )

    def truncate(self, order):
        order = _frac(order)
        return PuiseuxSeries(self.terms, min(self.trunc, order))

    def below(self, order):
        """The exact polynomial part with exponents < order."""
        order = _frac(order)
        return PuiseuxSeries(tuple((e, c) for e, c in self.terms if e < order))

    def inverse(self, order=None):
        """Multiplicative inverse, truncated at ``order``.

        Monomials invert exactly; anything else needs a finite order (either
        the argument's own truncation or an explicit one).
        """
        e0, c0 = self.leading()
        if order is None:
            order = self.trunc
        if isinf(order):
            if len(self.terms) == 1:
                return PuiseuxSeries([(-e0, 1 / c0)])
            raise ValueError("inverse of a polynomial needs an explicit order")
        order = _frac(order)
        u = self.shift(-e0).scale(1 / c0) - ONE
        rel = order + e0
        res = ONE
        p = ONE
        sign = 1
        while True:
            p = (p * u).truncate(rel)
            sign = -sign
            if not p.terms:
                break
            res = res + p.scale(sign)
        return res.truncate(rel).scale(1 / c0).shift(-e0)

    def sqrt(self, order=None):
        """Square root via the binomial series.

        The leading coefficient must be a rational square (NotASquare
        otherwise) and the leading exponent is halved, which is always
        possible with rational exponents.
        """
        e0, c0 = self.leading()
        r0 = _rational_sqrt(c0)
        if r0 is None:
            raise NotASquare("%s is not a rational square" % (c0,))
        u = self.shift(-e0).scale(1 / c0) - ONE
        if order is None:
            order = self.trunc
        if isinf(order):
            if u.is_exact_zero():
                return PuiseuxSeries([(e0 / 2, r0)])
            raise ValueError("sqrt of a non-monomial polynomial needs an order")
        rel = _frac(order) - e0 / 2
        body = ONE
        term = ONE
        coef = Fraction(1)
        k = 0
        while True:
            k += 1
            coef = coef * (Fraction(1, 2) - (k - 1)) / k
            term = (term * u).truncate(rel)
            if not term.terms:
                break
            body = body + term.scale(coef)
        return body.truncate(rel).scale(r0).shift(e0 / 2)

    # -- misc --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms and self.trunc == other.trunc

    def __hash__(self):
        return hash((self.terms, self.trunc))

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(
                "%s*t^%s" % (c, e) if e else str(c) for e, c in self.terms
            )
        if isinf(self.trunc):
            return body
        return "%s + O(t^%s)" % (body, self.trunc)

    # -- JSON wire form ----------------------------------------------------

    def to_json(self):
        return {
            "terms": [
                [e.numerator, e.denominator, c.numerator, c.denominator]
                for e, c in self.terms
            ],
            "trunc": "inf"
            if isinf(self.trunc)
            else [self.trunc.numerator, self.trunc.denominator],
        }

    @staticmethod
    def from_json(data):
        trunc = data.get("trunc", "inf")
        trunc = inf if trunc == "inf" else Fraction(trunc[0], trunc[1])
        terms = [
            (Fraction(en, ed), Fraction(cn, cd)) for en, ed, cn, cd in data["terms"]
        ]
        return PuiseuxSeries(terms, trunc)


def _coerce(x):
    if isinstance(x, PuiseuxSeries):
        return x
    if isinstance(x, (int, Fraction)):
        return PuiseuxSeries([(0, x)])
    raise TypeError("cannot coerce %r to PuiseuxSeries" % (x,))


def _rational_sqrt(c):
    if c < 0:
        return None
    rn = isqrt(c.numerator)
    rd = isqrt(c.denominator)
    if rn * rn != c.numerator or rd * rd != c.denominator:
        return None
    return Fraction(rn, rd)


def t_power(e, c=1):
    """The monomial c * t^e."""
    return PuiseuxSeries([(e, c)])


def rational(c):
    return PuiseuxSeries([(0, c)])


ZERO = PuiseuxSeries()
ONE = PuiseuxSeries([(0, 1)])
