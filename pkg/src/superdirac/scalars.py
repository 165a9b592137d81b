"""Exact scalars: Laurent polynomials in named parameters over the rationals.

A scalar is stored as a dict mapping a parameter monomial to a Fraction.
A parameter monomial is a sorted tuple of (name, exponent) pairs with
nonzero exponents, so () is the constant monomial.
"""

from .rational import Fraction


def pmono_mul(a, b):
    """Product of two parameter monomials."""
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, e in b:
        e2 = d.get(name, 0) + e
        if e2:
            d[name] = e2
        else:
            del d[name]
    return tuple(sorted(d.items()))


def pmono_str(m):
    parts = []
    for name, e in m:
        parts.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(parts)


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError("cannot convert %r to a rational" % (x,))


class Scalar:
    """Element of Q[k, k^-1, ...]. Immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = Fraction(c)
        self.terms = t

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, str) and not _is_number(x):
            return cls({((x, 1),): Fraction(1)})
        return cls({(): to_fraction(x)})

    @classmethod
    def param(cls, name, power=1):
        if power == 0:
            return cls({(): Fraction(1)})
        return cls({((name, power),): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(m == () for m in self.terms)

    def constant_value(self):
        """Rational value of a constant scalar (raises if not constant)."""
        if not self.is_constant():
            raise ValueError("scalar %s is not a rational constant" % self)
        return self.terms.get((), Fraction(0))

    def is_monomial(self):
        return len(self.terms) == 1

    def __add__(self, other):
        other = Scalar.coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Scalar(t)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        other = Scalar.coerce(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = pmono_mul(m1, m2)
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return Scalar(t)

    __rmul__ = __mul__

    def inverse(self):
        """Inverse of a monomial scalar c*k^n; anything else raises."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomial scalars are invertible: %s" % self)
        (m, c), = self.terms.items()
        return Scalar({tuple((n, -e) for n, e in m): 1 / c})

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def params(self):
        return {n for m in self.terms for n, _ in m}

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, key=_pmono_key):
            c = self.terms[m]
            out.append(term_str(c, pmono_str(m)))
        s = " + ".join(out)
        return s.replace("+ -", "- ")

    __repr__ = __str__


def _pmono_key(m):
    return (-sum(e for _, e in m), m)


def _is_number(s):
    try:
        Fraction(s)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def frac_str(c):
    """Rational coefficient in the text grammar: 3, -2, (3/2), -(1/2)."""
    if c.denominator == 1:
        return str(c.numerator)
    if c < 0:
        return "-(%d/%d)" % (-c.numerator, c.denominator)
    return "(%d/%d)" % (c.numerator, c.denominator)


def term_str(c, body):
    """Join a rational coefficient with a '*'-separated body."""
    if not body:
        return frac_str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return frac_str(c) + "*" + body


ZERO = Scalar()
ONE = Scalar({(): Fraction(1)})
