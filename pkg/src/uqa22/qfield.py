"""Exact arithmetic in Q(q), the coefficient field of the whole engine.

Every scalar is a rational function of the deformation parameter q with
rational coefficients.  Numerators and denominators are Laurent
polynomials in q (negative exponents allowed, since q^-1, q^-2, q^-3
occur everywhere), and values are kept in a canonical reduced form so
that equality is plain structural equality.  q is treated as
transcendental; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

# Arbitrary-precision rational scalar used for coefficients and for all
# numeric evaluations of q and the z variables.
BigRatio = Fraction


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class QPoly:
    """Laurent polynomial in q over the rationals.

    Coefficients are stored densely from the lowest exponent ``off``
    upward; the first and last stored coefficients are nonzero, and the
    zero polynomial is the empty tuple.  Instances are immutable.
    """

    __slots__ = ("off", "coeffs")

    def __init__(self, off: int = 0, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        lo, hi = 0, len(cs)
        while lo < hi and cs[lo] == 0:
            lo += 1
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.off = 0
            self.coeffs = ()
        else:
            self.off = off + lo
            self.coeffs = tuple(cs[lo:hi])

    @classmethod
    def zero(cls) -> "QPoly":
        return cls(0, ())

    @classmethod
    def one(cls) -> "QPoly":
        return cls(0, (1,))

    @classmethod
    def q(cls, e: int = 1, c=1) -> "QPoly":
        return cls(e, (c,))

    @classmethod
    def from_terms(cls, terms) -> "QPoly":
        """Build from {exponent: coeff} or an iterable of (exponent, coeff)."""
        d = dict(terms) if not isinstance(terms, dict) else terms
        d = {e: _as_fraction(c) for e, c in d.items() if c != 0}
        if not d:
            return cls.zero()
        lo, hi = min(d), max(d)
        return cls(lo, [d.get(e, Fraction(0)) for e in range(lo, hi + 1)])

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.off == 0 and self.coeffs == (Fraction(1),)

    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("valuation of zero polynomial")
        return self.off

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of zero polynomial")
        return self.off + len(self.coeffs) - 1

    def leading_coeff(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def terms(self):
        for k, c in enumerate(self.coeffs):
            if c != 0:
                yield self.off + k, c

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return QPoly(self.off + k, self.coeffs)

    def scale(self, c) -> "QPoly":
        c = _as_fraction(c)
        if c == 0:
            return QPoly.zero()
        return QPoly(self.off, [a * c for a in self.coeffs])

    def __neg__(self) -> "QPoly":
        return QPoly(self.off, [-a for a in self.coeffs])

    def __add__(self, other: "QPoly") -> "QPoly":
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.off, other.off)
        hi = max(self.off + len(self.coeffs), other.off + len(other.coeffs))
        cs = [Fraction(0)] * (hi - lo)
        for k, c in enumerate(self.coeffs):
            cs[self.off - lo + k] += c
        for k, c in enumerate(other.coeffs):
            cs[other.off - lo + k] += c
        return QPoly(lo, cs)

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other: "QPoly") -> "QPoly":
        if not self.coeffs or not other.coeffs:
            return QPoly.zero()
        a, b = self.coeffs, other.coeffs
        cs = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                cs[i + j] += ai * bj
        return QPoly(self.off + other.off, cs)

    def eval(self, q0: Fraction) -> Fraction:
        """Exact value at q = q0.  Needs q0 != 0 when negative powers occur."""
        q0 = _as_fraction(q0)
        if not self.coeffs:
            return Fraction(0)
        if self.off < 0 and q0 == 0:
            raise ZeroDivisionError("pole at q0 = 0")
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc * q0 ** self.off

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QPoly)
            and self.off == other.off
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.off, self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                t = str(c)
            else:
                qe = "q" if e == 1 else f"q^{e}"
                if c == 1:
                    t = qe
                elif c == -1:
                    t = f"-{qe}"
                else:
                    t = f"{c}*{qe}"
            parts.append(t)
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def to_json(self):
        return [[e, str(c)] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data) -> "QPoly":
        return cls.from_terms({int(e): Fraction(c) for e, c in data})


# -- ordinary (valuation-zero) polynomial helpers used for gcd ------------

def _list_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _list_mod(a, b):
    """Remainder of a by b; dense ascending coefficient lists over Q."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lb
        shift = len(a) - 1 - db
        for k in range(db + 1):
            a[shift + k] -= factor * b[k]
        _list_trim(a)
    return a


def _list_gcd(a, b):
    a, b = _list_trim(list(a)), _list_trim(list(b))
    while b:
        a, b = b, _list_mod(a, b)
    lc = a[-1]
    if lc != 1:
        a = [c / lc for c in a]
    return a


def _list_div_exact(a, b):
    """Exact quotient a / b; raises if the division leaves a remainder."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    out = [Fraction(0)] * (len(a) - db)
    while len(a) - 1 >= db and a:
        factor = a[-1] / lb
        shift = len(a) - 1 - db
        out[shift] = factor
        for k in range(db + 1):
            a[shift + k] -= factor * b[k]
        _list_trim(a)
    if a:
        raise ArithmeticError("inexact polynomial division")
    return out


class QRat:
    """Element of Q(q) in canonical reduced form.

    The denominator is an ordinary polynomial in q (lowest exponent 0)
    with leading coefficient 1 and no common factor with the numerator,
    so equal values have identical fields.  All operations are exact and
    pure; instances are immutable and may be shared freely.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, _canonical: bool = False):
        if _canonical:
            self.num, self.den = num, den
            return
        if not isinstance(num, QPoly):
            num = QPoly(0, (_as_fraction(num),)) if num else QPoly.zero()
        if den is None:
            den = QPoly.one()
        elif not isinstance(den, QPoly):
            den = QPoly(0, (_as_fraction(den),)) if den else QPoly.zero()
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _normalize(num: QPoly, den: QPoly):
        if den.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        if num.is_zero():
            return QPoly.zero(), QPoly.one()
        vd = den.valuation()
        if vd:
            den = den.shift(-vd)
            num = num.shift(-vd)
        if len(den.coeffs) == 1:
            c = den.coeffs[0]
            return (num if c == 1 else num.scale(1 / c)), QPoly.one()
        vn = num.valuation()
        a = list(num.shift(-vn).coeffs)
        b = list(den.coeffs)
        g = _list_gcd(a, b)
        if len(g) > 1:
            a = _list_div_exact(a, g)
            b = _list_div_exact(b, g)
        lc = b[-1]
        if lc != 1:
            inv = 1 / lc
            a = [c * inv for c in a]
            b = [c * inv for c in b]
        if len(b) == 1:
            return QPoly(vn, a), QPoly.one()
        return QPoly(vn, a), QPoly(0, b)

    # -- constructors ------------------------------------------------

    @classmethod
    def of(cls, value) -> "QRat":
        if isinstance(value, QRat):
            return value
        return cls(value)

    @classmethod
    def q(cls, e: int = 1, c=1) -> "QRat":
        """Monomial c * q^e."""
        c = _as_fraction(c)
        if c == 0:
            return cls()
        return cls(QPoly.q(e, c), QPoly.one(), _canonical=True)

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def as_monomial(self):
        """Return (exponent, coeff) if the value is c*q^e, else None."""
        if self.den.is_one() and len(self.num.coeffs) == 1:
            return self.num.off, self.num.coeffs[0]
        return None

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- field arithmetic ----------------------------------------------

    def __add__(self, other) -> "QRat":
        other = QRat.of(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return QRat(self.num + other.num, self.den)
        return QRat(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    def __sub__(self, other) -> "QRat":
        return self + (-QRat.of(other))

    def __neg__(self) -> "QRat":
        return QRat(-self.num, self.den, _canonical=True)

    def __mul__(self, other) -> "QRat":
        other = QRat.of(other)
        if self.is_zero() or other.is_zero():
            return QRat()
        if self.den.is_one() and other.den.is_one():
            num = self.num * other.num
            # re-canonicalize only when a unit denominator hides nothing
            return QRat(num, QPoly.one(), _canonical=True)
        return QRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other) -> "QRat":
        return self * QRat.of(other).inv()

    def inv(self) -> "QRat":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return QRat(self.den, self.num)

    def __pow__(self, k: int) -> "QRat":
        if k == 0:
            return QRat(1)
        base = self if k > 0 else self.inv()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other) -> "QRat":
        return QRat.of(other) - self

    def __rtruediv__(self, other) -> "QRat":
        return QRat.of(other) / self

    # -- evaluation and comparison --------------------------------------

    def eval(self, q0) -> Fraction:
        """Exact value at q = q0; q0 must not be a root of the denominator."""
        q0 = _as_fraction(q0)
        d = self.den.eval(q0)
        if d == 0:
            raise ZeroDivisionError(f"pole at q0 = {q0}")
        return self.num.eval(q0) / d

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QRat.of(other)
        return (
            isinstance(other, QRat)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"QRat({self})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "QRat":
        return cls(QPoly.from_json(data["num"]), QPoly.from_json(data["den"]))


ZERO = QRat(0)
ONE = QRat(1)


def qpow(e: int, c=1) -> QRat:
    """Shorthand for the monomial c * q^e."""
    return QRat.q(e, c)


def qnum(c) -> QRat:
    """Embed an integer or Fraction into Q(q)."""
    return QRat.of(c)
