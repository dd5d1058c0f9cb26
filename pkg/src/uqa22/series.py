"""Truncated Laurent expansions in nested variable domains.

Rational functions of z_1, ..., z_n are expanded in the region
|z_1| >> |z_2| >> ... >> |z_n|.  The truncation grading is the ratio
degree d(a) = sum_i i*a_i (1-based), under which every correction
monomial z_j/z_i with j > i has positive degree j-i, so all expansions
have well-ordered supports.

An ExpansionSeries stores exact coefficients for every exponent vector
with d(a) <= validity and claims nothing above the bound.  Series
produced by inverting all variables carry the opposite claim (exact for
d(a) >= validity) and are marked with ``lower=True``; they only support
the few operations the duality transport needs.

A FactoredRational is the exact, pre-expansion form of every building
block: monomial * prod (u*z_i + v*z_j)^(+-m).  Expansion, substitution
and exact evaluation all happen on this form.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb

from .qfield import QRat

INF = math.inf

ExpVec = tuple

_ZERO = QRat(0)
_ONE = QRat(1)


def ratio_degree(a) -> int:
    """d(a) = sum_i i * a_i with 1-based variable positions."""
    return sum((i + 1) * e for i, e in enumerate(a))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def unit_vec(n: int, i: int, value: int = 1):
    """Exponent vector value*e_i (i is 1-based)."""
    return tuple(value if k == i - 1 else 0 for k in range(n))


class ExpansionSeries:
    """Sparse truncated Laurent expansion with an explicit validity bound."""

    __slots__ = ("n", "terms", "validity", "lower")

    def __init__(self, n: int, terms=None, validity=INF, lower: bool = False):
        self.n = n
        self.validity = validity
        self.lower = lower
        out = {}
        for a, c in (terms or {}).items():
            if c.is_zero():
                continue
            d = ratio_degree(a)
            if (not lower and d <= validity) or (lower and d >= validity):
                out[a] = c
        self.terms = out

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n: int, validity=INF) -> "ExpansionSeries":
        return cls(n, {}, validity)

    @classmethod
    def one(cls, n: int) -> "ExpansionSeries":
        return cls(n, {(0,) * n: _ONE}, INF)

    @classmethod
    def monomial(cls, n: int, a, coeff=_ONE) -> "ExpansionSeries":
        return cls(n, {tuple(a): QRat.of(coeff)}, INF)

    # -- introspection ----------------------------------------------------

    def is_empty(self) -> bool:
        return not self.terms

    def coefficient(self, a) -> QRat:
        return self.terms.get(tuple(a), _ZERO)

    def min_degree_bound(self):
        """A lower bound on the true minimal ratio degree of the series."""
        if self.terms:
            return min(ratio_degree(a) for a in self.terms)
        if self.validity == INF:
            return INF
        return self.validity + 1

    def _check_mate(self, other: "ExpansionSeries"):
        if self.n != other.n:
            raise ValueError("mismatched variable count")
        if self.lower != other.lower:
            raise ValueError("cannot mix expansion directions")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "ExpansionSeries") -> "ExpansionSeries":
        self._check_mate(other)
        if self.lower:
            validity = max(self.validity, other.validity)
        else:
            validity = min(self.validity, other.validity)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            s = terms.get(a)
            terms[a] = c if s is None else s + c
        return ExpansionSeries(self.n, terms, validity, self.lower)

    def __neg__(self) -> "ExpansionSeries":
        return ExpansionSeries(
            self.n, {a: -c for a, c in self.terms.items()},
            self.validity, self.lower)

    def __sub__(self, other: "ExpansionSeries") -> "ExpansionSeries":
        return self + (-other)

    def scale(self, c) -> "ExpansionSeries":
        c = QRat.of(c)
        if c.is_zero():
            return ExpansionSeries(self.n, {}, self.validity, self.lower)
        return ExpansionSeries(
            self.n, {a: s * c for a, s in self.terms.items()},
            self.validity, self.lower)

    def mul_monomial(self, a, coeff=_ONE) -> "ExpansionSeries":
        a = tuple(a)
        shift = ratio_degree(a)
        coeff = QRat.of(coeff)
        validity = self.validity if self.validity == INF else self.validity + shift
        return ExpansionSeries(
            self.n,
            {vec_add(b, a): c * coeff for b, c in self.terms.items()},
            validity, self.lower)

    def mul(self, other: "ExpansionSeries") -> "ExpansionSeries":
        self._check_mate(other)
        if self.lower:
            raise ValueError("product of inverted-domain series is not supported")
        va = self.validity + other.min_degree_bound()
        vb = other.validity + self.min_degree_bound()
        validity = min(va, vb)
        da = [(a, ratio_degree(a), c) for a, c in self.terms.items()]
        db = [(b, ratio_degree(b), c) for b, c in other.terms.items()]
        terms = {}
        for a, dega, ca in da:
            for b, degb, cb in db:
                if dega + degb > validity:
                    continue
                key = vec_add(a, b)
                c = ca * cb
                s = terms.get(key)
                terms[key] = c if s is None else s + c
        return ExpansionSeries(self.n, terms, validity)

    __mul__ = mul

    def substitute_scale(self, i: int, c) -> "ExpansionSeries":
        """Replace z_i by c*z_i for a nonzero monomial c in q (times +-1)."""
        c = QRat.of(c)
        if c.is_zero():
            raise ValueError("substitution scale must be nonzero")
        if c.as_monomial() is None:
            raise ValueError("substitution scale must be a monomial in q")
        return ExpansionSeries(
            self.n,
            {a: s * c ** a[i - 1] for a, s in self.terms.items()},
            self.validity, self.lower)

    def truncate(self, validity) -> "ExpansionSeries":
        if self.lower:
            if validity < self.validity:
                raise ValueError("cannot extend a truncated series")
        elif validity > self.validity:
            raise ValueError("cannot extend a truncated series")
        return ExpansionSeries(self.n, self.terms, validity, self.lower)

    def invert_vars(self) -> "ExpansionSeries":
        """Replace every z_i by z_i^-1, flipping the exactness direction."""
        validity = self.validity if self.validity == INF else -self.validity
        lower = (not self.lower) if self.validity != INF else False
        return ExpansionSeries(
            self.n, {tuple(-e for e in a): c for a, c in self.terms.items()},
            validity, lower)

    # -- comparison ------------------------------------------------------

    def equal_up_to(self, other: "ExpansionSeries", bound) -> bool:
        """Exact agreement of all coefficients with d(a) <= bound."""
        self._check_mate(other)
        if self.lower:
            if bound < max(self.validity, other.validity):
                raise ValueError("insufficient truncation")
            keep = lambda d: d >= bound
        else:
            if bound > min(self.validity, other.validity):
                raise ValueError("insufficient truncation")
            keep = lambda d: d <= bound
        for a in self.terms.keys() | other.terms.keys():
            if keep(ratio_degree(a)) and self.coefficient(a) != other.coefficient(a):
                return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExpansionSeries)
            and self.n == other.n
            and self.lower == other.lower
            and self.validity == other.validity
            and self.terms == other.terms
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for a in sorted(self.terms):
            mono = "*".join(
                f"z{i+1}^{e}" for i, e in enumerate(a) if e
            ) or "1"
            bits.append(f"({self.terms[a]})*{mono}")
        return " + ".join(bits)

    def sorted_terms(self):
        return [(a, self.terms[a]) for a in sorted(self.terms)]

    def to_json(self):
        v = self.validity
        out = {
            "n": self.n,
            "validity": None if v in (INF, -INF) else v,
            "terms": [[list(a), c.to_json()] for a, c in self.sorted_terms()],
        }
        if self.lower:
            out["lower"] = True
        return out

    @classmethod
    def from_json(cls, data) -> "ExpansionSeries":
        v = data["validity"]
        lower = bool(data.get("lower", False))
        if v is None:
            v = -INF if lower else INF
        return cls(
            data["n"],
            {tuple(a): QRat.from_json(c) for a, c in data["terms"]},
            v, lower,
        )


class FactoredRational:
    """Exact rational function in factored binary form.

    value = scalar * z^monomial * prod (u*z_i + v*z_j)^m  with i < j.

    Degenerate factors (equal indices, or a vanishing u or v) are folded
    into the scalar and monomial at construction, so every stored factor
    has both coefficients nonzero and is expandable in the nested domain.
    """

    __slots__ = ("n", "scalar", "monomial", "factors")

    def __init__(self, n: int, scalar=_ONE, monomial=None, factors=()):
        self.n = n
        scalar = QRat.of(scalar)
        mono = list(monomial) if monomial is not None else [0] * n
        if len(mono) != n:
            raise ValueError("monomial length must equal the variable count")
        kept = []
        for u, i, v, j, m in factors:
            u, v = QRat.of(u), QRat.of(v)
            if m == 0:
                continue
            if scalar.is_zero():
                break
            if i == j:
                u = u + v
                v = _ZERO
            if not (1 <= i <= n) or not (1 <= j <= n):
                raise ValueError("factor variable index out of range")
            if u.is_zero() and v.is_zero():
                if m > 0:
                    scalar = _ZERO
                    break
                raise ZeroDivisionError("non-expandable factor: zero base")
            if u.is_zero():
                scalar = scalar * v ** m
                mono[j - 1] += m
                continue
            if v.is_zero():
                scalar = scalar * u ** m
                mono[i - 1] += m
                continue
            if i > j:
                u, i, v, j = v, j, u, i
            # merge with a proportional binomial so that inverse pairs
            # cancel exactly instead of meeting again at a pole
            for pos, (u0, i0, v0, j0, m0) in enumerate(kept):
                if i0 == i and j0 == j and u0 * v == v0 * u:
                    scalar = scalar * (u / u0) ** m
                    if m0 + m == 0:
                        kept.pop(pos)
                    else:
                        kept[pos] = (u0, i0, v0, j0, m0 + m)
                    break
            else:
                kept.append((u, i, v, j, m))
        if scalar.is_zero():
            self.scalar = _ZERO
            self.monomial = (0,) * n
            self.factors = ()
        else:
            self.scalar = scalar
            self.monomial = tuple(mono)
            self.factors = tuple(kept)

    @classmethod
    def one(cls, n: int) -> "FactoredRational":
        return cls(n)

    @classmethod
    def from_scalar(cls, n: int, c) -> "FactoredRational":
        return cls(n, scalar=c)

    def is_zero(self) -> bool:
        return self.scalar.is_zero()

    # -- exact algebra on the factored form ------------------------------

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        if self.n != other.n:
            raise ValueError("mismatched variable count")
        return FactoredRational(
            self.n, self.scalar * other.scalar,
            vec_add(self.monomial, other.monomial),
            self.factors + other.factors)

    def inv(self) -> "FactoredRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FactoredRational(
            self.n, self.scalar.inv(),
            tuple(-e for e in self.monomial),
            tuple((u, i, v, j, -m) for u, i, v, j, m in self.factors))

    def __pow__(self, k: int) -> "FactoredRational":
        if k == 0:
            return FactoredRational.one(self.n)
        base = self if k > 0 else self.inv()
        return FactoredRational(
            base.n, base.scalar ** abs(k),
            tuple(e * abs(k) for e in base.monomial),
            tuple((u, i, v, j, m * abs(k)) for u, i, v, j, m in base.factors))

    def scale(self, c) -> "FactoredRational":
        return FactoredRational(self.n, self.scalar * QRat.of(c),
                                self.monomial, self.factors)

    def substitute_scale(self, i: int, c) -> "FactoredRational":
        """Replace z_i by c*z_i, absorbing c into the coefficients."""
        c = QRat.of(c)
        if c.is_zero():
            raise ValueError("substitution scale must be nonzero")
        scalar = self.scalar * c ** self.monomial[i - 1]
        factors = tuple(
            (u * c if fi == i else u, fi, v * c if fj == i else v, fj, m)
            for u, fi, v, fj, m in self.factors)
        return FactoredRational(self.n, scalar, self.monomial, factors)

    def numerator_part(self) -> "FactoredRational":
        """Positive-exponent content: scalar, nonnegative monomial, m > 0."""
        mono = tuple(max(e, 0) for e in self.monomial)
        return FactoredRational(
            self.n, self.scalar, mono,
            tuple(f for f in self.factors if f[4] > 0))

    def denominator_part(self) -> "FactoredRational":
        """The exact polynomial the value must be multiplied by to clear it."""
        mono = tuple(-min(e, 0) for e in self.monomial)
        return FactoredRational(
            self.n, _ONE, mono,
            tuple((u, i, v, j, -m) for u, i, v, j, m in self.factors if m < 0))

    def total_degree(self) -> int:
        """Homogeneity degree in the z variables."""
        return sum(self.monomial) + sum(m for *_, m in self.factors)

    def leading(self):
        """(coefficient, exponent vector) of the dominant monomial."""
        mono = list(self.monomial)
        coeff = self.scalar
        for u, i, _v, _j, m in self.factors:
            mono[i - 1] += m
            coeff = coeff * u ** m
        return coeff, tuple(mono)

    # -- expansion and evaluation -----------------------------------------

    def _factor_series(self, u, i, v, j, m, depth) -> ExpansionSeries:
        n = self.n
        if m > 0:
            terms = {}
            for t in range(m + 1):
                a = vec_add(unit_vec(n, i, m - t), unit_vec(n, j, t))
                terms[a] = u ** (m - t) * v ** t * comb(m, t)
            return ExpansionSeries(n, terms, INF)
        mm = -m
        ratio = v / u
        tmax = depth // (j - i)
        base = unit_vec(n, i, m)
        step = vec_add(unit_vec(n, j, 1), unit_vec(n, i, -1))
        terms = {}
        acc = u ** m
        a = base
        for t in range(tmax + 1):
            terms[a] = acc * comb(mm - 1 + t, t) * ((-1) ** t)
            acc = acc * ratio
            a = vec_add(a, step)
        return ExpansionSeries(n, terms, ratio_degree(base) + depth)

    def expand(self, depth: int) -> ExpansionSeries:
        """Laurent expansion in |z_1| >> ... >> |z_n|.

        The validity bound is d(leading monomial) + depth; with no
        inverse factors the expansion is exact (infinite validity).
        """
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        out = ExpansionSeries.monomial(self.n, self.monomial, self.scalar)
        for u, i, v, j, m in self.factors:
            out = out.mul(self._factor_series(u, i, v, j, m, depth))
        return out

    def eval_exact(self, q0, zvals) -> Fraction:
        """Exact value at rational q0 and z values; raises on a pole."""
        zs = [Fraction(z) for z in zvals]
        if len(zs) != self.n:
            raise ValueError("wrong number of z values")
        acc = self.scalar.eval(q0)
        for e, z in zip(self.monomial, zs):
            if e:
                acc *= z ** e
        zero_hit = False
        for u, i, v, j, m in self.factors:
            base = u.eval(q0) * zs[i - 1] + v.eval(q0) * zs[j - 1]
            if base == 0:
                if m < 0:
                    raise ZeroDivisionError("pole hit")
                zero_hit = True
                continue
            acc *= base ** m
        return Fraction(0) if zero_hit else acc

    def __str__(self) -> str:
        bits = [f"({self.scalar})"]
        if any(self.monomial):
            bits.append("*".join(
                f"z{i+1}^{e}" for i, e in enumerate(self.monomial) if e))
        for u, i, v, j, m in self.factors:
            s = f"(({u})*z{i} + ({v})*z{j})"
            bits.append(s if m == 1 else f"{s}^{m}")
        return " * ".join(bits)

    def to_json(self):
        return {
            "n": self.n,
            "scalar": self.scalar.to_json(),
            "monomial": list(self.monomial),
            "factors": [
                {"u": u.to_json(), "i": i, "v": v.to_json(), "j": j, "m": m}
                for u, i, v, j, m in self.factors
            ],
        }

    @classmethod
    def from_json(cls, data) -> "FactoredRational":
        return cls(
            data["n"],
            QRat.from_json(data["scalar"]),
            tuple(data["monomial"]),
            [
                (QRat.from_json(f["u"]), f["i"], QRat.from_json(f["v"]),
                 f["j"], f["m"])
                for f in data["factors"]
            ],
        )
