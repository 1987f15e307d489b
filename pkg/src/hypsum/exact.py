"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction` (aliased as ``BigRational``).  On
top of that sit three things the identity code needs:

* combinatorial primitives (``binomial``, ``pochhammer``, ``factorial``),
* ``HalfInt``, a number in ``Z/2`` stored as twice its value,
* ``PiVal``, a finite sum ``sum_e q_e * pi**(e/2)`` with rational ``q_e``.

Values of Gamma at half-integers are always a single ``PiVal`` monomial, so
products and quotients of them stay exact.  No floating point is used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from hypsum.errors import NotRational

BigRational = Fraction

RationalLike = Union[int, Fraction]


def as_rational(x: RationalLike | str) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact or boolean value {x!r}")
    return Fraction(x)


def binomial(n: int, k: int) -> Fraction:
    """C(n, k), zero when k lies outside [0, n]."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def pochhammer(x: RationalLike, n: int) -> Fraction:
    """Rising factorial x (x+1) ... (x+n-1); (x)_0 == 1 for every x."""
    if n < 0:
        raise ValueError(f"pochhammer needs n >= 0, got {n}")
    x = as_rational(x)
    p, q = x.numerator, x.denominator
    num = 1
    for j in range(n):
        num *= p + j * q
        if num == 0:
            return Fraction(0)
    return Fraction(num, q**n)


def factorial(n: int) -> Fraction:
    """n! as ``pochhammer(1, n)``."""
    return pochhammer(1, n)


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of Z/2, held as ``twice_value``."""

    twice_value: int

    @classmethod
    def from_rational(cls, x: RationalLike | str) -> HalfInt:
        x = as_rational(x)
        if x.denominator not in (1, 2):
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(2 * x))

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    @property
    def is_half_odd(self) -> bool:
        return self.twice_value % 2 == 1

    @property
    def is_pole(self) -> bool:
        """True at 0, -1, -2, ... where Gamma blows up."""
        return self.is_integer and self.twice_value <= 0

    def to_rational(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __add__(self, other: HalfInt) -> HalfInt:
        return HalfInt(self.twice_value + other.twice_value)

    def __sub__(self, other: HalfInt) -> HalfInt:
        return HalfInt(self.twice_value - other.twice_value)

    def __neg__(self) -> HalfInt:
        return HalfInt(-self.twice_value)

    def __str__(self) -> str:
        return str(self.to_rational())


def is_gamma_pole(x: RationalLike) -> bool:
    """True when ``x`` is a nonpositive integer."""
    x = as_rational(x)
    return x.denominator == 1 and x <= 0


class PiVal:
    """Exact value ``sum_e q_e * pi**(e/2)`` in canonical sparse form.

    Instances are immutable; ``terms`` is a tuple of ``(e, q_e)`` pairs
    sorted by exponent with every ``q_e`` nonzero.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, RationalLike] | None = None):
        items = {}
        for e, q in (terms or {}).items():
            q = as_rational(q)
            if q:
                items[int(e)] = q
        object.__setattr__(self, "terms", tuple(sorted(items.items())))

    def __setattr__(self, name, value):
        raise AttributeError("PiVal is immutable")

    @classmethod
    def rational(cls, q: RationalLike) -> PiVal:
        return cls({0: q})

    @classmethod
    def monomial(cls, q: RationalLike, exponent: int) -> PiVal:
        """``q * pi**(exponent/2)``."""
        return cls({exponent: q})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: PiVal | RationalLike) -> PiVal:
        return pival_add(self, _lift(other))

    __radd__ = __add__

    def __neg__(self) -> PiVal:
        return PiVal({e: -q for e, q in self.terms})

    def __sub__(self, other: PiVal | RationalLike) -> PiVal:
        return pival_add(self, -_lift(other))

    def __rsub__(self, other: RationalLike) -> PiVal:
        return pival_add(_lift(other), -self)

    def __mul__(self, other: PiVal | RationalLike) -> PiVal:
        return pival_mul(self, _lift(other))

    __rmul__ = __mul__

    def inverse(self) -> PiVal:
        """Reciprocal of a monomial; sums have no inverse in this algebra."""
        if len(self.terms) != 1:
            raise ZeroDivisionError(
                "only a nonzero single-term PiVal can be inverted"
            )
        (e, q), = self.terms
        return PiVal({-e: 1 / q})

    def __truediv__(self, other: PiVal | RationalLike) -> PiVal:
        return pival_mul(self, _lift(other).inverse())

    def __pow__(self, k: int) -> PiVal:
        if k < 0:
            return self.inverse() ** (-k)
        out = PiVal.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PiVal.rational(other)
        if not isinstance(other, PiVal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __float__(self) -> float:
        return math.fsum(float(q) * math.pi ** (e / 2) for e, q in self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "PiVal(0)"
        parts = [f"{q}*pi^({e}/2)" if e else str(q) for e, q in self.terms]
        return f"PiVal({' + '.join(parts)})"


def _lift(x: PiVal | RationalLike) -> PiVal:
    return x if isinstance(x, PiVal) else PiVal.rational(x)


def pival_add(a: PiVal, b: PiVal) -> PiVal:
    acc = dict(a.terms)
    for e, q in b.terms:
        acc[e] = acc.get(e, 0) + q
    return PiVal(acc)


def pival_mul(a: PiVal, b: PiVal) -> PiVal:
    acc: dict[int, Fraction] = {}
    for e1, q1 in a.terms:
        for e2, q2 in b.terms:
            acc[e1 + e2] = acc.get(e1 + e2, 0) + q1 * q2
    return PiVal(acc)


def pival_as_rational(v: PiVal) -> Fraction:
    """Collapse a PiVal with no surviving pi power to its rational value."""
    terms = dict(v.terms)
    stray = [e for e in terms if e != 0]
    if stray:
        raise NotRational(f"{v!r} still depends on pi (exponents {stray})")
    return terms.get(0, Fraction(0))


def rgamma_half(x: HalfInt) -> PiVal:
    """Exact 1/Gamma(x) for half-integer ``x``; zero at the poles."""
    t = x.twice_value
    if t % 2 == 0:
        m = t // 2
        if m <= 0:
            return PiVal()
        return PiVal.rational(1 / factorial(m - 1))
    # x = 1/2 + k; walk from Gamma(1/2) = sqrt(pi)
    k = (t - 1) // 2
    if k >= 0:
        return PiVal.monomial(1 / pochhammer(Fraction(1, 2), k), -1)
    return PiVal.monomial(pochhammer(Fraction(1, 2) + k, -k), -1)


def gamma_half(x: HalfInt) -> PiVal:
    """Exact Gamma(x) away from the poles."""
    r = rgamma_half(x)
    if r.is_zero():
        raise ZeroDivisionError(f"Gamma has a pole at {x}")
    return r.inverse()


def gamma_ratio(x: RationalLike, k: int) -> Fraction:
    """Gamma(x + k) / Gamma(x) for integer ``k`` and any rational ``x``.

    Neither ``x`` nor ``x + k`` may be a pole.
    """
    x = as_rational(x)
    if is_gamma_pole(x) or is_gamma_pole(x + k):
        raise ZeroDivisionError(f"Gamma pole in ratio Gamma({x + k})/Gamma({x})")
    if k >= 0:
        return pochhammer(x, k)
    return 1 / pochhammer(x + k, -k)


def pow2(e: RationalLike) -> Fraction:
    """2**e for integer e, as an exact rational."""
    e = as_rational(e)
    if e.denominator != 1:
        raise ValueError(f"2**{e} is irrational")
    return Fraction(2) ** int(e)
