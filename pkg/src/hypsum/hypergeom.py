"""Terminating 2F1 series and the closed forms that evaluate them.

``hyp2f1_terminating`` sums the series exactly and is the reference every
closed form here is checked against.  ``gauss_second`` is the classical
evaluation at z = 1/2.  ``master_even`` / ``master_odd`` evaluate the
closed forms for ``2F1(-2n, alpha; 2alpha+i; 2)`` and
``2F1(-2n-1, alpha; 2alpha+i; 2)`` with an integer shift ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from hypsum.errors import (
    InvalidParams,
    InvalidSpec,
    NumeratorPole,
    PoleAmbiguity,
    PoleError,
)
from hypsum.exact import (
    HalfInt,
    PiVal,
    RationalLike,
    as_rational,
    binomial,
    gamma_half,
    gamma_ratio,
    is_gamma_pole,
    pival_as_rational,
    pochhammer,
    pow2,
    rgamma_half,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of ``2F1(a, b; c; z)`` with ``a`` a nonpositive integer."""

    a: int
    b: Fraction
    c: Fraction
    z: Fraction

    def __post_init__(self):
        if not isinstance(self.a, int) or self.a > 0:
            raise InvalidSpec(f"upper parameter a={self.a!r} must be an integer <= 0")
        for name in ("b", "c", "z"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        for j in range(-self.a):
            if self.c + j == 0:
                raise InvalidSpec(
                    f"lower parameter c={self.c} gives (c)_k = 0 at k={j + 1} <= {-self.a}"
                )

    @property
    def length(self) -> int:
        return -self.a + 1


@dataclass(frozen=True)
class EvalMode:
    """``kind`` is ``"exact"`` or ``"float"``; float carries tolerances."""

    kind: str = "exact"
    tolerance: float = 1e-9
    abs_floor: float = 1e-12

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise ValueError(f"unknown evaluation mode {self.kind!r}")
        if self.kind == "float" and not (self.tolerance > 0 and self.abs_floor >= 0):
            raise ValueError("float mode needs tolerance > 0 and abs_floor >= 0")

    @classmethod
    def exact(cls) -> EvalMode:
        return cls("exact")

    @classmethod
    def float(cls, tolerance: float = 1e-9, abs_floor: float = 1e-12) -> EvalMode:
        return cls("float", tolerance, abs_floor)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def close(self, reference, value) -> bool:
        """Match test: exact equality, or relative error with an absolute floor."""
        if self.is_exact:
            return reference == value
        ref = float(reference)
        return abs(float(value) - ref) <= max(self.tolerance * abs(ref), self.abs_floor)


EXACT = EvalMode.exact()


def series_terms(s: SeriesSpec) -> list[Fraction]:
    """Every term (a)_k (b)_k z^k / ((c)_k k!) for k = 0..|a|."""
    terms = [Fraction(1)]
    t = Fraction(1)
    for k in range(-s.a):
        t = t * (s.a + k) * (s.b + k) * s.z / ((s.c + k) * (k + 1))
        terms.append(t)
    return terms


def hyp2f1_terminating(s: SeriesSpec) -> Fraction:
    """Exact value of a terminating 2F1, accumulated in ascending k."""
    total = Fraction(0)
    for t in series_terms(s):
        total += t
    return total


def _h(x: Fraction) -> HalfInt:
    return HalfInt.from_rational(x)


def gauss_second(a: HalfInt, b: HalfInt) -> PiVal:
    """Gamma(1/2) Gamma((a+b+1)/2) / (Gamma((a+1)/2) Gamma((b+1)/2)).

    Equals ``2F1(a, b; (a+b+1)/2; 1/2)`` whenever that series terminates.
    When ``a`` (or ``b``) is even, ``Gamma((a+b+1)/2) / Gamma((b+1)/2)`` is a
    Pochhammer ratio and is taken that way, so quarter-integer arguments
    never need a Gamma value of their own.
    """
    ra, rb = a.to_rational(), b.to_rational()
    top, left, right = (ra + rb + 1) / 2, (ra + 1) / 2, (rb + 1) / 2
    if is_gamma_pole(top):
        raise NumeratorPole(f"Gamma((a+b+1)/2) = Gamma({top}) is a pole")
    if is_gamma_pole(left) or is_gamma_pole(right):
        return PiVal()
    if all(x.denominator <= 2 for x in (top, left, right)):
        return (
            gamma_half(HalfInt(1))
            * gamma_half(_h(top))
            * rgamma_half(_h(left))
            * rgamma_half(_h(right))
        )
    # pair the numerator Gamma with whichever denominator sits an integer away
    for paired, other in ((right, left), (left, right)):
        if (top - paired).denominator == 1 and other.denominator <= 2:
            ratio = gamma_ratio(paired, int(top - paired))
            return gamma_half(HalfInt(1)) * rgamma_half(_h(other)) * ratio
    raise InvalidParams(
        f"gauss_second({ra}, {rb}): Gamma arguments do not reduce to half-integers"
    )


def lgamma_real(x: float) -> tuple[float, int]:
    """Return ``(log|Gamma(x)|, sign(Gamma(x)))``."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    if x > 0:
        return math.lgamma(x), 1
    # Gamma alternates sign between consecutive negative integers
    sign = 1 if math.floor(x) % 2 == 0 else -1
    return math.lgamma(x), sign


@dataclass(frozen=True)
class _Term:
    """coef * prod Gamma(num) / prod Gamma(den); the coef is rational."""

    coef: Fraction
    num: tuple[Fraction, ...]
    den: tuple[Fraction, ...]


def _master_terms(n: int, alpha: Fraction, i: int, odd: bool) -> tuple[list[_Term], Fraction]:
    """Expand the master closed form into r-terms.

    Returns the terms and the power-of-two exponent -2alpha-i that multiplies
    all of them (kept apart because it is irrational for generic alpha).
    """
    if n < 0 or i < 0:
        raise InvalidParams(f"need n >= 0 and i >= 0, got n={n}, i={i}")
    c = 2 * alpha + i
    length = 2 * n + (1 if odd else 0)
    if c.denominator == 1 and c <= 0 and -c < length:
        raise InvalidParams(f"lower parameter 2alpha+i = {c} hits (c)_k = 0")

    sign = -1 if odd else 1
    pre_num = (alpha, 1 - alpha)
    pre_den = (alpha + i, 1 - 2 * alpha - i)
    shift = 1 if odd else 0
    top_base = (0 if odd else HALF) - alpha
    bot_base = 0 if odd else HALF
    terms = []
    for r in range(i + 1):
        half_gap = Fraction(i - r, 2)
        poch_top = pochhammer(HALF + shift * HALF + half_gap, n)
        poch_bot = pochhammer(alpha + HALF + shift * HALF + half_gap, n)
        if poch_bot == 0:
            raise InvalidParams(
                f"Pochhammer ({alpha + HALF + shift * HALF + half_gap})_{n} vanishes"
            )
        coef = sign * (-1) ** r * binomial(i, r) * poch_top / poch_bot
        terms.append(
            _Term(
                coef,
                pre_num + (top_base - half_gap,),
                pre_den + (bot_base - half_gap,),
            )
        )
    return terms, -2 * alpha - i


def _classify(term: _Term) -> str:
    num_poles = sum(is_gamma_pole(x) for x in term.num)
    den_poles = sum(is_gamma_pole(x) for x in term.den)
    if num_poles > den_poles:
        return "infinite"
    if num_poles and num_poles == den_poles:
        return "ambiguous"
    if den_poles:
        return "zero"
    return "finite"


def _evaluate_master(n, alpha, i, mode: EvalMode, odd: bool):
    alpha = as_rational(alpha)
    terms, two_exp = _master_terms(n, alpha, i, odd)
    # A pole of Gamma(1-2alpha-i) zeroes the prefactor; any surviving value
    # would have to come from a 0*inf limit, so the closed form is refused.
    if is_gamma_pole(1 - 2 * alpha - i):
        raise PoleAmbiguity(
            f"alpha={alpha}, i={i}: Gamma(1-2alpha-i) is at a pole; "
            "use the resolved identities (theorem_rhs) instead"
        )
    kinds = [_classify(t) for t in terms]
    if "ambiguous" in kinds:
        raise PoleAmbiguity(
            f"alpha={alpha}, i={i}: Gamma poles cancel as 0*inf; "
            "use the resolved identities (theorem_rhs) instead"
        )
    if "infinite" in kinds:
        raise InvalidParams(f"alpha={alpha}, i={i}: closed form diverges")
    live = [t for t, k in zip(terms, kinds) if k == "finite"]

    if mode.is_exact:
        if alpha.denominator not in (1, 2):
            raise InvalidParams(f"exact mode needs a half-integer alpha, got {alpha}")
        total = PiVal()
        for t in live:
            v = PiVal.rational(t.coef)
            for x in t.num:
                v = v * gamma_half(_h(x))
            for x in t.den:
                v = v * rgamma_half(_h(x))
            total = total + v
        return pival_as_rational(total * pow2(two_exp))

    log2_scale = float(two_exp) * math.log(2.0)
    parts = []
    for t in live:
        log_mag = log2_scale + math.log(abs(t.coef.numerator)) - math.log(t.coef.denominator)
        sign = 1 if t.coef > 0 else -1
        for x in t.num:
            lg, s = lgamma_real(float(x))
            log_mag += lg
            sign *= s
        for x in t.den:
            lg, s = lgamma_real(float(x))
            log_mag -= lg
            sign *= s
        parts.append(sign * math.exp(log_mag))
    return math.fsum(parts)


def master_even(n: int, alpha: RationalLike, i: int, mode: EvalMode = EXACT):
    """Closed form for ``2F1(-2n, alpha; 2alpha+i; 2)``.

    Returns a Fraction in exact mode (half-integer ``alpha`` only) and a
    float otherwise.  Raises PoleAmbiguity when a Gamma pole in the
    numerator meets the pole of ``Gamma(1-2alpha-i)``, which happens for
    every half-integer ``alpha`` with ``2alpha+i`` a positive integer.
    """
    return _evaluate_master(n, alpha, i, mode, odd=False)


def master_odd(n: int, alpha: RationalLike, i: int, mode: EvalMode = EXACT):
    """Closed form for ``2F1(-2n-1, alpha; 2alpha+i; 2)``; see ``master_even``."""
    return _evaluate_master(n, alpha, i, mode, odd=True)


def master_series(n: int, alpha: RationalLike, i: int, odd: bool) -> Fraction:
    """The exact series the master closed forms are meant to equal."""
    alpha = as_rational(alpha)
    a = -2 * n - (1 if odd else 0)
    return hyp2f1_terminating(SeriesSpec(a, alpha, 2 * alpha + i, Fraction(2)))
