"""Knuth / Reed-Dawson and Riordan sums, their generalization, and grid checks.

Everything is measured against :func:`knuth_lhs`, the brute-force sum

    S(n, i) = sum_{k=0}^{n} (-1)^k C(n+i, k+i) 2^{-k} C(2k, k).

``theorem_rhs`` is the closed form for every shift ``i``; ``corollary_rhs``
is a hand-written table of the simplified forms for ``i <= 3``, kept
independent of ``theorem_rhs`` on purpose.
"""

from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from hypsum.errors import (
    DomainError,
    HypsumError,
    InternalAlgebra,
    NotRational,
    UnsupportedShift,
)
from hypsum.exact import (
    HalfInt,
    PiVal,
    as_rational,
    binomial,
    factorial,
    pival_as_rational,
    pochhammer,
    rgamma_half,
)
from hypsum.hypergeom import (
    EXACT,
    EvalMode,
    SeriesSpec,
    gauss_second,
    hyp2f1_terminating,
    master_even,
    master_odd,
    master_series,
)

HALF = Fraction(1, 2)
PI = PiVal.monomial(1, 2)


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    def length(self, nu: int) -> int:
        """Upper summation index: 2nu for EVEN, 2nu+1 for ODD."""
        return 2 * nu + (self is Parity.ODD)


class Identity(enum.Enum):
    KNUTH_EVEN = "knuth-even"
    KNUTH_ODD = "knuth-odd"
    RIORDAN_EVEN = "riordan-even"
    RIORDAN_ODD = "riordan-odd"
    THEOREM_EVEN = "theorem-even"
    THEOREM_ODD = "theorem-odd"
    COROLLARY_EVEN = "corollary-even"
    COROLLARY_ODD = "corollary-odd"
    MASTER_EVEN = "master-even"
    MASTER_ODD = "master-odd"
    GAUSS_SECOND = "gauss-second"

    @property
    def parity(self) -> Parity:
        return Parity.ODD if self.value.endswith("-odd") else Parity.EVEN

    @property
    def fixed_shift(self) -> int | None:
        """The i baked into the classical identities; None when i varies."""
        return {
            Identity.KNUTH_EVEN: 0,
            Identity.KNUTH_ODD: 0,
            Identity.RIORDAN_EVEN: 1,
            Identity.RIORDAN_ODD: 1,
        }.get(self)

    @property
    def uses_alpha(self) -> bool:
        return self in (Identity.MASTER_EVEN, Identity.MASTER_ODD, Identity.GAUSS_SECOND)


# -- oracle and reduction ---------------------------------------------------


def knuth_lhs(n: int, i: int) -> Fraction:
    """Brute-force S(n, i), summed term by term.

    Terms are scaled by 2^n so the loop runs on integers; the single
    division at the end is exact.
    """
    if n < 0 or i < 0:
        raise ValueError(f"knuth_lhs needs n, i >= 0, got n={n}, i={i}")
    total = 0
    for k in range(n + 1):
        term = math.comb(n + i, k + i) * math.comb(2 * k, k) << (n - k)
        total += -term if k % 2 else term
    return Fraction(total, 1 << n)


def reduce_to_2f1(n: int, i: int) -> tuple[Fraction, SeriesSpec]:
    """Write S(n, i) as C(n+i, i) * 2F1(-n, 1/2; 1+i; 2)."""
    if n < 0 or i < 0:
        raise ValueError(f"reduce_to_2f1 needs n, i >= 0, got n={n}, i={i}")
    return binomial(n + i, i), SeriesSpec(-n, HALF, Fraction(1 + i), Fraction(2))


# -- closed forms -----------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _poch(x: Fraction, n: int) -> Fraction:
    return pochhammer(x, n)


def theorem_rhs(nu: int, i: int, parity: Parity) -> Fraction:
    """Closed form of S(2nu, i) (EVEN) or S(2nu+1, i) (ODD) for any i >= 0.

    Evaluated in the pi-algebra: each squared reciprocal Gamma contributes
    pi^-1 (or vanishes at a pole) and the leading pi cancels it.
    """
    if nu < 0 or i < 0:
        raise ValueError(f"theorem_rhs needs nu, i >= 0, got nu={nu}, i={i}")
    scale = Fraction(4**i) * factorial(i) / factorial(2 * i)
    if parity is Parity.EVEN:
        lead = PI * (_poch(Fraction(2 * nu + 1), i) * scale)
    else:
        lead = PI * (2 * _poch(Fraction(2 * nu + 2), i) * scale)

    total = PiVal()
    for r in range(i + 1):
        gap = Fraction(i - r, 2)
        if parity is Parity.EVEN:
            rg = rgamma_half(HalfInt(1 + r - i))
            rational = _poch(HALF + gap, nu) / (factorial(i - r) * _poch(1 + gap, nu))
        else:
            rg = rgamma_half(HalfInt(r - i))
            rational = _poch(1 + gap, nu) / (
                factorial(i - r + 1) * _poch(Fraction(3, 2) + gap, nu)
            )
        if rg.is_zero():
            continue
        coef = Fraction(binomial(i, r), 2**r) * rational
        total = total + rg * rg * coef
    try:
        return pival_as_rational(lead * total)
    except NotRational as exc:
        raise InternalAlgebra(f"theorem_rhs({nu}, {i}, {parity.value}): {exc}") from exc


_COROLLARY_TABLE: dict[tuple[int, Parity], Callable[[int], Fraction]] = {
    (0, Parity.EVEN): lambda v: pochhammer(HALF, v) / pochhammer(1, v),
    (0, Parity.ODD): lambda v: Fraction(0),
    (1, Parity.EVEN): lambda v: (2 * v + 1) * pochhammer(HALF, v) / pochhammer(1, v),
    (1, Parity.ODD): lambda v: (v + 1) * pochhammer(Fraction(3, 2), v) / pochhammer(2, v),
    (2, Parity.EVEN): lambda v: Fraction(4 * v + 3, 3)
    * pochhammer(Fraction(3, 2), v)
    / pochhammer(1, v),
    (2, Parity.ODD): lambda v: 2 * pochhammer(Fraction(5, 2), v) / pochhammer(1, v),
    (3, Parity.EVEN): lambda v: Fraction(8 * v + 5, 5)
    * pochhammer(Fraction(5, 2), v)
    / pochhammer(1, v),
    (3, Parity.ODD): lambda v: Fraction(8 * v + 15, 5)
    * pochhammer(Fraction(5, 2), v)
    / pochhammer(1, v),
}


def corollary_rhs(nu: int, i: int, parity: Parity) -> Fraction:
    """Tabulated polynomial-times-Pochhammer form for shifts 0..3."""
    if (i, parity) not in _COROLLARY_TABLE:
        raise UnsupportedShift(f"no tabulated closed form for i={i}; use theorem_rhs")
    return _COROLLARY_TABLE[i, parity](nu)


def knuth_even_rhs(nu: int) -> Fraction:
    """2^{-2nu} C(2nu, nu)."""
    return Fraction(math.comb(2 * nu, nu), 4**nu)


def knuth_odd_rhs(nu: int) -> Fraction:
    return Fraction(0)


def riordan_even_rhs(nu: int) -> Fraction:
    """2^{-2nu} (2nu+1) C(2nu, nu)."""
    return Fraction((2 * nu + 1) * math.comb(2 * nu, nu), 4**nu)


def riordan_odd_rhs(nu: int) -> Fraction:
    """2^{-2nu-1} (nu+1) C(2nu, nu), exactly as Riordan's odd sum is usually quoted.

    This disagrees with the brute-force sum (already at nu=0: 1/2 vs 1);
    the matching value is 2^{-2nu-1} (nu+1) C(2nu+2, nu+1), see
    :func:`riordan_odd_rhs_corrected`.  It is kept verbatim so that
    verification flags the discrepancy.
    """
    return Fraction((nu + 1) * math.comb(2 * nu, nu), 2 ** (2 * nu + 1))


def riordan_odd_rhs_corrected(nu: int) -> Fraction:
    """2^{-2nu-1} (nu+1) C(2nu+2, nu+1), equal to S(2nu+1, 1)."""
    return Fraction((nu + 1) * math.comb(2 * nu + 2, nu + 1), 2 ** (2 * nu + 1))


# -- verification -----------------------------------------------------------


@dataclass(frozen=True)
class Grid:
    """Parameter ranges; unused axes are ignored by identities without them."""

    nu: Sequence[int] = ()
    i: Sequence[int] = ()
    alpha: Sequence[Fraction] = ()


@dataclass(frozen=True)
class VerificationReport:
    identity: Identity
    nu: int
    i: int | None
    alpha: Fraction | None
    lhs: Fraction | float
    rhs: Fraction | float
    mode: EvalMode
    matched: bool

    @property
    def grid_point(self) -> dict:
        point = {"nu": self.nu}
        if self.i is not None:
            point["i"] = self.i
        if self.alpha is not None:
            point["alpha"] = self.alpha
        return point


@dataclass(frozen=True)
class _Point:
    identity: Identity
    nu: int
    i: int | None
    alpha: Fraction | None
    mode: EvalMode = field(default=EXACT)


def _sum_rhs(closed: Callable[[int], Fraction]):
    return lambda p: closed(p.nu)


# Each closed form takes a grid point; tests may swap entries to inject faults.
CLOSED_FORMS: dict[Identity, Callable[[_Point], Fraction | float]] = {
    Identity.KNUTH_EVEN: _sum_rhs(knuth_even_rhs),
    Identity.KNUTH_ODD: _sum_rhs(knuth_odd_rhs),
    Identity.RIORDAN_EVEN: _sum_rhs(riordan_even_rhs),
    Identity.RIORDAN_ODD: _sum_rhs(riordan_odd_rhs),
    Identity.THEOREM_EVEN: lambda p: theorem_rhs(p.nu, p.i, Parity.EVEN),
    Identity.THEOREM_ODD: lambda p: theorem_rhs(p.nu, p.i, Parity.ODD),
    Identity.COROLLARY_EVEN: lambda p: corollary_rhs(p.nu, p.i, Parity.EVEN),
    Identity.COROLLARY_ODD: lambda p: corollary_rhs(p.nu, p.i, Parity.ODD),
    Identity.MASTER_EVEN: lambda p: master_even(p.nu, p.alpha, p.i, p.mode),
    Identity.MASTER_ODD: lambda p: master_odd(p.nu, p.alpha, p.i, p.mode),
    Identity.GAUSS_SECOND: lambda p: pival_as_rational(
        gauss_second(HalfInt(-2 * p.nu), HalfInt.from_rational(p.alpha))
    ),
}


def _reference(p: _Point) -> Fraction:
    ident = p.identity
    if ident is Identity.GAUSS_SECOND:
        b = p.alpha
        return hyp2f1_terminating(SeriesSpec(-p.nu, b, (b - p.nu + 1) / 2, HALF))
    if ident in (Identity.MASTER_EVEN, Identity.MASTER_ODD):
        return master_series(p.nu, p.alpha, p.i, ident.parity is Parity.ODD)
    return knuth_lhs(ident.parity.length(p.nu), p.i)


def evaluate_point(p: _Point) -> VerificationReport:
    lhs = _reference(p)
    rhs = CLOSED_FORMS[p.identity](p)
    return VerificationReport(
        p.identity, p.nu, p.i, p.alpha, lhs, rhs, p.mode, p.mode.close(lhs, rhs)
    )


def _gauss_defined(m: int, b: Fraction) -> bool:
    """Whether both sides of the Gauss evaluation exist at a=-m."""
    try:
        SeriesSpec(-m, b, (b - m + 1) / 2, HALF)
        gauss_second(HalfInt(-2 * m), HalfInt.from_rational(b))
    except HypsumError:
        return False
    return True


def grid_points(identity: Identity, grid: Grid, mode: EvalMode | None = None) -> list[_Point]:
    """Expand a grid into evaluation points in lexicographic (alpha, nu, i) order."""
    if any(v < 0 for v in grid.nu) or any(v < 0 for v in grid.i):
        raise DomainError("nu and i must be nonnegative")
    if identity.uses_alpha:
        alphas = [as_rational(a) for a in grid.alpha]
    else:
        alphas = [None]

    if identity in (Identity.MASTER_EVEN, Identity.MASTER_ODD):
        mode = mode or EvalMode.float()
    else:
        mode = EXACT

    if identity.fixed_shift is not None:
        shifts: Sequence[int | None] = [identity.fixed_shift]
    elif identity is Identity.GAUSS_SECOND:
        shifts = [None]
    else:
        shifts = list(grid.i)
    if identity in (Identity.COROLLARY_EVEN, Identity.COROLLARY_ODD):
        bad = [i for i in shifts if i > 3]
        if bad:
            raise DomainError(f"{identity.value} is tabulated only for i <= 3, got i={bad[0]}")

    points = []
    for alpha, nu, i in itertools.product(alphas, grid.nu, shifts):
        if identity is Identity.GAUSS_SECOND:
            if alpha.denominator > 2:
                raise DomainError(f"gauss-second needs half-integer b, got {alpha}")
            if not _gauss_defined(nu, alpha):
                continue
        points.append(_Point(identity, nu, i, alpha, mode))
    return points


def verify(
    identity: Identity,
    grid: Grid,
    mode: EvalMode | None = None,
    workers: int = 1,
) -> list[VerificationReport]:
    """Check ``identity`` at every grid point against its exact reference.

    Sum identities compare against :func:`knuth_lhs`; the master formulas
    and the Gauss evaluation compare against the exact terminating series.
    Gauss points where either side is undefined are skipped.  Master points
    that hit a pole ambiguity raise DomainError.  Report order does not
    depend on ``workers``.
    """
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    points = grid_points(identity, grid, mode)
    try:
        if workers == 1 or len(points) < 2:
            return [evaluate_point(p) for p in points]
        chunk = max(1, len(points) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(evaluate_point, points, chunksize=chunk))
    except HypsumError as exc:
        if isinstance(exc, InternalAlgebra):
            raise
        raise DomainError(f"{identity.value}: {exc}") from exc
