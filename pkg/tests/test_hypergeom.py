import math
from fractions import Fraction

import mpmath
import pytest

from hypsum.errors import InvalidParams, InvalidSpec, NumeratorPole, PoleAmbiguity, PoleError
from hypsum.exact import HalfInt, PiVal, pival_as_rational
from hypsum.hypergeom import (
    EXACT,
    EvalMode,
    SeriesSpec,
    gauss_second,
    hyp2f1_terminating,
    lgamma_real,
    master_even,
    master_odd,
    master_series,
    series_terms,
)

F = Fraction
FLOAT = EvalMode.float(1e-10)


def direct_series(a, b, c, z):
    """Textbook sum with Pochhammers written out, independent of series_terms."""
    total = F(0)
    for k in range(-a + 1):
        num = den = F(1)
        for j in range(k):
            num *= (a + j) * (b + j)
            den *= (c + j) * (j + 1)
        total += num / den * F(z) ** k
    return total


@pytest.mark.parametrize(
    "a,b,c,z,expected",
    [
        (0, F(7, 3), F(5), F(9), F(1)),
        (-2, F(1, 2), F(1), F(2), F(1, 2)),
        (-3, F(1, 2), F(1), F(2), F(0)),
        (-2, F(2), F(1, 2), F(1, 2), F(-1)),
    ],
)
def test_hyp2f1_examples(a, b, c, z, expected):
    assert direct_series(a, b, c, z) == expected
    assert hyp2f1_terminating(SeriesSpec(a, b, c, z)) == expected


def test_hyp2f1_matches_direct_sum():
    for a in range(0, -9, -1):
        for b in (F(1, 3), F(-5, 2), F(4)):
            for c in (F(2, 7), F(9, 2), F(-11, 2)):
                spec = SeriesSpec(a, b, c, F(3, 5))
                assert hyp2f1_terminating(spec) == direct_series(a, b, c, F(3, 5))


def test_hyp2f1_descending_resum_is_identical():
    spec = SeriesSpec(-25, F(-7, 3), F(11, 4), F(-5, 2))
    terms = series_terms(spec)
    backwards = F(0)
    for t in reversed(terms):
        backwards += t
    assert backwards == hyp2f1_terminating(spec)
    assert len(terms) == spec.length == 26


def test_series_spec_validation():
    with pytest.raises(InvalidSpec):
        SeriesSpec(1, F(1), F(1), F(1))
    with pytest.raises(InvalidSpec):
        SeriesSpec(-3, F(1), F(-2), F(1))
    # (c)_k only needs to be nonzero for k <= |a|
    SeriesSpec(-2, F(1), F(-2), F(1))


# -- Gauss second summation --------------------------------------------------


def test_gauss_second_examples():
    assert gauss_second(HalfInt(-4), HalfInt(4)) == PiVal.rational(-1)
    assert gauss_second(HalfInt(0), HalfInt(0)) == PiVal.rational(1)
    for tb in (2, 6, 1, 3, 7, -3):
        assert gauss_second(HalfInt(-2), HalfInt(tb)).is_zero()


def test_gauss_second_numerator_pole():
    # a = -2, b = -1: (a + b + 1)/2 = -1
    with pytest.raises(NumeratorPole):
        gauss_second(HalfInt(-4), HalfInt(-2))


def test_gauss_second_quarter_arguments_use_pochhammer_pairing():
    # a = -2, b = 1/2: (a+b+1)/2 = -1/4 and (b+1)/2 = 3/4
    b = F(1, 2)
    series = hyp2f1_terminating(SeriesSpec(-2, b, (b - 1) / 2, F(1, 2)))
    assert pival_as_rational(gauss_second(HalfInt(-4), HalfInt(1))) == series


def test_gauss_second_unrepresentable_arguments():
    # a = 1/2, b = 3/2: nothing pairs up to a Pochhammer ratio
    with pytest.raises(InvalidParams):
        gauss_second(HalfInt(1), HalfInt(3))


def test_gauss_second_small_grid():
    for m in range(0, 12):
        for tb in range(-7, 9):
            b = F(tb, 2)
            try:
                closed = gauss_second(HalfInt(-2 * m), HalfInt(tb))
                spec = SeriesSpec(-m, b, (b - m + 1) / 2, F(1, 2))
            except (NumeratorPole, InvalidSpec):
                continue
            assert pival_as_rational(closed) == direct_series(-m, b, (b - m + 1) / 2, F(1, 2))
            assert pival_as_rational(closed) == hyp2f1_terminating(spec)


# -- lgamma -----------------------------------------------------------------


def _mp_lgamma(x):
    with mpmath.workdps(40):
        g = mpmath.gamma(mpmath.mpf(x))
        return float(mpmath.log(abs(g))), 1 if g > 0 else -1


def test_lgamma_examples():
    assert lgamma_real(1.0) == (0.0, 1)
    lg, s = lgamma_real(0.5)
    assert s == 1 and lg == pytest.approx(0.5 * math.log(math.pi), abs=1e-14)
    assert lg == pytest.approx(0.5723649429, abs=1e-10)
    lg, s = lgamma_real(-0.5)
    assert s == -1 and lg == pytest.approx(math.log(2 * math.sqrt(math.pi)), abs=1e-14)
    assert lg == pytest.approx(1.2655121235, abs=1e-10)


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0, -100.0])
def test_lgamma_poles(x):
    with pytest.raises(PoleError):
        lgamma_real(x)


def test_lgamma_accuracy_against_mpmath():
    xs = [k / 8 + 0.01 * (k % 3) for k in range(-800, 801)]
    for x in xs:
        if x <= 0 and x == int(x):
            continue
        lg, s = lgamma_real(x)
        ref, ref_sign = _mp_lgamma(x)
        assert s == ref_sign, x
        assert abs(lg - ref) <= 1e-12 * max(1.0, abs(ref)), x


# -- master formulas ----------------------------------------------------------


@pytest.mark.parametrize("fn", [master_even, master_odd])
@pytest.mark.parametrize("mode", [EXACT, FLOAT])
def test_master_pole_ambiguity_at_half(fn, mode):
    with pytest.raises(PoleAmbiguity):
        fn(3, F(1, 2), 0, mode)


def test_master_float_examples():
    assert master_even(1, F(1, 3), 0, FLOAT) == pytest.approx(
        float(hyp2f1_terminating(SeriesSpec(-2, F(1, 3), F(2, 3), F(2)))), rel=1e-10
    )
    assert master_even(1, F(1, 3), 1, FLOAT) == pytest.approx(
        float(hyp2f1_terminating(SeriesSpec(-2, F(1, 3), F(5, 3), F(2)))), rel=1e-10
    )
    assert hyp2f1_terminating(SeriesSpec(-1, F(1, 3), F(2, 3), F(2))) == 0
    assert abs(master_odd(0, F(1, 3), 0, FLOAT)) <= 1e-10
    assert master_odd(1, F(2, 5), 2, FLOAT) == pytest.approx(
        float(hyp2f1_terminating(SeriesSpec(-3, F(2, 5), F(14, 5), F(2)))), rel=1e-10
    )


def test_master_resolved_values_at_half():
    # what the ambiguous closed form should tend to at alpha = 1/2
    for n in range(8):
        assert master_series(n, F(1, 2), 0, odd=False) == F(1, 2) ** 0 * _poch_ratio(n)
        assert master_series(n, F(1, 2), 0, odd=True) == 0


def _poch_ratio(n):
    out = F(1)
    for j in range(n):
        out *= (F(1, 2) + j) / (1 + j)
    return out


def test_master_exact_mode_at_negative_half_integers():
    checked = 0
    for t in range(-21, 0):
        alpha = F(t, 2)
        for i in range(5):
            for n in range(4):
                for odd, fn in ((False, master_even), (True, master_odd)):
                    try:
                        value = fn(n, alpha, i, EXACT)
                    except (PoleAmbiguity, InvalidParams, InvalidSpec):
                        continue
                    assert isinstance(value, Fraction)
                    assert value == master_series(n, alpha, i, odd), (n, alpha, i, odd)
                    checked += 1
    assert checked > 100


def test_master_exact_mode_rejects_generic_alpha():
    with pytest.raises(InvalidParams):
        master_even(2, F(-7, 3), 5, EXACT)


def test_master_invalid_lower_parameter():
    # 2 alpha + i = -1 lies inside the summation range when n >= 1
    with pytest.raises(InvalidParams):
        master_even(2, F(-1, 2), 0, FLOAT)


def test_eval_mode_close():
    m = EvalMode.float(1e-9, 1e-12)
    assert m.close(F(0), 5e-13)
    assert not m.close(F(0), 5e-12)
    assert m.close(F(10**6), 10**6 * (1 + 5e-10))
    assert EXACT.close(F(1, 3), F(1, 3)) and not EXACT.close(F(1, 3), 1 / 3)
    with pytest.raises(ValueError):
        EvalMode.float(0)
