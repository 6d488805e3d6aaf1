"""Certified real arithmetic on exact rational endpoints.

Intervals carry Fraction endpoints, so +, -, * and division stay exact;
uncertainty enters only through the transcendental leaves (log2, 2^x), which
are evaluated with mpmath's directed-rounding interval context on small
dyadic brackets and converted back to exact rationals.  Every inequality
this package certifies reduces to exact Fraction comparisons of endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

import mpmath
from mpmath import iv

Rational = Union[int, Fraction]
RealLike = Union[int, Fraction, "RealInterval"]

DEFAULT_PREC = 128
MAX_PREC = 4096


class PrecisionError(ArithmeticError):
    """A certified comparison stayed undecided at the precision cap."""


@dataclass(frozen=True)
class RealInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x: Rational) -> "RealInterval":
        f = Fraction(x)
        return cls(f, f)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __add__(self, other: RealLike) -> "RealInterval":
        o = _coerce(other)
        return RealInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo)

    def __sub__(self, other: RealLike) -> "RealInterval":
        return self + (-_coerce(other))

    def __rsub__(self, other: RealLike) -> "RealInterval":
        return _coerce(other) + (-self)

    def __mul__(self, other: RealLike) -> "RealInterval":
        o = _coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RealInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: RealLike) -> "RealInterval":
        o = _coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("division by interval containing 0")
        inv = RealInterval(1 / o.hi, 1 / o.lo)
        return self * inv

    def __contains__(self, x: Rational) -> bool:
        return self.lo <= Fraction(x) <= self.hi


def _coerce(x: RealLike) -> RealInterval:
    if isinstance(x, RealInterval):
        return x
    return RealInterval.exact(x)


def certainly_le(a: RealLike, b: RealLike) -> Optional[bool]:
    """True/False when a <= b is decided by the endpoints, None when not."""
    ia, ib = _coerce(a), _coerce(b)
    if ia.hi <= ib.lo:
        return True
    if ia.lo > ib.hi:
        return False
    return None


def certainly_lt(a: RealLike, b: RealLike) -> Optional[bool]:
    ia, ib = _coerce(a), _coerce(b)
    if ia.hi < ib.lo:
        return True
    if ia.lo >= ib.hi:
        return False
    return None


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise OverflowError("non-finite endpoint from mpmath")
    val = Fraction(-man if sign else man)
    return val * Fraction(2) ** exp


def _iv_to_interval(x) -> RealInterval:
    return RealInterval(_mpf_to_fraction(x.a), _mpf_to_fraction(x.b))


def _dyadic_bracket(x: Fraction, bits: int) -> tuple:
    """Dyadic lo/hi enclosing x with denominator 2^bits (exact at dyadics)."""
    scaled = x * (1 << bits)
    lo_num = scaled.numerator // scaled.denominator
    hi_num = lo_num if scaled == lo_num else lo_num + 1
    return lo_num, hi_num


def log2_fraction(x: Rational, prec: int = DEFAULT_PREC) -> RealInterval:
    """Certified enclosure of log2(x) for a positive rational x.

    x is normalized to m * 2^e with m in [1, 2); only the dyadic bracket of m
    (at most prec+2 bits) ever reaches mpmath, so huge numerators are safe.
    """
    f = Fraction(x)
    if f <= 0:
        raise ValueError("log2 needs a positive argument")
    e = f.numerator.bit_length() - f.denominator.bit_length()
    m = f / Fraction(2) ** e
    if m < 1:
        e -= 1
        m *= 2
    if m == 1:
        return RealInterval.exact(e)
    lo_num, hi_num = _dyadic_bracket(m, prec)
    old = iv.prec
    try:
        iv.prec = prec + 10
        arg = iv.mpf([mpmath.ldexp(lo_num, -prec), mpmath.ldexp(hi_num, -prec)])
        res = iv.log(arg) / iv.log(2)
    finally:
        iv.prec = old
    return _iv_to_interval(res) + e


def log2_interval(x: RealInterval, prec: int = DEFAULT_PREC) -> RealInterval:
    """log2 over an interval of positive rationals (log2 is increasing)."""
    return RealInterval(
        log2_fraction(x.lo, prec).lo, log2_fraction(x.hi, prec).hi
    )


def pow2_fraction(x: Rational, prec: int = DEFAULT_PREC) -> RealInterval:
    """Certified enclosure of 2^x for rational x; exact for integer x."""
    f = Fraction(x)
    i = f.numerator // f.denominator
    frac = f - i
    scale = Fraction(2) ** i
    if frac == 0:
        return RealInterval.exact(scale)
    lo_num, hi_num = _dyadic_bracket(frac, prec)
    old = iv.prec
    try:
        iv.prec = prec + 10
        arg = iv.mpf([mpmath.ldexp(lo_num, -prec), mpmath.ldexp(hi_num, -prec)])
        res = iv.exp(arg * iv.log(2))
    finally:
        iv.prec = old
    return _iv_to_interval(res) * scale


def pow2_interval(x: RealLike, prec: int = DEFAULT_PREC) -> RealInterval:
    """2^x over an interval (2^x is increasing)."""
    ix = _coerce(x)
    return RealInterval(pow2_fraction(ix.lo, prec).lo, pow2_fraction(ix.hi, prec).hi)


def sqrt_int(n: int, bits: int = 64) -> RealInterval:
    """Certified enclosure of sqrt(n) via integer square roots, no rounding leaks."""
    if n < 0:
        raise ValueError("sqrt of a negative integer")
    r = isqrt(n << (2 * bits))
    lo = Fraction(r, 1 << bits)
    hi = lo if r * r == n << (2 * bits) else Fraction(r + 1, 1 << bits)
    return RealInterval(lo, hi)


def entropy_fraction(x: Rational, prec: int = DEFAULT_PREC) -> RealInterval:
    """Binary entropy H(x) = -x log2 x - (1-x) log2(1-x), H(0) = H(1) = 0."""
    f = Fraction(x)
    if not 0 <= f <= 1:
        raise ValueError(f"entropy argument {f} outside [0, 1]")
    if f in (0, 1):
        return RealInterval.exact(0)
    if f == Fraction(1, 2):
        return RealInterval.exact(1)
    lx = log2_fraction(f, prec)
    ly = log2_fraction(1 - f, prec)
    return -(lx * f) - (ly * (1 - f))


def entropy_interval(x: RealInterval, prec: int = DEFAULT_PREC) -> RealInterval:
    """Enclosure of H over an interval inside (0, 1), monotone pieces not assumed."""
    if not (0 < x.lo and x.hi < 1):
        raise ValueError("entropy_interval needs an interval interior to (0, 1)")
    lx = log2_interval(x, prec)
    one_minus = RealInterval(1 - x.hi, 1 - x.lo)
    ly = log2_interval(one_minus, prec)
    return -(lx * x) - (ly * one_minus)


def entropy(x: Rational, tol: Rational = Fraction(1, 10**30)) -> RealInterval:
    """H(x) as a certified interval of width at most tol."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    prec = DEFAULT_PREC
    while True:
        res = entropy_fraction(x, prec)
        if res.width <= tol:
            return res
        prec *= 2
        if prec > MAX_PREC:
            raise PrecisionError("entropy did not reach the requested tolerance")


def entropy_inverse(y: Rational, tol: Rational = Fraction(1, 10**30)) -> RealInterval:
    """The unique x in [0, 1/2] with H(x) = y, bracketed to width <= tol.

    Bisection keeps a certified bracket [lo, hi] with H(lo) <= y <= H(hi);
    when the enclosure of H(mid) straddles y the working precision escalates.
    """
    y = Fraction(y)
    if not 0 <= y <= 1:
        raise ValueError(f"entropy_inverse argument {y} outside [0, 1]")
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if y == 0:
        return RealInterval.exact(0)
    if y == 1:
        return RealInterval.exact(Fraction(1, 2))
    lo, hi = Fraction(0), Fraction(1, 2)
    prec = DEFAULT_PREC
    while hi - lo > tol:
        mid = (lo + hi) / 2
        h = entropy_fraction(mid, prec)
        if h.hi <= y:
            lo = mid
        elif h.lo >= y:
            hi = mid
        else:
            prec *= 2
            if prec > MAX_PREC:
                raise PrecisionError("entropy_inverse bisection stalled")
    return RealInterval(lo, hi)
