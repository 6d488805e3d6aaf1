"""Exact evaluation of the closed-form size bounds and certified inequalities.

Every bound is computed with arbitrary-precision integers or rationals;
the two inexact entries (the Blackburn leading term and the asymptotic rate)
are flagged and never enter best_bound.  Real-valued reasoning (entropy
terms, the sqrt(33) threshold cross-check) goes through certified intervals
from the intervals module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .intervals import (
    DEFAULT_PREC,
    MAX_PREC,
    PrecisionError,
    RealInterval,
    certainly_le,
    certainly_lt,
    entropy,
    entropy_fraction,
    entropy_interval,
    entropy_inverse,
    log2_fraction,
    pow2_interval,
    sqrt_int,
)

BoundValue = Union[int, Fraction, RealInterval]


class DomainError(ValueError):
    """Bound evaluated outside the domain of its theorem."""


def binom(n: int, k: int) -> int:
    """C(n, k) with the extremal-set convention: 0 outside 0 <= k <= n."""
    if k < 0 or k > n or n < 0:
        return 0
    return comb(n, k)


def sum_binomials(n: int, lo: int, hi: int) -> int:
    """Sum of C(n, i) over lo <= i <= hi; out-of-range indices contribute 0."""
    return sum(binom(n, i) for i in range(max(lo, 0), hi + 1))


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def threshold_below(n: int, k: int) -> bool:
    """Exact test of n < (15 + sqrt(33)) / 24 * k^2, no floating point.

    Rearranged to 24n - 15k^2 < sqrt(33) k^2: true outright when the left side
    is nonpositive, otherwise decided by squaring (33 is not a perfect square,
    so ties are impossible).
    """
    if n < 1 or k < 1:
        raise ValueError("threshold test needs positive integers")
    lhs = 24 * n - 15 * k * k
    if lhs <= 0:
        return True
    return lhs * lhs < 33 * k**4


@lru_cache(maxsize=None)
def delta_for_range(n_lo: int, n_hi: int, bits: int = 32) -> Fraction:
    """Rational lower bound for min over n in [n_lo, n_hi] of
    C(n, floor((n-1)/2)) * sqrt(n) / 2^n, rounding sqrt(n) downward.

    Widening the range can only decrease the result.
    """
    if not 2 <= n_lo <= n_hi:
        raise ValueError("need 2 <= n_lo <= n_hi")
    best: Optional[Fraction] = None
    for n in range(n_lo, n_hi + 1):
        r = isqrt(n << (2 * bits))  # floor(sqrt(n) * 2^bits)
        value = Fraction(comb(n, (n - 1) // 2) * r, (1 << bits) * (1 << n))
        if best is None or value < best:
            best = value
    return best


DEFAULT_DELTA = delta_for_range  # callers typically use delta_for_range(2, 4096)


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound: exact value, usable floor and applicability notes."""

    name: str
    params: Tuple[Tuple[str, str], ...]
    value: BoundValue
    floor_value: Optional[int]
    exact: bool
    notes: Tuple[str, ...] = ()


def _params(**kwargs) -> Tuple[Tuple[str, str], ...]:
    return tuple((k, str(v)) for k, v in kwargs.items() if v is not None)


def _floor(value: BoundValue) -> Optional[int]:
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator // value.denominator
    return None


def _report(name: str, value: BoundValue, exact: bool = True, notes=(), **params) -> BoundReport:
    return BoundReport(
        name=name,
        params=_params(**params),
        value=value,
        floor_value=_floor(value),
        exact=exact,
        notes=tuple(notes),
    )


# --------------------------------------------------------------- catalogue

def zhou_zhou(n: int) -> BoundReport:
    """Size bound for wide-sense 2-frameproof codes, split by n mod 4."""
    if n % 2 == 0:
        if n < 8:
            raise DomainError("even branch needs n >= 8")
        value = comb(n, n // 2 - 1) - n // 2 + 1
    else:
        if n < 7:
            raise DomainError("odd branch needs n >= 7")
        central = comb(n, (n - 1) // 2)
        if n % 4 == 1:
            value = central - (n * n - 9) // 8 - (n - 5) ** 2 // 64
        else:
            value = central - ((n + 1) ** 2 - 8) // 8 - (n - 3) ** 2 // 64
    return _report("zhou_zhou", value, n=n)


def stinson_wei(n: int, t: int) -> BoundReport:
    if t < 2:
        raise DomainError("needs t >= 2")
    k = n - t + 2
    if k < 0:
        raise DomainError("needs t <= n + 2")
    return _report("stinson_wei", t - 1 + comb(k, ceil_div(k, 2)), n=n, t=t)


def blackburn_leading(n: int, t: int, q: int) -> BoundReport:
    """Leading term of Blackburn's bound; the unspecified O(q^{ceil(n/t)-1})
    remainder makes this non-exact."""
    if t < 1 or q < 2:
        raise DomainError("needs t >= 1 and q >= 2")
    r = n % t
    if r == 0:
        r = t
    k = ceil_div(n, t)
    denom = n - (r - 1) * k
    if denom <= 0:
        raise DomainError("degenerate leading coefficient")
    value = Fraction(n, denom) * q**k
    return _report(
        "blackburn_leading", value, exact=False, notes=("estimate",), n=n, t=t, q=q
    )


def shangguan_q(n: int, t: int, q: int) -> BoundReport:
    if t < 2 or q < 2:
        raise DomainError("needs t >= 2 and q >= 2")
    k = ceil_div(n * (q - 1), comb(t, 2))
    if k > n:
        raise DomainError("binomial index exceeds n; bound vacuous here")
    return _report("shangguan_q", comb(n, k) * q**k + t, n=n, t=t, q=q)


def general_t(n: int, t: int) -> BoundReport:
    if t < 3:
        raise DomainError("needs t >= 3")
    k = ceil_div(n - t + 1, comb(t, 2))
    return _report("general_t", binom(n, max(k, 0)) + t, n=n, t=t)


def asymptotic_rate(t: int, prec: int = DEFAULT_PREC) -> BoundReport:
    """Asymptotic rate limit 2 log2(t) / t^2 (an interval, not an exact bound)."""
    if t < 2:
        raise DomainError("needs t >= 2")
    value = log2_fraction(t, prec) * Fraction(2, t * t)
    return _report("asymptotic_rate", value, exact=False, notes=("estimate",), t=t)


def kleitman(n: int, s: int) -> BoundReport:
    """Max family size with pairwise Hamming distance in [s]; parity-split sums."""
    if not 1 <= s <= n - 1:
        raise DomainError("needs 1 <= s <= n - 1")
    if s % 2 == 0:
        value = sum_binomials(n, 0, s // 2)
    else:
        value = 2 * sum_binomials(n - 1, 0, (s - 1) // 2)
    return _report("kleitman", value, n=n, s=s)


def nagy_patkos(n: int, s: int) -> BoundReport:
    """L-close Sperner bound for |L| = s."""
    if s < 1:
        raise DomainError("needs s >= 1")
    return _report("nagy_patkos", sum_binomials(n, 0, s), n=n, s=s)


def xu_yip(n: int, s: int) -> BoundReport:
    """[s]-close Sperner bound valid for (n+1)/3 <= s <= n/2."""
    if not (Fraction(n + 1, 3) <= s <= Fraction(n, 2)):
        raise DomainError("needs (n+1)/3 <= s <= n/2")
    return _report("xu_yip", sum_binomials(n, 3 * s - n, s), n=n, s=s)


def furedi_cf(n: int, t: int) -> BoundReport:
    """Cover-free family bound t + C(n, ceil((n-t)/C(t+1,2)))."""
    if t < 2:
        raise DomainError("needs t >= 2")
    k = ceil_div(n - t, comb(t + 1, 2))
    return _report("furedi_cf", t + binom(n, max(k, 0)), n=n, t=t)


def prop_sperner(n: int, eps: Fraction) -> BoundReport:
    """Size bound for non-2-covering Sperner families holding a set of size <= eps*n."""
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise DomainError("needs 0 < eps < 1/2")
    small = int(eps * n)
    value = (1 - Fraction(1, comb(n, small))) * comb(n, (n - 1) // 2) + 1
    return _report("prop_sperner", value, n=n, eps=eps)


def phi(n: int, eps: Fraction) -> BoundReport:
    """Two-branch wide-sense 2-frameproof bound phi(n, eps): the larger of the
    close-Sperner sum branch and the small-set Sperner branch."""
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise DomainError("needs 0 < eps < 1/2")
    if int(eps * n) < 1:
        raise DomainError("needs floor(eps * n) >= 1")
    branch_sum, branch_small = _phi_branches(n, eps)
    value = max(Fraction(branch_sum), branch_small)
    winner = "sum" if Fraction(branch_sum) >= branch_small else "small-set"
    return _report("phi", value, notes=(f"branch={winner}",), n=n, eps=eps)


def _phi_branches(n: int, eps: Fraction) -> Tuple[int, Fraction]:
    c = _ceil_fraction(Fraction(1 - eps, 2) * n)
    branch_sum = sum_binomials(n, 3 * c - n - 3, c - 1) + 1
    small = int(eps * n)
    branch_small = (1 - Fraction(1, comb(n, small))) * comb(n, (n - 1) // 2) + 2
    return branch_sum, branch_small


def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


_CATALOGUE = {
    "zhou_zhou": (zhou_zhou, ("n",)),
    "stinson_wei": (stinson_wei, ("n", "t")),
    "blackburn_leading": (blackburn_leading, ("n", "t", "q")),
    "shangguan_q": (shangguan_q, ("n", "t", "q")),
    "general_t": (general_t, ("n", "t")),
    "asymptotic_rate": (asymptotic_rate, ("t",)),
    "kleitman": (kleitman, ("n", "s")),
    "nagy_patkos": (nagy_patkos, ("n", "s")),
    "xu_yip": (xu_yip, ("n", "s")),
    "furedi_cf": (furedi_cf, ("n", "t")),
    "prop_sperner": (prop_sperner, ("n", "eps")),
    "phi": (phi, ("n", "eps")),
}


def bound_names() -> Tuple[str, ...]:
    return tuple(sorted(_CATALOGUE))


def evaluate_bound(name: str, **params) -> BoundReport:
    """Evaluate a catalogue bound by name; DomainError names the violated condition."""
    if name not in _CATALOGUE:
        raise ValueError(f"unknown bound {name!r}; known: {', '.join(bound_names())}")
    func, wanted = _CATALOGUE[name]
    missing = [p for p in wanted if p not in params]
    if missing:
        raise DomainError(f"bound {name} needs parameters {', '.join(missing)}")
    extra = set(params) - set(wanted)
    if extra:
        raise DomainError(f"bound {name} does not take {', '.join(sorted(extra))}")
    return func(**{p: params[p] for p in wanted})


# ----------------------------------------------------- frameproof best bound

def applicable_exact_bounds(n: int, t: int, q: int, mode: str = "wide") -> List[BoundReport]:
    """Every exact catalogue bound valid for max code sizes at these parameters.

    Wide-sense bounds do not constrain narrow-sense codes unless q = 2, where
    the two notions coincide; narrow-sense bounds constrain both.
    """
    if mode not in ("wide", "narrow"):
        raise ValueError(f"unknown mode {mode!r}")
    out: List[BoundReport] = [
        _report("universe", q**n, n=n, t=t, q=q)
    ]
    narrow_only_safe = mode == "narrow" and q > 2
    if not narrow_only_safe:
        if t == 2:
            try:
                out.append(zhou_zhou(n))
            except DomainError:
                pass
        if t >= 2:
            try:
                out.append(stinson_wei(n, t))
            except DomainError:
                pass
        if t >= 3:
            out.append(general_t(n, t))
            if n >= 2 and threshold_below(n, t - 1):
                out.append(
                    _report("tight_n", n, notes=("below (15+sqrt(33))/24 (t-1)^2",), n=n, t=t)
                )
    if t >= 2:
        try:
            out.append(shangguan_q(n, t, q))
        except DomainError:
            pass
    return out


def best_bound(n: int, t: int, q: int, mode: str = "wide") -> BoundReport:
    """Minimum floor over all applicable exact bounds, with the winner recorded."""
    candidates = applicable_exact_bounds(n, t, q, mode)
    winner = min(candidates, key=lambda r: (r.floor_value, r.name))
    return BoundReport(
        name="best_bound",
        params=_params(n=n, t=t, q=q, mode=mode),
        value=winner.floor_value,
        floor_value=winner.floor_value,
        exact=True,
        notes=(f"winner={winner.name}",)
        + tuple(f"{r.name}={r.floor_value}" for r in candidates),
    )


# ------------------------------------------------- epsilon(n) and the chain

def _certified_ceil(x: RealInterval) -> Optional[int]:
    lo = _ceil_fraction(x.lo)
    hi = _ceil_fraction(x.hi)
    return lo if lo == hi else None


def _certified_floor(x: RealInterval) -> Optional[int]:
    lo = x.lo.numerator // x.lo.denominator
    hi = x.hi.numerator // x.hi.denominator
    return lo if lo == hi else None


def epsilon_validity_threshold(delta: Fraction, prec: int = DEFAULT_PREC) -> int:
    """Smallest admissible n for epsilon_n: ceil(2(1 - log2 delta)/(1 - H(1/4))) + 30."""
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise DomainError("delta must lie in (0, 1)")
    while True:
        expr = (RealInterval.exact(1) - log2_fraction(delta, prec)) * 2 / (
            RealInterval.exact(1) - entropy_fraction(Fraction(1, 4), prec)
        )
        c = _certified_ceil(expr)
        if c is not None:
            return c + 30
        prec *= 2
        if prec > MAX_PREC:
            raise PrecisionError("validity threshold undecidable")


def epsilon_n(n: int, delta: Fraction, prec: int = DEFAULT_PREC) -> RealInterval:
    """The vanishing margin eps(n) = max{1/n, 1 - 2 H^{-1}(1 - (2 + log2 n
    - 2 log2 delta) / (2n))}, certified inside (0, 1/2)."""
    delta = Fraction(delta)
    if n < epsilon_validity_threshold(delta, prec):
        raise DomainError(
            f"n = {n} below the validity threshold "
            f"{epsilon_validity_threshold(delta, prec)}"
        )
    y = (
        RealInterval.exact(1)
        - (log2_fraction(n, prec) - 2 * log2_fraction(delta, prec) + 2)
        / (2 * n)
    )
    if not (0 < y.lo and y.hi < 1):
        raise PrecisionError("entropy argument not certified inside (0, 1)")
    tol = Fraction(1, 2 ** max(prec // 2, 48))
    x_lo = entropy_inverse(y.lo, tol)
    x_hi = entropy_inverse(y.hi, tol)
    cand = 1 - 2 * RealInterval(x_lo.lo, x_hi.hi)
    inv_n = Fraction(1, n)
    eps = RealInterval(max(inv_n, cand.lo), max(inv_n, cand.hi))
    if not (0 < eps.lo and eps.hi < Fraction(1, 2)):
        raise PrecisionError("epsilon(n) not certified inside (0, 1/2)")
    return eps


@dataclass(frozen=True)
class ChainReport:
    """Certified evaluation of the two-branch bound at eps(n) and its consequences.

    sum_branch <= entropy_term <= half_central <= second_branch forces phi to
    equal the second branch; the corollary inequality then exhibits the
    exponential gap below the central binomial coefficient, and improves_zhou
    records the comparison against the previous best bound.
    """

    n: int
    delta: Fraction
    prec: int
    epsilon: RealInterval
    eps_times_n_floor: int
    half_ceil: int
    sum_branch: int
    entropy_term: RealInterval
    half_central: Fraction
    second_branch: Fraction
    phi_value: Fraction
    corollary_rhs: RealInterval
    zhou_value: Optional[int]
    sum_le_entropy: bool
    entropy_le_half: bool
    half_le_second: bool
    phi_is_second_branch: bool
    corollary_holds: bool
    improves_zhou: Optional[bool]

    @property
    def all_hold(self) -> bool:
        core = (
            self.sum_le_entropy
            and self.entropy_le_half
            and self.half_le_second
            and self.phi_is_second_branch
            and self.corollary_holds
        )
        return core and (self.improves_zhou is not False)


def main_theorem_chain(
    n: int, delta: Optional[Fraction] = None, prec: int = DEFAULT_PREC
) -> ChainReport:
    """Certify, at one n, the inequality chain behind the two-branch bound.

    All comparisons are exact rational checks or interval-certified; an
    undecidable comparison escalates the working precision.
    """
    if delta is None:
        delta = delta_for_range(2, 4096)
    delta = Fraction(delta)
    working = prec
    while True:
        try:
            return _chain_at_precision(n, delta, working, prec)
        except PrecisionError:
            working *= 2
            if working > MAX_PREC:
                raise


def _chain_at_precision(n: int, delta: Fraction, prec: int, report_prec: int) -> ChainReport:
    eps = epsilon_n(n, delta, prec)
    je = _certified_floor(eps * n)
    ce = _certified_ceil((1 - eps) * Fraction(1, 2) * n)
    if je is None or ce is None:
        raise PrecisionError("branch indices unresolved")

    central = comb(n, (n - 1) // 2)
    sum_branch = sum_binomials(n, 3 * ce - n - 3, ce - 1) + 1
    half_arg = (1 - eps) * Fraction(1, 2)
    entropy_term = pow2_interval(entropy_interval(half_arg, prec) * n, prec) + 1
    half_central = Fraction(central, 2) + 2
    second_branch = (1 - Fraction(1, comb(n, je))) * central + 2
    gap = pow2_interval((1 - entropy_interval(eps, prec)) * n, prec)
    corollary_rhs = central + 2 - gap * delta / sqrt_int(n)

    c1 = certainly_le(sum_branch, entropy_term)
    c2 = certainly_le(entropy_term, half_central)
    c4 = certainly_le(second_branch, corollary_rhs)
    if None in (c1, c2, c4):
        raise PrecisionError("chain comparison unresolved")
    c3 = half_central <= second_branch
    phi_is_second = Fraction(sum_branch) <= second_branch

    zhou_value: Optional[int] = None
    improves: Optional[bool] = None
    try:
        zhou_value = zhou_zhou(n).floor_value
        improves = _floor(second_branch) < zhou_value
    except DomainError:
        pass

    return ChainReport(
        n=n,
        delta=delta,
        prec=report_prec,
        epsilon=eps,
        eps_times_n_floor=je,
        half_ceil=ce,
        sum_branch=sum_branch,
        entropy_term=entropy_term,
        half_central=half_central,
        second_branch=second_branch,
        phi_value=max(Fraction(sum_branch), second_branch),
        corollary_rhs=corollary_rhs,
        zhou_value=zhou_value,
        sum_le_entropy=c1,
        entropy_le_half=c2,
        half_le_second=c3,
        phi_is_second_branch=phi_is_second,
        corollary_holds=c4,
        improves_zhou=improves,
    )
