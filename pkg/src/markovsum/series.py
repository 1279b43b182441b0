"""Lagrange numbers, the gap series and its remainders, and truncated
length-series sums, all at explicit decimal precision.

The headline object is the series of gaps 3 - L(m) over Markov numbers in
increasing order.  Its limit, conditional on the uniqueness conjecture,
is the constant 4 - golden_ratio - sqrt(2); the remainder after n terms
shrinks roughly like (6*sqrt(n)/C) * exp(-2*C*sqrt(n)) for the growth
constant C = 2.3523414972, so the working precision must scale with
sqrt(n).  The default policy below adds 50 guard digits on top of that
scale and is validated by a precision-doubling test rather than trusted.

Single terms are pure and could be evaluated in parallel; the reduction
into a partial sum is sequential and deterministic in stream order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .enumeration import MarkovStream
from .precision import PrecisionReal, _require_prec, ulp
from .slopes import canonical_slopes, holonomy_trace

#: Growth-rate constant, stored exactly as the digits are usually printed;
#: no attempt is made to recompute it.
ZAGIER_C = "2.3523414972"
_ZAGIER_C_FLOAT = float(ZAGIER_C)

GUARD_DIGITS = 50


class InsufficientPrecisionError(ArithmeticError):
    """The remainder drowned in the accumulated rounding budget.

    Carries the precision a re-run should use.
    """

    def __init__(self, n: int, prec: int, suggested: int):
        self.n = n
        self.prec = prec
        self.suggested = suggested
        super().__init__(
            f"remainder after {n} terms is not resolvable at {prec} digits; "
            f"re-run with precision >= {suggested}"
        )


def default_precision(n: int) -> int:
    """Working digits so the remainder after n terms stays resolvable."""
    if n < 1:
        raise ValueError(f"term count must be >= 1, got {n}")
    return math.ceil(2 * _ZAGIER_C_FLOAT * math.sqrt(n) / math.log(10)) + GUARD_DIGITS


def lagrange(m: int, prec: int) -> PrecisionReal:
    """Lagrange number sqrt(9 - 4/m^2) of a Markov number m.

    Strictly increasing in m, always below 3.
    """
    _require_prec(prec)
    if m < 1:
        raise ValueError(f"Markov numbers are positive, got {m}")
    with mp.workdps(prec):
        return PrecisionReal(mp.sqrt(9 - mp.mpf(4) / (mp.mpf(m) ** 2)), prec)


def gap_term(m: int, prec: int) -> PrecisionReal:
    """3 - lagrange(m) in the cancellation-free form (4/m^2)/(3 + sqrt(9 - 4/m^2)).

    Direct subtraction loses all accuracy once m has more digits than half
    the working precision; this form never cancels.
    """
    _require_prec(prec)
    if m < 1:
        raise ValueError(f"Markov numbers are positive, got {m}")
    with mp.workdps(prec):
        t = mp.mpf(4) / (mp.mpf(m) ** 2)
        return PrecisionReal(t / (3 + mp.sqrt(9 - t)), prec)


def target_constant(prec: int) -> PrecisionReal:
    """The conjectural series limit 4 - golden_ratio - sqrt(2)."""
    _require_prec(prec)
    with mp.workdps(prec):
        golden = (1 + mp.sqrt(5)) / 2
        return PrecisionReal(4 - golden - mp.sqrt(2), prec)


def zagier_tail(n: int, prec: int) -> PrecisionReal:
    """The modeled remainder (6*sqrt(n)/C) * exp(-2*C*sqrt(n))."""
    _require_prec(prec)
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    with mp.workdps(prec):
        c = mp.mpf(ZAGIER_C)
        root = mp.sqrt(n)
        return PrecisionReal((6 * root / c) * mp.exp(-2 * c * root), prec)


@dataclass(frozen=True)
class SeriesReport:
    """Snapshot of the gap series after n distinct Markov numbers.

    remainder is target_constant - partial_sum at the shared precision;
    error_budget is the crude n-ulp accumulation bound the sum was checked
    against.
    """

    n: int
    partial_sum: PrecisionReal
    remainder: PrecisionReal
    zagier_tail: PrecisionReal
    remainder_over_tail: PrecisionReal
    error_budget: PrecisionReal


def partial_sum(n: int, prec: int | None = None, stream: MarkovStream | None = None) -> SeriesReport:
    """Sum the first n gap terms in stream order and report the remainder.

    The remainder must stay strictly positive at every truncation; if it
    falls below the rounding budget the computation is unresolvable at
    this precision and an InsufficientPrecisionError says what to use
    instead.
    """
    return series_profile(n, samples=(n,), prec=prec, stream=stream)[-1]


def series_profile(
    n: int,
    samples,
    prec: int | None = None,
    stream: MarkovStream | None = None,
) -> list[SeriesReport]:
    """One pass over the stream, reporting at each sampled term count.

    samples must be positive and <= n; duplicates collapse.  Duplicate
    stream emissions (uniqueness counterexamples) do not contribute a term
    or an index: the series is indexed by distinct Markov numbers.
    """
    if n < 1:
        raise ValueError(f"term count must be >= 1, got {n}")
    wanted = sorted(set(samples))
    if not wanted:
        raise ValueError("no sample points given")
    if wanted[0] < 1 or wanted[-1] > n:
        raise ValueError(f"sample points must lie in [1, {n}], got {wanted[0]}..{wanted[-1]}")
    if prec is None:
        prec = default_precision(n)
    _require_prec(prec)
    if stream is None:
        stream = MarkovStream()

    reports: list[SeriesReport] = []
    sample_set = set(wanted)
    with mp.workdps(prec):
        golden = (1 + mp.sqrt(5)) / 2
        target = 4 - golden - mp.sqrt(2)
        c = mp.mpf(ZAGIER_C)
        total = mp.mpf(0)
        count = 0
        while count < n:
            emission = stream.next_markov()
            if emission.duplicate:
                continue
            count += 1
            t = mp.mpf(4) / (mp.mpf(emission.value) ** 2)
            total += t / (3 + mp.sqrt(9 - t))
            if count in sample_set:
                partial = PrecisionReal(total, prec)
                remainder = PrecisionReal(target - total, prec)
                budget = count * ulp(partial)
                if remainder <= budget:
                    raise InsufficientPrecisionError(
                        count, prec, max(default_precision(count), prec + 100)
                    )
                root = mp.sqrt(count)
                tail = PrecisionReal((6 * root / c) * mp.exp(-2 * c * root), prec)
                reports.append(
                    SeriesReport(
                        n=count,
                        partial_sum=partial,
                        remainder=remainder,
                        zagier_tail=tail,
                        remainder_over_tail=remainder / tail,
                        error_budget=budget,
                    )
                )
    return reports


def orbit_weighted_identity_check(n: int, prec: int | None = None) -> PrecisionReal:
    """6*(sum of the first n gap terms) - 3*(gap_term(1) + gap_term(2)).

    Weighting orbits of curves by their sizes (six generically, three for
    the two shortest classes) turns the length series into this
    expression, whose limit is exactly 3; at any finite n it equals
    3 - 6*remainder, so convergence here is convergence of the gap series
    to the target constant.
    """
    if n < 2:
        raise ValueError(f"need at least the two singular terms, got n = {n}")
    if prec is None:
        prec = default_precision(n)
    report = partial_sum(n, prec=prec)
    return 6 * report.partial_sum - 3 * (gap_term(1, prec) + gap_term(2, prec))


def mcshane_partial(bound: int, prec: int) -> PrecisionReal:
    """Truncated length series over the slope box |p| <= bound, q <= bound.

    Includes the infinite slope [1:0].  Strictly increasing in the bound
    and provably below 1/2, the full-series value.
    """
    return mcshane_profile(bound, prec)[-1]


def mcshane_profile(bound: int, prec: int) -> list[PrecisionReal]:
    """Partial sums after each ring k = 1..bound of the slope box.

    Entry k-1 equals mcshane_partial(k, prec) exactly: the summation
    order is the canonical slope order, so prefixes coincide.
    """
    _require_prec(prec)
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    sums: list[PrecisionReal] = []
    with mp.workdps(prec):
        total = mp.mpf(0)
        ring = 0
        for slope in canonical_slopes(bound):
            height = max(abs(slope.p), slope.q)
            if height > ring:
                if ring >= 1:
                    sums.append(PrecisionReal(total, prec))
                ring = height
            tau = holonomy_trace(slope)
            half = (tau + mp.sqrt(mp.mpf(tau) ** 2 - 4)) / 2
            total += 1 / (1 + half**2)
        sums.append(PrecisionReal(total, prec))
    return sums
