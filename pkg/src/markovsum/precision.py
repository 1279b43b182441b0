"""Decimal-precision real values on top of mpmath.

Every value carries the working precision (decimal digits) it was
computed at.  Arithmetic runs round-to-nearest at that precision, and
mixing operands of different precisions is an error rather than a silent
coercion: cross-precision comparisons are how subtle summation bugs hide.

Plain Python ints are exact and may mix freely.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

MIN_PRECISION = 2


class PrecisionMismatchError(ValueError):
    """Two PrecisionReal operands carry different working precisions."""


def _require_prec(prec: int) -> int:
    if not isinstance(prec, int) or prec < MIN_PRECISION:
        raise ValueError(f"precision must be an integer >= {MIN_PRECISION}, got {prec!r}")
    return prec


@dataclass(frozen=True, eq=False)
class PrecisionReal:
    """An mpmath real plus the decimal precision it is pinned to."""

    value: mp.mpf
    prec: int

    def __post_init__(self) -> None:
        _require_prec(self.prec)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_int(cls, v: int, prec: int) -> "PrecisionReal":
        _require_prec(prec)
        with mp.workdps(prec):
            return cls(mp.mpf(v), prec)

    @classmethod
    def from_str(cls, text: str, prec: int) -> "PrecisionReal":
        _require_prec(prec)
        with mp.workdps(prec):
            return cls(mp.mpf(text), prec)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> mp.mpf | None:
        if isinstance(other, PrecisionReal):
            if other.prec != self.prec:
                raise PrecisionMismatchError(
                    f"operands carry different precisions ({self.prec} vs {other.prec}); "
                    "recompute one side before combining"
                )
            return other.value
        if isinstance(other, int):
            return mp.mpf(other)
        return None

    def _binary(self, other, op):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        with mp.workdps(self.prec):
            return PrecisionReal(op(self.value, rhs), self.prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return PrecisionReal(-self.value, self.prec)

    def __abs__(self):
        return PrecisionReal(abs(self.value), self.prec)

    # -- comparisons ---------------------------------------------------------

    def _cmp_value(self, other) -> mp.mpf:
        rhs = self._coerce(other)
        if rhs is None:
            raise TypeError(f"cannot compare PrecisionReal with {type(other).__name__}")
        return rhs

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __eq__(self, other):
        if not isinstance(other, (PrecisionReal, int)):
            return NotImplemented
        return self.value == self._cmp_value(other)

    __hash__ = None  # equality can raise on precision mismatch, so no hashing

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        with mp.workdps(self.prec):
            return f"PrecisionReal({mp.nstr(self.value, min(self.prec, 17))}, prec={self.prec})"


def ulp(x: PrecisionReal) -> PrecisionReal:
    """One unit in the last decimal place of x at its working precision.

    For zero this degrades to 10**(1 - prec), which is the right scale for
    accumulation budgets seeded at zero.
    """
    with mp.workdps(x.prec):
        if x.value == 0:
            exponent = 0
        else:
            exponent = int(mp.floor(mp.log10(abs(x.value))))
        return PrecisionReal(mp.power(10, exponent - x.prec + 1), x.prec)


def log10_float(x: PrecisionReal) -> float:
    """log10(x) as a machine float; usable far outside float range."""
    with mp.workdps(x.prec):
        return float(mp.log10(abs(x.value)))
