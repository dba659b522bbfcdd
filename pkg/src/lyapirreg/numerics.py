"""Extended-range signed arithmetic and 2x2 matrices.

Two number types live here:

* :class:`LogValue` stores a real as ``(sign, log|value|)`` so products like
  ``lam**n * sigma**m`` with ``n, m ~ 1e7`` stay finite.
* :class:`SigmaPower` stores ``sign * sigma**exponent`` with an exact Python
  integer exponent; the base is implicit and only supplied on conversion.

``logmag`` is a 64-bit float, so integer exponents above ``2**52`` are no
longer exact inside a LogValue.  Keep such quantities as SigmaPower.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union


@dataclass(frozen=True)
class LogValue:
    sign: int
    logmag: float = 0.0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign!r}")
        if self.sign == 0:
            # canonical zero so that equality works
            object.__setattr__(self, "logmag", 0.0)
        elif not math.isfinite(self.logmag):
            raise ValueError(f"logmag must be finite, got {self.logmag!r}")

    @classmethod
    def from_real(cls, x: float) -> "LogValue":
        if x == 0:
            return ZERO
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, logmag: float, sign: int = 1) -> "LogValue":
        return cls(sign, logmag)

    def to_real(self) -> float:
        """Convert back to a float (may overflow to inf or underflow to 0)."""
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.logmag)
        except OverflowError:
            return self.sign * math.inf

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "LogValue":
        return LogValue(-self.sign, self.logmag)

    def __abs__(self) -> "LogValue":
        return LogValue(abs(self.sign), self.logmag)

    def __add__(self, other: "LogValue") -> "LogValue":
        return lv_add(self, other)

    def __sub__(self, other: "LogValue") -> "LogValue":
        return lv_add(self, -other)

    def __mul__(self, other: "LogValue") -> "LogValue":
        return lv_mul(self, other)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if other.sign == 0:
            raise ZeroDivisionError("LogValue division by zero")
        return LogValue(self.sign * other.sign, self.logmag - other.logmag)

    def __pow__(self, e: int) -> "LogValue":
        return lv_pow(self, e)

    def __repr__(self):
        if self.sign == 0:
            return "LogValue(0)"
        return f"LogValue({'+' if self.sign > 0 else '-'}, {self.logmag!r})"


ZERO = LogValue(0)
ONE = LogValue(1, 0.0)


def _log1mexp(d: float) -> float:
    """log(1 - exp(-d)) for d > 0, accurate at both ends."""
    if d > math.log(2.0):
        return math.log1p(-math.exp(-d))
    return math.log(-math.expm1(-d))


def lv_add(x: LogValue, y: LogValue) -> LogValue:
    """Sign-aware log-sum-exp.  Exact cancellation returns zero."""
    if x.sign == 0:
        return y
    if y.sign == 0:
        return x
    if x.logmag < y.logmag:
        x, y = y, x
    d = x.logmag - y.logmag
    if x.sign == y.sign:
        return LogValue(x.sign, x.logmag + math.log1p(math.exp(-d)))
    if d == 0.0:
        return ZERO
    return LogValue(x.sign, x.logmag + _log1mexp(d))


def lv_mul(x: LogValue, y: LogValue) -> LogValue:
    if x.sign == 0 or y.sign == 0:
        return ZERO
    return LogValue(x.sign * y.sign, x.logmag + y.logmag)


def lv_pow(x: LogValue, e: int) -> LogValue:
    if x.sign == 0:
        if e <= 0:
            raise ZeroDivisionError("zero raised to a non-positive power")
        return ZERO
    sign = x.sign if e % 2 else 1
    return LogValue(sign, x.logmag * e)


def lv_sum(values: Iterable[LogValue]) -> LogValue:
    total = ZERO
    for v in values:
        total = lv_add(total, v)
    return total


@dataclass(frozen=True)
class SigmaPower:
    """Exact ``sign * sigma**exponent``; ``sign == 0`` encodes an exact zero.

    Sums are only representable when at most one operand is nonzero or the
    two cancel, which is all the monomial matrices below ever need.
    """

    sign: int
    exponent: int = 0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign!r}")
        if not isinstance(self.exponent, int):
            raise TypeError("SigmaPower exponent must be an int")
        if self.sign == 0:
            object.__setattr__(self, "exponent", 0)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "SigmaPower":
        return SigmaPower(-self.sign, self.exponent)

    def __mul__(self, other: "SigmaPower") -> "SigmaPower":
        if self.sign == 0 or other.sign == 0:
            return SP_ZERO
        return SigmaPower(self.sign * other.sign, self.exponent + other.exponent)

    def __add__(self, other: "SigmaPower") -> "SigmaPower":
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        if self.exponent == other.exponent and self.sign == -other.sign:
            return SP_ZERO
        raise ArithmeticError(
            f"{self!r} + {other!r} is not a signed power of sigma")

    def to_logvalue(self, sigma: float) -> LogValue:
        if self.sign == 0:
            return ZERO
        return LogValue(self.sign, self.exponent * math.log(sigma))

    def to_real(self, sigma: float) -> float:
        return self.to_logvalue(sigma).to_real()

    def __repr__(self):
        if self.sign == 0:
            return "SigmaPower(0)"
        return f"SigmaPower({'+' if self.sign > 0 else '-'}, {self.exponent})"


SP_ZERO = SigmaPower(0)
SP_ONE = SigmaPower(1, 0)

Entry = Union[LogValue, SigmaPower]


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix ``[[a11, a12], [a21, a22]]`` over LogValue or SigmaPower."""

    a11: Entry
    a12: Entry
    a21: Entry
    a22: Entry

    @classmethod
    def identity(cls, exact: bool = False) -> "Mat2":
        one, zero = (SP_ONE, SP_ZERO) if exact else (ONE, ZERO)
        return cls(one, zero, zero, one)

    @classmethod
    def diag(cls, d1: Entry, d2: Entry) -> "Mat2":
        zero = SP_ZERO if isinstance(d1, SigmaPower) else ZERO
        return cls(d1, zero, zero, d2)

    @classmethod
    def antidiag(cls, upper: Entry, lower: Entry) -> "Mat2":
        zero = SP_ZERO if isinstance(upper, SigmaPower) else ZERO
        return cls(zero, upper, lower, zero)

    @classmethod
    def from_reals(cls, rows: Sequence[Sequence[float]]) -> "Mat2":
        (a, b), (c, d) = rows
        f = LogValue.from_real
        return cls(f(a), f(b), f(c), f(d))

    def entries(self):
        return (self.a11, self.a12, self.a21, self.a22)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return mat2_mul(self, other)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a11, -self.a12, -self.a21, -self.a22)

    def to_logvalues(self, sigma: float) -> "Mat2":
        """Convert a SigmaPower matrix into a LogValue one."""
        conv = [e.to_logvalue(sigma) if isinstance(e, SigmaPower) else e
                for e in self.entries()]
        return Mat2(*conv)

    def to_reals(self, sigma: float | None = None):
        out = []
        for e in self.entries():
            out.append(e.to_real(sigma) if isinstance(e, SigmaPower) else e.to_real())
        return [[out[0], out[1]], [out[2], out[3]]]


def mat2_mul(A: Mat2, B: Mat2) -> Mat2:
    return Mat2(
        A.a11 * B.a11 + A.a12 * B.a21,
        A.a11 * B.a12 + A.a12 * B.a22,
        A.a21 * B.a11 + A.a22 * B.a21,
        A.a21 * B.a12 + A.a22 * B.a22,
    )


def mat2_apply(A: Mat2, v: Sequence[LogValue]) -> tuple[LogValue, LogValue]:
    if isinstance(A.a11, SigmaPower):
        raise TypeError("convert SigmaPower matrices with to_logvalues(sigma) first")
    v1, v2 = v
    return (A.a11 * v1 + A.a12 * v2, A.a21 * v1 + A.a22 * v2)


def vec_lognorm(v: Sequence[LogValue]) -> LogValue:
    """Euclidean norm of a LogValue vector, returned as a LogValue."""
    logs = [2.0 * c.logmag for c in v if c.sign != 0]
    if not logs:
        return ZERO
    top = max(logs)
    s = math.fsum(math.exp(l - top) for l in logs)
    return LogValue(1, 0.5 * (top + math.log(s)))


def lv_vector(values: Sequence[float]) -> tuple[LogValue, ...]:
    return tuple(LogValue.from_real(x) for x in values)
