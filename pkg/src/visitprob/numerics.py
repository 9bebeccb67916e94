"""Probability arithmetic under three interchangeable numeric backends.

Every quantity the library manipulates is a :class:`ProbValue`: a
nonnegative real tagged with the backend it lives in.

* ``EXACT`` -- arbitrary-precision rationals (:class:`fractions.Fraction`).
  All arithmetic is exact, so results can be compared bit-for-bit.
* ``FLOAT`` -- IEEE-754 doubles.  Sums use compensated (Neumaier)
  summation so that long series of terms with wildly different magnitudes
  stay accurate to a few ulp.
* ``LOGSPACE`` -- doubles holding the natural log of the value, with
  ``-inf`` as the distinguished representation of zero.  Sums use a
  log-sum-exp reduction anchored at the largest term.  This backend keeps
  horizons in the thousands representable where plain doubles underflow.

The convention ``0**0 == 1`` holds in every backend: the boundary branches
of the closed form raise a possibly-zero probability to the zeroth power
when the horizon is a single step, and the result must be one.

All values are immutable and all operations are pure functions, so they
are safe to share across threads without synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from visitprob.errors import BackendMismatchError, ParameterError

__all__ = [
    "NumericMode",
    "ProbValue",
    "pow_prob",
    "sum_values",
    "convert",
    "parse_probability",
]

_NEG_INF = float("-inf")


class NumericMode(str, Enum):
    """Numeric backend selector; one mode per computation."""

    EXACT = "exact"
    FLOAT = "float"
    LOGSPACE = "logspace"


@dataclass(frozen=True, slots=True)
class ProbValue:
    """A nonnegative real number under a fixed numeric backend.

    ``value`` holds a ``Fraction`` in EXACT mode, the number itself in
    FLOAT mode, and its natural log in LOGSPACE mode (``-inf`` for zero).
    Probabilities proper lie in [0, 1]; moment computations may carry
    larger values through the same arithmetic.
    """

    mode: NumericMode
    value: Fraction | float

    def __post_init__(self) -> None:
        if self.mode is NumericMode.EXACT:
            if not isinstance(self.value, Fraction):
                object.__setattr__(self, "value", Fraction(self.value))
            if self.value < 0:
                raise ParameterError(f"exact value must be >= 0, got {self.value}")
        elif self.mode is NumericMode.FLOAT:
            v = float(self.value)
            object.__setattr__(self, "value", v)
            if math.isnan(v) or math.isinf(v):
                raise ParameterError(f"float value must be finite, got {v}")
            if v < 0.0:
                raise ParameterError(f"float value must be >= 0, got {v}")
        elif self.mode is NumericMode.LOGSPACE:
            v = float(self.value)
            object.__setattr__(self, "value", v)
            if math.isnan(v) or v == math.inf:
                raise ParameterError(f"log value must be in [-inf, inf), got {v}")
        else:  # pragma: no cover - enum is closed
            raise ParameterError(f"unknown numeric mode {self.mode!r}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def exact(cls, value: Fraction | int | str) -> "ProbValue":
        return cls(NumericMode.EXACT, Fraction(value))

    @classmethod
    def from_float(cls, value: float) -> "ProbValue":
        return cls(NumericMode.FLOAT, float(value))

    @classmethod
    def from_log(cls, log_value: float) -> "ProbValue":
        return cls(NumericMode.LOGSPACE, float(log_value))

    @classmethod
    def zero(cls, mode: NumericMode) -> "ProbValue":
        if mode is NumericMode.EXACT:
            return cls(mode, Fraction(0))
        if mode is NumericMode.FLOAT:
            return cls(mode, 0.0)
        return cls(mode, _NEG_INF)

    @classmethod
    def one(cls, mode: NumericMode) -> "ProbValue":
        if mode is NumericMode.EXACT:
            return cls(mode, Fraction(1))
        return cls(mode, 0.0 if mode is NumericMode.LOGSPACE else 1.0)

    @classmethod
    def from_int(cls, n: int, mode: NumericMode) -> "ProbValue":
        """Embed a nonnegative integer (used for moment weights)."""
        if n < 0:
            raise ParameterError(f"expected a nonnegative integer, got {n}")
        if mode is NumericMode.EXACT:
            return cls(mode, Fraction(n))
        if mode is NumericMode.FLOAT:
            return cls(mode, float(n))
        return cls(mode, math.log(n) if n > 0 else _NEG_INF)

    # -- views -------------------------------------------------------------

    def to_float(self) -> float:
        if self.mode is NumericMode.LOGSPACE:
            return math.exp(self.value)
        return float(self.value)

    def __float__(self) -> float:
        return self.to_float()

    def as_fraction(self) -> Fraction:
        """Exact payload view; FLOAT/LOGSPACE go through the nearest double."""
        if self.mode is NumericMode.EXACT:
            return self.value
        return Fraction(self.to_float())

    def is_zero(self) -> bool:
        if self.mode is NumericMode.LOGSPACE:
            return self.value == _NEG_INF
        return self.value == 0

    # -- arithmetic ---------------------------------------------------------

    def _require_same_mode(self, other: "ProbValue") -> None:
        if not isinstance(other, ProbValue):
            raise BackendMismatchError(
                f"expected a ProbValue, got {type(other).__name__}"
            )
        if other.mode is not self.mode:
            raise BackendMismatchError(
                f"backend mismatch: {self.mode.value} vs {other.mode.value}"
            )

    def __add__(self, other: "ProbValue") -> "ProbValue":
        self._require_same_mode(other)
        if self.mode is NumericMode.LOGSPACE:
            return ProbValue(self.mode, _log_add(self.value, other.value))
        return ProbValue(self.mode, self.value + other.value)

    def __mul__(self, other: "ProbValue") -> "ProbValue":
        self._require_same_mode(other)
        if self.mode is NumericMode.LOGSPACE:
            return ProbValue(self.mode, self.value + other.value)
        return ProbValue(self.mode, self.value * other.value)

    def __sub__(self, other: "ProbValue") -> "ProbValue":
        """Difference, clamping negative rounding residue to zero.

        Used by moment computations (variance); an operand ordering that
        is negative beyond rounding noise is a caller bug and raises.
        """
        self._require_same_mode(other)
        if self.mode is NumericMode.EXACT:
            if other.value > self.value:
                raise ParameterError("exact subtraction would be negative")
            return ProbValue(self.mode, self.value - other.value)
        if self.mode is NumericMode.FLOAT:
            diff = self.value - other.value
            if diff < 0.0:
                if diff >= -1e-9 * max(self.value, other.value, 1.0):
                    diff = 0.0
                else:
                    raise ParameterError("float subtraction would be negative")
            return ProbValue(self.mode, diff)
        return ProbValue(self.mode, _log_sub(self.value, other.value))


def _log_add(a: float, b: float) -> float:
    if a == _NEG_INF:
        return b
    if b == _NEG_INF:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


def _log_sub(a: float, b: float) -> float:
    """log(exp(a) - exp(b)); overshoot within rounding noise clamps to -inf."""
    if b == _NEG_INF:
        return a
    if b >= a:
        if b - a <= 1e-9:
            return _NEG_INF
        raise ParameterError("log-space subtraction would be negative")
    return a + math.log1p(-math.exp(b - a))


def _compensated_sum(values: list[float]) -> float:
    """Neumaier-compensated sum of doubles."""
    total = 0.0
    comp = 0.0
    for x in values:
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
    return total + comp


def _log_sum_exp(values: list[float]) -> float:
    """Log-sum-exp anchored at the maximum; all-zero input yields -inf."""
    if not values:
        return _NEG_INF
    anchor = max(values)
    if anchor == _NEG_INF:
        return _NEG_INF
    return anchor + math.log(math.fsum(math.exp(x - anchor) for x in values))


def pow_prob(base: ProbValue, exponent: int) -> ProbValue:
    """``base ** exponent`` for integer ``exponent >= 0``, with ``0**0 == 1``."""
    if not isinstance(exponent, int) or isinstance(exponent, bool):
        raise ParameterError(f"exponent must be an integer, got {exponent!r}")
    if exponent < 0:
        raise ParameterError(f"exponent must be >= 0, got {exponent}")
    if base.mode is NumericMode.LOGSPACE:
        return ProbValue(base.mode, 0.0 if exponent == 0 else exponent * base.value)
    return ProbValue(base.mode, base.value**exponent)


def sum_values(terms: list[ProbValue], mode: NumericMode | None = None) -> ProbValue:
    """Sum a homogeneous list of values.

    EXACT sums exactly; FLOAT uses compensated summation; LOGSPACE uses a
    log-sum-exp reduction.  An empty list sums to zero in ``mode``
    (EXACT when unspecified).  Mixing backends raises
    :class:`BackendMismatchError`.
    """
    if mode is None:
        mode = terms[0].mode if terms else NumericMode.EXACT
    for t in terms:
        if not isinstance(t, ProbValue):
            raise BackendMismatchError(f"expected ProbValue, got {type(t).__name__}")
        if t.mode is not mode:
            raise BackendMismatchError(
                f"backend mismatch in sum: {t.mode.value} vs {mode.value}"
            )
    if mode is NumericMode.EXACT:
        acc = Fraction(0)
        for t in terms:
            acc += t.value
        return ProbValue(mode, acc)
    if mode is NumericMode.FLOAT:
        return ProbValue(mode, _compensated_sum([t.value for t in terms]))
    return ProbValue(mode, _log_sum_exp([t.value for t in terms]))


def convert(value: ProbValue, target: NumericMode) -> ProbValue:
    """Re-express ``value`` in the ``target`` backend.

    EXACT -> FLOAT rounds to nearest; FLOAT -> EXACT is lossless (doubles
    are dyadic rationals); EXACT -> LOGSPACE takes logs of numerator and
    denominator separately so probabilities far below the double underflow
    threshold keep an accurate log.
    """
    if value.mode is target:
        return value
    if value.mode is NumericMode.EXACT:
        frac: Fraction = value.value
        if target is NumericMode.FLOAT:
            return ProbValue(target, float(frac))
        if frac == 0:
            return ProbValue(target, _NEG_INF)
        return ProbValue(target, math.log(frac.numerator) - math.log(frac.denominator))
    if value.mode is NumericMode.FLOAT:
        if target is NumericMode.EXACT:
            return ProbValue(target, Fraction(value.value))
        return ProbValue(target, math.log(value.value) if value.value > 0.0 else _NEG_INF)
    # LOGSPACE source: exponentiate, then convert losslessly if EXACT.
    as_float = math.exp(value.value)
    if target is NumericMode.FLOAT:
        return ProbValue(target, as_float)
    return ProbValue(target, Fraction(as_float))


def parse_probability(
    value: "ProbValue | Fraction | float | int | str",
    mode: NumericMode = NumericMode.EXACT,
    name: str = "probability",
) -> ProbValue:
    """Parse a probability in [0, 1] into the requested backend.

    Strings accept the forms ``"a/b"`` and decimal literals; both are read
    exactly (``"0.3"`` becomes 3/10) before any mode conversion, so EXACT
    chains built from decimal strings carry no binary rounding.
    """
    if isinstance(value, ProbValue):
        exact = value.as_fraction()
    else:
        try:
            exact = Fraction(value)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParameterError(f"{name}: cannot parse {value!r} as a probability") from exc
    if not 0 <= exact <= 1:
        raise ParameterError(f"{name} must be in [0, 1], got {exact}")
    return convert(ProbValue(NumericMode.EXACT, exact), mode)
