"""Binomial coefficients and weak compositions.

Binomials are zero-extended: ``binomial(n, r) == 0`` whenever ``r < 0``,
``r > n`` or ``n < 0``.  The closed-form summation limits exist only to
keep binomial arguments in range, so under zero-extension they become
redundant safety rather than load-bearing -- a property the test suite
checks directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from visitprob.errors import EnumerationGuardError, ParameterError

__all__ = [
    "binomial",
    "log_binomial",
    "BinomialTable",
    "WeakComposition",
    "weak_composition_count",
    "enumerate_weak_compositions",
]

_NEG_INF = float("-inf")


def binomial(n: int, r: int) -> int:
    """C(n, r) as an arbitrary-precision integer, zero outside 0 <= r <= n."""
    if n < 0 or r < 0 or r > n:
        return 0
    return math.comb(n, r)


def log_binomial(n: int, r: int) -> float:
    """log C(n, r) via log-factorial differences; -inf outside range."""
    if n < 0 or r < 0 or r > n:
        return _NEG_INF
    return math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)


class BinomialTable:
    """Pascal-triangle cache of C(n, r) for 0 <= r <= n <= max_n.

    Built once per distribution evaluation and shared across all k; lookups
    outside the triangle are zero-extended like :func:`binomial`.
    """

    __slots__ = ("max_n", "_rows")

    def __init__(self, max_n: int) -> None:
        if max_n < 0:
            raise ParameterError(f"max_n must be >= 0, got {max_n}")
        self.max_n = max_n
        rows = [[1]]
        for n in range(1, max_n + 1):
            prev = rows[n - 1]
            rows.append([1] + [prev[r - 1] + prev[r] for r in range(1, n)] + [1])
        self._rows = rows

    def get(self, n: int, r: int) -> int:
        if n < 0 or r < 0 or r > n:
            return 0
        if n > self.max_n:
            raise ParameterError(f"binomial row {n} exceeds table size {self.max_n}")
        return self._rows[n][r]


@dataclass(frozen=True, slots=True)
class WeakComposition:
    """An ordered list of nonnegative parts summing to ``total``."""

    parts: tuple[int, ...]
    total: int

    def __post_init__(self) -> None:
        if len(self.parts) < 1:
            raise ParameterError("a weak composition needs at least one part")
        if any(p < 0 for p in self.parts):
            raise ParameterError(f"parts must be nonnegative, got {self.parts}")
        if sum(self.parts) != self.total:
            raise ParameterError(
                f"parts {self.parts} sum to {sum(self.parts)}, not {self.total}"
            )


def weak_composition_count(m: int, n: int) -> int:
    """Number of ways to write m as an ordered sum of n nonnegative parts."""
    if m < 0:
        raise ParameterError(f"m must be >= 0, got {m}")
    if n == 0:
        if m == 0:
            return 1  # the empty composition
        raise ParameterError(f"cannot compose {m} into 0 parts")
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return binomial(m + n - 1, n - 1)


def _compositions(m: int, n: int):
    if n == 1:
        yield (m,)
        return
    for head in range(m + 1):
        for rest in _compositions(m - head, n - 1):
            yield (head,) + rest


def enumerate_weak_compositions(
    m: int, n: int, max_count: int = 1_000_000
) -> list[WeakComposition]:
    """All weak compositions of m into n parts, in lexicographic order.

    Refuses (naming the count) when the output would exceed ``max_count``.
    """
    if m < 0 or n < 1:
        raise ParameterError(f"need m >= 0 and n >= 1, got m={m}, n={n}")
    count = weak_composition_count(m, n)
    if count > max_count:
        raise EnumerationGuardError(
            f"enumeration of {count} weak compositions exceeds the guard of {max_count}"
        )
    return [WeakComposition(parts, m) for parts in _compositions(m, n)]
