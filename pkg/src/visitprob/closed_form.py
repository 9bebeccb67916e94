"""Closed-form distribution of visit counts in a two-state Markov chain.

A trajectory of horizon N occupies N positions (initial placement plus
N-1 transitions).  The probability that state S1 is occupied exactly k
times decomposes over the initial state:

    P(N1 = k | N) = p1 * P(k | start S1) + p0 * P(k | start S0)

Each conditional factor has boundary branches (k = 0 forces an all-S0
path, k = N an all-S1 path) and, for 0 < k < N, splits into two sums --
one per possible final state -- indexed by j, the number of S1 -> S0
cross-transitions along the path.  A path with fixed transition-type
counts has probability equal to one monomial in p00, p01, p10, p11; the
number of such paths is the product of two weak-composition counts (ways
to spread the S1 self-transitions over the S1 runs, times the same for
S0), each a binomial coefficient.

The summation limits c1 = min(k, N-k), c2 = min(k-1, N-k) and
c3 = min(k, N-k-1) are exactly the j-ranges in which both binomials are
nonzero.  With zero-extended binomials the sums may equivalently run to
N; ``extend_limits=True`` evaluates that way so the equivalence can be
tested.

Numeric backends: EXACT uses a shared Pascal table and rational powers;
FLOAT uses incrementally built float binomial rows, cached powers, and
compensated sums; LOGSPACE forms each term as log-binomials (log-factorial
differences) plus exponent-weighted log-probabilities, reduced by
log-sum-exp, which keeps horizons in the thousands stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from visitprob.chain_model import ChainSpec, State, TransitionCounts, VisitQuery
from visitprob.combinatorics import BinomialTable, binomial, log_binomial
from visitprob.errors import ParameterError
from visitprob.numerics import (
    NumericMode,
    ProbValue,
    _compensated_sum,
    _log_sum_exp,
    pow_prob,
    sum_values,
)

__all__ = [
    "SummationLimits",
    "VisitDistribution",
    "TermCell",
    "summation_limits",
    "prob_given_start_s1",
    "prob_given_start_s0",
    "visit_probability",
    "visit_distribution",
    "moments",
    "term_census",
]

_NEG_INF = float("-inf")


@dataclass(frozen=True, slots=True)
class SummationLimits:
    """Upper limits of the three interior sums for a given (k, N)."""

    c1: int
    c2: int
    c3: int


def summation_limits(k: int, n: int) -> SummationLimits:
    """Limits for interior k; the boundary cases bypass the sums entirely."""
    if not 0 < k < n:
        raise ParameterError(f"summation limits need 0 < k < n, got k={k}, n={n}")
    return SummationLimits(min(k, n - k), min(k - 1, n - k), min(k, n - k - 1))


@dataclass(frozen=True, slots=True)
class VisitDistribution:
    """P(target visited exactly k times | horizon) for k = 0..horizon."""

    horizon_n: int
    target: State
    mode: NumericMode
    mass: tuple[ProbValue, ...]

    def probability(self, k: int) -> ProbValue:
        if not 0 <= k <= self.horizon_n:
            raise ParameterError(f"k must lie in [0, {self.horizon_n}], got {k}")
        return self.mass[k]

    def total(self) -> ProbValue:
        return sum_values(list(self.mass), self.mode)

    def to_floats(self) -> list[float]:
        return [m.to_float() for m in self.mass]


# ---------------------------------------------------------------------------
# Interior-sum term structure, keyed by (start state, final state).
#
# Each term j carries two binomial factors (run-placement counts for the S1
# and S0 self-transitions) and one exponent vector over the four transition
# types.  Exponents always sum to n-1.
# ---------------------------------------------------------------------------


def _branch_limit(start: State, final: State, k: int, n: int) -> int:
    if start is State.S1:
        if final is State.S0:
            return min(k, n - k)  # c1
        return min(k - 1, n - k)  # c2
    if final is State.S1:
        return min(k, n - k)  # c1
    return min(k, n - k - 1)  # c3


def _term_shape(
    start: State, final: State, k: int, n: int, j: int
) -> tuple[int, int, int, int, int, int, int, int]:
    """(b1_n, b1_r, b2_n, b2_r, e00, e01, e10, e11) of interior term j."""
    if start is State.S1 and final is State.S0:
        return (k - 1, j - 1, n - k - 1, j - 1, n - k - j, j - 1, j, k - j)
    if start is State.S1 and final is State.S1:
        return (k - 1, j, n - k - 1, j - 1, n - k - j, j, j, k - j - 1)
    if start is State.S0 and final is State.S1:
        return (k - 1, j - 1, n - k - 1, j - 1, n - k - j, j, j - 1, k - j)
    return (k - 1, j - 1, n - k - 1, j, n - k - j - 1, j, j, k - j)


class _Evaluator:
    """Shared per-call state: binomial tables and probability-power caches."""

    __slots__ = ("chain", "n", "mode", "_table", "_float_rows", "_pows", "terms_evaluated")

    def __init__(self, chain: ChainSpec, n: int, table: BinomialTable | None = None):
        if not isinstance(n, int) or n < 1:
            raise ParameterError(f"horizon must be a positive integer, got {n}")
        self.chain = chain
        self.n = n
        self.mode = chain.mode
        self.terms_evaluated = 0
        self._table = None
        self._float_rows: dict[int, list[float]] = {}
        if self.mode is NumericMode.EXACT:
            if table is not None and table.max_n < max(n - 1, 0):
                raise ParameterError(
                    f"binomial table of size {table.max_n} too small for horizon {n}"
                )
            self._table = table if table is not None else BinomialTable(max(n - 1, 0))
        if self.mode is not NumericMode.LOGSPACE:
            self._pows = {
                name: [_one_payload(self.mode)]
                for name in ("p00", "p01", "p10", "p11")
            }

    def _float_binomial(self, n: int, r: int) -> float:
        if n < 0 or r < 0 or r > n:
            return 0.0
        row = self._float_rows.get(n)
        if row is None:
            row = [1.0]
            c = 1.0
            for i in range(1, n + 1):
                c = c * (n - i + 1) / i
                row.append(c)
            self._float_rows[n] = row
        return row[r]

    def _pow_list(self, name: str) -> list:
        """Powers base**0..n of one transition probability, built lazily."""
        cache = self._pows[name]
        if len(cache) <= self.n:
            base = getattr(self.chain, name).value
            while len(cache) <= self.n:
                cache.append(cache[-1] * base)
        return cache

    def _interior_terms(self, start: State, final: State, k: int, upper: int) -> list:
        """Raw payloads of the nonzero terms of one interior sum."""
        n = self.n
        mode = self.mode
        out = []
        if mode is NumericMode.EXACT:
            get = self._table.get
            pow00, pow01 = self._pow_list("p00"), self._pow_list("p01")
            pow10, pow11 = self._pow_list("p10"), self._pow_list("p11")
            for j in range(1, upper + 1):
                b1n, b1r, b2n, b2r, e00, e01, e10, e11 = _term_shape(start, final, k, n, j)
                coeff = get(b1n, b1r) * get(b2n, b2r)
                if coeff == 0:
                    continue
                out.append(coeff * pow11[e11] * pow10[e10] * pow01[e01] * pow00[e00])
        elif mode is NumericMode.FLOAT:
            fbinom = self._float_binomial
            pow00, pow01 = self._pow_list("p00"), self._pow_list("p01")
            pow10, pow11 = self._pow_list("p10"), self._pow_list("p11")
            for j in range(1, upper + 1):
                b1n, b1r, b2n, b2r, e00, e01, e10, e11 = _term_shape(start, final, k, n, j)
                coeff = fbinom(b1n, b1r) * fbinom(b2n, b2r)
                if coeff == 0.0:
                    continue
                out.append(coeff * pow11[e11] * pow10[e10] * pow01[e01] * pow00[e00])
        else:
            chain = self.chain
            l00, l01 = chain.p00.value, chain.p01.value
            l10, l11 = chain.p10.value, chain.p11.value
            for j in range(1, upper + 1):
                b1n, b1r, b2n, b2r, e00, e01, e10, e11 = _term_shape(start, final, k, n, j)
                coeff = log_binomial(b1n, b1r) + log_binomial(b2n, b2r)
                if coeff == _NEG_INF:
                    continue
                term = coeff
                if e11:
                    term += e11 * l11
                if e10:
                    term += e10 * l10
                if e01:
                    term += e01 * l01
                if e00:
                    term += e00 * l00
                out.append(term)
        self.terms_evaluated += len(out)
        return out

    def _interior_sum(self, start: State, final: State, k: int, extend: bool) -> ProbValue:
        upper = self.n if extend else _branch_limit(start, final, k, self.n)
        terms = self._interior_terms(start, final, k, upper)
        if self.mode is NumericMode.EXACT:
            return ProbValue(self.mode, sum(terms, Fraction(0)))
        if self.mode is NumericMode.FLOAT:
            return ProbValue(self.mode, _compensated_sum(terms))
        return ProbValue(self.mode, _log_sum_exp(terms))

    def conditional(self, start: State, k: int, extend: bool = False) -> ProbValue:
        """P(exactly k visits to S1 | trajectory starts in ``start``)."""
        n = self.n
        if not 0 <= k <= n:
            raise ParameterError(f"k must lie in [0, {n}], got {k}")
        if start is State.S1:
            if k == 0:
                return ProbValue.zero(self.mode)
            if k == n:
                return pow_prob(self.chain.p11, n - 1)
            return self._interior_sum(State.S1, State.S0, k, extend) + self._interior_sum(
                State.S1, State.S1, k, extend
            )
        if k == 0:
            return pow_prob(self.chain.p00, n - 1)
        if k == n:
            return ProbValue.zero(self.mode)
        return self._interior_sum(State.S0, State.S1, k, extend) + self._interior_sum(
            State.S0, State.S0, k, extend
        )

    def visit_probability(self, k: int, target: State, extend: bool = False) -> ProbValue:
        if target is State.S0:
            # Complement identity: every position is in exactly one state,
            # so k visits to S0 means n-k visits to S1.
            k = self.n - k
        chain = self.chain
        return chain.p1 * self.conditional(State.S1, k, extend) + chain.p0 * self.conditional(
            State.S0, k, extend
        )


def _one_payload(mode: NumericMode):
    return Fraction(1) if mode is NumericMode.EXACT else 1.0


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def prob_given_start_s1(
    k: int,
    n: int,
    chain: ChainSpec,
    *,
    table: BinomialTable | None = None,
    extend_limits: bool = False,
) -> ProbValue:
    """P(exactly k visits to S1 | start in S1), before initial-state weighting."""
    return _Evaluator(chain, n, table).conditional(State.S1, k, extend_limits)


def prob_given_start_s0(
    k: int,
    n: int,
    chain: ChainSpec,
    *,
    table: BinomialTable | None = None,
    extend_limits: bool = False,
) -> ProbValue:
    """P(exactly k visits to S1 | start in S0), before initial-state weighting."""
    return _Evaluator(chain, n, table).conditional(State.S0, k, extend_limits)


def visit_probability(
    query: VisitQuery,
    chain: ChainSpec,
    *,
    table: BinomialTable | None = None,
    extend_limits: bool = False,
) -> ProbValue:
    """P(target visited exactly k times | horizon N) for one query."""
    ev = _Evaluator(chain, query.horizon_n, table)
    return ev.visit_probability(query.visits_k, query.target, extend_limits)


def visit_distribution(
    n: int,
    target: State,
    chain: ChainSpec,
    *,
    extend_limits: bool = False,
) -> VisitDistribution:
    """The full vector P(target = k | N) for k = 0..N.

    One binomial table (or float row cache) is built once and shared
    across every k.
    """
    ev = _Evaluator(chain, n)
    mass = tuple(ev.visit_probability(k, target, extend_limits) for k in range(n + 1))
    return VisitDistribution(horizon_n=n, target=target, mode=chain.mode, mass=mass)


def moments(dist: VisitDistribution) -> tuple[ProbValue, ProbValue]:
    """(mean, variance) of a visit-count distribution, in its own backend."""
    mode = dist.mode
    weights = [ProbValue.from_int(k, mode) for k in range(dist.horizon_n + 1)]
    mean = sum_values([w * m for w, m in zip(weights, dist.mass)], mode)
    second = sum_values([w * w * m for w, m in zip(weights, dist.mass)], mode)
    return mean, second - mean * mean


@dataclass(frozen=True, slots=True)
class TermCell:
    """Path count and transition exponents predicted for one census cell."""

    count: int
    transitions: TransitionCounts


def term_census(k: int, n: int, initial: State, final: State) -> dict[int, TermCell]:
    """Formula-side census: how many paths from ``initial`` to ``final`` with
    exactly k visits to S1 share each transition-count signature.

    Keys are the number of S1 -> S0 transitions along the path; each cell's
    count is the product of the two binomial coefficients of the matching
    interior term.  Boundary k values yield the single uniform path or
    nothing.  Chain-independent: counts and exponents only.
    """
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"horizon must be a positive integer, got {n}")
    if not 0 <= k <= n:
        raise ParameterError(f"k must lie in [0, {n}], got {k}")
    if k == 0:
        if initial is State.S0 and final is State.S0:
            return {0: TermCell(1, TransitionCounts(n00=n - 1))}
        return {}
    if k == n:
        if initial is State.S1 and final is State.S1:
            return {0: TermCell(1, TransitionCounts(n11=n - 1))}
        return {}
    cells: dict[int, TermCell] = {}
    for j in range(1, _branch_limit(initial, final, k, n) + 1):
        b1n, b1r, b2n, b2r, e00, e01, e10, e11 = _term_shape(initial, final, k, n, j)
        count = binomial(b1n, b1r) * binomial(b2n, b2r)
        if count == 0:
            continue
        cells[e10] = TermCell(count, TransitionCounts(n00=e00, n01=e01, n10=e10, n11=e11))
    return cells
