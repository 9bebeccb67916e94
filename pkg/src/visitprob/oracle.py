"""Independent ground truth for the closed form.

Three referees live here:

* exhaustive enumeration of all 2**N trajectories with their exact
  probabilities (the brute-force distribution and the per-path census);
* a seeded Monte Carlo simulator with a pinned generator, so histograms
  are reproducible bit for bit across runs and machines;
* total-variation distance for comparing any two distributions.

Nothing in this module evaluates the closed-form sums; agreement between
the two routes is asserted by the test suite, not assumed here.

Enumeration is guarded: horizons above 25 (override with the
``VISITPROB_ENUM_GUARD`` environment variable) are refused because the
path count doubles per step.  Zero-probability paths are still enumerated
and contribute zero, keeping the 2**N path-count invariant intact.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from visitprob import kernels
from visitprob.chain_model import ChainSpec, State, TransitionCounts
from visitprob.closed_form import VisitDistribution
from visitprob.errors import EnumerationGuardError, ParameterError, VisitProbError
from visitprob.numerics import NumericMode, ProbValue, _log_add, pow_prob

__all__ = [
    "TrajectoryRecord",
    "CensusCell",
    "SimulationResult",
    "enumeration_guard",
    "enumerate_trajectories",
    "oracle_distribution",
    "census_by_j",
    "simulate",
    "total_variation",
]

_NEG_INF = float("-inf")
_DEFAULT_GUARD = 25
_SEED_MASK = (1 << 64) - 1


def enumeration_guard() -> int:
    """Largest horizon exhaustive enumeration will accept."""
    raw = os.environ.get("VISITPROB_ENUM_GUARD")
    if raw is None:
        return _DEFAULT_GUARD
    try:
        return int(raw)
    except ValueError as exc:
        raise ParameterError(f"VISITPROB_ENUM_GUARD must be an integer, got {raw!r}") from exc


def _check_enumerable(n: int, guard: int | None) -> None:
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"horizon must be a positive integer, got {n}")
    limit = guard if guard is not None else enumeration_guard()
    if n > limit:
        raise EnumerationGuardError(
            f"horizon {n} would enumerate 2**{n} = {2 ** n} trajectories, "
            f"above the guard of {limit}"
        )


@dataclass(frozen=True, slots=True)
class TrajectoryRecord:
    """One enumerated path with its probability and transition census."""

    states: tuple[State, ...]
    probability: ProbValue
    visits_s1: int
    transitions: TransitionCounts

    @property
    def j_s1_to_s0(self) -> int:
        return self.transitions.n10


def _raw_values(chain: ChainSpec):
    """Initial and transition payloads plus the mode's multiply."""
    if chain.mode is NumericMode.LOGSPACE:
        mul = lambda a, b: a + b  # noqa: E731
    else:
        mul = lambda a, b: a * b  # noqa: E731
    init = (chain.p0.value, chain.p1.value)
    trans = (
        (chain.p00.value, chain.p01.value),
        (chain.p10.value, chain.p11.value),
    )
    return init, trans, mul


def enumerate_trajectories(
    n: int, chain: ChainSpec, *, guard: int | None = None
) -> Iterator[TrajectoryRecord]:
    """All 2**n trajectories exactly once, lexicographically (S0 < S1).

    Probabilities are computed in the chain's numeric backend by extending
    a running prefix product one transition at a time.  The stream holds
    only the current path, so memory stays constant; the guard is checked
    eagerly, before the iterator is handed out.
    """
    _check_enumerable(n, guard)
    return _trajectory_stream(n, chain)


def _trajectory_stream(n: int, chain: ChainSpec) -> Iterator[TrajectoryRecord]:
    init, trans, mul = _raw_values(chain)
    mode = chain.mode
    states: list[int] = []
    counts = [[0, 0], [0, 0]]

    def walk(depth: int, prev: int, acc) -> Iterator[TrajectoryRecord]:
        if depth == n:
            yield TrajectoryRecord(
                states=tuple(State(s) for s in states),
                probability=ProbValue(mode, acc),
                visits_s1=sum(states),
                transitions=TransitionCounts(
                    n00=counts[0][0], n01=counts[0][1],
                    n10=counts[1][0], n11=counts[1][1],
                ),
            )
            return
        for nxt in (0, 1):
            states.append(nxt)
            counts[prev][nxt] += 1
            yield from walk(depth + 1, nxt, mul(acc, trans[prev][nxt]))
            counts[prev][nxt] -= 1
            states.pop()

    for first in (0, 1):
        states.append(first)
        yield from walk(1, first, init[first])
        states.pop()


def oracle_distribution(
    n: int, target: State, chain: ChainSpec, *, guard: int | None = None
) -> VisitDistribution:
    """Visit-count distribution by exhaustive enumeration.

    Exact in EXACT mode.  FLOAT mode dispatches to the enumeration kernel
    (compiled when available); LOGSPACE accumulates per-bucket running
    log-sum-exp.
    """
    _check_enumerable(n, guard)
    mode = chain.mode
    if mode is NumericMode.FLOAT:
        p01f, p10f, p1f = chain.float_params()
        buckets = kernels.enumerate_visit_mass(n, p01f, p10f, p1f)
    else:
        init, trans, _ = _raw_values(chain)
        if mode is NumericMode.EXACT:
            buckets = [Fraction(0)] * (n + 1)

            def leaf(v: int, acc) -> None:
                buckets[v] += acc

        else:
            buckets = [_NEG_INF] * (n + 1)

            def leaf(v: int, acc) -> None:
                buckets[v] = _log_add(buckets[v], acc)

        if mode is NumericMode.EXACT:
            mul = lambda a, b: a * b  # noqa: E731
        else:
            mul = lambda a, b: a + b  # noqa: E731

        def walk(depth: int, prev: int, acc, visits: int) -> None:
            if depth == n:
                leaf(visits, acc)
                return
            walk(depth + 1, 0, mul(acc, trans[prev][0]), visits)
            walk(depth + 1, 1, mul(acc, trans[prev][1]), visits + 1)

        walk(1, 0, init[0], 0)
        walk(1, 1, init[1], 1)
    if target is State.S0:
        buckets = buckets[::-1]  # k visits to S0 == n-k visits to S1
    return VisitDistribution(
        horizon_n=n,
        target=target,
        mode=mode,
        mass=tuple(ProbValue(mode, b) for b in buckets),
    )


@dataclass(frozen=True, slots=True)
class CensusCell:
    """All same-signature paths in one census group."""

    j: int
    count: int
    transitions: TransitionCounts
    term: ProbValue  # the shared transition-probability monomial


def census_by_j(
    n: int,
    k: int,
    initial: State,
    final: State,
    chain: ChainSpec,
    *,
    guard: int | None = None,
) -> dict[int, CensusCell]:
    """Group the paths (initial -> ... -> final, exactly k visits to S1) by
    their number of S1 -> S0 transitions.

    Verifies monomial homogeneity: every path in a group must carry the
    same transition-type counts, hence the same probability monomial.  The
    returned ``term`` is that shared monomial (initial-placement factor
    excluded).
    """
    if not 0 <= k <= n:
        raise ParameterError(f"k must lie in [0, {n}], got {k}")
    seen: dict[int, list] = {}
    for rec in enumerate_trajectories(n, chain, guard=guard):
        if rec.states[0] is not initial or rec.states[-1] is not final:
            continue
        if rec.visits_s1 != k:
            continue
        j = rec.transitions.n10
        cell = seen.get(j)
        if cell is None:
            seen[j] = [1, rec.transitions]
        else:
            if rec.transitions != cell[1]:
                raise VisitProbError(
                    f"monomial homogeneity violated in census cell j={j}: "
                    f"{rec.transitions} vs {cell[1]}"
                )
            cell[0] += 1
    out: dict[int, CensusCell] = {}
    for j in sorted(seen):
        count, tc = seen[j]
        term = (
            pow_prob(chain.p11, tc.n11)
            * pow_prob(chain.p10, tc.n10)
            * pow_prob(chain.p01, tc.n01)
            * pow_prob(chain.p00, tc.n00)
        )
        out[j] = CensusCell(j=j, count=count, transitions=tc, term=term)
    return out


@dataclass(frozen=True, slots=True)
class SimulationResult:
    """Seeded Monte Carlo histogram of S1 visit counts."""

    horizon_n: int
    trials: int
    seed: int
    counts: tuple[int, ...]
    elapsed: float

    def empirical_distribution(self, target: State = State.S1) -> VisitDistribution:
        freqs = [c / self.trials for c in self.counts]
        if target is State.S0:
            freqs = freqs[::-1]
        return VisitDistribution(
            horizon_n=self.horizon_n,
            target=target,
            mode=NumericMode.FLOAT,
            mass=tuple(ProbValue(NumericMode.FLOAT, f) for f in freqs),
        )


def simulate(n: int, chain: ChainSpec, trials: int, seed: int) -> SimulationResult:
    """Sample ``trials`` independent trajectories and histogram S1 visits.

    Deterministic: the generator is pinned (splitmix64; see
    :mod:`visitprob._kernels_py` for the exact draw rules), so equal
    ``(n, chain, trials, seed)`` always produce equal counts, across
    backends, runs and process restarts.  Chains in any backend are
    converted to doubles first.
    """
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"horizon must be a positive integer, got {n}")
    if not isinstance(trials, int) or trials < 1:
        raise ParameterError(f"trials must be a positive integer, got {trials}")
    if not isinstance(seed, int):
        raise ParameterError(f"seed must be an integer, got {seed!r}")
    p01f, p10f, p1f = chain.float_params()
    started = time.perf_counter()
    counts = kernels.simulate_counts(n, p01f, p10f, p1f, trials, seed & _SEED_MASK)
    elapsed = time.perf_counter() - started
    if sum(counts) != trials:
        raise VisitProbError("simulation histogram does not sum to the trial count")
    return SimulationResult(
        horizon_n=n,
        trials=trials,
        seed=seed & _SEED_MASK,
        counts=tuple(counts),
        elapsed=elapsed,
    )


def total_variation(a: VisitDistribution, b: VisitDistribution) -> float:
    """Half the L1 distance between two mass functions on the same horizon."""
    if a.horizon_n != b.horizon_n:
        raise ParameterError(
            f"horizon mismatch: {a.horizon_n} vs {b.horizon_n}"
        )
    af = a.to_floats()
    bf = b.to_floats()
    return 0.5 * math.fsum(abs(x - y) for x, y in zip(af, bf))
