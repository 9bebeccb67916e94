"""Command-line surface: evaluation, enumeration, simulation, validation.

Each command echoes its parsed inputs in canonical form (probabilities as
reduced fractions), so any emitted record can be re-run verbatim and will
reproduce its results field.  Exit codes: 0 success, 1 validation
failure, 2 usage error, 3 enumeration guard.

Output formats: ``text`` (human), ``json`` (one self-describing object per
invocation, schema_version "1"), ``csv`` (a projection of the JSON rows,
prefixed by the versioned comment line ``# visitprob schema 1``).
Wall-clock diagnostics are opt-in (``--timing``) so that fixed-seed runs
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import product

from visitprob import kernels
from visitprob.chain_model import ChainSpec, State, VisitQuery, build_chain, swap_labels
from visitprob.closed_form import (
    VisitDistribution,
    summation_limits,
    visit_distribution,
    visit_probability,
)
from visitprob.errors import (
    BackendMismatchError,
    EnumerationGuardError,
    ParameterError,
    VisitProbError,
)
from visitprob.numerics import NumericMode, ProbValue
from visitprob.oracle import census_by_j, oracle_distribution, simulate, total_variation

SCHEMA_VERSION = "1"
CSV_COMMENT = "# visitprob schema 1"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

_EXACT_MODE_MAX_N = 64  # default to exact arithmetic up to here, logspace beyond


# ---------------------------------------------------------------------------
# Formatting helpers
# ---------------------------------------------------------------------------


def _decimal17(frac: Fraction) -> str:
    """Decimal rendering of an exact rational, 17 significant digits."""
    with localcontext() as ctx:
        ctx.prec = 17
        return str(Decimal(frac.numerator) / Decimal(frac.denominator))


def _prob_fields(pv: ProbValue) -> dict:
    if pv.mode is NumericMode.EXACT:
        f = pv.value
        return {
            "probability": _decimal17(f),
            "exact": f"{f.numerator}/{f.denominator}",
        }
    if pv.mode is NumericMode.FLOAT:
        return {"probability": repr(pv.value)}
    return {"probability": repr(pv.to_float()), "log": repr(pv.value)}


def _monomial_string(tc) -> str:
    parts = []
    for name, e in (("p11", tc.n11), ("p10", tc.n10), ("p01", tc.n01), ("p00", tc.n00)):
        if e == 1:
            parts.append(name)
        elif e > 0:
            parts.append(f"{name}^{e}")
    return " ".join(parts) if parts else "1"


def _emit_csv(columns: list[str], rows: list[dict]) -> None:
    print(CSV_COMMENT)
    print(",".join(columns))
    for row in rows:
        print(",".join(str(row.get(c, "")) for c in columns))


def _emit(record: dict, fmt: str, columns: list[str], rows: list[dict], text) -> None:
    if fmt == "json":
        print(json.dumps(record, indent=2))
    elif fmt == "csv":
        _emit_csv(columns, rows)
    else:
        text()


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------


def _canonical(text: str) -> str:
    return str(Fraction(text))


def _resolve_mode(args) -> NumericMode:
    if args.mode is not None:
        return NumericMode(args.mode)
    return NumericMode.EXACT if args.n <= _EXACT_MODE_MAX_N else NumericMode.LOGSPACE


def _chain_inputs(args, mode: NumericMode) -> tuple[ChainSpec, dict]:
    chain = build_chain(args.p01, args.p10, args.p1, mode)
    inputs = {
        "p01": _canonical(args.p01),
        "p10": _canonical(args.p10),
        "p1": _canonical(args.p1),
        "n": args.n,
        "mode": mode.value,
    }
    return chain, inputs


def _term_count(k: int, n: int) -> int:
    """Number of interior summation terms behind one probability value."""
    if k == 0 or k == n:
        return 1
    lim = summation_limits(k, n)
    return 2 * lim.c1 + lim.c2 + lim.c3


def _maybe_time(record: dict, args, started: float) -> None:
    if getattr(args, "timing", False):
        record.setdefault("diagnostics", {})["elapsed_s"] = round(
            time.perf_counter() - started, 6
        )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_prob(args) -> int:
    started = time.perf_counter()
    mode = _resolve_mode(args)
    chain, inputs = _chain_inputs(args, mode)
    query = VisitQuery(args.n, args.k, State(args.state))
    value = visit_probability(query, chain)
    inputs.update({"k": args.k, "state": args.state})
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "prob",
        "inputs": inputs,
        "results": _prob_fields(value),
        "diagnostics": {"terms": _term_count(args.k, args.n)},
    }
    _maybe_time(record, args, started)

    row = {"k": args.k, **record["results"]}
    columns = ["k"] + [c for c in ("probability", "exact", "log") if c in row]

    def text() -> None:
        extra = f" = {record['results']['exact']}" if "exact" in record["results"] else ""
        print(
            f"P(N{args.state} = {args.k} | N = {args.n})"
            f" = {record['results']['probability']}{extra}   [mode: {mode.value}]"
        )

    _emit(record, args.format, columns, [row], text)
    return EXIT_OK


def _distribution_record(
    command: str, args, inputs: dict, dist: VisitDistribution, paths: int | None = None
) -> tuple[dict, list[str], list[dict]]:
    rows = [{"k": k, **_prob_fields(m)} for k, m in enumerate(dist.mass)]
    total = dist.total()
    deviation = repr(total.to_float() - 1.0)
    normalization = {**_prob_fields(total), "deviation": deviation}
    diagnostics: dict = {
        "terms": sum(_term_count(k, dist.horizon_n) for k in range(dist.horizon_n + 1))
    }
    if paths is not None:
        diagnostics = {"paths": paths}
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "rows": rows,
        "normalization": normalization,
        "diagnostics": diagnostics,
    }
    columns = ["k", "probability"]
    if dist.mode is NumericMode.EXACT:
        columns.append("exact")
    elif dist.mode is NumericMode.LOGSPACE:
        columns.append("log")
    columns.append("deviation")
    csv_rows = rows + [{"k": "sum", **normalization}]
    return record, columns, csv_rows


def cmd_dist(args) -> int:
    started = time.perf_counter()
    mode = _resolve_mode(args)
    chain, inputs = _chain_inputs(args, mode)
    inputs["state"] = args.state
    dist = visit_distribution(args.n, State(args.state), chain)
    record, columns, csv_rows = _distribution_record("dist", args, inputs, dist)
    _maybe_time(record, args, started)

    def text() -> None:
        print(f"P(N{args.state} = k | N = {args.n})   [mode: {mode.value}]")
        for row in record["rows"]:
            extra = f"  {row['exact']}" if "exact" in row else ""
            print(f"  k={row['k']:<4d} {row['probability']}{extra}")
        norm = record["normalization"]
        print(f"  sum = {norm['probability']}  (deviation {norm['deviation']})")

    _emit(record, args.format, columns, csv_rows, text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    started = time.perf_counter()
    mode = _resolve_mode(args)
    chain, inputs = _chain_inputs(args, mode)
    if args.census:
        if args.k is None or args.initial is None or args.final is None:
            raise ParameterError("--census requires --k, --initial and --final")
        inputs.update({"k": args.k, "initial": args.initial, "final": args.final})
        cells = census_by_j(
            args.n, args.k, State(args.initial), State(args.final), chain
        )
        rows = []
        for j, cell in cells.items():
            tc = cell.transitions
            rows.append(
                {
                    "j": j,
                    "count": cell.count,
                    "n11": tc.n11,
                    "n10": tc.n10,
                    "n01": tc.n01,
                    "n00": tc.n00,
                    "monomial": _monomial_string(tc),
                    **{f"term_{k}": v for k, v in _prob_fields(cell.term).items()},
                }
            )
        record = {
            "schema_version": SCHEMA_VERSION,
            "command": "oracle",
            "inputs": inputs,
            "rows": rows,
            "diagnostics": {"paths": 2**args.n, "cells": len(rows)},
        }
        _maybe_time(record, args, started)
        columns = ["j", "count", "n11", "n10", "n01", "n00", "monomial", "term_probability"]
        if rows and "term_exact" in rows[0]:
            columns.append("term_exact")

        def text() -> None:
            print(
                f"paths {State(args.initial).name} -> ... -> {State(args.final).name}"
                f" with {args.k} visits to S1, N = {args.n}, grouped by"
                f" S1->S0 transition count"
            )
            for row in rows:
                print(
                    f"  j={row['j']}  count={row['count']:<6d} {row['monomial']}"
                    f"  term={row['term_probability']}"
                )
            print(f"  total paths: {sum(r['count'] for r in rows)}")

        _emit(record, args.format, columns, rows, text)
        return EXIT_OK

    inputs["state"] = args.state
    dist = oracle_distribution(args.n, State(args.state), chain)
    record, columns, csv_rows = _distribution_record(
        "oracle", args, inputs, dist, paths=2**args.n
    )
    _maybe_time(record, args, started)

    def text() -> None:
        print(
            f"enumeration: P(N{args.state} = k | N = {args.n}) over {2**args.n} paths"
            f"   [mode: {mode.value}]"
        )
        for row in record["rows"]:
            extra = f"  {row['exact']}" if "exact" in row else ""
            print(f"  k={row['k']:<4d} {row['probability']}{extra}")
        norm = record["normalization"]
        print(f"  sum = {norm['probability']}  (deviation {norm['deviation']})")

    _emit(record, args.format, columns, csv_rows, text)
    return EXIT_OK


def cmd_simulate(args) -> int:
    started = time.perf_counter()
    chain, inputs = _chain_inputs(args, NumericMode.FLOAT)
    inputs.update({"state": args.state, "trials": args.trials, "seed": args.seed})
    inputs["mode"] = NumericMode.FLOAT.value
    target = State(args.state)
    result = simulate(args.n, chain, args.trials, args.seed)
    empirical = result.empirical_distribution(target)
    reference = visit_distribution(args.n, target, chain)
    tv = total_variation(empirical, reference)
    counts = list(result.counts if target is State.S1 else result.counts[::-1])
    rows = [
        {
            "k": k,
            "count": counts[k],
            "frequency": repr(emp.value),
            "reference": repr(ref.value),
        }
        for k, (emp, ref) in enumerate(zip(empirical.mass, reference.mass))
    ]
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "simulate",
        "inputs": inputs,
        "rows": rows,
        "results": {"counts": counts, "total_variation": repr(tv)},
        "diagnostics": {"backend": kernels.backend_name()},
    }
    _maybe_time(record, args, started)
    columns = ["k", "count", "frequency", "reference"]

    def text() -> None:
        print(
            f"simulation: {args.trials} trajectories, N = {args.n}, seed {args.seed}"
            f"   [{kernels.backend_name()} kernel]"
        )
        for row in rows:
            print(
                f"  k={row['k']:<4d} count={row['count']:<10d}"
                f" freq={row['frequency']:<22s} closed-form={row['reference']}"
            )
        print(f"  total-variation distance vs closed form: {tv}")

    _emit(record, args.format, columns, rows, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Validation suite
# ---------------------------------------------------------------------------

_GRIDS = {
    "coarse": (Fraction(0), Fraction(1, 2), Fraction(1)),
    "fine": (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)),
}
_FLOAT_NORMALIZATION_TOL = 1e-9


def _chain_label(p01: Fraction, p10: Fraction, p1: Fraction) -> str:
    return f"p01={p01} p10={p10} p1={p1}"


def run_validation(n_max: int, grid: str) -> tuple[list[dict], dict]:
    """Cross-engine and symmetry checks over a rational parameter grid.

    Returns (case rows, summary).  Statuses: ``exact-equal`` for bit-exact
    checks, ``within-tol`` for the float normalization check, ``FAIL``
    otherwise (with both values in the detail field).
    """
    if not isinstance(n_max, int) or n_max < 1:
        raise ParameterError(f"--n-max must be a positive integer, got {n_max}")
    try:
        values = _GRIDS[grid]
    except KeyError:
        raise ParameterError(f"unknown grid {grid!r}; choose coarse or fine") from None
    cases: list[dict] = []

    def case(check: str, label: str, n: int, ok: bool, detail: str = "", tol: bool = False):
        status = ("within-tol" if tol else "exact-equal") if ok else "FAIL"
        cases.append(
            {"check": check, "chain": label, "n": n, "status": status, "detail": detail}
        )

    for p01, p10, p1 in product(values, repeat=3):
        label = _chain_label(p01, p10, p1)
        chain = build_chain(p01, p10, p1)
        swapped = swap_labels(chain)
        for n in range(1, n_max + 1):
            closed = visit_distribution(n, State.S1, chain)
            mass = [m.value for m in closed.mass]

            reference = oracle_distribution(n, State.S1, chain)
            mismatch = next(
                (k for k in range(n + 1) if mass[k] != reference.mass[k].value), None
            )
            case(
                "oracle-equality",
                label,
                n,
                mismatch is None,
                ""
                if mismatch is None
                else f"k={mismatch}: closed={mass[mismatch]} oracle={reference.mass[mismatch].value}",
            )

            total = closed.total().value
            case("normalization", label, n, total == 1, "" if total == 1 else f"sum={total}")

            s0 = visit_distribution(n, State.S0, chain)
            bad = next((k for k in range(n + 1) if s0.mass[k].value != mass[n - k]), None)
            case(
                "complement-symmetry",
                label,
                n,
                bad is None,
                "" if bad is None else f"k={bad}: S0={s0.mass[bad].value} S1[n-k]={mass[n - bad]}",
            )

            via_swap = visit_distribution(n, State.S1, swapped)
            bad = next(
                (k for k in range(n + 1) if s0.mass[k].value != via_swap.mass[k].value),
                None,
            )
            case(
                "label-swap-symmetry",
                label,
                n,
                bad is None,
                ""
                if bad is None
                else f"k={bad}: S0={s0.mass[bad].value} swapped-S1={via_swap.mass[bad].value}",
            )

            extended = visit_distribution(n, State.S1, chain, extend_limits=True)
            bad = next(
                (k for k in range(n + 1) if extended.mass[k].value != mass[k]), None
            )
            case(
                "limit-redundancy",
                label,
                n,
                bad is None,
                ""
                if bad is None
                else f"k={bad}: limited={mass[bad]} extended={extended.mass[bad].value}",
            )

    interior = [v for v in values if 0 < v < 1]
    for p01, p10, p1 in product(interior, repeat=3):
        label = _chain_label(p01, p10, p1)
        fchain = build_chain(p01, p10, p1, NumericMode.FLOAT)
        total = visit_distribution(n_max, State.S1, fchain).total().value
        dev = abs(total - 1.0)
        case(
            "float-normalization",
            label,
            n_max,
            dev <= _FLOAT_NORMALIZATION_TOL,
            f"sum={total!r}",
            tol=True,
        )

    summary: dict[str, int] = {"exact-equal": 0, "within-tol": 0, "FAIL": 0}
    for c in cases:
        summary[c["status"]] += 1
    return cases, summary


def cmd_validate(args) -> int:
    started = time.perf_counter()
    cases, summary = run_validation(args.n_max, args.grid)
    failed = summary["FAIL"]
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "validate",
        "inputs": {"n_max": args.n_max, "grid": args.grid},
        "cases": cases,
        "summary": summary,
    }
    _maybe_time(record, args, started)
    columns = ["check", "chain", "n", "status", "detail"]

    def text() -> None:
        print(f"validation grid={args.grid} n_max={args.n_max}: {len(cases)} cases")
        for c in cases:
            line = f"  [{c['status']:<11s}] {c['check']:<22s} n={c['n']:<3d} {c['chain']}"
            if c["detail"]:
                line += f"  {c['detail']}"
            print(line)
        print(
            f"summary: {summary['exact-equal']} exact-equal,"
            f" {summary['within-tol']} within-tol, {summary['FAIL']} FAIL"
        )

    _emit(record, args.format, columns, cases, text)
    return EXIT_VALIDATION if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="visitprob",
        description=(
            "Visit-count distributions for two-state Markov chains: closed form, "
            "exhaustive enumeration, and seeded simulation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )
    output.add_argument(
        "--timing", action="store_true", help="include wall-clock diagnostics in output"
    )

    chain = argparse.ArgumentParser(add_help=False)
    chain.add_argument("--p01", required=True, help="P(S0 -> S1), as 'a/b' or decimal")
    chain.add_argument("--p10", required=True, help="P(S1 -> S0), as 'a/b' or decimal")
    chain.add_argument("--p1", required=True, help="initial probability of S1")
    chain.add_argument("--n", required=True, type=int, help="horizon (occupied positions)")

    mode = argparse.ArgumentParser(add_help=False)
    mode.add_argument(
        "--mode",
        choices=("exact", "float", "logspace"),
        default=None,
        help="numeric backend (default: exact for N <= 64, logspace above)",
    )

    p = sub.add_parser("prob", parents=[chain, mode, output], help="one closed-form probability")
    p.add_argument("--k", required=True, type=int, help="visit count")
    p.add_argument("--state", type=int, choices=(0, 1), default=1, help="target state")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("dist", parents=[chain, mode, output], help="full closed-form distribution")
    p.add_argument("--state", type=int, choices=(0, 1), default=1, help="target state")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser(
        "oracle", parents=[chain, mode, output], help="exhaustive-enumeration distribution or census"
    )
    p.add_argument("--state", type=int, choices=(0, 1), default=1, help="target state")
    p.add_argument("--census", action="store_true", help="group paths by S1->S0 transition count")
    p.add_argument("--k", type=int, default=None, help="visit count (census)")
    p.add_argument("--initial", type=int, choices=(0, 1), default=None, help="initial state (census)")
    p.add_argument("--final", type=int, choices=(0, 1), default=None, help="final state (census)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("simulate", parents=[chain, output], help="seeded Monte Carlo histogram")
    p.add_argument("--trials", type=int, default=100_000, help="number of trajectories")
    p.add_argument("--seed", type=int, default=1, help="64-bit generator seed")
    p.add_argument("--state", type=int, choices=(0, 1), default=1, help="target state")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate", parents=[output], help="cross-engine validation over a grid")
    p.add_argument("--n-max", dest="n_max", type=int, default=12, help="largest horizon checked")
    p.add_argument("--grid", choices=("coarse", "fine"), default="coarse", help="parameter grid")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParameterError, BackendMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VisitProbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
