"""Permutation harness: drive learners over reorderings, aggregate, check bounds.

Each permutation gets a fresh learner; expectations are means of per-ordering
analytic expected mistakes, so exhaustive runs are exactly reproducible.
Sampled-realized maxima are reported alongside the analytic maxima because
the two readings of a "max mistakes" column differ for randomized learners.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice

import numpy as np

from .errors import UnsupportedFormat
from .hypotheses import FiniteHypothesisClass, best_mistakes, mistake_profile
from .learners import ANALYTIC, Analytic, LearnerConfig, Sampled, run
from .ldim import LdimComputer
from .sequences import (
    REALIZABLE,
    ExperimentCase,
    PermutationStream,
    make_case_inputs,
)

BOUND_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BoundVerdict:
    """One theoretical bound compared against an observed statistic."""

    name: str
    bound_value: float
    observed: float

    @property
    def passed(self) -> bool:
        return self.observed <= self.bound_value + BOUND_TOLERANCE


@dataclass
class PermutationReport:
    """Aggregates for one learner over one permutation stream."""

    learner: LearnerConfig
    case: ExperimentCase
    permutation_count: int
    best_mistakes: int
    expected_mistakes: float
    max_mistakes: float
    expected_regret: float
    max_mistakes_sampled: float | None = None
    bounds: tuple[BoundVerdict, ...] = ()

    @property
    def max_regret(self) -> float:
        """Worst per-permutation regret; used for per-run bound checks."""
        return self.max_mistakes - self.best_mistakes


def _chunk_values(
    config: LearnerConfig,
    stream: PermutationStream,
    mode: Analytic | Sampled,
    start: int,
    stop: int,
    case: ExperimentCase,
) -> tuple[np.ndarray, np.ndarray, bool]:
    """Per-permutation totals for orderings start..stop of the stream."""
    cls, base = make_case_inputs(case)
    expected = []
    realized_max = []
    randomized = False
    for idx, order in enumerate(islice(stream.orders(), start, stop), start=start):
        seq = tuple(base.examples[i] for i in order)
        if isinstance(mode, Sampled):
            perm_mode = Sampled(seed=(_flatten_seed(mode.seed) + (idx,)), trials=mode.trials)
        else:
            perm_mode = mode
        trace = run(config, cls, seq, perm_mode, collect_rounds=False)
        expected.append(trace.expected_mistakes)
        if trace.trial_mistakes is not None:
            realized_max.append(int(trace.trial_mistakes.max()))
        randomized = randomized or trace.randomized_rounds > 0
    return (
        np.asarray(expected, dtype=np.float64),
        np.asarray(realized_max, dtype=np.float64),
        randomized,
    )


def _flatten_seed(seed) -> tuple[int, ...]:
    return tuple(seed) if isinstance(seed, (tuple, list)) else (int(seed),)


def evaluate(
    config: LearnerConfig,
    case: ExperimentCase,
    stream: PermutationStream,
    mode: Analytic | Sampled = ANALYTIC,
    jobs: int = 1,
) -> PermutationReport:
    """Run the learner afresh on every ordering in the stream and aggregate."""
    cls, base = make_case_inputs(case)
    if stream.base.examples != base.examples:
        raise ValueError("stream base sequence does not match the case")

    total = len(stream)
    jobs = max(1, min(jobs, total))
    if jobs == 1:
        chunks = [_chunk_values(config, stream, mode, 0, total, case)]
    else:
        bounds_ = np.linspace(0, total, jobs + 1, dtype=int)
        args = [
            (config, stream, mode, int(a), int(b), case)
            for a, b in zip(bounds_[:-1], bounds_[1:])
            if b > a
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_chunk_values_star, args))

    expected = np.concatenate([c[0] for c in chunks])
    realized = np.concatenate([c[1] for c in chunks])
    randomized = any(c[2] for c in chunks)

    profile = mistake_profile(cls, base)
    best, _ = best_mistakes(profile)
    mean = float(expected.mean())
    max_analytic = float(expected.max())
    if realized.size:
        max_sampled: float | None = float(realized.max())
    else:
        max_sampled = None if randomized else max_analytic
    return PermutationReport(
        learner=config,
        case=case,
        permutation_count=total,
        best_mistakes=best,
        expected_mistakes=mean,
        max_mistakes=max_analytic,
        expected_regret=mean - best,
        max_mistakes_sampled=max_sampled,
    )


def _chunk_values_star(args):
    return _chunk_values(*args)


def _realizable_bound(kind: str, cls: FiniteHypothesisClass, T: int) -> tuple[str, float]:
    d = cls.d
    if kind in ("consistent", "wm_consistent"):
        return "mistakes <= |H| - 1", float(d - 1)
    if kind in ("halving", "wm_halving"):
        return "mistakes <= floor(log2 |H|)", float(d.bit_length() - 1)
    if kind in ("soa", "wm_soa"):
        return "mistakes <= Ldim(H)", float(LdimComputer(cls).value(cls.full_space().mask))
    # wm: expected-mistake bound; with a perfect hypothesis it equals the regret bound
    value = math.sqrt(0.5 * math.log(d) * T) if d > 1 else 0.0
    return "expected mistakes <= sqrt(0.5 ln|H| T)", value


def _agnostic_bound(kind: str, cls: FiniteHypothesisClass, T: int) -> tuple[str, float] | None:
    d = cls.d
    log_term = math.log(d) if d > 1 else 0.0
    if kind == "wm":
        return "expected regret <= sqrt(0.5 ln|H| T)", math.sqrt(0.5 * log_term * T)
    if kind == "wm_consistent":
        head, label = d - 1, "|H| - 1"
    elif kind == "wm_halving":
        head, label = d.bit_length() - 1, "floor(log2 |H|)"
    elif kind == "wm_soa":
        head, label = LdimComputer(cls).value(cls.full_space().mask), "Ldim(H)"
    else:
        return None  # version-space baselines have no agnostic guarantee
    rest = max(T - head, 0)
    return (
        f"expected regret <= {label} + sqrt(0.5 ln|H| (T - {label}))",
        head + math.sqrt(0.5 * log_term * rest),
    )


def check_bounds(report: PermutationReport, cls: FiniteHypothesisClass) -> list[BoundVerdict]:
    """Verdicts for the bound matching the report's case kind and learner."""
    kind = report.learner.kind
    T = report.case.T
    if report.case.kind == REALIZABLE:
        name, value = _realizable_bound(kind, cls, T)
        # worst ordering must satisfy a realizable mistake bound, not just the mean
        return [BoundVerdict(name, value, report.max_mistakes)]
    spec = _agnostic_bound(kind, cls, T)
    if spec is None:
        return []
    name, value = spec
    return [BoundVerdict(name, value, report.expected_regret)]


def with_bounds(report: PermutationReport, cls: FiniteHypothesisClass) -> PermutationReport:
    report.bounds = tuple(check_bounds(report, cls))
    return report


CSV_COLUMNS = (
    "learner",
    "T",
    "permutations",
    "|H|",
    "M(h*)",
    "expected_mistakes",
    "max_mistakes",
    "max_mistakes_sampled",
    "expected_regret",
    "diff",
    "bound_name",
    "bound_value",
    "bound_observed",
    "bound_pass",
)


def _diff_metric(report: PermutationReport) -> float:
    if report.case.kind == REALIZABLE:
        return report.max_mistakes
    return report.expected_regret


def _report_row(report: PermutationReport, first: PermutationReport | None) -> dict:
    diff = None
    if first is not None and first is not report:
        diff = _diff_metric(first) - _diff_metric(report)
    verdict = report.bounds[0] if report.bounds else None
    return {
        "learner": report.learner.kind,
        "T": report.case.T,
        "permutations": report.permutation_count,
        "|H|": report.case.d,
        "M(h*)": report.best_mistakes,
        "expected_mistakes": report.expected_mistakes,
        "max_mistakes": report.max_mistakes,
        "max_mistakes_sampled": report.max_mistakes_sampled,
        "expected_regret": report.expected_regret,
        "diff": diff,
        "bound_name": verdict.name if verdict else None,
        "bound_value": verdict.bound_value if verdict else None,
        "bound_observed": verdict.observed if verdict else None,
        "bound_pass": verdict.passed if verdict else None,
    }


def _rows(reports: list[PermutationReport]) -> list[dict]:
    first = reports[0] if reports else None
    return [_report_row(r, first) for r in reports]


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_report(reports: list[PermutationReport], fmt: str = "csv") -> str:
    """Render reports as csv, json, or markdown."""
    if not reports:
        raise ValueError("no reports to emit")
    if fmt == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for row in _rows(reports):
            lines.append(",".join(_csv_cell(row[c]) for c in CSV_COLUMNS))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        import json

        payload = {"schema": 1, "reports": _rows(reports)}
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "markdown":
        return _markdown(reports)
    raise UnsupportedFormat(f"unknown report format {fmt!r}")


def _markdown(reports: list[PermutationReport]) -> str:
    """Wide per-case table mirroring the benchmark table layout."""
    by_case: dict[ExperimentCase, list[PermutationReport]] = {}
    for r in reports:
        by_case.setdefault(r.case, []).append(r)

    out: list[str] = []
    for case, group in by_case.items():
        realizable = case.kind == REALIZABLE
        header = ["T", "Permutations", "|H|", "M(h*)"]
        for r in group:
            if realizable:
                header += [f"{r.learner.kind} expected mistakes", f"{r.learner.kind} max mistakes"]
            else:
                header += [f"{r.learner.kind} expected regret"]
        if len(group) == 2:
            header.append("Diff")
        row = [str(case.T), str(group[0].permutation_count), str(case.d), str(group[0].best_mistakes)]
        for r in group:
            if realizable:
                row += [f"{r.expected_mistakes:.2f}", f"{r.max_mistakes:.2f}"]
            else:
                row += [f"{r.expected_regret:.2f}"]
        if len(group) == 2:
            row.append(f"{_diff_metric(group[0]) - _diff_metric(group[1]):.2f}")
        out.append("| " + " | ".join(header) + " |")
        out.append("|" + "|".join(["---"] * len(header)) + "|")
        out.append("| " + " | ".join(row) + " |")
        out.append("")
        for r in group:
            for v in r.bounds:
                status = "pass" if v.passed else "FAIL"
                out.append(
                    f"- {r.learner.kind}: {v.name}: bound {v.bound_value:.4f}, "
                    f"observed {v.observed:.4f} ({status})"
                )
        out.append("")
    return "\n".join(out).rstrip() + "\n"
