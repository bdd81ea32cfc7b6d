"""Random search over the 11-parameter space for Bell-CHSH violations.

Samples are drawn from a counter-based stream (Philox keyed by the search
seed and the sample index), so evaluation order and thread count cannot
change the result.  A cheap screening plan ranks all samples first; only
the provisional leaders are re-evaluated with the full plan, which keeps a
10^5-sample sweep at desk scale without touching the final ranking (the
screening error is far below the gaps among leaders).
"""
from __future__ import annotations

import csv
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .chsh import Classification, chsh_correlator, scenario_from_params
from .quad import QuadPlan

__all__ = [
    "ScenarioParams",
    "ParamRanges",
    "SearchRecord",
    "RecordFormatError",
    "sample_params",
    "random_search",
    "persist_records",
    "load_records",
    "CSV_HEADER",
]

logger = logging.getLogger(__name__)

SCREEN_POINTS = 2 ** 12
SCREEN_REPLICATES = 4
SCREEN_FACTOR = 10  # re-evaluate the provisional top 10*top_k with the full plan


class ScenarioParams(NamedTuple):
    """The 11 free parameters, in the published column order."""

    a: float
    eta: float
    b: float
    sigma: float
    a_prime: float
    eta_prime: float
    b_prime: float
    sigma_prime: float
    m: float
    r: float
    r_prime: float


def _interval(lo: float, hi: float) -> tuple[float, float]:
    return (lo, hi)


@dataclass(frozen=True)
class ParamRanges:
    """Sampling box; every default interval covers all published rows.

    The mass is sampled log-uniformly (published masses span three
    decades); everything else is uniform.
    """

    a: tuple[float, float] = _interval(1e-3, 5.0)
    eta: tuple[float, float] = _interval(1e-3, 15.0)
    b: tuple[float, float] = _interval(1e-3, 5.0)
    sigma: tuple[float, float] = _interval(1e-3, 15.0)
    a_prime: tuple[float, float] = _interval(1e-3, 5.0)
    eta_prime: tuple[float, float] = _interval(1e-3, 15.0)
    b_prime: tuple[float, float] = _interval(1e-3, 5.0)
    sigma_prime: tuple[float, float] = _interval(1e-3, 15.0)
    m: tuple[float, float] = _interval(1e-5, 1e-1)
    r: tuple[float, float] = _interval(0.5, 2.5)
    r_prime: tuple[float, float] = _interval(0.5, 2.5)

    def __post_init__(self):
        for field in fields(self):
            lo, hi = getattr(self, field.name)
            if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 < lo <= hi):
                raise ValueError(
                    f"range {field.name}=({lo}, {hi}) must satisfy 0 < lo <= hi"
                )

    @classmethod
    def collapsed(cls, params: ScenarioParams) -> "ParamRanges":
        """Point intervals pinning every parameter (single-sample searches)."""
        return cls(**{name: (value, value) for name, value in params._asdict().items()})


def sample_params(ranges: ParamRanges, draw: Sequence[float]) -> ScenarioParams:
    """Map 11 unit draws into the sampling box (affine; mass log-uniform)."""
    draw = [float(d) for d in draw]
    if len(draw) != 11 or any(not (0.0 <= d < 1.0) for d in draw):
        raise ValueError("draw must contain 11 reals in [0, 1)")
    values = []
    for field, d in zip(fields(ParamRanges), draw):
        lo, hi = getattr(ranges, field.name)
        if field.name == "m":
            values.append(10.0 ** (math.log10(lo) + d * (math.log10(hi) - math.log10(lo))))
        else:
            values.append(lo + d * (hi - lo))
    return ScenarioParams(*values)


@dataclass(frozen=True)
class SearchRecord:
    """One ranked search outcome (the CSV row, losslessly)."""

    sample_index: int
    params: ScenarioParams
    correlator: float
    correlator_error: float
    classification: Classification


def _rank_key(record: SearchRecord) -> tuple[float, int]:
    return (-abs(record.correlator), record.sample_index)


def _sample_draw(seed: int, sample_index: int) -> np.ndarray:
    """11 unit draws from an independent stream keyed by (seed, index)."""
    key = np.array([seed, sample_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key)).random(11)


def _evaluate(params: ScenarioParams, plan: QuadPlan):
    scenario = scenario_from_params(*params)
    return chsh_correlator(scenario, plan)


def random_search(
    ranges: ParamRanges,
    n_samples: int,
    seed: int,
    plan: QuadPlan,
    top_k: int,
    threads: int = 1,
) -> list[SearchRecord]:
    """Screen n_samples parameter draws, re-evaluate the provisional
    leaders with the full plan, and return the top_k records ordered by
    |correlator| descending (ties by sample index).

    Identical inputs give identical output for any thread count.
    """
    if not (1 <= top_k <= n_samples):
        raise ValueError("need n_samples >= top_k >= 1")
    screen_plan = QuadPlan(
        points_per_replicate=min(SCREEN_POINTS, plan.points_per_replicate),
        replicates=min(SCREEN_REPLICATES, plan.replicates),
        seed=plan.seed,
        target_rel_error=plan.target_rel_error,
    )
    all_params = [
        sample_params(ranges, _sample_draw(seed, i)) for i in range(n_samples)
    ]

    def screen(i: int):
        try:
            return _evaluate(all_params[i], screen_plan)
        except Exception as exc:
            logger.warning("sample %d failed during screening: %s", i, exc)
            return None

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        screened = list(pool.map(screen, range(n_samples)))

    survivors = sorted(
        (i for i, res in enumerate(screened) if res is not None),
        key=lambda i: (-abs(screened[i].correlator), i),
    )[: SCREEN_FACTOR * top_k]

    def full(i: int):
        try:
            return _evaluate(all_params[i], plan)
        except Exception as exc:
            logger.warning("sample %d failed during re-evaluation: %s", i, exc)
            return None

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        finals = list(pool.map(full, survivors))

    records = [
        SearchRecord(
            sample_index=i,
            params=all_params[i],
            correlator=res.correlator,
            correlator_error=res.correlator_error,
            classification=res.classification,
        )
        for i, res in zip(survivors, finals)
        if res is not None
    ]
    records.sort(key=_rank_key)
    return records[:top_k]


CSV_HEADER = (
    "sample_index", "a", "eta", "b", "sigma", "a_prime", "eta_prime",
    "b_prime", "sigma_prime", "m", "r", "r_prime",
    "correlator", "correlator_error", "classification",
)


class RecordFormatError(ValueError):
    """A record file failed to parse; the message names line and field."""


def persist_records(records: Iterable[SearchRecord], path) -> None:
    """Write records as CSV; floats use shortest round-trip decimals."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(
                [rec.sample_index]
                + [repr(v) for v in rec.params]
                + [repr(rec.correlator), repr(rec.correlator_error),
                   rec.classification.value]
            )


def load_records(path) -> list[SearchRecord]:
    """Inverse of persist_records; bit-exact on all numeric fields."""
    records = []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != list(CSV_HEADER):
            raise RecordFormatError(f"{path}:1: unexpected header {header}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CSV_HEADER):
                raise RecordFormatError(
                    f"{path}:{lineno}: expected {len(CSV_HEADER)} fields, "
                    f"got {len(row)}"
                )
            values = {}
            for name, cell in zip(CSV_HEADER, row):
                if name == "classification":
                    try:
                        values[name] = Classification(cell)
                    except ValueError as exc:
                        raise RecordFormatError(
                            f"{path}:{lineno}: field '{name}': {exc}"
                        ) from None
                elif name == "sample_index":
                    try:
                        values[name] = int(cell)
                    except ValueError:
                        raise RecordFormatError(
                            f"{path}:{lineno}: field '{name}': "
                            f"not an integer: {cell!r}"
                        ) from None
                else:
                    try:
                        values[name] = float(cell)
                    except ValueError:
                        raise RecordFormatError(
                            f"{path}:{lineno}: field '{name}': "
                            f"not a number: {cell!r}"
                        ) from None
            records.append(
                SearchRecord(
                    sample_index=values["sample_index"],
                    params=ScenarioParams(
                        *[values[name] for name in ScenarioParams._fields]
                    ),
                    correlator=values["correlator"],
                    correlator_error=values["correlator_error"],
                    classification=values["classification"],
                )
            )
    return records
