"""Exact-rational domain model: jobs, instances, and schedule representations.

Every quantity is a `fractions.Fraction`; nothing in this package rounds.
Two schedule forms exist side by side:

* `NormalSchedule` -- fractional loads, constant between consecutive
  completion times, parameterized by the completion vector and the
  cumulative-work matrix at those times.
* `NaturalSchedule` -- on/off processing given by half-open intervals,
  at most `m` jobs active at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

RationalLike = Union[Fraction, int, str]


class SchedulingError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SchedulingError):
    """Invalid instance, schedule, or argument data."""


class InconsistentScheduleError(InputError):
    """A normal schedule claims work inside a zero-length interval."""


class ManageabilityError(InputError):
    """More jobs loaded simultaneously than machines available."""

    def __init__(self, message: str, time: Fraction):
        super().__init__(message)
        self.time = time


def as_rational(value: RationalLike, what: str = "value") -> Fraction:
    """Coerce ints, "num/den" or decimal strings, and Fractions to Fraction.

    Floats are rejected: their binary value is rarely what the author meant,
    and exactness is the whole point here.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"{what}: booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{what}: cannot parse {value!r} as a rational") from exc
    if isinstance(value, float):
        raise InputError(
            f"{what}: got float {value!r}; pass a string (e.g. \"{value}\") "
            "or a Fraction to keep arithmetic exact"
        )
    raise InputError(f"{what}: unsupported type {type(value).__name__}")


def rational_str(value: Fraction) -> str:
    """Render a Fraction as "num/den" in lowest terms ("7" when integral)."""
    return str(value)


@dataclass(frozen=True)
class Job:
    """One job: processing time `p`, cooling rate `alpha` (< 0), heating
    rate `beta` (> 0), and an optional raw temperature threshold.

    A missing threshold means the job is already normalized to threshold 1.
    """

    id: str
    p: Fraction
    alpha: Fraction
    beta: Fraction
    threshold: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p, f"job {self.id}: p"))
        object.__setattr__(self, "alpha", as_rational(self.alpha, f"job {self.id}: alpha"))
        object.__setattr__(self, "beta", as_rational(self.beta, f"job {self.id}: beta"))
        if self.threshold is not None:
            object.__setattr__(
                self, "threshold", as_rational(self.threshold, f"job {self.id}: threshold")
            )
        if not isinstance(self.id, str) or not self.id:
            raise InputError("job id must be a non-empty string")
        if self.p <= 0:
            raise InputError(f"job {self.id}: processing time must be positive, got {self.p}")
        if self.alpha >= 0:
            raise InputError(f"job {self.id}: cooling rate must be negative, got {self.alpha}")
        if self.beta <= 0:
            raise InputError(f"job {self.id}: heating rate must be positive, got {self.beta}")
        if self.threshold is not None and self.threshold <= 0:
            raise InputError(f"job {self.id}: threshold must be positive, got {self.threshold}")


@dataclass(frozen=True)
class Instance:
    """A set of jobs plus the number of identical machines."""

    jobs: tuple[Job, ...]
    machines: int = 1

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if not isinstance(self.machines, int) or self.machines < 1:
            raise InputError(f"machine count must be a positive integer, got {self.machines!r}")
        ids = [job.id for job in self.jobs]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise InputError(f"duplicate job ids: {', '.join(dupes)}")

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def job_ids(self) -> tuple[str, ...]:
        return tuple(job.id for job in self.jobs)

    def index_of(self, job_id: str) -> int:
        for i, job in enumerate(self.jobs):
            if job.id == job_id:
                return i
        raise InputError(f"unknown job id: {job_id!r}")

    def is_normalized(self) -> bool:
        return all(j.threshold is None or j.threshold == 1 for j in self.jobs)

    def has_common_rates(self) -> bool:
        """True when every job shares one (alpha, beta) pair."""
        if not self.jobs:
            return True
        first = (self.jobs[0].alpha, self.jobs[0].beta)
        return all((j.alpha, j.beta) == first for j in self.jobs)


def normalize(instance: Instance) -> Instance:
    """Rescale each job's rates by its threshold so every threshold is 1.

    Idempotent: jobs without a threshold (or with threshold 1) pass through.
    """
    jobs = []
    for job in instance.jobs:
        t = job.threshold
        if t is None:
            jobs.append(job)
        elif t == 1:
            jobs.append(replace(job, threshold=None))
        else:
            jobs.append(Job(job.id, job.p, job.alpha / t, job.beta / t, None))
    return Instance(tuple(jobs), instance.machines)


@dataclass(frozen=True)
class NormalSchedule:
    """Fractional schedule with loads constant between completion times.

    `order[i]` is the instance index of the job completing i-th;
    `completions[i]` is that completion time; `work[i][j]` is the cumulative
    work done on instance job j by `completions[i]`. `temperatures`, when
    present, is the matching feasibility witness from the LP (an upper bound
    on the true temperatures at the completion breakpoints).
    """

    order: tuple[int, ...]
    completions: tuple[Fraction, ...]
    work: tuple[tuple[Fraction, ...], ...]
    temperatures: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "completions", tuple(self.completions))
        object.__setattr__(self, "work", tuple(tuple(row) for row in self.work))
        if self.temperatures is not None:
            object.__setattr__(
                self, "temperatures", tuple(tuple(row) for row in self.temperatures)
            )
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise InputError(f"order must be a permutation of 0..{n - 1}")
        if len(self.completions) != n or len(self.work) != n:
            raise InputError("completions and work must have one entry per job")
        prev = Fraction(0)
        for c in self.completions:
            if c < prev:
                raise InputError("completion times must be nonnegative and nondecreasing")
            prev = c
        for row in self.work:
            if len(row) != n:
                raise InputError("work matrix must be n x n")
            if any(w < 0 for w in row):
                raise InputError("work entries must be nonnegative")
        for j in range(n):
            for i in range(1, n):
                if self.work[i][j] < self.work[i - 1][j]:
                    raise InputError(f"work on job {j} decreases at breakpoint {i}")

    @property
    def n(self) -> int:
        return len(self.order)

    def position_of(self, job_index: int) -> int:
        return self.order.index(job_index)


def validate_normal_schedule(instance: Instance, schedule: NormalSchedule) -> None:
    """Check the instance-dependent invariants: size match and the rule that
    a job's cumulative work equals its processing time from its completion
    breakpoint onward."""
    n = instance.n
    if schedule.n != n:
        raise InputError(f"schedule covers {schedule.n} jobs, instance has {n}")
    for pos, j in enumerate(schedule.order):
        p = instance.jobs[j].p
        for i in range(pos, n):
            if schedule.work[i][j] != p:
                raise InputError(
                    f"job {instance.jobs[j].id} completes at breakpoint {pos} "
                    f"but work[{i}] is {schedule.work[i][j]}, expected {p}"
                )


LoadSegment = tuple[Fraction, Fraction, tuple[Fraction, ...]]


def loads_from_normal(schedule: NormalSchedule) -> list[LoadSegment]:
    """Recover the per-interval constant loads of a normal schedule.

    Returns (start, end, loads) triples covering [0, C_n) with zero-length
    intervals (tied completions) skipped. Loads are work deltas over the
    interval length; for a schedule obeying the rate caps they lie in [0, 1].
    """
    segments: list[LoadSegment] = []
    n = schedule.n
    prev_t = Fraction(0)
    prev_w: Sequence[Fraction] = (Fraction(0),) * n
    for i in range(n):
        t = schedule.completions[i]
        row = schedule.work[i]
        dt = t - prev_t
        if dt == 0:
            if any(row[j] != prev_w[j] for j in range(n)):
                raise InconsistentScheduleError(
                    f"zero-length interval at t={t} carries nonzero work"
                )
            continue
        loads = tuple((row[j] - prev_w[j]) / dt for j in range(n))
        segments.append((prev_t, t, loads))
        prev_t, prev_w = t, row
    return segments


Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class NaturalSchedule:
    """On/off schedule: per job id, sorted disjoint half-open [start, end)
    intervals during which the job is fully loaded."""

    intervals: dict[str, tuple[Interval, ...]]

    def __post_init__(self):
        cleaned: dict[str, tuple[Interval, ...]] = {}
        for job_id, spans in self.intervals.items():
            spans = tuple((as_rational(a, "interval start"), as_rational(b, "interval end"))
                          for a, b in spans)
            prev_end: Fraction | None = None
            for a, b in spans:
                if a < 0:
                    raise InputError(f"job {job_id}: interval starts before t=0")
                if a >= b:
                    raise InputError(f"job {job_id}: empty or reversed interval [{a}, {b})")
                if prev_end is not None and a < prev_end:
                    raise InputError(f"job {job_id}: intervals overlap or are unsorted at t={a}")
                prev_end = b
            cleaned[job_id] = spans
        object.__setattr__(self, "intervals", cleaned)

    def for_job(self, job_id: str) -> tuple[Interval, ...]:
        return self.intervals.get(job_id, ())

    def is_empty(self) -> bool:
        return all(not spans for spans in self.intervals.values())


def _merge_intervals(spans: Iterable[tuple[RationalLike, RationalLike]]) -> tuple[Interval, ...]:
    """Sort and union intervals; touching half-open intervals fuse."""
    parsed = sorted(
        (as_rational(a, "interval start"), as_rational(b, "interval end")) for a, b in spans
    )
    merged: list[list[Fraction]] = []
    for a, b in parsed:
        if a >= b:
            raise InputError(f"empty or reversed interval [{a}, {b})")
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return tuple((a, b) for a, b in merged)


def natural_from_intervals(
    raw: Mapping[str, Iterable[tuple[RationalLike, RationalLike]]],
    machines: int | None = 1,
) -> NaturalSchedule:
    """Build a natural schedule from raw per-job interval lists.

    Intervals are sorted and merged per job. When `machines` is given, the
    schedule is checked to load at most that many jobs at any instant;
    pass None to skip the check (e.g. when the verdict should come from a
    feasibility report instead of an exception).
    """
    merged = {job_id: _merge_intervals(spans) for job_id, spans in raw.items()}
    schedule = NaturalSchedule(merged)
    if machines is not None:
        check_manageable(schedule, machines)
    return schedule


def check_manageable(schedule: NaturalSchedule, machines: int) -> None:
    """Raise ManageabilityError at the first instant more than `machines`
    jobs are loaded. A sweep over the interval endpoints suffices because
    the active count is constant between them; ends sort before starts at
    equal times since intervals are half-open."""
    events: list[tuple[Fraction, int]] = []
    for spans in schedule.intervals.values():
        for a, b in spans:
            events.append((a, 1))
            events.append((b, -1))
    events.sort(key=lambda e: (e[0], e[1]))
    active = 0
    for t, step in events:
        active += step
        if active > machines:
            raise ManageabilityError(
                f"{active} jobs loaded at t={t}, but only {machines} machine(s)", time=t
            )


@dataclass(frozen=True)
class Trajectory:
    """Piecewise-linear temperature and work curves for every job.

    `breakpoints` is the sorted global event list; between consecutive
    breakpoints every job's load is constant and its temperature linear.
    `loads[j][k]` applies on [breakpoints[k], breakpoints[k+1]);
    `temperatures[j][k]` and `works[j][k]` are values at breakpoints[k].
    An all-idle schedule yields an empty breakpoint list.
    """

    job_ids: tuple[str, ...]
    breakpoints: tuple[Fraction, ...]
    loads: tuple[tuple[Fraction, ...], ...]
    temperatures: tuple[tuple[Fraction, ...], ...]
    works: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.breakpoints)
        for prev, cur in itertools.pairwise(self.breakpoints):
            if prev >= cur:
                raise InputError("trajectory breakpoints must be strictly increasing")
        for label, series in (("temperatures", self.temperatures), ("works", self.works)):
            if len(series) != len(self.job_ids):
                raise InputError(f"{label} must have one row per job")
            if any(len(row) != k for row in series):
                raise InputError(f"{label} rows must match the breakpoint count")
        if len(self.loads) != len(self.job_ids):
            raise InputError("loads must have one row per job")
        if any(len(row) != max(k - 1, 0) for row in self.loads):
            raise InputError("loads rows must have one entry per segment")

    @property
    def end(self) -> Fraction:
        return self.breakpoints[-1] if self.breakpoints else Fraction(0)
