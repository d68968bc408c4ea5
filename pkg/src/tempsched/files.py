"""JSON file formats for instances and schedules.

Rationals travel as strings ("2/5", "0.25", "7"); integers are also
accepted as plain JSON numbers, and decimal literals in files are read as
their exact decimal value (0.1 means 1/10, never the nearest float).
Files written here always use the string form, so a write/read round trip
reproduces every value exactly.

Instance files::

    {"machines": 1, "alpha": "-1/3", "beta": 1,
     "jobs": [{"id": "j1", "p": 2}, {"id": "j2", "p": 2, "beta": "1/2"}]}

Per-job rates override the global ones; a per-job "threshold" marks data
that still needs normalizing. Schedule files carry either kind::

    {"kind": "natural", "intervals": {"j1": [["0", "1"], ["4", "5"]]}}
    {"kind": "normal", "order": ["j1", "j2"], "C": [...], "W": [[...]]}

In a normal schedule file, W row i gives the cumulative work at C[i] and
its columns follow the "order" list (column j belongs to order[j]).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .core import (
    Instance,
    InputError,
    Job,
    NaturalSchedule,
    NormalSchedule,
    as_rational,
    natural_from_intervals,
    rational_str,
    validate_normal_schedule,
)

Schedule = Union[NormalSchedule, NaturalSchedule]


def _load_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            # parse_float=str keeps decimal literals exact ("0.1" -> 1/10)
            return json.load(fh, parse_float=str)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON: {exc}") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _write_json(path: Union[str, Path], data: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def parse_instance(data: Any) -> Instance:
    """Build an Instance from decoded instance-file JSON."""
    if not isinstance(data, dict):
        raise InputError("instance file must contain a JSON object")
    machines = data.get("machines", 1)
    if not isinstance(machines, int) or isinstance(machines, bool):
        raise InputError(f"machines must be an integer, got {machines!r}")
    jobs_data = data.get("jobs")
    if not isinstance(jobs_data, list):
        raise InputError('instance file needs a "jobs" array')
    default_alpha = data.get("alpha")
    default_beta = data.get("beta")
    jobs = []
    for k, entry in enumerate(jobs_data):
        if not isinstance(entry, dict):
            raise InputError(f"jobs[{k}] must be an object")
        job_id = entry.get("id")
        if not isinstance(job_id, str) or not job_id:
            raise InputError(f"jobs[{k}] needs a non-empty string id")
        if "p" not in entry:
            raise InputError(f"job {job_id} needs a processing time p")
        alpha = entry.get("alpha", default_alpha)
        beta = entry.get("beta", default_beta)
        if alpha is None:
            raise InputError(f"job {job_id}: no alpha given (neither per-job nor global)")
        if beta is None:
            raise InputError(f"job {job_id}: no beta given (neither per-job nor global)")
        threshold = entry.get("threshold")
        jobs.append(Job(
            id=job_id,
            p=as_rational(entry["p"], f"job {job_id}: p"),
            alpha=as_rational(alpha, f"job {job_id}: alpha"),
            beta=as_rational(beta, f"job {job_id}: beta"),
            threshold=None if threshold is None
            else as_rational(threshold, f"job {job_id}: threshold"),
        ))
    return Instance(tuple(jobs), machines)


def load_instance(path: Union[str, Path]) -> Instance:
    return parse_instance(_load_json(path))


def dump_instance(instance: Instance) -> dict:
    jobs = []
    for job in instance.jobs:
        entry = {
            "id": job.id,
            "p": rational_str(job.p),
            "alpha": rational_str(job.alpha),
            "beta": rational_str(job.beta),
        }
        if job.threshold is not None:
            entry["threshold"] = rational_str(job.threshold)
        jobs.append(entry)
    return {"machines": instance.machines, "jobs": jobs}


def save_instance(path: Union[str, Path], instance: Instance) -> None:
    _write_json(path, dump_instance(instance))


def parse_schedule(data: Any, instance: Instance) -> Schedule:
    """Build a schedule from decoded schedule-file JSON, resolving job ids
    against the given instance.

    Structural problems (bad shapes, unknown ids, broken schedule
    invariants) raise InputError; feasibility is not judged here, so an
    overloaded or overheating schedule still loads and can be reported on.
    """
    if not isinstance(data, dict):
        raise InputError("schedule file must contain a JSON object")
    kind = data.get("kind")
    if kind == "natural":
        intervals = data.get("intervals")
        if not isinstance(intervals, dict):
            raise InputError('natural schedule needs an "intervals" object')
        known = set(instance.job_ids)
        raw = {}
        for job_id, spans in intervals.items():
            if job_id not in known:
                raise InputError(f"schedule names unknown job id {job_id!r}")
            if not isinstance(spans, list) or not all(
                isinstance(s, list) and len(s) == 2 for s in spans
            ):
                raise InputError(f"job {job_id}: intervals must be [start, end] pairs")
            raw[job_id] = [
                (as_rational(a, f"job {job_id} interval start"),
                 as_rational(b, f"job {job_id} interval end"))
                for a, b in spans
            ]
        return natural_from_intervals(raw, machines=None)
    if kind == "normal":
        order_ids = data.get("order")
        if not isinstance(order_ids, list) or sorted(order_ids) != sorted(instance.job_ids):
            raise InputError('"order" must list every instance job id exactly once')
        n = instance.n
        c_data = data.get("C")
        w_data = data.get("W")
        if not isinstance(c_data, list) or len(c_data) != n:
            raise InputError(f'"C" must be a list of {n} completion times')
        if (not isinstance(w_data, list) or len(w_data) != n
                or any(not isinstance(row, list) or len(row) != n for row in w_data)):
            raise InputError(f'"W" must be a {n}x{n} matrix')
        order = tuple(instance.index_of(job_id) for job_id in order_ids)
        completions = tuple(as_rational(v, f"C[{i}]") for i, v in enumerate(c_data))
        work = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                work[i][order[j]] = as_rational(w_data[i][j], f"W[{i}][{j}]")
        t_data = data.get("T")
        temps = None
        if t_data is not None:
            if (not isinstance(t_data, list) or len(t_data) != n
                    or any(not isinstance(row, list) or len(row) != n for row in t_data)):
                raise InputError(f'"T" must be a {n}x{n} matrix when present')
            temps = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    temps[i][order[j]] = as_rational(t_data[i][j], f"T[{i}][{j}]")
            temps = tuple(tuple(row) for row in temps)
        schedule = NormalSchedule(
            order=order,
            completions=completions,
            work=tuple(tuple(row) for row in work),
            temperatures=temps,
        )
        validate_normal_schedule(instance, schedule)
        return schedule
    raise InputError(f'schedule "kind" must be "normal" or "natural", got {kind!r}')


def load_schedule(path: Union[str, Path], instance: Instance) -> Schedule:
    return parse_schedule(_load_json(path), instance)


def dump_schedule(schedule: Schedule, instance: Instance) -> dict:
    if isinstance(schedule, NaturalSchedule):
        return {
            "kind": "natural",
            "intervals": {
                job.id: [[rational_str(a), rational_str(b)]
                         for a, b in schedule.for_job(job.id)]
                for job in instance.jobs
                if schedule.for_job(job.id)
            },
        }
    if isinstance(schedule, NormalSchedule):
        data = {
            "kind": "normal",
            "order": [instance.jobs[j].id for j in schedule.order],
            "C": [rational_str(c) for c in schedule.completions],
            "W": [
                [rational_str(schedule.work[i][j]) for j in schedule.order]
                for i in range(schedule.n)
            ],
        }
        if schedule.temperatures is not None:
            data["T"] = [
                [rational_str(schedule.temperatures[i][j]) for j in schedule.order]
                for i in range(schedule.n)
            ]
        return data
    raise InputError(f"unsupported schedule type: {type(schedule).__name__}")


def save_schedule(path: Union[str, Path], schedule: Schedule, instance: Instance) -> None:
    _write_json(path, dump_schedule(schedule, instance))
