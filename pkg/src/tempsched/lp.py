"""Linear programs over completion orders.

For a fixed completion order the feasible normal schedules form a
polyhedron in the completion times C_i, the cumulative-work matrix W_i_j,
and a temperature-witness matrix T_i_j (all nonnegative). `build_order_lp`
emits that polyhedron's constraints together with either the
sum-of-completions or the makespan objective; `extract_schedule` turns an
optimal assignment back into a `NormalSchedule`.

Indices inside the LP are completion positions: variable W_2_1 is the work
done on the job completing first, measured at the second completion time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping, Sequence

from .core import Instance, InputError, NormalSchedule, SchedulingError, normalize

Relation = Literal["<=", "=="]


class NoScheduleError(SchedulingError):
    """Raised when asked to extract a schedule from a non-optimal solution."""


@dataclass(frozen=True)
class Constraint:
    """Sparse linear constraint: sum(coeff * var) <relation> rhs."""

    name: str
    coeffs: tuple[tuple[int, Fraction], ...]
    relation: Relation
    rhs: Fraction


@dataclass(frozen=True)
class LpProblem:
    """Minimize objective . x subject to constraints and x >= 0."""

    variables: tuple[str, ...]
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.objective) != len(self.variables):
            raise InputError("objective length must match variable count")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.variables)})

    def index_of(self, name: str) -> int:
        return self._index[name]

    def violated_constraints(self, values: Mapping[str, Fraction]) -> list[str]:
        """Names of constraints (or nonnegativity bounds) the assignment
        breaks; empty list means the point is feasible."""
        x = [values.get(v, Fraction(0)) for v in self.variables]
        bad = [f"nonneg({self.variables[i]})" for i, xi in enumerate(x) if xi < 0]
        for con in self.constraints:
            lhs = sum((c * x[i] for i, c in con.coeffs), Fraction(0))
            ok = lhs <= con.rhs if con.relation == "<=" else lhs == con.rhs
            if not ok:
                bad.append(con.name)
        return bad

    def objective_value(self, values: Mapping[str, Fraction]) -> Fraction:
        return sum(
            (c * values.get(v, Fraction(0)) for v, c in zip(self.variables, self.objective)),
            Fraction(0),
        )


@dataclass(frozen=True)
class LpSolution:
    status: Literal["optimal", "infeasible", "unbounded"]
    value: Fraction | None
    assignment: dict[str, Fraction]


Objective = Literal["sum", "makespan"]


def build_order_lp(instance: Instance, order: Sequence[int], objective: Objective) -> LpProblem:
    """Emit the exact LP for the best normal schedule completing jobs in
    `order` (instance indices, first to complete first).

    Constraint families, with positions i and 1-based names:
      * work_monotone: cumulative work never decreases between breakpoints;
      * pin: a job's work equals its processing time from its completion on;
      * manage: per interval, total new work fits in m machine-time;
      * order: completion times are nondecreasing;
      * rate (only m > 1): per interval, one job gets at most one machine;
      * temp_start / temp_step: the temperature recursion lower-bounds the
        witness T over each interval;
      * temp_cap: the witness stays at or below the threshold 1.
    """
    instance = normalize(instance)
    n = instance.n
    if n == 0:
        raise InputError("cannot build an LP for an instance with no jobs")
    if sorted(order) != list(range(n)):
        raise InputError(f"order must be a permutation of 0..{n - 1}")
    if objective not in ("sum", "makespan"):
        raise InputError(f"unknown objective {objective!r}")
    m = instance.machines
    jobs = [instance.jobs[k] for k in order]  # jobs[j-1] completes j-th

    names: list[str] = [f"C_{i}" for i in range(1, n + 1)]
    names += [f"W_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    names += [f"T_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)]

    def C(i: int) -> int:
        return i - 1

    def W(i: int, j: int) -> int:
        return n + (i - 1) * n + (j - 1)

    def T(i: int, j: int) -> int:
        return n + n * n + (i - 1) * n + (j - 1)

    one = Fraction(1)
    cons: list[Constraint] = []

    for j in range(1, n + 1):
        for i in range(2, n + 1):
            cons.append(Constraint(
                f"work_monotone_{i}_{j}",
                ((W(i - 1, j), one), (W(i, j), -one)),
                "<=", Fraction(0),
            ))
    for j in range(1, n + 1):
        for i in range(j, n + 1):
            cons.append(Constraint(
                f"pin_{i}_{j}", ((W(i, j), one),), "==", jobs[j - 1].p,
            ))
    for i in range(1, n + 1):
        coeffs = [(W(i, j), one) for j in range(1, n + 1)]
        if i > 1:
            coeffs += [(W(i - 1, j), -one) for j in range(1, n + 1)]
            coeffs += [(C(i), Fraction(-m)), (C(i - 1), Fraction(m))]
        else:
            coeffs += [(C(i), Fraction(-m))]
        cons.append(Constraint(f"manage_{i}", tuple(coeffs), "<=", Fraction(0)))
    for i in range(2, n + 1):
        cons.append(Constraint(
            f"order_{i}", ((C(i - 1), one), (C(i), -one)), "<=", Fraction(0),
        ))
    if m > 1:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                coeffs = [(W(i, j), one), (C(i), -one)]
                if i > 1:
                    coeffs += [(W(i - 1, j), -one), (C(i - 1), one)]
                cons.append(Constraint(f"rate_{i}_{j}", tuple(coeffs), "<=", Fraction(0)))
    for j in range(1, n + 1):
        a, b = jobs[j - 1].alpha, jobs[j - 1].beta
        cons.append(Constraint(
            f"temp_start_{j}",
            ((C(1), a), (W(1, j), b - a), (T(1, j), -one)),
            "<=", Fraction(0),
        ))
    for i in range(2, n + 1):
        for j in range(1, n + 1):
            a, b = jobs[j - 1].alpha, jobs[j - 1].beta
            cons.append(Constraint(
                f"temp_step_{i}_{j}",
                (
                    (C(i), a), (C(i - 1), -a),
                    (W(i, j), b - a), (W(i - 1, j), -(b - a)),
                    (T(i, j), -one), (T(i - 1, j), one),
                ),
                "<=", Fraction(0),
            ))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            cons.append(Constraint(
                f"temp_cap_{i}_{j}", ((T(i, j), one),), "<=", Fraction(1),
            ))

    obj = [Fraction(0)] * len(names)
    if objective == "sum":
        for i in range(1, n + 1):
            obj[C(i)] = one
    else:
        obj[C(n)] = one

    return LpProblem(tuple(names), tuple(obj), tuple(cons))


def constraint_count(n: int, machines: int) -> int:
    """Closed-form size of the constraint list emitted by build_order_lp."""
    count = (7 * n * n + 3 * n) // 2 - 1
    if machines > 1:
        count += n * n
    return count


def extract_schedule(
    instance: Instance, order: Sequence[int], solution: LpSolution
) -> NormalSchedule:
    """Turn an optimal order-LP assignment into the corresponding normal
    schedule (work columns mapped back to instance job indices, the T
    values kept as the feasibility witness)."""
    if solution.status != "optimal":
        raise NoScheduleError(f"no schedule available: solver status is {solution.status}")
    instance = normalize(instance)
    n = instance.n
    order = tuple(order)
    a = solution.assignment
    completions = tuple(a[f"C_{i}"] for i in range(1, n + 1))
    work = [[Fraction(0)] * n for _ in range(n)]
    temps = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            work[i - 1][order[j - 1]] = a[f"W_{i}_{j}"]
            temps[i - 1][order[j - 1]] = a[f"T_{i}_{j}"]
    schedule = NormalSchedule(
        order=order,
        completions=completions,
        work=tuple(tuple(row) for row in work),
        temperatures=tuple(tuple(row) for row in temps),
    )
    return schedule


def lp_text(problem: LpProblem) -> str:
    """Render the problem in an LP-style text format for eyeballing.

    Coefficients stay exact ("4/3 W_1_1"), which standard LP parsers will
    not accept; this output is a debugging aid, not an interchange format.
    """

    def term(coeff: Fraction, name: str, first: bool) -> str:
        sign = "-" if coeff < 0 else ("" if first else "+")
        mag = abs(coeff)
        body = name if mag == 1 else f"{mag} {name}"
        return f"{sign} {body}" if not first else f"{sign}{body}"

    lines = ["Minimize", " obj: " + " ".join(
        term(c, v, i == 0)
        for i, (v, c) in enumerate(
            (v, c) for v, c in zip(problem.variables, problem.objective) if c != 0
        )
    )]
    lines.append("Subject To")
    for con in problem.constraints:
        rel = "<=" if con.relation == "<=" else "="
        body = " ".join(
            term(c, problem.variables[i], k == 0) for k, (i, c) in enumerate(con.coeffs)
        )
        lines.append(f" {con.name}: {body} {rel} {con.rhs}")
    lines.append("Bounds")
    lines.append("\\ all variables >= 0 (default)")
    lines.append("End")
    return "\n".join(lines) + "\n"
