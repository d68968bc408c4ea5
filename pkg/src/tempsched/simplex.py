"""Exact LP solving: two-phase dense-tableau simplex over rationals.

Bland's rule picks the entering and leaving variables, so the method
terminates on every input with no further anti-cycling machinery. All
pivoting runs on `gmpy2.mpq` when available (several times faster than
`fractions.Fraction`); results are converted back to Fractions, and the
two types are interchangeable if gmpy2 is missing.

A small semantics-preserving presolve runs before the tableau is built:
variables pinned by single-variable equality rows are substituted out
(the per-order scheduling LPs pin about half their work variables that
way) and rows that became duplicates of one another collapse to the
tightest representative.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .lp import LpProblem, LpSolution

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _Q = Fraction

_MAX_PIVOTS = 1_000_000


class _Infeasible(Exception):
    pass


class _Unbounded(Exception):
    pass


def _presolve(problem: LpProblem):
    """Fix variables pinned by singleton equality rows and drop the rows.

    Returns (rows, fixed, free_zero) where rows hold only live constraints
    as (coeff dict, relation, rhs), `fixed` maps variable index to its
    forced value, and `free_zero` lists variables left in no constraint.
    Raises _Infeasible/_Unbounded when presolve alone settles the problem.
    """
    rows = [
        {
            "coeffs": {v: c for v, c in con.coeffs if c != 0},
            "rel": con.relation,
            "rhs": con.rhs,
        }
        for con in problem.constraints
    ]
    fixed: dict[int, Fraction] = {}

    def drop_trivial(row) -> bool:
        if row["coeffs"]:
            return False
        if row["rel"] == "==" and row["rhs"] != 0:
            raise _Infeasible
        if row["rel"] == "<=" and row["rhs"] < 0:
            raise _Infeasible
        return True

    live = [r for r in rows if not drop_trivial(r)]
    while True:
        pinned = None
        for r in live:
            if r["rel"] == "==" and len(r["coeffs"]) == 1:
                (var, coeff), = r["coeffs"].items()
                pinned = (var, r["rhs"] / coeff)
                break
        if pinned is None:
            break
        var, value = pinned
        if value < 0:
            raise _Infeasible
        fixed[var] = value
        for r in live:
            if var in r["coeffs"]:
                r["rhs"] -= r["coeffs"].pop(var) * value
        live = [r for r in live if not drop_trivial(r)]

    live = _drop_duplicate_rows(live)

    used = {v for r in live for v in r["coeffs"]}
    free_zero = []
    for v in range(len(problem.variables)):
        if v in fixed or v in used:
            continue
        if problem.objective[v] < 0:
            raise _Unbounded
        free_zero.append(v)
    return live, fixed, free_zero


def _drop_duplicate_rows(live):
    """Collapse rows equal up to positive scaling, keeping the tightest rhs.

    After pin substitution the scheduling LPs emit many copies of the same
    inequality (the per-job rate caps of completed jobs all reduce to the
    completion-order row), so this pays for itself.
    """
    kept: dict = {}
    order = []
    for r in live:
        items = sorted(r["coeffs"].items())
        scale = abs(items[0][1])
        key = (r["rel"], tuple((v, c / scale) for v, c in items))
        rhs = r["rhs"] / scale
        if key not in kept:
            kept[key] = rhs
            order.append(key)
        elif r["rel"] == "<=":
            kept[key] = min(kept[key], rhs)
        elif kept[key] != rhs:
            raise _Infeasible
    out = []
    for key in order:
        rel, coeffs = key
        out.append({
            "coeffs": dict(coeffs),
            "rel": rel,
            "rhs": kept[key],
        })
    return out


def _pivot(rows, cost, basis, r, col):
    prow = rows[r]
    piv = prow[col]
    if piv != 1:
        inv = 1 / piv
        rows[r] = prow = [v * inv for v in prow]
    nz = [(j, v) for j, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[col]
        if f:
            for j, pv in nz:
                row[j] -= f * pv
    f = cost[col]
    if f:
        for j, pv in nz:
            cost[j] -= f * pv
    basis[r] = col


def _run_simplex(rows, cost, basis, ncols, banned) -> str:
    """Minimize until no negative reduced cost remains (Bland's rule)."""
    for _ in range(_MAX_PIVOTS):
        enter = None
        for j in range(ncols):
            if cost[j] < 0 and j not in banned:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave = None
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return "unbounded"
        _pivot(rows, cost, basis, leave, enter)
    raise RuntimeError("simplex failed to terminate; this is a bug (Bland's rule cannot cycle)")


def _reduced_costs(objective, rows, basis, ncols):
    cost = list(objective) + [_Q(0)] * (ncols + 1 - len(objective))
    for i, b in enumerate(basis):
        cb = cost[b]
        if cb:
            row = rows[i]
            for j, v in enumerate(row):
                if v:
                    cost[j] -= cb * v
    return cost


def solve_lp(problem: LpProblem) -> LpSolution:
    """Solve min c.x s.t. the problem's constraints and x >= 0, exactly.

    Returns an optimal vertex assignment covering every variable, or a
    solution object whose status reports infeasibility/unboundedness.
    """
    try:
        live, fixed, free_zero = _presolve(problem)
    except _Infeasible:
        return LpSolution("infeasible", None, {})
    except _Unbounded:
        return LpSolution("unbounded", None, {})

    for v in free_zero:
        fixed.setdefault(v, Fraction(0))

    remaining = sorted({v for r in live for v in r["coeffs"]})
    col_of = {v: k for k, v in enumerate(remaining)}
    nstruct = len(remaining)

    if not live:
        assignment = _full_assignment(problem, fixed, {}, remaining)
        return LpSolution("optimal", problem.objective_value(assignment), assignment)

    # Column layout: structural vars, one slack/surplus per inequality,
    # then artificials; RHS is the final entry of each row.
    specs = []
    for r in live:
        coeffs, rel, rhs = r["coeffs"], r["rel"], r["rhs"]
        if rhs < 0:
            rhs = -rhs
            coeffs = {v: -c for v, c in coeffs.items()}
            rel = ">=" if rel == "<=" else "=="
        specs.append((coeffs, rel, rhs))
    nslack = sum(1 for _, rel, _ in specs if rel in ("<=", ">="))
    art_base = nstruct + nslack
    narts = sum(1 for _, rel, _ in specs if rel != "<=")
    ncols = nstruct + nslack + narts

    rows = []
    basis = []
    slack_idx = nstruct
    art_idx = art_base
    art_cols = []
    for coeffs, rel, rhs in specs:
        row = [_Q(0)] * (ncols + 1)
        for v, c in coeffs.items():
            row[col_of[v]] = _Q(c)
        row[-1] = _Q(rhs)
        if rel == "<=":
            row[slack_idx] = _Q(1)
            basis.append(slack_idx)
            slack_idx += 1
        elif rel == ">=":
            row[slack_idx] = _Q(-1)
            slack_idx += 1
            row[art_idx] = _Q(1)
            basis.append(art_idx)
            art_cols.append(art_idx)
            art_idx += 1
        else:
            row[art_idx] = _Q(1)
            basis.append(art_idx)
            art_cols.append(art_idx)
            art_idx += 1
        rows.append(row)

    banned: set[int] = set()
    if art_cols:
        phase1_obj = [_Q(0)] * ncols
        for a in art_cols:
            phase1_obj[a] = _Q(1)
        cost = _reduced_costs(phase1_obj, rows, basis, ncols)
        status = _run_simplex(rows, cost, basis, ncols, banned)
        if status != "optimal" or -cost[-1] > 0:
            return LpSolution("infeasible", None, {})
        banned = set(art_cols)
        # Drive artificials still basic (at zero) out, or drop their rows.
        keep = []
        for i in range(len(rows)):
            if basis[i] in banned:
                pivot_col = next(
                    (j for j in range(art_base) if rows[i][j] != 0), None
                )
                if pivot_col is None:
                    continue  # redundant row
                _pivot(rows, cost, basis, i, pivot_col)
            keep.append(i)
        if len(keep) != len(rows):
            rows = [rows[i] for i in keep]
            basis = [basis[i] for i in keep]

    objective_q = [_Q(0)] * ncols
    for v, c in enumerate(problem.objective):
        if v in col_of and c != 0:
            objective_q[col_of[v]] = _Q(c)
    cost = _reduced_costs(objective_q, rows, basis, ncols)
    status = _run_simplex(rows, cost, basis, ncols, banned)
    if status == "unbounded":
        return LpSolution("unbounded", None, {})

    tableau_values: dict[int, Fraction] = {}
    for i, b in enumerate(basis):
        if b < nstruct:
            tableau_values[remaining[b]] = Fraction(rows[i][-1])
    assignment = _full_assignment(problem, fixed, tableau_values, remaining)
    return LpSolution("optimal", problem.objective_value(assignment), assignment)


def _full_assignment(
    problem: LpProblem,
    fixed: Mapping[int, Fraction],
    solved: Mapping[int, Fraction],
    remaining,
) -> dict[str, Fraction]:
    values = {}
    for v, name in enumerate(problem.variables):
        if v in solved:
            values[name] = solved[v]
        elif v in fixed:
            values[name] = fixed[v]
        else:
            values[name] = Fraction(0)
    return values
