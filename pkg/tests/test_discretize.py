import random
from fractions import Fraction

import pytest

from tempsched import (
    InfeasibleScheduleError,
    InputError,
    Instance,
    Job,
    NormalSchedule,
    NotSliceableError,
    check_feasibility,
    discretize_auto,
    gamma_scale,
    loads_from_normal,
    simulate,
    time_slice,
)
from tempsched.generate import random_instance

from .helpers import sequential_full_speed, work_at

F = Fraction


class TestGammaScale:
    def test_scales_completions_and_loads(self, twin_instance, twin_optimum):
        scaled = gamma_scale(twin_optimum, F(5, 4))
        assert scaled.completions == (F(25, 4), F(25, 4))
        assert loads_from_normal(scaled) == [
            (F(0), F(25, 4), (F(8, 25), F(8, 25)))
        ]
        traj = simulate(twin_instance, scaled)
        peak = max(max(row) for row in traj.temperatures)
        assert peak == F(7, 12)  # strictly below the threshold
        assert peak < 1

    def test_rejects_gamma_at_most_one(self, twin_optimum):
        for gamma in (F(1), F(1, 2), 0):
            with pytest.raises(InputError):
                gamma_scale(twin_optimum, gamma)

    def test_single_full_rate_job(self):
        sched = NormalSchedule((0,), (F(3),), ((F(3),),))
        scaled = gamma_scale(sched, 2)
        assert scaled.completions == (F(6),)
        assert loads_from_normal(scaled) == [(F(0), F(6), (F(1, 2),))]


class TestTimeSlice:
    def test_identity_on_full_rate_single_job(self):
        inst = Instance((Job("a", 1, F(-1), F(1, 2)),))
        sched = NormalSchedule((0,), (F(1),), ((F(1),),))
        nat = time_slice(inst, sched, 1)
        assert nat.for_job("a") == ((F(0), F(1)),)

    def test_micro_schedule_runs_jobs_in_instance_order(self, twin_instance, twin_optimum):
        scaled = gamma_scale(twin_optimum, F(5, 4))
        nat = time_slice(twin_instance, scaled, 4)
        # slice length 25/16; each job occupies 8/25 of it = 1/2
        assert nat.for_job("j1")[0] == (F(0), F(1, 2))
        assert nat.for_job("j2")[0] == (F(1, 2), F(1))
        assert nat.for_job("j1")[1] == (F(25, 16), F(25, 16) + F(1, 2))

    def test_work_is_conserved_per_interval(self):
        rng = random.Random(17)
        for _ in range(10):
            n = rng.randint(1, 3)
            inst = random_instance(rng, n)
            base = sequential_full_speed(inst, tuple(range(n)))
            scaled = gamma_scale(base, F(rng.randint(5, 9), 4))
            for k in (1, 2, 4, 8):
                nat = time_slice(inst, scaled, k)
                traj = simulate(inst, nat)
                prev_t = F(0)
                for i, c in enumerate(scaled.completions):
                    if c == prev_t:
                        continue
                    for j in range(n):
                        assert work_at(traj, j, c) == scaled.work[i][j]
                    prev_t = c

    def test_completion_deviation_bound(self, twin_instance, twin_optimum):
        gamma = F(101, 100)
        scaled = gamma_scale(twin_optimum, gamma)
        horizon = gamma * 5
        for k in (1, 2, 4, 8, 16):
            nat = time_slice(twin_instance, scaled, k)
            report = check_feasibility(twin_instance, nat)
            assert not report.missing
            for pos, j in enumerate(scaled.order):
                c_nat = report.completions[twin_instance.jobs[j].id]
                assert abs(c_nat - scaled.completions[pos]) <= horizon / k

    def test_rejects_overloaded_interval(self):
        inst = Instance(
            (Job("a", 2, F(-1, 10), F(1, 10)), Job("b", 2, F(-1, 10), F(1, 10))),
            machines=2,
        )
        sched = NormalSchedule(
            (0, 1), (F(2), F(2)), ((F(2), F(2)), (F(2), F(2)))
        )
        with pytest.raises(NotSliceableError):
            time_slice(inst, sched, 2)

    def test_rejects_bad_k(self, twin_instance, twin_optimum):
        with pytest.raises(InputError):
            time_slice(twin_instance, twin_optimum, 0)


class TestDiscretizeAuto:
    def test_golden_narrow_gamma(self, twin_instance, twin_optimum):
        gamma = F(101, 100)
        nat, k = discretize_auto(twin_instance, twin_optimum, gamma)
        report = check_feasibility(twin_instance, nat)
        assert report.feasible
        bound = gamma * 5 + (gamma * 5) / k
        assert all(c <= bound for c in report.completions.values())
        # k is the first feasible power of two
        if k > 1:
            previous = time_slice(
                twin_instance, gamma_scale(twin_optimum, gamma), k // 2
            )
            assert not check_feasibility(twin_instance, previous).feasible

    def test_loose_gamma_needs_tiny_k(self, twin_instance, twin_optimum):
        nat, k = discretize_auto(twin_instance, twin_optimum, 2)
        assert k <= 2
        assert check_feasibility(twin_instance, nat).feasible

    def test_infeasible_input_rejected(self, solo_instance):
        overheating = sequential_full_speed(solo_instance, (0,))
        assert not check_feasibility(solo_instance, overheating).feasible
        with pytest.raises(InfeasibleScheduleError):
            discretize_auto(solo_instance, overheating, 2)

    def test_ceiling_raises(self, twin_instance, twin_optimum):
        from tempsched import SliceLimitError

        with pytest.raises(SliceLimitError):
            discretize_auto(twin_instance, twin_optimum, F(101, 100), k_ceiling=4)

    def test_temperature_error_shrinks_with_k(self, twin_instance, twin_optimum):
        # max |T^(gamma,k) - T^gamma| at the sliced schedule's breakpoints,
        # nonincreasing along doubling k
        gamma = F(3, 2)
        scaled = gamma_scale(twin_optimum, gamma)
        base = simulate(twin_instance, scaled)

        def base_temp(j, t):
            bps = base.breakpoints
            for i in range(len(bps) - 1):
                if bps[i] <= t <= bps[i + 1]:
                    t0, t1 = bps[i], bps[i + 1]
                    v0 = base.temperatures[j][i]
                    v1 = base.temperatures[j][i + 1]
                    return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            return base.temperatures[j][-1]

        prev_err = None
        for k in (1, 2, 4, 8, 16):
            traj = simulate(twin_instance, time_slice(twin_instance, scaled, k))
            err = max(
                abs(traj.temperatures[j][i] - base_temp(j, t))
                for j in range(2)
                for i, t in enumerate(traj.breakpoints)
                if t <= base.end
            )
            if prev_err is not None:
                assert err <= prev_err
            prev_err = err
        assert prev_err < F(1, 8)
