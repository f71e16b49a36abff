"""Smoke tests for the python bindings: thin checks that the module loads and
the main operations round-trip; the C++ suite carries the real coverage."""

from fractions import Fraction

import pytest

import fnrt


@pytest.fixture
def two_proc():
    # five tasks that exactly fill two processors (U = 2, hyper-period 18)
    return fnrt.TaskSet([(2, 3), (2, 6), (2, 6), (3, 9), (3, 9)], processors=2)


def test_taskset_basics(two_proc):
    assert len(two_proc) == 5
    assert two_proc.processors == 2
    assert two_proc.utilization == Fraction(2)
    assert two_proc.hyperperiod == 18
    assert two_proc.tasks[0] == (1, 2, 3)


def test_text_round_trip(two_proc):
    text = two_proc.to_text()
    again = fnrt.load_taskset(text)
    assert again.tasks == two_proc.tasks
    assert again.processors == two_proc.processors


def test_simulate_all_schedulers(two_proc):
    for scheduler, model in [("bf", "discrete"), ("fnedf", "discrete"), ("fnedf", "continuous")]:
        report = fnrt.simulate(two_proc, scheduler=scheduler, model=model)
        assert report["feasible"], (scheduler, model)
        assert report["misses"] == []
        assert report["jobs_released"] == 16
        assert report["jobs_completed"] == 16
        assert report["horizon"] == 18


def test_simulate_trace_is_consistent(two_proc):
    report = fnrt.simulate(two_proc, scheduler="fnedf", model="discrete", trace=True)
    total = sum(end - start for (_, _, _, start, end) in report["trace"])
    assert total == Fraction(36)  # both processors busy for the whole hyper-period


def test_first_window_allocations(two_proc):
    assert fnrt.first_window_allocations(two_proc, model="discrete") == [2, 2, 2, 0, 0]
    cont = fnrt.first_window_allocations(two_proc, model="continuous")
    assert cont == [Fraction(2), Fraction(2), Fraction(2), 0, 0]


def test_bf_windows(two_proc):
    assert fnrt.bf_windows(two_proc, count=6) == [[2, 1, 1, 1, 1]] * 6


def test_verify_complete(two_proc):
    result = fnrt.verify(two_proc)
    assert result["complete"]
    assert result["demand"] == Fraction(36)
    assert result["flow"] == Fraction(36)
    assert result["jobs"] == 16


def test_admission_error_maps_to_value_error():
    overload = fnrt.TaskSet([(3, 3), (3, 3), (3, 3)], processors=2)
    with pytest.raises(ValueError):
        fnrt.simulate(overload, scheduler="bf")


def test_generate_is_deterministic():
    a = fnrt.generate(processors=2, tasks=5, seed=11, hyperperiod_cap=20000)
    b = fnrt.generate(processors=2, tasks=5, seed=11, hyperperiod_cap=20000)
    assert a.tasks == b.tasks
    assert a.utilization <= 2
    assert a.hyperperiod <= 20000


def test_experiment_csv_shape_and_determinism():
    kwargs = dict(
        processor_counts=[2],
        task_ratios=[2],
        sets_per_config=2,
        seed=3,
        hyperperiod_cap=1000,
    )
    csv_a = fnrt.experiment_csv(**kwargs)
    csv_b = fnrt.experiment_csv(**kwargs)
    assert csv_a == csv_b
    lines = csv_a.strip().splitlines()
    assert lines[0].startswith("set_id,scheduler,model,")
    assert len(lines) == 1 + 2 * 2  # header + (bf, fnedf) per set
    assert ",bf,discrete," in lines[1]
    assert ",fnedf,discrete," in lines[2]
