import csv
import io

import pytest

from handlers.sweep import SweepSpec, rows_to_csv, run_sweep, write_csv
from model import SolveConfig
from services.datagen import gen_uniform
from services.metrics import evaluate
from utils.constants import CSV_COLUMNS, SWEEP_METHODS

HEADER = "method,lambda1,lambda2,tep,ncg_mean,ncg_min,ncg_max,psi_p,nec_mean,nec_min,nec_max,psi_s,objective,optimal,nodes_explored,time_ms"


@pytest.fixture
def small_instance():
    return gen_uniform(4, 4, 5, seed=21)


def deterministic_spec(instance, methods, lambda1=(), lambda2=()):
    return SweepSpec(instance, tuple(methods), tuple(lambda1), tuple(lambda2), SolveConfig(deterministic=True))


def test_header_is_exact():
    assert ",".join(CSV_COLUMNS) == HEADER


def test_fairconf_grid_rows(small_instance):
    grid = [round(0.1 * i, 1) for i in range(11)]
    rows = run_sweep(deterministic_spec(small_instance, ["fairconf"], grid, [0.5]))
    assert len(rows) == 11
    assert [row.lambda1 for row in rows] == grid
    assert all(row.lambda2 == 0.5 for row in rows)


def test_single_baseline_row(small_instance):
    rows = run_sweep(deterministic_spec(small_instance, ["swm"]))
    assert len(rows) == 1
    assert rows[0].lambda1 is None and rows[0].lambda2 is None


def test_all_methods_one_point(small_instance):
    rows = run_sweep(deterministic_spec(small_instance, SWEEP_METHODS, [0.5], [0.5]))
    assert [row.method for row in rows] == list(SWEEP_METHODS)


def test_csv_is_reproducible_without_time(small_instance):
    spec = deterministic_spec(small_instance, SWEEP_METHODS, [0.0, 1.0], [0.5])
    first = rows_to_csv(run_sweep(spec), include_time=False)
    second = rows_to_csv(run_sweep(spec), include_time=False)
    assert first == second
    assert first.splitlines()[0] == HEADER


def test_csv_leaves_inapplicable_columns_empty(small_instance):
    rows = run_sweep(deterministic_spec(small_instance, ["swm", "fairconf"], [0.5], [0.5]))
    records = list(csv.DictReader(io.StringIO(rows_to_csv(rows, include_time=False))))
    assert records[0]["lambda1"] == "" and records[0]["lambda2"] == ""
    assert records[0]["time_ms"] == ""
    assert records[1]["lambda1"] == "0.5"
    assert records[1]["optimal"] == "true"


def test_rows_re_evaluate_consistently(small_instance):
    rows = run_sweep(deterministic_spec(small_instance, SWEEP_METHODS, [0.0, 0.5], [0.5]))
    for row in rows:
        report = evaluate(small_instance, row.solution.schedule)
        record = row.to_record()
        assert record["tep"] == pytest.approx(report.tep, abs=1e-9)
        assert record["psi_p"] == pytest.approx(report.psi_p, abs=1e-9)
        assert record["psi_s"] == pytest.approx(report.psi_s, abs=1e-9)
        assert record["ncg_mean"] == pytest.approx(report.ncg_mean, abs=1e-9)


def test_concurrent_points_keep_order(small_instance):
    spec = deterministic_spec(small_instance, ["fairconf"], [0.0, 0.5, 1.0], [0.0, 1.0])
    serial = rows_to_csv(run_sweep(spec), include_time=False)
    concurrent = rows_to_csv(run_sweep(spec, point_workers=3), include_time=False)
    assert serial == concurrent


def test_budget_marks_row_instead_of_failing(small_instance):
    spec = SweepSpec(small_instance, ("fairconf",), (1.0,), (1.0,), SolveConfig(node_limit=1))
    rows = run_sweep(spec)
    assert len(rows) == 1
    assert rows[0].solution.optimal is False


@pytest.mark.parametrize(
    "methods, lambda1, lambda2",
    [((), (), ()), (("anneal",), (), ()), (("fairconf",), (0.5,), ()), (("fairconf",), (-0.1,), (0.5,))],
)
def test_spec_invariants(small_instance, methods, lambda1, lambda2):
    with pytest.raises(ValueError):
        SweepSpec(small_instance, methods, lambda1, lambda2)


def test_write_csv(tmp_path, small_instance):
    path = tmp_path / "sweep.csv"
    write_csv(path, run_sweep(deterministic_spec(small_instance, ["swm", "iam"])))
    lines = path.read_text().splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 3
