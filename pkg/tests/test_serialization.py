import json

import numpy as np
import pytest

from model import Schedule
from services.datagen import builtin
from services.exact import solve_sfair
from utils.errors import InstanceFormatError, ValidationError
from utils.serialization import (
    instance_from_dict,
    instance_to_dict,
    load_instance,
    load_schedule,
    save_instance,
    save_schedule,
    save_solution,
)


def test_instance_round_trip(tmp_path, table1):
    path = tmp_path / "table1.json"
    save_instance(path, table1)
    loaded = load_instance(path)
    assert loaded == table1
    np.testing.assert_array_equal(loaded.availability, table1.availability)


def test_schedule_round_trip(tmp_path):
    path = tmp_path / "schedule.json"
    save_schedule(path, Schedule((2, 0, 1)))
    assert load_schedule(path) == Schedule((2, 0, 1))


def test_solution_file_doubles_as_schedule(tmp_path, table2):
    path = tmp_path / "solution.json"
    save_solution(path, solve_sfair(table2), include_time=False)
    data = json.loads(path.read_text())
    assert data["time_ms"] is None
    assert load_schedule(path).assignment == (2, 1)


def test_malformed_json_reports_line(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "interest": [[1.0]],\n  "availability": [[1.0]\n}\n')
    with pytest.raises(InstanceFormatError) as info:
        load_instance(path)
    assert info.value.line == 4


def test_out_of_range_entry_is_validation_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"interest": [[1.5]], "availability": [[1.0]]}))
    with pytest.raises(ValidationError) as info:
        load_instance(path)
    assert "interest[0][0]" in info.value.violations[0].message


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"interest": [[1.0]]},
        {"interest": [[1.0], [0.5, 0.5]], "availability": [[1.0], [1.0]]},
        {"interest": [["a"]], "availability": [[1.0]]},
        {"interest": [[1.0]], "availability": [[1.0], [1.0]]},
        {"interest": [[True]], "availability": [[1.0]]},
    ],
)
def test_shape_problems_are_format_errors(data):
    with pytest.raises(InstanceFormatError):
        instance_from_dict(data)


def test_labels_survive(table3):
    data = instance_to_dict(table3)
    assert data["labels"]["slots"] == ["s1", "s2", "s3", "s4"]
    assert instance_from_dict(data).labels == table3.labels


def test_missing_file_is_format_error(tmp_path):
    with pytest.raises(InstanceFormatError):
        load_instance(tmp_path / "absent.json")


def test_builtin_json_shape():
    data = instance_to_dict(builtin("table2"))
    assert data["interest"] == [[1.0, 0.5]]
    assert data["availability"] == [[1.0, 0.75, 0.8]]
