"""
JSON reading and writing for instances, schedules, metrics and solutions
"""
import json
import logging
import sys
from pathlib import Path

from model import Instance, Labels, Schedule, require_valid
from utils.errors import InstanceFormatError

logger = logging.getLogger(__name__)

LABEL_KEYS = ("participants", "talks", "slots")


def instance_to_dict(instance: Instance) -> dict:
    data = {
        "interest": instance.interest.tolist(),
        "availability": instance.availability.tolist(),
    }
    labels = instance.labels
    if labels is not None:
        data["labels"] = {key: list(getattr(labels, key)) for key in LABEL_KEYS if getattr(labels, key) is not None}
    return data


def _matrix(data: dict, key: str) -> list[list[float]]:
    if key not in data:
        raise InstanceFormatError(f"missing key '{key}'")
    rows = data[key]
    if not isinstance(rows, list) or not rows or not all(isinstance(row, list) for row in rows):
        raise InstanceFormatError(f"'{key}' must be a non-empty array of arrays")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InstanceFormatError(f"'{key}' row {i} has {len(row)} entries, expected {width}")
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InstanceFormatError(f"'{key}'[{i}][{j}] is not a number: {value!r}")
    return rows


def instance_from_dict(data) -> Instance:
    """
    Build an Instance from decoded JSON; shape and type problems raise InstanceFormatError.
    Range and degeneracy checks are left to validate().
    """
    if not isinstance(data, dict):
        raise InstanceFormatError("instance JSON must be an object")
    interest = _matrix(data, "interest")
    availability = _matrix(data, "availability")
    if len(interest) != len(availability):
        raise InstanceFormatError(
            f"'interest' has {len(interest)} participant rows but 'availability' has {len(availability)}"
        )

    labels = None
    if data.get("labels") is not None:
        raw = data["labels"]
        if not isinstance(raw, dict) or not all(isinstance(raw.get(k, []), list) for k in LABEL_KEYS):
            raise InstanceFormatError("'labels' must be an object of string arrays")
        labels = Labels(**{key: raw[key] for key in LABEL_KEYS if key in raw})
    return Instance(interest, availability, labels)


def schedule_from_dict(data) -> Schedule:
    """Accepts a schedule object or a whole solution object (both carry 'assignment')"""
    if not isinstance(data, dict) or "assignment" not in data:
        raise InstanceFormatError("schedule JSON must be an object with key 'assignment'")
    assignment = data["assignment"]
    if not isinstance(assignment, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in assignment):
        raise InstanceFormatError("'assignment' must be an array of integers")
    return Schedule(tuple(assignment))


def parse_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"{source}: {e.msg}", line=e.lineno, column=e.colno) from e


def _read(path) -> str:
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceFormatError(f"cannot read {path}: {e.strerror}") from e


def load_instance(path, strict: bool = True) -> Instance:
    """
    Read an instance file ('-' for stdin).

    Raises:
        InstanceFormatError: unreadable file, malformed JSON or wrong shapes
        ValidationError: the instance fails validation (strict by default)
    """
    instance = instance_from_dict(parse_json(_read(path), str(path)))
    if strict:
        require_valid(instance)
    logger.debug(
        f"Loaded instance {path}: m={instance.participant_count} n={instance.talk_count} l={instance.slot_count}"
    )
    return instance


def load_schedule(path) -> Schedule:
    return schedule_from_dict(parse_json(_read(path), str(path)))


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def write_json(path, data: dict):
    """Write JSON to a file, or to stdout when path is '-'"""
    text = dumps(data)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"💾 Wrote {path}")


def save_instance(path, instance: Instance):
    write_json(path, instance_to_dict(instance))


def save_schedule(path, schedule: Schedule):
    write_json(path, {"assignment": list(schedule.assignment)})


def save_solution(path, solution, include_time: bool = True):
    write_json(path, solution.to_dict(include_time=include_time))
