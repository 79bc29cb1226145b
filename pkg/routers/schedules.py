"""
Scheduling endpoints: solve, evaluate and generate
"""
import asyncio
import logging

from fastapi import APIRouter, Request
from fastapi.responses import JSONResponse

import config as settings
from model import SolveConfig
from services.datagen import PATTERN_NAMES, generate
from services.dispatch import solve_method
from services.metrics import evaluate
from utils.constants import SWEEP_METHODS
from utils.serialization import instance_from_dict, instance_to_dict, schedule_from_dict

logger = logging.getLogger(__name__)

router = APIRouter()


async def _json_body(request: Request) -> dict | None:
    try:
        data = await request.json()
    except ValueError:
        return None
    return data if isinstance(data, dict) else None


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_integer(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _type_error(data: dict, numbers: tuple[str, ...] = (), integers: tuple[str, ...] = ()) -> JSONResponse | None:
    """400 response naming the first optional field with the wrong JSON type, if any"""
    for key in numbers:
        if data.get(key) is not None and not _is_number(data[key]):
            return JSONResponse({"error": f"{key} must be a number"}, status_code=400)
    for key in integers:
        if data.get(key) is not None and not _is_integer(data[key]):
            return JSONResponse({"error": f"{key} must be an integer"}, status_code=400)
    return None


@router.post("/solve")
async def solve(request: Request):
    """
    Schedule an instance with one method.
    Body: {"instance", "method", "lambda1"?, "lambda2"?, "time_limit"?, "deterministic"?, "seed"?}
    """
    data = await _json_body(request)
    if data is None or "instance" not in data or "method" not in data:
        return JSONResponse({"error": "instance and method are required"}, status_code=400)

    method = data["method"]
    if method not in SWEEP_METHODS:
        return JSONResponse(
            {"error": f"method must be one of {', '.join(SWEEP_METHODS)}"},
            status_code=400,
        )
    error = _type_error(data, numbers=("lambda1", "lambda2", "time_limit"), integers=("seed",))
    if error is not None:
        return error
    if data.get("deterministic") is not None and not isinstance(data["deterministic"], bool):
        return JSONResponse({"error": "deterministic must be a boolean"}, status_code=400)

    instance = instance_from_dict(data["instance"])
    defaults = settings.default_solve_config()
    time_limit = data.get("time_limit")
    config = SolveConfig(
        time_limit=defaults.time_limit if time_limit is None else time_limit,
        node_limit=defaults.node_limit,
        worker_count=defaults.worker_count,
        deterministic=bool(data.get("deterministic", False)),
        prune_tolerance=defaults.prune_tolerance,
    )
    logger.info(f"📥 /solve method={method} m={instance.participant_count} n={instance.talk_count}")

    # Solves are CPU-bound; keep the event loop free
    solution = await asyncio.to_thread(
        solve_method,
        instance,
        method,
        data.get("lambda1"),
        data.get("lambda2"),
        config,
        data.get("seed"),
    )
    return solution.to_dict()


@router.post("/metrics")
async def metrics(request: Request):
    """Body: {"instance", "schedule"}; schedule may be {"assignment": [...]} or a bare list"""
    data = await _json_body(request)
    if data is None or "instance" not in data or "schedule" not in data:
        return JSONResponse({"error": "instance and schedule are required"}, status_code=400)

    raw_schedule = data["schedule"]
    if isinstance(raw_schedule, list):
        raw_schedule = {"assignment": raw_schedule}
    instance = instance_from_dict(data["instance"])
    schedule = schedule_from_dict(raw_schedule)
    return evaluate(instance, schedule).to_dict()


@router.post("/gen")
async def gen(request: Request):
    """Body: {"pattern", "m"?, "n"?, "l"?, "seed"?}"""
    data = await _json_body(request)
    if data is None or "pattern" not in data:
        return JSONResponse({"error": "pattern is required"}, status_code=400)
    if data["pattern"] not in PATTERN_NAMES:
        return JSONResponse(
            {"error": f"pattern must be one of {', '.join(PATTERN_NAMES)}"},
            status_code=400,
        )
    error = _type_error(data, integers=("m", "n", "l", "seed"))
    if error is not None:
        return error
    seed = data.get("seed")
    instance = generate(data["pattern"], data.get("m"), data.get("n"), data.get("l"), 0 if seed is None else seed)
    return instance_to_dict(instance)
