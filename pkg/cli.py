"""
fairconf command line: gen, solve, metrics, sweep, verify-claims, serve
"""
from __future__ import annotations

import argparse
import logging
import sys

import config as settings
from handlers.claims import verify_claims
from handlers.sweep import SweepSpec, run_sweep, write_csv
from model import SolveConfig
from services.datagen import PATTERN_NAMES, generate
from services.dispatch import solve_method
from services.metrics import evaluate
from utils.constants import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    METHOD_IAM,
    METHOD_SWM,
    SWEEP_METHODS,
)
from utils.errors import FairConfError, SizeLimitError
from utils.serialization import load_instance, load_schedule, save_instance, save_solution, write_json

logger = logging.getLogger("fairconf")


class UsageError(Exception):
    """Bad command-line arguments"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_float_list(text: str) -> list[float]:
    """
    Comma-separated numbers, where any item may be an inclusive range start:stop:step.

    "0,0.5,1" -> [0.0, 0.5, 1.0]; "0:1:0.25" -> [0.0, 0.25, 0.5, 0.75, 1.0]
    """
    values = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        if ":" in item:
            try:
                start, stop, step = (float(v) for v in item.split(":"))
            except ValueError as e:
                raise UsageError(f"bad range {item!r}; expected start:stop:step") from e
            if step <= 0 or stop < start:
                raise UsageError(f"bad range {item!r}; need step > 0 and stop >= start")
            count = int(round((stop - start) / step)) + 1
            values += [round(start + i * step, 12) for i in range(count)]
        else:
            try:
                values.append(float(item))
            except ValueError as e:
                raise UsageError(f"bad number {item!r}") from e
    return values


def _solve_config(args) -> SolveConfig:
    defaults = settings.default_solve_config()
    return SolveConfig(
        time_limit=args.time_limit if args.time_limit is not None else defaults.time_limit,
        node_limit=args.node_limit if args.node_limit is not None else defaults.node_limit,
        worker_count=args.workers if args.workers is not None else defaults.worker_count,
        deterministic=args.deterministic,
        prune_tolerance=defaults.prune_tolerance,
    )


def _add_search_options(parser: argparse.ArgumentParser):
    parser.add_argument("--time-limit", type=float, help="Wall-clock budget per solve, seconds")
    parser.add_argument("--node-limit", type=int, help="Search node budget per solve")
    parser.add_argument("--workers", type=int, help="Search workers (default FAIRCONF_THREADS)")
    parser.add_argument("--deterministic", action="store_true", help="Reproducible schedules (single worker)")
    parser.add_argument("--seed", type=int, help="Tie-break seed for iam")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fairconf", description="Fair scheduling for virtual conferences")
    parser.add_argument("--log-level", default=None, help="Logging level (default FAIRCONF_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="Generate an instance")
    gen.add_argument("--pattern", required=True, choices=PATTERN_NAMES)
    gen.add_argument("--m", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--l", type=int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default="-")

    solve = commands.add_parser("solve", help="Schedule an instance with one method")
    solve.add_argument("--instance", required=True)
    solve.add_argument("--method", required=True, choices=SWEEP_METHODS)
    solve.add_argument("--lambda1", type=float, default=0.0)
    solve.add_argument("--lambda2", type=float, default=0.0)
    _add_search_options(solve)
    solve.add_argument("--no-time", action="store_true", help="Write time_ms as null")
    solve.add_argument("--out", default="-")

    metrics = commands.add_parser("metrics", help="Evaluate a schedule")
    metrics.add_argument("--instance", required=True)
    metrics.add_argument("--schedule", required=True)

    sweep = commands.add_parser("sweep", help="Solve a lambda grid and write CSV")
    sweep.add_argument("--instance", required=True)
    sweep.add_argument("--methods", required=True, help="Comma-separated subset of " + ",".join(SWEEP_METHODS))
    sweep.add_argument("--lambda1", default="", help="Comma-separated values or start:stop:step")
    sweep.add_argument("--lambda2", default="", help="Comma-separated values or start:stop:step")
    sweep.add_argument("--fix", help="Pin one grid to a single value, e.g. lambda2=0.5")
    _add_search_options(sweep)
    sweep.add_argument("--csv", required=True)
    sweep.add_argument("--no-time", action="store_true", help="Leave time_ms empty")

    commands.add_parser("verify-claims", help="Re-derive the welfare/fairness tensions")

    serve = commands.add_parser("serve", help="Run the HTTP API")
    serve.add_argument("--host", default=settings.HOST)
    serve.add_argument("--port", type=int, default=int(settings.PORT))
    return parser


def cmd_gen(args) -> int:
    instance = generate(args.pattern, args.m, args.n, args.l, args.seed)
    save_instance(args.out, instance)
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    solution = solve_method(instance, args.method, args.lambda1, args.lambda2, _solve_config(args), args.seed)
    save_solution(args.out, solution, include_time=not args.no_time)
    if not solution.optimal and args.method not in (METHOD_IAM, METHOD_SWM):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_metrics(args) -> int:
    instance = load_instance(args.instance)
    schedule = load_schedule(args.schedule)
    write_json("-", evaluate(instance, schedule).to_dict())
    return EXIT_OK


def cmd_sweep(args) -> int:
    instance = load_instance(args.instance)
    lambda1_values = parse_float_list(args.lambda1)
    lambda2_values = parse_float_list(args.lambda2)
    if args.fix:
        name, _, value = args.fix.partition("=")
        fixed = parse_float_list(value)
        if name not in ("lambda1", "lambda2") or len(fixed) != 1:
            raise UsageError(f"--fix expects lambda1=V or lambda2=V, got {args.fix!r}")
        if name == "lambda1":
            lambda1_values = fixed
        else:
            lambda2_values = fixed

    spec = SweepSpec(
        instance=instance,
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        lambda1_values=tuple(lambda1_values),
        lambda2_values=tuple(lambda2_values),
        config=_solve_config(args),
        iam_seed=args.seed,
    )
    rows = run_sweep(spec)
    write_csv(args.csv, rows, include_time=not args.no_time)
    return EXIT_OK


def cmd_verify_claims(args) -> int:
    checks = verify_claims()
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name}: {check.description}")
        for failure in check.failures:
            print(f"    {failure}")
    return EXIT_OK if all(check.passed for check in checks) else EXIT_VALIDATION


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("main:app", host=args.host, port=args.port, reload=settings.ENV == "development")
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "metrics": cmd_metrics,
    "sweep": cmd_sweep,
    "verify-claims": cmd_verify_claims,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    """Run one command; returns the process exit code"""
    try:
        args = build_parser().parse_args(argv)
        settings.validate_config()
        settings.configure_logging(args.log_level)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"fairconf: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except FairConfError as e:
        logger.error(f"❌ {e}")
        for violation in getattr(e, "violations", []):
            logger.error(f"   {violation.message}")
        return EXIT_VALIDATION
    except ValueError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
