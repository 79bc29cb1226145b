"""
Method-name dispatch shared by the CLI, the sweep runner and the HTTP API
"""
from model import Instance, SolveConfig
from services.assignment import solve_iam, solve_swm
from services.exact import solve_fairconf, solve_pfair, solve_sfair
from services.solution import Solution
from utils.constants import METHOD_FAIRCONF, METHOD_IAM, METHOD_PFAIR, METHOD_SFAIR, METHOD_SWM, SWEEP_METHODS


def solve_method(
    instance: Instance,
    method: str,
    lambda1: float | None = None,
    lambda2: float | None = None,
    config: SolveConfig | None = None,
    seed: int | None = None,
) -> Solution:
    """
    Solve with one named method.

    Args:
        instance: Instance to schedule
        method: swm, iam, pfair, sfair or fairconf
        lambda1: Participant-fairness weight (fairconf only, default 0)
        lambda2: Speaker-fairness weight (fairconf only, default 0)
        config: Search settings for the exact methods
        seed: Tie-break seed for iam

    Raises:
        ValueError: unknown method
    """
    if method == METHOD_SWM:
        return solve_swm(instance)
    if method == METHOD_IAM:
        return solve_iam(instance, seed)
    if method == METHOD_PFAIR:
        return solve_pfair(instance, config)
    if method == METHOD_SFAIR:
        return solve_sfair(instance, config)
    if method == METHOD_FAIRCONF:
        return solve_fairconf(instance, lambda1 or 0.0, lambda2 or 0.0, config)
    raise ValueError(f"unknown method {method!r}; expected one of {', '.join(SWEEP_METHODS)}")
