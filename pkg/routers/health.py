"""
Health check and root endpoints
"""
from fastapi import APIRouter

import config as settings
from services.datagen import PATTERN_NAMES
from utils.constants import SWEEP_METHODS

router = APIRouter()


@router.get("/health")
async def health_check():
    """Liveness plus the search defaults new solves will use"""
    defaults = settings.default_solve_config()
    return {
        "status": "healthy",
        "workers": defaults.worker_count,
        "time_limit": defaults.time_limit,
        "node_limit": defaults.node_limit,
    }


@router.get("/")
async def root():
    return {
        "service": "Fair Conference Scheduler",
        "version": "1.0.0",
        "methods": list(SWEEP_METHODS),
        "patterns": list(PATTERN_NAMES),
        "endpoints": {
            "solve": "POST /solve",
            "metrics": "POST /metrics",
            "gen": "POST /gen",
            "verify_claims": "GET /verify-claims",
            "health": "/health",
        },
    }
