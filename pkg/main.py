"""
Fair Conference Scheduler
FastAPI service exposing the schedulers, metrics and instance generators
"""
import logging
import sys
import traceback
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

import config as settings
from routers import claims, health, schedules
from utils.errors import SizeLimitError, ValidationError

# Validate environment variables on startup
settings.validate_config()
settings.configure_logging()

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Startup and shutdown events"""
    defaults = settings.default_solve_config()
    logger.info("🚀 Fair Conference Scheduler starting...")
    logger.info(f"   Workers: {defaults.worker_count}")
    logger.info(f"   Time limit: {defaults.time_limit if defaults.time_limit is not None else 'none'}")
    logger.info(f"   Node limit: {defaults.node_limit if defaults.node_limit is not None else 'none'}")
    yield
    logger.info("🛑 Fair Conference Scheduler shutting down...")


app = FastAPI(
    title="Fair Conference Scheduler",
    description="Welfare- and fairness-optimal talk scheduling for virtual conferences",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(ValueError)
async def domain_error_handler(request, exc):
    """Map domain and argument errors to 400/413/422 JSON bodies"""
    if isinstance(exc, ValidationError):
        logger.warning(f"⚠️ Invalid instance on {request.url.path}: {exc}")
        return JSONResponse(
            {
                "error": "Validation error",
                "violations": [
                    {
                        "kind": v.kind,
                        "message": v.message,
                        "participant": v.participant,
                        "talk": v.talk,
                        "slot": v.slot,
                    }
                    for v in exc.violations
                ],
            },
            status_code=422,
        )
    logger.warning(f"⚠️ Rejected request on {request.url.path}: {exc}")
    status = 413 if isinstance(exc, SizeLimitError) else 400
    return JSONResponse({"error": str(exc)}, status_code=status)


# Global exception handler to catch all unhandled errors
@app.exception_handler(Exception)
async def global_exception_handler(request, exc):
    """Catch all unhandled exceptions and log them"""
    if isinstance(exc, StarletteHTTPException):
        return JSONResponse({"error": str(exc.detail), "status_code": exc.status_code}, status_code=exc.status_code)
    if isinstance(exc, RequestValidationError):
        return JSONResponse({"error": "Validation error", "details": str(exc)}, status_code=422)

    logger.error(f"❌ UNHANDLED EXCEPTION: {exc}")
    logger.error(f"   Path: {request.url.path}")
    logger.error(f"   Method: {request.method}")
    logger.error(f"   Traceback:\n{traceback.format_exc()}")
    return JSONResponse({"error": "Internal server error", "message": str(exc)}, status_code=500)


# Register routers
app.include_router(schedules.router)
app.include_router(claims.router)
app.include_router(health.router)


if __name__ == "__main__":
    from cli import main

    sys.exit(main(sys.argv[1:] or ["serve"]))
