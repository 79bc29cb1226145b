"""
Claim verification endpoint
"""
import asyncio

from fastapi import APIRouter

from handlers.claims import verify_claims

router = APIRouter()


@router.get("/verify-claims")
async def verify_claims_endpoint():
    """Run every counterexample check and report pass/fail per check"""
    checks = await asyncio.to_thread(verify_claims)
    return {
        "passed": all(check.passed for check in checks),
        "checks": [check.to_dict() for check in checks],
    }
