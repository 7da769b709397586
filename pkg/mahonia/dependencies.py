from functools import lru_cache
from fastapi import HTTPException
from mahonia.config import get_settings
from mahonia.services.distribution_service import DistributionService
from mahonia.services.verifier_service import VerifierService
from mahonia.services.bijection_service import BijectionService

@lru_cache()
def get_distribution_service():
    settings = get_settings()
    return DistributionService(settings)

@lru_cache()
def get_verifier_service():
    distribution_svc = get_distribution_service()
    return VerifierService(distribution_svc)

@lru_cache()
def get_bijection_service():
    return BijectionService()

def check_api_n(n: int) -> int:
    """Reject sizes above the configured HTTP limit; larger runs belong to the CLI"""
    limit = get_settings().max_api_n
    if n > limit:
        raise HTTPException(status_code=400, detail=f"n = {n} exceeds the API limit {limit}; use the CLI")
    return n
