import logging
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from mahonia import __version__
from mahonia.config import get_settings
from mahonia.api.routes import distribution, equidistribution, maps, series
from mahonia.models import HealthResponse
from mahonia.dependencies import get_distribution_service
from mahonia.logging_config import configure_logging

settings = get_settings()
configure_logging(settings.log_level)
logger = logging.getLogger(__name__)

app = FastAPI(
    title="Mahonia",
    description="Mahonian statistics over pattern-avoiding permutations",
    version=__version__
)

# CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.allowed_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(distribution.router)
app.include_router(equidistribution.router)
app.include_router(maps.router)
app.include_router(series.router)

@app.get("/", response_model=HealthResponse)
async def health_check():
    """Health check endpoint"""
    cache_ok = False

    try:
        cache_ok = get_distribution_service().is_writable()
    except Exception as e:
        logger.warning("[HEALTH] cache check failed: %s", e)

    # Enumeration works without a cache; it is only slower
    return HealthResponse(
        status="healthy" if cache_ok else "degraded",
        version=__version__,
        cache_writable=cache_ok
    )

if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "mahonia.main:app",
        host="0.0.0.0",
        port=settings.port,
        workers=settings.workers,
        reload=True
    )
