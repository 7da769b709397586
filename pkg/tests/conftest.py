import pytest
from mahonia.config import Settings
from mahonia.services.distribution_service import DistributionService
from mahonia.services.verifier_service import VerifierService


@pytest.fixture
def settings(tmp_path):
    """Settings with the cache redirected to a temporary directory"""
    return Settings(cache_dir=str(tmp_path / "cache"), cache_enabled=True, max_workers=1)


@pytest.fixture
def distribution_service(settings):
    return DistributionService(settings)


@pytest.fixture
def verifier_service(distribution_service):
    return VerifierService(distribution_service)
