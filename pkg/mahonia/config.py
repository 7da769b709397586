from pydantic_settings import BaseSettings
from functools import lru_cache

class Settings(BaseSettings):
    # Distribution cache
    cache_dir: str = ".mahonia-cache"
    cache_enabled: bool = True
    memory_cache_size: int = 4096
    
    # Enumeration
    max_workers: int = 1
    
    # Logging
    log_level: str = "INFO"
    
    # Server
    port: int = 8000
    workers: int = 1
    allowed_origins: list[str] = ["*"]
    max_api_n: int = 9
    
    class Config:
        env_prefix = "MAHONIA_"
        env_file = ".env"
        case_sensitive = False

@lru_cache()
def get_settings():
    return Settings()
