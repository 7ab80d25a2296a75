from .app_config import Config as AppConfig
from .env_config import EnvConfig

__all__ = ["AppConfig", "EnvConfig"]
