from src.config.config import settings, AppConfig

__all__ = ["settings", "AppConfig"]
