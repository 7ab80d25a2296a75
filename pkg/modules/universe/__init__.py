from .routes import register as universe_group

__all__ = ["universe_group"]
