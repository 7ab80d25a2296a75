from .routes import register as model_group

__all__ = ["model_group"]
