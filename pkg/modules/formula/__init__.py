from .routes import register as formula_group

__all__ = ["formula_group"]
