from .routes import register as proof_group

__all__ = ["proof_group"]
