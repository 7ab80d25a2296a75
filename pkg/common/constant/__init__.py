from .example_team import (
    example_signature,
    example_function_component,
    example_team,
)

__all__ = ["example_signature", "example_function_component", "example_team"]
