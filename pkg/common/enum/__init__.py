from .semantics_mode import Mode
from .dialect import Dialect
from .calculus import Calculus
from .rule_id import RuleId

__all__ = ["Mode", "Dialect", "Calculus", "RuleId"]
