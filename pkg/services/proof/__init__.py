from .derivation import Derivation, Node
from .rules import RULES, RuleSpec, admitted, dialect_of, rules_of
from .checker import CheckResult, check, check_step, is_bot
from .builder import DerivationBuilder
from .library import derived_library
from .derivation_io import dump, dump_file, load, load_file
from .fuzz import FuzzReport, soundness_fuzz

__all__ = [
    "Derivation",
    "Node",
    "RULES",
    "RuleSpec",
    "admitted",
    "dialect_of",
    "rules_of",
    "CheckResult",
    "check",
    "check_step",
    "is_bot",
    "DerivationBuilder",
    "derived_library",
    "dump",
    "dump_file",
    "load",
    "load_file",
    "FuzzReport",
    "soundness_fuzz",
]
