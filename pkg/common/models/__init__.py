from .signature import Signature, Assignment
from .equation import EquationSeq
from .function_component import FunctionComponent, Mechanism
from .causal_team import CausalTeam, GeneralizedCausalTeam, Member, compatible
from .budget import UniverseBudget

__all__ = [
    "Signature",
    "Assignment",
    "EquationSeq",
    "FunctionComponent",
    "Mechanism",
    "CausalTeam",
    "GeneralizedCausalTeam",
    "Member",
    "compatible",
    "UniverseBudget",
]
