from .formula import (
    BOT,
    TOP,
    And,
    Bot,
    Cf,
    Dep,
    Eq,
    Formula,
    IntDisj,
    Neg,
    Or,
    SelImp,
    Top,
    neq,
)
from .parser import parse
from .printer import render
from .wellformed import classify, eq_consistent, is_co, validate
from .desugar import desugar

__all__ = [
    "BOT",
    "TOP",
    "And",
    "Bot",
    "Cf",
    "Dep",
    "Eq",
    "Formula",
    "IntDisj",
    "Neg",
    "Or",
    "SelImp",
    "Top",
    "neq",
    "parse",
    "render",
    "classify",
    "eq_consistent",
    "is_co",
    "validate",
    "desugar",
]
