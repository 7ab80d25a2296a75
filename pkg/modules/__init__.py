from .model import model_group
from .formula import formula_group
from .proof import proof_group
from .universe import universe_group

modules = [model_group, formula_group, proof_group, universe_group]
