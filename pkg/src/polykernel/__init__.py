"""Exact rational polyhedral computations driven by a rule engine."""
from .constructions import make_cube, make_simplex, rand_sphere, wedge
from .engine import PolytopeObject, Rule, RuleBase, Unsatisfiable, load, save
from .rules import default_rules

__all__ = [
    "PolytopeObject",
    "Rule",
    "RuleBase",
    "Unsatisfiable",
    "default_rules",
    "load",
    "make_cube",
    "make_simplex",
    "rand_sphere",
    "save",
    "wedge",
]
__version__ = "0.1.0"
