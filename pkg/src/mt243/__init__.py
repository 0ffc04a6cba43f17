"""Exact modular symbols and Mazur-Tate elements for y^2 + y = x^3 + 2."""
from .modsym import SymbolEngine, build_engine, default_engine
from .numth import CURVE

__all__ = ["CURVE", "SymbolEngine", "build_engine", "default_engine"]
__version__ = "0.1.0"
