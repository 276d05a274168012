"""Linear solvers for grounded Laplacian systems."""

from gasket_resistance.solvers.base import LinearSolver
from gasket_resistance.solvers.dense import DenseCholeskySolver
from gasket_resistance.solvers.iterative import ConjugateGradientSolver
from gasket_resistance.solvers.registry import get_solver, register_solver

__all__ = [
    "LinearSolver",
    "DenseCholeskySolver",
    "ConjugateGradientSolver",
    "get_solver",
    "register_solver",
]
