"""Solver registry: picks a linear solver by system size."""

from __future__ import annotations

from gasket_resistance.models.network import DEFAULT_TOLERANCES, Tolerances
from gasket_resistance.solvers.base import LinearSolver
from gasket_resistance.solvers.dense import DenseCholeskySolver
from gasket_resistance.solvers.iterative import ConjugateGradientSolver

# Candidate solvers in order of preference
_SOLVER_CLASSES: dict[str, type[LinearSolver]] = {
    "dense-cholesky": DenseCholeskySolver,
    "cg": ConjugateGradientSolver,
}

# Cache of instantiated solvers, keyed by name and tolerances
_solvers: dict[tuple[str, Tolerances], LinearSolver] = {}


def _instantiate(name: str, tol: Tolerances) -> LinearSolver:
    key = (name, tol)
    if key not in _solvers:
        solver_class = _SOLVER_CLASSES[name]
        if solver_class is DenseCholeskySolver:
            _solvers[key] = DenseCholeskySolver(max_size=tol.dense_max_vertices)
        elif solver_class is ConjugateGradientSolver:
            _solvers[key] = ConjugateGradientSolver(rtol=tol.solve_tol)
        else:
            _solvers[key] = solver_class()
    return _solvers[key]


def get_solver(size: int, tol: Tolerances = DEFAULT_TOLERANCES) -> LinearSolver:
    """Get the preferred solver for a system with `size` unknowns.

    Args:
        size: Number of unknowns
        tol: Tolerances carrying the dense-size threshold and CG residual

    Returns:
        The first registered solver that supports the size
    """
    for name in _SOLVER_CLASSES:
        solver = _instantiate(name, tol)
        if solver.supports(size):
            return solver
    raise LookupError(f"no registered solver supports size {size}")


def register_solver(name: str, solver_class: type[LinearSolver]) -> None:
    """Register a new solver class at the end of the preference order.

    Args:
        name: Solver identifier
        solver_class: Solver class to register (constructed without arguments)
    """
    _SOLVER_CLASSES[name] = solver_class
    for key in [key for key in _solvers if key[0] == name]:
        del _solvers[key]
