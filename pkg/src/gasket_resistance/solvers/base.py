"""Abstract base class for linear solvers."""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np
from scipy import sparse


class LinearSolver(ABC):
    """Abstract base for solvers of symmetric positive definite systems.

    Every grounded Laplacian, interior block and Green matrix the library
    builds is SPD, so implementations may rely on that structure.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Solver identifier: 'dense-cholesky', 'cg', etc."""

    @abstractmethod
    def supports(self, size: int) -> bool:
        """Whether a system with `size` unknowns should use this solver."""

    @abstractmethod
    def solve(self, matrix: sparse.spmatrix | np.ndarray, rhs: np.ndarray) -> np.ndarray:
        """Solve `matrix @ x = rhs`.

        Args:
            matrix: Square SPD matrix (sparse or dense)
            rhs: Right-hand side, a vector or a matrix of column vectors

        Returns:
            Solution with the same shape as `rhs`

        Raises:
            NumericalError: If the matrix is singular or the solve diverges
        """
