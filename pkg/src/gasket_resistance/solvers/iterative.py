"""Preconditioned conjugate-gradient solver for large sparse systems."""

from __future__ import annotations

import logging

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as splinalg

from gasket_resistance.errors import NumericalError
from gasket_resistance.solvers.base import LinearSolver

logger = logging.getLogger(__name__)


class ConjugateGradientSolver(LinearSolver):
    """Conjugate gradients with a diagonal (Jacobi) preconditioner."""

    def __init__(self, rtol: float = 1e-10, maxiter: int | None = None) -> None:
        self._rtol = rtol
        self._maxiter = maxiter

    @property
    def name(self) -> str:
        return "cg"

    def supports(self, size: int) -> bool:
        return True

    def solve(self, matrix: sparse.spmatrix | np.ndarray, rhs: np.ndarray) -> np.ndarray:
        A = sparse.csr_matrix(matrix)
        n = A.shape[0]
        if n == 0:
            return np.zeros_like(rhs, dtype=float)
        diagonal = A.diagonal()
        if np.any(diagonal <= 0):
            raise NumericalError("conjugate gradients needs a positive diagonal")
        inverse_diagonal = 1.0 / diagonal
        preconditioner = splinalg.LinearOperator(
            (n, n), matvec=lambda x: inverse_diagonal * x, dtype=float
        )
        maxiter = self._maxiter or 10 * n

        def _solve_column(b: np.ndarray) -> np.ndarray:
            if not np.any(b):
                return np.zeros(n)
            x, info = splinalg.cg(A, b, rtol=self._rtol, atol=0.0, M=preconditioner, maxiter=maxiter)
            if info != 0:
                raise NumericalError(
                    f"conjugate gradients did not reach rtol={self._rtol} (info={info}, n={n})"
                )
            return np.asarray(x)

        logger.debug("cg solve n=%d nnz=%d rhs=%s", n, A.nnz, rhs.shape)
        if rhs.ndim == 1:
            return _solve_column(rhs)
        return np.column_stack([_solve_column(rhs[:, j]) for j in range(rhs.shape[1])])
