"""Dense Cholesky solver for small systems."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg
from scipy import sparse

from gasket_resistance.errors import NumericalError
from gasket_resistance.solvers.base import LinearSolver

logger = logging.getLogger(__name__)


class DenseCholeskySolver(LinearSolver):
    """Exact solves by Cholesky factorisation of the dense matrix."""

    def __init__(self, max_size: int = 4096) -> None:
        self._max_size = max_size

    @property
    def name(self) -> str:
        return "dense-cholesky"

    def supports(self, size: int) -> bool:
        return size <= self._max_size

    def solve(self, matrix: sparse.spmatrix | np.ndarray, rhs: np.ndarray) -> np.ndarray:
        dense = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix, dtype=float)
        if dense.shape[0] == 0:
            return np.zeros_like(rhs, dtype=float)
        try:
            factor = scipy.linalg.cho_factor(dense, lower=True, check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(
                f"matrix of size {dense.shape[0]} is not positive definite: {exc}"
            ) from exc
        logger.debug("cholesky solve n=%d rhs=%s", dense.shape[0], rhs.shape)
        return scipy.linalg.cho_solve(factor, rhs, check_finite=False)
