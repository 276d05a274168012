"""Tests for the linear solver registry."""

from __future__ import annotations

import numpy as np
import pytest
from scipy import sparse

from gasket_resistance.errors import NumericalError
from gasket_resistance.models.network import Network, Tolerances
from gasket_resistance.network_core import effective_resistance
from gasket_resistance.solvers import (
    ConjugateGradientSolver,
    DenseCholeskySolver,
    get_solver,
    register_solver,
    registry,
)


def _grounded_path(n: int) -> sparse.csr_matrix:
    net = Network.from_edges(range(n), [(i, i + 1, 1.0) for i in range(n - 1)])
    return net.laplacian[1:, 1:]


def test_registry_picks_dense_for_small_systems():
    assert get_solver(10).name == "dense-cholesky"


def test_registry_falls_back_to_cg():
    tol = Tolerances(dense_max_vertices=5)
    assert get_solver(6, tol).name == "cg"


@pytest.mark.parametrize("solver", [DenseCholeskySolver(), ConjugateGradientSolver(rtol=1e-12)])
def test_solvers_agree_on_path(solver):
    A = _grounded_path(30)
    rhs = np.zeros(29)
    rhs[-1] = 1.0
    x = solver.solve(A, rhs)
    # Unit current into the far end of a grounded unit path
    assert x[-1] == pytest.approx(29.0, rel=1e-9)


def test_cg_multiple_right_hand_sides():
    A = _grounded_path(12)
    rhs = np.eye(11)[:, :3]
    x = ConjugateGradientSolver(rtol=1e-12).solve(A, rhs)
    assert x.shape == (11, 3)
    np.testing.assert_allclose(A @ x, rhs, atol=1e-9)


def test_dense_rejects_singular():
    with pytest.raises(NumericalError):
        DenseCholeskySolver().solve(np.zeros((2, 2)), np.ones(2))


def test_resistance_independent_of_solver():
    n = 40
    net = Network.from_edges(range(n), [(i, (i + 1) % n, 1.0) for i in range(n)])
    dense = effective_resistance(net, 0, 10)
    iterative = effective_resistance(net, 0, 10, Tolerances(dense_max_vertices=1, solve_tol=1e-12))
    # Cycle: 10 * 30 / 40
    assert dense == pytest.approx(7.5, abs=1e-10)
    assert iterative == pytest.approx(dense, rel=1e-8)


def test_registered_solver_is_consulted_last(monkeypatch):
    class EverythingSolver(DenseCholeskySolver):
        @property
        def name(self) -> str:
            return "everything"

        def supports(self, size: int) -> bool:
            return True

    monkeypatch.setattr(registry, "_SOLVER_CLASSES", dict(registry._SOLVER_CLASSES))
    register_solver("everything", EverythingSolver)
    assert list(registry._SOLVER_CLASSES)[-1] == "everything"
    assert get_solver(3, Tolerances(dense_max_vertices=2)).name == "cg"
