"""Pytest configuration and fixtures."""

from __future__ import annotations

import pytest

from gasket_resistance.config import Config, load_config
from gasket_resistance.models.lattice import ClusterGraph
from gasket_resistance.models.network import Network


@pytest.fixture
def edge() -> Network:
    """Two vertices joined by a unit conductance."""
    return Network.from_edges([0, 1], [(0, 1, 1.0)])


@pytest.fixture
def path3() -> Network:
    """Unit path a-b-c labelled 0-1-2."""
    return Network.from_edges([0, 1, 2], [(0, 1, 1.0), (1, 2, 1.0)])


@pytest.fixture
def weighted_path() -> Network:
    """Path 0-1-2 with w(0,1) = 2 and w(1,2) = 1."""
    return Network.from_edges([0, 1, 2], [(0, 1, 2.0), (1, 2, 1.0)])


@pytest.fixture
def triangle() -> Network:
    """Unit complete graph K3."""
    return Network.from_edges([0, 1, 2], [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture
def star() -> Network:
    """Star with center 0 and unit leaves 1..4."""
    return Network.from_edges(range(5), [(0, leaf, 1.0) for leaf in range(1, 5)])


@pytest.fixture
def ring() -> Network:
    """Unit cycle on 200 vertices."""
    n = 200
    return Network.from_edges(range(n), [(i, (i + 1) % n, 1.0) for i in range(n)])


@pytest.fixture
def two_triangles() -> Network:
    """Two unit triangles (0,1,2) and (2,3,4) glued at the cut point 2."""
    edges = [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (2, 4, 1.0)]
    return Network.from_edges(range(5), edges)


@pytest.fixture
def disconnected() -> Network:
    """An edge 0-1 and a separate edge 2-3."""
    return Network.from_edges(range(4), [(0, 1, 1.0), (2, 3, 1.0)])


@pytest.fixture
def line_cluster() -> ClusterGraph:
    """Straight cluster of 20 sites along the q axis of a 20 x 20 lattice."""
    return ClusterGraph.from_coords(20, [(q, 10) for q in range(20)])


@pytest.fixture
def full_cluster() -> ClusterGraph:
    """Every site of an 8 x 8 lattice."""
    return ClusterGraph.from_coords(8, [(q, r) for q in range(8) for r in range(8)])


@pytest.fixture
def isolated_config(tmp_path, monkeypatch) -> Config:
    """Default configuration writing into a temporary directory."""
    monkeypatch.setenv("GASKET_CONFIG", str(tmp_path / "absent.toml"))
    for key in ("GASKET_THREADS", "GASKET_SEED", "GASKET_OUTPUT_DIR"):
        monkeypatch.delenv(key, raising=False)
    return load_config(force_reload=True, overrides={"run": {"output_dir": str(tmp_path / "out")}})
