"""Models for percolation configurations, clusters and cable networks."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from enum import Enum
from functools import cached_property
from typing import Any

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import sparse
from scipy.sparse import csgraph

from gasket_resistance.errors import ArgumentError
from gasket_resistance.models.network import Edge, Network

# Axial offsets of the six triangular-lattice neighbours
NEIGHBOR_OFFSETS: tuple[tuple[int, int], ...] = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


def site_id(q: int, r: int, side: int) -> int:
    """Row-major label of the axial site (q, r)."""
    return r * side + q


def site_coords(site: int, side: int) -> tuple[int, int]:
    return site % side, site // side


def hex_distance(dq: np.ndarray | int, dr: np.ndarray | int) -> np.ndarray | int:
    """Graph distance on the full triangular lattice for an axial displacement."""
    return np.maximum(np.maximum(np.abs(dq), np.abs(dr)), np.abs(np.add(dq, dr)))


def _frozen_array(value: Any, dtype: Any) -> np.ndarray:
    array = np.array(value, dtype=dtype)
    array.setflags(write=False)
    return array


class LatticeConfig(BaseModel):
    """Site configuration on an L x L rhombus of the triangular lattice."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    side: int = Field(..., ge=2, description="Rhombus side L in lattice steps")
    p: float = Field(..., ge=0.0, le=1.0, description="Probability that a site is open")
    seed: int = Field(..., ge=0, description="RNG seed the configuration was drawn with")
    open: np.ndarray = Field(..., description="Row-major boolean bitmap of length L*L")

    @model_validator(mode="before")
    @classmethod
    def _coerce_bitmap(cls, data: Any) -> Any:
        if isinstance(data, Mapping) and "open" in data:
            data = dict(data)
            data["open"] = _frozen_array(data["open"], bool).ravel()
        return data

    @model_validator(mode="after")
    def _check_bitmap(self) -> LatticeConfig:
        if self.open.shape != (self.side * self.side,):
            raise ValueError(f"bitmap length {self.open.size} != L^2 = {self.side ** 2}")
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeConfig):
            return NotImplemented
        return (self.side, self.p, self.seed) == (other.side, other.p, other.seed) and bool(
            np.array_equal(self.open, other.open)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def n_open(self) -> int:
        return int(np.count_nonzero(self.open))

    def open_sites(self) -> np.ndarray:
        return np.flatnonzero(self.open)


def lattice_adjacency(side: int, sites: np.ndarray) -> sparse.csr_matrix:
    """Six-neighbour adjacency among sorted site ids (free boundary)."""
    n = len(sites)
    q = sites % side
    r = sites // side
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    for dq, dr in NEIGHBOR_OFFSETS:
        nq, nr = q + dq, r + dr
        inside = (nq >= 0) & (nq < side) & (nr >= 0) & (nr < side)
        target = nr[inside] * side + nq[inside]
        pos = np.searchsorted(sites, target)
        pos_clipped = np.minimum(pos, max(n - 1, 0))
        hit = (pos < n) & (sites[pos_clipped] == target) if n else np.zeros(0, dtype=bool)
        rows.append(np.flatnonzero(inside)[hit])
        cols.append(pos_clipped[hit])
    row = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    col = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    data = np.ones(len(row), dtype=np.int8)
    return sparse.csr_matrix((data, (row, col)), shape=(n, n))


class ClusterGraph(BaseModel):
    """A connected cluster of open sites with its chemical (graph) metric."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    side: int = Field(..., ge=2, description="Side L of the lattice the cluster lives on")
    site_ids: np.ndarray = Field(..., description="Sorted row-major site labels")

    @model_validator(mode="before")
    @classmethod
    def _coerce_sites(cls, data: Any) -> Any:
        if isinstance(data, Mapping) and "site_ids" in data:
            data = dict(data)
            data["site_ids"] = _frozen_array(np.unique(np.asarray(data["site_ids"])), np.int64)
        return data

    @classmethod
    def from_coords(cls, side: int, coords: Iterable[tuple[int, int]]) -> ClusterGraph:
        """Cluster from axial pairs; the sites must form one connected set."""
        pairs = [(int(q), int(r)) for q, r in coords]
        ids = [site_id(q, r, side) for q, r in pairs]
        for q, r in pairs:
            if not (0 <= q < side and 0 <= r < side):
                raise ArgumentError(f"site ({q}, {r}) lies outside the {side}x{side} rhombus")
        cluster = cls(side=side, site_ids=np.array(ids, dtype=np.int64))
        if not cluster.is_connected():
            raise ArgumentError("cluster sites are not connected")
        return cluster

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClusterGraph):
            return NotImplemented
        return self.side == other.side and bool(np.array_equal(self.site_ids, other.site_ids))

    __hash__ = None  # type: ignore[assignment]

    @property
    def size(self) -> int:
        return len(self.site_ids)

    @cached_property
    def coords(self) -> np.ndarray:
        """Axial (q, r) pairs aligned with `site_ids`."""
        return np.column_stack([self.site_ids % self.side, self.site_ids // self.side])

    @cached_property
    def adjacency(self) -> sparse.csr_matrix:
        return lattice_adjacency(self.side, self.site_ids)

    @cached_property
    def graph(self) -> nx.Graph:
        """networkx view labelled by site id."""
        g = nx.Graph()
        g.add_nodes_from(self.site_ids.tolist())
        rows, cols = self.adjacency.nonzero()
        g.add_edges_from(zip(self.site_ids[rows].tolist(), self.site_ids[cols].tolist()))
        return g

    @property
    def bbox(self) -> tuple[int, int, int, int]:
        """(q_min, q_max, r_min, r_max)."""
        q, r = self.coords[:, 0], self.coords[:, 1]
        return int(q.min()), int(q.max()), int(r.min()), int(r.max())

    def __contains__(self, site: object) -> bool:
        if not isinstance(site, (int, np.integer)):
            return False
        pos = int(np.searchsorted(self.site_ids, site))
        return pos < self.size and int(self.site_ids[pos]) == int(site)

    def position(self, site: int) -> int:
        """Local index of `site`."""
        if site not in self:
            raise ArgumentError(f"site {site} is not in the cluster")
        return int(np.searchsorted(self.site_ids, site))

    def is_connected(self) -> bool:
        if self.size <= 1:
            return True
        n_components, _ = csgraph.connected_components(self.adjacency, directed=False)
        return int(n_components) == 1

    def distances_from(self, site: int, limit: float = np.inf) -> np.ndarray:
        """Chemical distance from `site` to every cluster site (inf beyond `limit`)."""
        return np.asarray(
            csgraph.dijkstra(self.adjacency, directed=False, indices=self.position(site),
                             unweighted=True, limit=limit)
        )

    def chem_dist(self, x: int, y: int) -> float:
        """Chemical distance between two sites, by breadth-first search."""
        return float(self.distances_from(x)[self.position(y)])

    def induced_adjacency(self, mask: np.ndarray) -> sparse.csr_matrix:
        """Adjacency restricted to sites where `mask` is true (other rows emptied)."""
        keep = sparse.diags(mask.astype(np.int8))
        return (keep @ self.adjacency @ keep).tocsr()


class CableMode(str, Enum):
    """How cables are turned into network edges."""

    DIRECT = "direct"
    MERGED = "merged"


class EdgeMode(str, Enum):
    """Resistance carried by a cable."""

    LENGTH = "length"
    UNIT = "unit"


class CableNetwork(BaseModel):
    """The scale-eps cable-graph approximation of a cluster."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    network: Network = Field(..., description="Vertices and cable conductances")
    vertex_coords: dict[int, tuple[int, int]] = Field(
        default_factory=dict, description="Axial coordinates of every vertex"
    )
    lengths: dict[Edge, float] = Field(
        default_factory=dict, description="Chemical length of each edge's cable in lattice steps"
    )
    side: int = Field(..., ge=2, description="Side L of the underlying lattice")
    eps: float = Field(..., ge=2.0, description="Scale eps in lattice steps")
    c0: float = Field(default=0.05, gt=0, description="Intensity exponent offset")
    a0: float = Field(default=0.25, gt=0, description="Dead-end scale exponent")
    d: float = Field(default=91 / 48, gt=0, description="Target dimension used for the intensity")
    intensity: float = Field(..., ge=0, description="Poisson points per kept site")
    point_count: int = Field(default=0, ge=0, description="Total Poisson points drawn")
    dead_end_scale: float = Field(default=0.0, ge=0, description="Pruning threshold s in steps")
    removed_sites: tuple[int, ...] = Field(default=(), description="Sites pruned as dead ends")
    kept_count: int = Field(default=0, ge=0, description="Sites left after pruning")
    mode: CableMode = Field(default=CableMode.DIRECT, description="Cable construction mode")
    edge_mode: EdgeMode = Field(default=EdgeMode.LENGTH, description="Edge resistance rule")
    seed: int = Field(default=0, ge=0, description="Seed of the Poisson sample")
    cluster: ClusterGraph | None = Field(
        default=None, exclude=True, description="Underlying cluster (not serialised)"
    )

    def __eq__(self, other: object) -> bool:
        """Field-wise equality ignoring the attached cluster."""
        if not isinstance(other, CableNetwork):
            return NotImplemented
        return self.model_dump() == other.model_dump()

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_empty(self) -> bool:
        return self.network.n_vertices == 0

    def length(self, u: int, v: int) -> float:
        return self.lengths[(u, v) if u < v else (v, u)]


class VolumeProfile(BaseModel):
    """Chemical-ball site counts across radii for sampled centers."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    radii: tuple[int, ...] = Field(..., description="Ball radii in lattice steps")
    centers: tuple[int, ...] = Field(..., description="Sampled center sites")
    counts: np.ndarray = Field(..., description="counts[i, j] = |B(centers[i], radii[j])|")
    cluster_size: int = Field(..., ge=1, description="Size of the profiled cluster")

    @model_validator(mode="before")
    @classmethod
    def _coerce_counts(cls, data: Any) -> Any:
        if isinstance(data, Mapping) and "counts" in data:
            data = dict(data)
            data["counts"] = _frozen_array(data["counts"], np.int64).reshape(
                len(data.get("centers", ())), len(data.get("radii", ()))
            )
        return data

    @model_validator(mode="after")
    def _check_counts(self) -> VolumeProfile:
        if self.counts.size and np.any(np.diff(self.counts, axis=1) < 0):
            raise ValueError("ball counts must be nondecreasing in r")
        if self.counts.size and int(self.counts.max()) > self.cluster_size:
            raise ValueError("ball counts cannot exceed the cluster size")
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VolumeProfile):
            return NotImplemented
        return (self.radii, self.centers, self.cluster_size) == (
            other.radii,
            other.centers,
            other.cluster_size,
        ) and bool(np.array_equal(self.counts, other.counts))

    __hash__ = None  # type: ignore[assignment]

    def quantiles(self, q: float | Iterable[float] = 0.5) -> np.ndarray:
        """Per-radius quantiles over centers."""
        return np.quantile(self.counts, q, axis=0)

    def median(self) -> np.ndarray:
        return np.median(self.counts, axis=0)
