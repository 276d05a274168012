"""Models for finite electrical networks."""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping
from functools import cached_property
from typing import Any

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy import sparse
from scipy.sparse import csgraph

from gasket_resistance.errors import ArgumentError, DomainMismatchError

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    """Order an unordered vertex pair as (smaller, larger)."""
    return (u, v) if u < v else (v, u)


class Tolerances(BaseModel):
    """Numerical tolerances shared by all network operations."""

    model_config = ConfigDict(frozen=True)

    solve_tol: float = Field(default=1e-10, gt=0, description="Relative residual for iterative solves")
    assert_tol: float = Field(default=1e-9, gt=0, description="Absolute tolerance for identity checks")
    dense_max_vertices: int = Field(
        default=4096, ge=1, description="Largest system solved by dense Cholesky"
    )


DEFAULT_TOLERANCES = Tolerances()


class Network(BaseModel):
    """A finite weighted graph with symmetric edge conductances.

    Conductances are keyed by canonical vertex pairs (u < v); pairs that are
    absent have conductance zero. Vertex labels are opaque integers and are
    never renumbered, so networks can be glued on shared labels.
    """

    model_config = ConfigDict(frozen=True)

    vertex_ids: tuple[int, ...] = Field(..., description="Vertex labels in a fixed order")
    conductance: dict[Edge, float] = Field(
        default_factory=dict, description="Positive conductances keyed by (u, v) with u < v"
    )
    clamped: int = Field(
        default=0, ge=0, description="Negative conductances clamped to zero during construction"
    )

    @field_validator("vertex_ids")
    @classmethod
    def _unique_vertices(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if len(set(value)) != len(value):
            raise ValueError("vertex labels must be distinct")
        return value

    @model_validator(mode="after")
    def _check_conductances(self) -> Network:
        known = set(self.vertex_ids)
        zero_edges = []
        for (u, v), w in self.conductance.items():
            if u >= v:
                raise ValueError(f"edge ({u}, {v}) is not canonical (need u < v)")
            if u not in known or v not in known:
                raise ValueError(f"edge ({u}, {v}) references an unknown vertex")
            if not math.isfinite(w) or w < 0:
                raise ValueError(f"conductance of ({u}, {v}) must be finite and >= 0, got {w}")
            if w == 0:
                zero_edges.append((u, v))
        for edge in zero_edges:
            del self.conductance[edge]
        return self

    @classmethod
    def from_edges(
        cls,
        vertex_ids: Iterable[int],
        edges: Iterable[tuple[int, int, float]],
        clamped: int = 0,
    ) -> Network:
        """Build a network from (u, v, w) triples.

        Repeated pairs are combined in parallel (conductances add).
        Self-loops are ignored since they carry no energy.
        """
        conductance: dict[Edge, float] = {}
        for u, v, w in edges:
            if u == v:
                continue
            key = canonical_edge(int(u), int(v))
            conductance[key] = conductance.get(key, 0.0) + float(w)
        return cls(vertex_ids=tuple(int(v) for v in vertex_ids), conductance=conductance, clamped=clamped)

    @classmethod
    def from_resistances(
        cls, vertex_ids: Iterable[int], edges: Iterable[tuple[int, int, float]]
    ) -> Network:
        """Build a network from (u, v, r) triples with r the edge resistance."""
        return cls.from_edges(vertex_ids, ((u, v, 1.0 / r) for u, v, r in edges))

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_ids)

    @property
    def n_edges(self) -> int:
        return len(self.conductance)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.index

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Iterate (u, v, w) in sorted canonical order."""
        for (u, v) in sorted(self.conductance):
            yield u, v, self.conductance[(u, v)]

    def weight(self, u: int, v: int) -> float:
        """Conductance between u and v (zero when not adjacent)."""
        if u == v:
            return 0.0
        return self.conductance.get(canonical_edge(u, v), 0.0)

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertex_ids)}

    def position(self, vertex: int) -> int:
        """Row of `vertex` in matrices built from this network."""
        try:
            return self.index[vertex]
        except KeyError:
            raise ArgumentError(f"vertex {vertex} is not in the network") from None

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        index = self.index
        rows = np.fromiter((index[u] for u, _ in self.conductance), dtype=np.int64, count=self.n_edges)
        cols = np.fromiter((index[v] for _, v in self.conductance), dtype=np.int64, count=self.n_edges)
        weights = np.fromiter(self.conductance.values(), dtype=float, count=self.n_edges)
        return rows, cols, weights

    @cached_property
    def weight_matrix(self) -> sparse.csr_matrix:
        """Symmetric sparse conductance matrix in `vertex_ids` order."""
        rows, cols, weights = self.edge_arrays
        n = self.n_vertices
        upper = sparse.coo_matrix((weights, (rows, cols)), shape=(n, n))
        return (upper + upper.T).tocsr()

    @cached_property
    def degree(self) -> np.ndarray:
        """Weighted degree lambda(x) = sum_z w(x, z) in `vertex_ids` order."""
        return np.asarray(self.weight_matrix.sum(axis=1)).ravel()

    @cached_property
    def laplacian(self) -> sparse.csr_matrix:
        """Graph Laplacian diag(lambda) - W."""
        return (sparse.diags(self.degree) - self.weight_matrix).tocsr()

    @cached_property
    def component_labels(self) -> np.ndarray:
        """Connected-component label per vertex of the positive-conductance graph."""
        if self.n_vertices == 0:
            return np.zeros(0, dtype=np.int64)
        _, labels = csgraph.connected_components(self.weight_matrix, directed=False)
        return np.asarray(labels, dtype=np.int64)

    @cached_property
    def graph(self) -> nx.Graph:
        """networkx view of the positive-conductance graph, weights as `conductance`."""
        g = nx.Graph()
        g.add_nodes_from(self.vertex_ids)
        g.add_weighted_edges_from(
            ((u, v, w) for (u, v), w in self.conductance.items() if w > 0), weight="conductance"
        )
        return g

    def components(self) -> list[frozenset[int]]:
        """Vertex sets of the connected components, largest first."""
        groups: dict[int, list[int]] = {}
        for vertex, label in zip(self.vertex_ids, self.component_labels):
            groups.setdefault(int(label), []).append(vertex)
        ordered = sorted(groups.values(), key=lambda members: (-len(members), min(members)))
        return [frozenset(members) for members in ordered]

    def is_connected(self) -> bool:
        return self.n_vertices <= 1 or int(self.component_labels.max()) == 0

    def same_component(self, u: int, v: int) -> bool:
        labels = self.component_labels
        return bool(labels[self.position(u)] == labels[self.position(v)])

    def neighbors(self, vertex: int) -> list[int]:
        """Vertices joined to `vertex` by a positive conductance."""
        matrix = self.weight_matrix
        row = self.position(vertex)
        cols = matrix.indices[matrix.indptr[row] : matrix.indptr[row + 1]]
        return [self.vertex_ids[c] for c in cols]

    def subnetwork(self, vertices: Iterable[int]) -> Network:
        """Induced network on `vertices`, keeping their order of first appearance."""
        keep: dict[int, None] = dict.fromkeys(vertices)
        for v in keep:
            self.position(v)
        conductance = {
            (u, v): w for (u, v), w in self.conductance.items() if u in keep and v in keep
        }
        return Network(vertex_ids=tuple(keep), conductance=conductance)

    def with_weight(self, u: int, v: int, w: float) -> Network:
        """Copy with the conductance of (u, v) replaced by `w`."""
        self.position(u)
        self.position(v)
        if u == v:
            raise ArgumentError("cannot set a self-loop conductance")
        conductance = dict(self.conductance)
        conductance[canonical_edge(u, v)] = w
        return Network(vertex_ids=self.vertex_ids, conductance=conductance)

    def scaled(self, factor: float) -> Network:
        """Copy with every conductance multiplied by `factor`."""
        if factor <= 0:
            raise ArgumentError("scale factor must be positive")
        return Network(
            vertex_ids=self.vertex_ids,
            conductance={edge: w * factor for edge, w in self.conductance.items()},
        )


class PotentialFunction(BaseModel):
    """A real function on vertices."""

    model_config = ConfigDict(frozen=True)

    values: dict[int, float] = Field(..., description="Potential per vertex label")

    @classmethod
    def from_array(cls, vertex_ids: Iterable[int], array: Iterable[float]) -> PotentialFunction:
        return cls(values={int(v): float(x) for v, x in zip(vertex_ids, array)})

    @classmethod
    def constant(cls, vertex_ids: Iterable[int], value: float) -> PotentialFunction:
        return cls(values={int(v): float(value) for v in vertex_ids})

    def __getitem__(self, vertex: int) -> float:
        return self.values[vertex]

    def on(self, vertex_ids: Iterable[int]) -> np.ndarray:
        """Values in the given vertex order; missing vertices are an error."""
        ordered = list(vertex_ids)
        missing = [v for v in ordered if v not in self.values]
        if missing:
            raise DomainMismatchError(
                f"potential is undefined on {len(missing)} vertices (first: {missing[0]})"
            )
        return np.array([self.values[v] for v in ordered], dtype=float)

    def restrict(self, vertex_ids: Iterable[int]) -> PotentialFunction:
        ordered = list(vertex_ids)
        return PotentialFunction.from_array(ordered, self.on(ordered))


class ResistanceMatrix(BaseModel):
    """All-pairs effective resistance on a set of vertices."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vertex_ids: tuple[int, ...] = Field(..., description="Row/column labels")
    R: np.ndarray = Field(..., description="Symmetric matrix of resistances, zero diagonal")

    @model_validator(mode="before")
    @classmethod
    def _coerce_matrix(cls, data: Any) -> Any:
        if isinstance(data, Mapping) and "R" in data:
            data = dict(data)
            matrix = np.array(data["R"], dtype=float)
            matrix.setflags(write=False)
            data["R"] = matrix
        return data

    @model_validator(mode="after")
    def _check_matrix(self) -> ResistanceMatrix:
        n = len(self.vertex_ids)
        if len(set(self.vertex_ids)) != n:
            raise ValueError("vertex labels must be distinct")
        if self.R.shape != (n, n):
            raise ValueError(f"matrix shape {self.R.shape} does not match {n} labels")
        finite = np.isfinite(self.R)
        scale = max(1.0, float(np.max(np.abs(self.R[finite]), initial=0.0)))
        if not np.array_equal(finite, finite.T) or not np.allclose(
            self.R[finite], self.R.T[finite], rtol=0.0, atol=1e-12 * scale
        ):
            raise ValueError("resistance matrix must be symmetric")
        if np.any(np.diag(self.R) != 0):
            raise ValueError("resistance matrix must have a zero diagonal")
        off = ~np.eye(n, dtype=bool)
        if np.any(np.isnan(self.R)) or np.any(self.R[off] <= 0):
            raise ValueError("off-diagonal resistances must be strictly positive")
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResistanceMatrix):
            return NotImplemented
        return self.vertex_ids == other.vertex_ids and bool(np.array_equal(self.R, other.R))

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertex_ids)}

    def value(self, x: int, y: int) -> float:
        try:
            return float(self.R[self.index[x], self.index[y]])
        except KeyError as exc:
            raise ArgumentError(f"vertex {exc.args[0]} is not in the matrix") from None

    def restrict(self, vertex_ids: Iterable[int]) -> ResistanceMatrix:
        ordered = tuple(vertex_ids)
        rows = [self.index[v] for v in ordered]
        return ResistanceMatrix(vertex_ids=ordered, R=self.R[np.ix_(rows, rows)])

    def triangle_violation(self) -> float:
        """Largest R(x,z) - R(x,y) - R(y,z) over all triples (<= 0 for a metric)."""
        R = self.R
        if len(self.vertex_ids) < 3 or not np.all(np.isfinite(R)):
            return 0.0
        via = R[:, :, None] + R[None, :, :]
        return float(np.max(R[:, None, :] - via))

    def is_metric(self, tol: float = DEFAULT_TOLERANCES.assert_tol) -> bool:
        return self.triangle_violation() <= tol
