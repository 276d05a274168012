"""Removal of small dead ends hanging from cut points of a cluster.

For every articulation point z, the components of the cluster minus z other
than the largest one (ties: the one holding the smallest site id) are dead
ends at z. A dead end is removed when the chemical diameter of the dead end
together with z is at most s.

The search runs over the block-cut tree. With the tree rooted at a block
holding the site r0, every shortest path from r0 into a child subtree of z
passes through z, so the eccentricity of z in that subtree is read off one
BFS from r0. Exact diameters are only computed when that eccentricity lies
in (s/2, s].
"""

from __future__ import annotations

import logging
from typing import NamedTuple

import networkx as nx
import numpy as np

from gasket_resistance.errors import ArgumentError
from gasket_resistance.models.lattice import ClusterGraph

logger = logging.getLogger(__name__)


class PruneResult(NamedTuple):
    kept: frozenset[int]
    removed: frozenset[int]


class _BlockCutTree:
    """Block-cut tree in DFS preorder with subtree aggregates.

    The tree is rooted at a block next to its vertex-weighted centroid, so
    for every cut point but the centroid the side holding the root is the
    largest component.
    """

    def __init__(self, cluster: ClusterGraph) -> None:
        self.cluster = cluster
        graph = cluster.graph
        self.cut = set(nx.articulation_points(graph))
        self.blocks = sorted((sorted(b) for b in nx.biconnected_components(graph)), key=lambda b: b[0])
        n_blocks = len(self.blocks)
        cut_nodes = {z: n_blocks + i for i, z in enumerate(sorted(self.cut))}
        self.cut_vertex = {node: z for z, node in cut_nodes.items()}
        self.n_nodes = n_blocks + len(cut_nodes)

        self.owned: list[list[int]] = [[v for v in b if v not in self.cut] for b in self.blocks]
        self.owned.extend([z] for z in sorted(self.cut))
        self.adjacency: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for i, block in enumerate(self.blocks):
            for v in block:
                if v in cut_nodes:
                    self.adjacency[i].append(cut_nodes[v])
                    self.adjacency[cut_nodes[v]].append(i)

        self._traverse(0)
        centroid = self._centroid_block()
        if centroid != 0:
            self._traverse(centroid)
        self._aggregate()

    def _traverse(self, root: int) -> None:
        self.root = root
        self.parent = [-1] * self.n_nodes
        self.children: list[list[int]] = [[] for _ in range(self.n_nodes)]
        self.preorder: list[int] = []
        stack = [root]
        seen = [False] * self.n_nodes
        seen[root] = True
        while stack:
            node = stack.pop()
            self.preorder.append(node)
            for nxt in sorted(self.adjacency[node], reverse=True):
                if not seen[nxt]:
                    seen[nxt] = True
                    self.parent[nxt] = node
                    self.children[node].append(nxt)
                    stack.append(nxt)
        self.tin = [0] * self.n_nodes
        for position, node in enumerate(self.preorder):
            self.tin[node] = position
        self.weight = [len(owned) for owned in self.owned]
        self.span = [1] * self.n_nodes
        for node in reversed(self.preorder):
            p = self.parent[node]
            if p >= 0:
                self.weight[p] += self.weight[node]
                self.span[p] += self.span[node]

    def _centroid_block(self) -> int:
        total = self.weight[self.root]

        def heaviest_part(node: int) -> int:
            parts = [self.weight[c] for c in self.children[node]]
            parts.append(total - self.weight[node])
            return max(parts)

        centroid = min(range(self.n_nodes), key=lambda node: (heaviest_part(node), node))
        if centroid in self.cut_vertex:
            p = self.parent[centroid]
            return p if p >= 0 else self.children[centroid][0]
        return centroid

    def _aggregate(self) -> None:
        big = int(np.iinfo(np.int64).max)
        self.root_vertex = self.blocks[self.root][0]
        dist = self.cluster.distances_from(self.root_vertex)
        self.depth = {int(v): int(d) for v, d in zip(self.cluster.site_ids.tolist(), dist)}
        self.min_id = [min(owned, default=big) for owned in self.owned]
        self.height = [max((self.depth[v] for v in owned), default=-1) for owned in self.owned]
        for node in reversed(self.preorder):
            p = self.parent[node]
            if p >= 0:
                self.min_id[p] = min(self.min_id[p], self.min_id[node])
                self.height[p] = max(self.height[p], self.height[node])

        own_min = [min(self.owned[node], default=big) for node in self.preorder]
        self.prefix_min = np.minimum.accumulate(np.array([big, *own_min], dtype=np.int64))
        self.suffix_min = np.minimum.accumulate(np.array([*own_min, big], dtype=np.int64)[::-1])[::-1]

    def subtree_nodes(self, node: int) -> list[int]:
        start = self.tin[node]
        return self.preorder[start : start + self.span[node]]

    def subtree_vertices(self, node: int) -> list[int]:
        return [v for n in self.subtree_nodes(node) for v in self.owned[n]]

    def complement_min(self, node: int) -> int:
        """Smallest site id outside the subtree of `node`."""
        start = self.tin[node]
        return int(min(self.prefix_min[start], self.suffix_min[start + self.span[node]]))


def _diameter_at_most(graph: nx.Graph, vertices: set[int], s: float) -> bool:
    return bool(nx.diameter(graph.subgraph(vertices), usebounds=True) <= s)


def dead_end_prune(cluster: ClusterGraph, s: float) -> PruneResult:
    """Split the cluster into kept sites and removed dead-end sites.

    Removal is monotone in s. If every site would be removed the whole
    cluster is kept.
    """
    if s < 0:
        raise ArgumentError(f"dead-end scale must be >= 0, got {s}")
    everything = frozenset(cluster.site_ids.tolist())
    if s == 0 or cluster.size < 3:
        return PruneResult(kept=everything, removed=frozenset())
    tree = _BlockCutTree(cluster)
    if not tree.cut:
        return PruneResult(kept=everything, removed=frozenset())

    graph = cluster.graph
    n = cluster.size
    removed_nodes = np.zeros(len(tree.preorder), dtype=bool)
    removed: set[int] = set()
    n_exact = 0

    for node in tree.preorder:
        if node not in tree.cut_vertex:
            continue
        z = tree.cut_vertex[node]
        # (size, min id, child block or -1 for the side holding the root)
        sides = [(tree.weight[b], tree.min_id[b], b) for b in tree.children[node]]
        sides.append((n - tree.weight[node], tree.complement_min(node), -1))
        keep = min(sides, key=lambda side: (-side[0], side[1]))
        for side in sides:
            if side is keep:
                continue
            block = side[2]
            if block >= 0:
                if removed_nodes[tree.tin[block]]:
                    continue
                ecc = tree.height[block] - tree.depth[z]
                if ecc > s:
                    continue
                vertices = tree.subtree_vertices(block)
                if 2 * ecc > s:
                    n_exact += 1
                    if not _diameter_at_most(graph, {*vertices, z}, s):
                        continue
                start = tree.tin[block]
                removed_nodes[start : start + tree.span[block]] = True
                removed.update(vertices)
            else:
                inside = set(tree.subtree_vertices(node))
                outside = {int(v) for v in cluster.site_ids.tolist() if v not in inside}
                if outside <= removed:
                    continue
                n_exact += 1
                if _diameter_at_most(graph, {*outside, z}, s):
                    removed.update(outside)

    if len(removed) >= n:
        logger.warning("dead-end pruning at s=%.3g would remove every site; keeping all", s)
        return PruneResult(kept=everything, removed=frozenset())
    logger.debug(
        "pruned %d of %d sites at s=%.3g (%d exact diameter checks)", len(removed), n, s, n_exact
    )
    return PruneResult(kept=everything - removed, removed=frozenset(removed))
