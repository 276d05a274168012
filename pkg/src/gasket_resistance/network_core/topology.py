"""Graph searches on the positive-conductance graph of a network."""

from __future__ import annotations

from collections.abc import Iterable

import networkx as nx

from gasket_resistance.models.network import Network


def reachable_avoiding(net: Network, start: int, blocked: Iterable[int] = ()) -> set[int]:
    """Vertices reachable from `start` without entering `blocked`.

    Blocked vertices themselves are never included; `start` must not be blocked.
    """
    net.position(start)
    stop = set(blocked) - {start}
    view = nx.restricted_view(net.graph, stop, [])
    return set(nx.node_connected_component(view, start))


def separates(net: Network, x: int, y: int, separators: Iterable[int]) -> bool:
    """Whether every path from x to y passes through `separators`."""
    stop = set(separators)
    if x in stop or y in stop:
        return False
    net.position(x)
    net.position(y)
    return not nx.has_path(nx.restricted_view(net.graph, stop, []), x, y)
