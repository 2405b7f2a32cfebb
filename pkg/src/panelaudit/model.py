"""Graph containers used across the audit.

Three structures: an undirected weighted graph (co-authorship and one-mode
projections), a bipartite weighted graph (member-journal and
scholar-institution incidence), and a partition of nodes into numbered
groups (connected components, island assignments).

Graphs are built once by the builder functions and then treated as
read-only; none of the analysis code mutates them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .errors import ValidationError


class GraphError(ValidationError):
    pass


@dataclass
class NodeInfo:
    """Display attributes attached to a node id."""

    name: str = ""
    is_panelist: bool = False
    panel_label: Optional[str] = None


class WeightedGraph:
    """Undirected graph with positive edge weights and no self-loops.

    Adding an edge between already connected nodes aggregates the weights,
    which is how repeated co-authorships accumulate into tie strength.
    """

    def __init__(self) -> None:
        self._adj: dict[str, dict[str, float]] = {}
        self._info: dict[str, NodeInfo] = {}

    # construction

    def add_node(self, node_id: str, name: str = "", is_panelist: bool = False,
                 panel_label: Optional[str] = None) -> None:
        if not node_id:
            raise GraphError("node id must be a non-empty string")
        if node_id not in self._adj:
            self._adj[node_id] = {}
            self._info[node_id] = NodeInfo(name or node_id, is_panelist, panel_label)
        else:
            info = self._info[node_id]
            if name:
                info.name = name
            if is_panelist:
                info.is_panelist = True
                if panel_label is not None:
                    info.panel_label = panel_label

    def add_edge(self, u: str, v: str, weight: float = 1.0) -> None:
        if u == v:
            raise GraphError(f"self-loop rejected for node {u!r}")
        if u not in self._adj:
            raise GraphError(f"unknown node {u!r}")
        if v not in self._adj:
            raise GraphError(f"unknown node {v!r}")
        if not weight > 0:
            raise GraphError(f"edge weight must be positive, got {weight!r}")
        self._adj[u][v] = self._adj[u].get(v, 0.0) + weight
        self._adj[v][u] = self._adj[v].get(u, 0.0) + weight

    # queries

    def has_node(self, node_id: str) -> bool:
        return node_id in self._adj

    def has_edge(self, u: str, v: str) -> bool:
        return u in self._adj and v in self._adj[u]

    def nodes(self) -> list[str]:
        return sorted(self._adj)

    def info(self, node_id: str) -> NodeInfo:
        if node_id not in self._info:
            raise GraphError(f"unknown node {node_id!r}")
        return self._info[node_id]

    def neighbors(self, node_id: str) -> dict[str, float]:
        if node_id not in self._adj:
            raise GraphError(f"unknown node {node_id!r}")
        return self._adj[node_id]

    def degree(self, node_id: str) -> int:
        return len(self.neighbors(node_id))

    def weight(self, u: str, v: str) -> float:
        if not self.has_edge(u, v):
            raise GraphError(f"no edge between {u!r} and {v!r}")
        return self._adj[u][v]

    def edges(self) -> Iterator[tuple[str, str, float]]:
        """Yield each edge once as (u, v, w) with u < v, sorted."""
        for u in self.nodes():
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v, self._adj[u][v]

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    @property
    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges())

    def panelists(self) -> list[str]:
        return [v for v in self.nodes() if self._info[v].is_panelist]

    def edge_weight_histogram(self) -> dict[str, int]:
        """Counts of edges with weight exactly 1, exactly 2, and above 2."""
        hist = {"w1": 0, "w2": 0, "w_gt2": 0}
        for _, _, w in self.edges():
            if w == 1:
                hist["w1"] += 1
            elif w == 2:
                hist["w2"] += 1
            else:
                hist["w_gt2"] += 1
        return hist

    def subgraph(self, keep: Iterable[str]) -> "WeightedGraph":
        keep_set = set(keep)
        sub = WeightedGraph()
        for v in self.nodes():
            if v in keep_set:
                info = self._info[v]
                sub.add_node(v, info.name, info.is_panelist, info.panel_label)
        for u, v, w in self.edges():
            if u in keep_set and v in keep_set:
                sub.add_edge(u, v, w)
        return sub

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._adj == other._adj and self._info == other._info

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.node_count}, m={self.edge_count})"


class BipartiteGraph:
    """Weighted bipartite graph with disjoint left and right id spaces."""

    def __init__(self) -> None:
        self._left: dict[str, NodeInfo] = {}
        self._right: dict[str, NodeInfo] = {}
        self._adj: dict[str, dict[str, float]] = {}   # left id -> right id -> w
        self._radj: dict[str, dict[str, float]] = {}  # right id -> left id -> w

    def add_left(self, node_id: str, name: str = "", is_panelist: bool = False,
                 panel_label: Optional[str] = None) -> None:
        if not node_id:
            raise GraphError("node id must be a non-empty string")
        if node_id in self._right:
            raise GraphError(f"id {node_id!r} already used on the right side")
        if node_id not in self._left:
            self._left[node_id] = NodeInfo(name or node_id, is_panelist, panel_label)
            self._adj[node_id] = {}

    def add_right(self, node_id: str, name: str = "") -> None:
        if not node_id:
            raise GraphError("node id must be a non-empty string")
        if node_id in self._left:
            raise GraphError(f"id {node_id!r} already used on the left side")
        if node_id not in self._right:
            self._right[node_id] = NodeInfo(name or node_id)
            self._radj[node_id] = {}

    def add_edge(self, left_id: str, right_id: str, weight: float = 1.0) -> None:
        if left_id not in self._left:
            raise GraphError(f"unknown left node {left_id!r}")
        if right_id not in self._right:
            raise GraphError(f"unknown right node {right_id!r}")
        if not weight > 0:
            raise GraphError(f"edge weight must be positive, got {weight!r}")
        self._adj[left_id][right_id] = self._adj[left_id].get(right_id, 0.0) + weight
        self._radj[right_id][left_id] = self._radj[right_id].get(left_id, 0.0) + weight

    def left_nodes(self) -> list[str]:
        return sorted(self._left)

    def right_nodes(self) -> list[str]:
        return sorted(self._right)

    def left_info(self, node_id: str) -> NodeInfo:
        if node_id not in self._left:
            raise GraphError(f"unknown left node {node_id!r}")
        return self._left[node_id]

    def right_info(self, node_id: str) -> NodeInfo:
        if node_id not in self._right:
            raise GraphError(f"unknown right node {node_id!r}")
        return self._right[node_id]

    def right_neighbors(self, left_id: str) -> dict[str, float]:
        if left_id not in self._adj:
            raise GraphError(f"unknown left node {left_id!r}")
        return self._adj[left_id]

    def left_neighbors(self, right_id: str) -> dict[str, float]:
        if right_id not in self._radj:
            raise GraphError(f"unknown right node {right_id!r}")
        return self._radj[right_id]

    def edges(self) -> Iterator[tuple[str, str, float]]:
        """Yield (left, right, w) sorted by left id then right id."""
        for lid in self.left_nodes():
            for rid in sorted(self._adj[lid]):
                yield lid, rid, self._adj[lid][rid]

    @property
    def left_count(self) -> int:
        return len(self._left)

    @property
    def right_count(self) -> int:
        return len(self._right)

    @property
    def node_count(self) -> int:
        return len(self._left) + len(self._right)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values())

    @property
    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self._adj == other._adj and self._left == other._left
                and self._right == other._right)

    def __repr__(self) -> str:
        return (f"BipartiteGraph(left={self.left_count}, "
                f"right={self.right_count}, m={self.edge_count})")


def graph_to_dict(g: Union["WeightedGraph", "BipartiteGraph"]) -> dict:
    """JSON-ready dump: node attributes plus sorted edge triples."""
    if isinstance(g, BipartiteGraph):
        return {
            "type": "bipartite_graph",
            "left": [{"id": v, "name": g.left_info(v).name,
                      "is_panelist": g.left_info(v).is_panelist}
                     for v in g.left_nodes()],
            "right": [{"id": v, "name": g.right_info(v).name}
                      for v in g.right_nodes()],
            "edges": [[u, v, w] for u, v, w in g.edges()],
        }
    return {
        "type": "weighted_graph",
        "nodes": [{"id": v, "name": g.info(v).name,
                   "is_panelist": g.info(v).is_panelist,
                   "panel_label": g.info(v).panel_label}
                  for v in g.nodes()],
        "edges": [[u, v, w] for u, v, w in g.edges()],
    }


@dataclass
class Partition:
    """Assignment of node ids to integer group labels.

    Group 0 is reserved for "unassigned" (e.g. off-island nodes); real
    groups are numbered from 1.
    """

    assignment: dict[str, int] = field(default_factory=dict)

    def group(self, node_id: str) -> int:
        return self.assignment.get(node_id, 0)

    def groups(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for node_id in sorted(self.assignment):
            out.setdefault(self.assignment[node_id], []).append(node_id)
        return out

    def group_count(self) -> int:
        return len({g for g in self.assignment.values() if g != 0})

    def sizes(self) -> dict[int, int]:
        return {g: len(members) for g, members in self.groups().items()}
