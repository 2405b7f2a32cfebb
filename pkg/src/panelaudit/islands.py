"""Line islands: cohesive subgroups whose internal ties all beat every tie
leaving the group.

A node set S is an island when S can be connected using only edges
strictly heavier than the heaviest edge between S and the rest of the
graph. Islands are found on the merge dendrogram of a descending-weight
Kruskal pass: a cluster formed at weight beta is an island iff beta
strictly exceeds the weight of the merge that later absorbs it (which is
exactly the heaviest external edge). Maximal islands within the requested
size band are unique and pairwise disjoint, so the walk below reports a
deterministic set regardless of how equal-weight edges are ordered.

Single-vertex islands are never reported; their nodes count as off-island.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import ValidationError
from .metrics import _UnionFind
from .model import Partition, WeightedGraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IslandParams:
    min_size: int
    max_size: int

    def __post_init__(self):
        if self.min_size < 1:
            raise ValidationError(f"min_size must be >= 1, got {self.min_size}")
        if self.max_size < self.min_size:
            raise ValidationError(f"max_size {self.max_size} below min_size "
                                  f"{self.min_size}")


@dataclass
class Island:
    index: int
    members: tuple[str, ...]      # sorted ids
    form_weight: float            # weakest internal tie needed to hold it together
    external_max: float           # heaviest tie leaving it (0 for a whole component)
    strength: float = 0.0         # form_weight - external_max, set on init

    def __post_init__(self):
        self.strength = self.form_weight - self.external_max

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class IslandResult:
    islands: list[Island]
    off_island: list[str]         # sorted ids
    params: IslandParams

    def partition(self) -> Partition:
        assignment = {v: 0 for v in self.off_island}
        for isl in self.islands:
            for v in isl.members:
                assignment[v] = isl.index
        return Partition(assignment)

    def island_of(self, node_id: str) -> int:
        for isl in self.islands:
            if node_id in isl.members:
                return isl.index
        return 0


class _Cluster:
    __slots__ = ("form", "size", "children", "leaf_id")

    def __init__(self, form: float, size: int, children: list, leaf_id: Optional[str]):
        self.form = form
        self.size = size
        self.children = children
        self.leaf_id = leaf_id

    def members(self) -> list[str]:
        if self.leaf_id is not None:
            return [self.leaf_id]
        out: list[str] = []
        stack = [self]
        while stack:
            node = stack.pop()
            if node.leaf_id is not None:
                out.append(node.leaf_id)
            else:
                stack.extend(node.children)
        return out


def default_journal_max_size(n_members: int) -> int:
    """Island size cap used on journal projections: three fifths of the
    members present, rounded down (at least 1)."""
    return max(1, 3 * n_members // 5)


def line_islands(g: WeightedGraph, params: IslandParams) -> IslandResult:
    nodes = g.nodes()
    max_size = params.max_size
    if max_size > len(nodes):
        # the shipped caps are fixed numbers; clamp rather than fail on
        # graphs smaller than the cap
        max_size = max(len(nodes), params.min_size)

    uf = _UnionFind(nodes)
    cluster: dict[str, _Cluster] = {
        v: _Cluster(math.inf, 1, [], v) for v in nodes}
    edges = sorted(g.edges(), key=lambda e: (-e[2], e[0], e[1]))
    for u, v, w in edges:
        ru, rv = uf.find(u), uf.find(v)
        if ru == rv:
            continue
        merged = _Cluster(w, cluster[ru].size + cluster[rv].size,
                          [cluster[ru], cluster[rv]], None)
        del cluster[ru], cluster[rv]
        uf.union(ru, rv)
        cluster[uf.find(ru)] = merged

    found: list[tuple[list[str], float, float]] = []

    def walk(node: _Cluster, eps: float) -> None:
        if node.size < params.min_size:
            return
        if node.size >= 2 and node.size <= max_size and node.form > eps:
            found.append((sorted(node.members()), node.form, eps))
            return
        for child in node.children:
            walk(child, node.form)

    for root in cluster.values():
        walk(root, 0.0)

    found.sort(key=lambda item: (-(item[1] - item[2]), item[0][0]))
    islands = [Island(i, tuple(members), beta, eps)
               for i, (members, beta, eps) in enumerate(found, start=1)]
    covered = {v for isl in islands for v in isl.members}
    off = sorted(v for v in nodes if v not in covered)
    return IslandResult(islands, off, params)


def off_island_share(result: IslandResult, panelist_ids: Iterable[str]) -> float:
    """Percentage of the given panelists that ended up outside every island."""
    panelists = set(panelist_ids)
    if not panelists:
        raise ValidationError("off-island share needs at least one panelist")
    off = panelists.intersection(result.off_island)
    return 100.0 * len(off) / len(panelists)


@dataclass
class ImportanceSelection:
    """Top-k nodes by a centrality score, ties broken by id."""

    k_requested: int
    ranked: list[tuple[str, float]] = field(default_factory=list)

    def selected(self) -> set[str]:
        return {node for node, _ in self.ranked}


def important_vertices(scores: dict[str, float], k: int) -> ImportanceSelection:
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    if k > len(scores):
        log.warning("k=%d exceeds the %d scored nodes, selecting all", k, len(scores))
    ordered = sorted(scores, key=lambda v: (-scores[v], v))[:k]
    return ImportanceSelection(k, [(v, scores[v]) for v in ordered])


@dataclass
class CrosstabRow:
    label: str
    node_count: int
    important_count: int
    important_share_pct: float   # of all selected important vertices


def importance_island_crosstab(result: IslandResult,
                               selection: ImportanceSelection) -> list[CrosstabRow]:
    """One row per island plus an off-island row: how the important
    vertices spread across the islands."""
    total = len(selection.ranked)
    chosen = selection.selected()
    rows = []
    for isl in result.islands:
        hits = sum(1 for v in isl.members if v in chosen)
        rows.append(CrosstabRow(f"island {isl.index}", isl.size, hits,
                                (100.0 * hits / total) if total else 0.0))
    off_hits = sum(1 for v in result.off_island if v in chosen)
    rows.append(CrosstabRow("off-island", len(result.off_island), off_hits,
                            (100.0 * off_hits / total) if total else 0.0))
    return rows
