"""Network metrics: degree tables, densities, components, centralities.

Everything here is deterministic; ties are broken by node id so repeated
runs produce identical tables.
"""

from __future__ import annotations

import csv
import heapq
import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import ConvergenceError, ValidationError
from .model import BipartiteGraph, Partition, WeightedGraph


@dataclass
class DegreeFrequencyTable:
    """Rows of (degree, frequency) sorted by degree."""

    rows: list[tuple[int, int]]

    @property
    def total(self) -> int:
        return sum(freq for _, freq in self.rows)

    def percents(self) -> list[tuple[int, int, float]]:
        n = self.total
        return [(d, f, 100.0 * f / n) for d, f in self.rows]

    def expand(self) -> list[int]:
        """The degree sample the table summarizes, one entry per node."""
        out: list[int] = []
        for d, f in self.rows:
            out.extend([d] * f)
        return out

    @classmethod
    def from_counts(cls, counts: dict[int, int]) -> "DegreeFrequencyTable":
        rows = []
        for d in sorted(counts):
            f = counts[d]
            if d < 0 or f < 0:
                raise ValidationError(f"bad degree table entry ({d}, {f})")
            if f:
                rows.append((d, f))
        return cls(rows)

    @classmethod
    def from_csv(cls, path) -> "DegreeFrequencyTable":
        counts: dict[int, int] = {}
        with Path(path).open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != ["degree", "frequency"]:
                raise ValidationError(f"{path}: header must be degree,frequency")
            for row in reader:
                d, f = int(row["degree"]), int(row["frequency"])
                if d in counts:
                    raise ValidationError(f"{path}: duplicate degree {d}")
                counts[d] = f
        return cls.from_counts(counts)

    def to_csv(self, path) -> None:
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["degree", "frequency"])
            for d, f in self.rows:
                writer.writerow([d, f])


def degree_frequency(g: WeightedGraph) -> DegreeFrequencyTable:
    counts: dict[int, int] = {}
    for v in g.nodes():
        d = g.degree(v)
        counts[d] = counts.get(d, 0) + 1
    return DegreeFrequencyTable.from_counts(counts)


def density_counts(n: int, m: int, convention: str = "loops_allowed") -> float:
    """Edge density from node and edge counts.

    loops_allowed: 2m / n^2 (the convention most published panel tables
    use); simple: 2m / (n (n - 1)).
    """
    if n <= 0:
        raise ValidationError("density needs at least one node")
    if convention == "loops_allowed":
        return 2.0 * m / (n * n)
    if convention == "simple":
        if n == 1:
            raise ValidationError("simple density undefined for a single node")
        return 2.0 * m / (n * (n - 1))
    raise ValidationError(f"unknown density convention {convention!r}")


def density(g: WeightedGraph, convention: str = "loops_allowed") -> float:
    return density_counts(g.node_count, g.edge_count, convention)


def bipartite_density_counts(m: int, n_left: int, n_right: int) -> float:
    if n_left <= 0 or n_right <= 0:
        raise ValidationError("bipartite density needs nodes on both sides")
    return m / (n_left * n_right)


def bipartite_density(b: BipartiteGraph) -> float:
    return bipartite_density_counts(b.edge_count, b.left_count, b.right_count)


def average_degree_counts(n: int, m: int) -> float:
    if n <= 0:
        raise ValidationError("average degree needs at least one node")
    return 2.0 * m / n


def average_degree(g: WeightedGraph) -> float:
    return average_degree_counts(g.node_count, g.edge_count)


class _UnionFind:
    """Disjoint sets over a fixed universe, path compression + union by size."""

    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass
class ComponentSummary:
    index: int
    size: int
    panelist_count: int
    node_share_pct: float
    panelist_share_pct: float


def connected_components(g: WeightedGraph) -> tuple[Partition, list[ComponentSummary]]:
    """Partition into connected components, numbered 1..k by decreasing
    size (ties by smallest member id)."""
    uf = _UnionFind(g.nodes())
    for u, v, _ in g.edges():
        uf.union(u, v)
    groups: dict[str, list[str]] = {}
    for v in g.nodes():
        groups.setdefault(uf.find(v), []).append(v)
    comps = sorted(groups.values(), key=lambda ns: (-len(ns), min(ns)))

    n = g.node_count
    total_panelists = len(g.panelists())
    assignment: dict[str, int] = {}
    summaries: list[ComponentSummary] = []
    for idx, nodes in enumerate(comps, start=1):
        for v in nodes:
            assignment[v] = idx
        pc = sum(1 for v in nodes if g.info(v).is_panelist)
        summaries.append(ComponentSummary(
            index=idx,
            size=len(nodes),
            panelist_count=pc,
            node_share_pct=100.0 * len(nodes) / n,
            panelist_share_pct=(100.0 * pc / total_panelists) if total_panelists else 0.0,
        ))
    return Partition(assignment), summaries


def fragmentation_ratio_counts(component_count: int, official_size: int) -> float:
    """Components per officially appointed member; near 1 means the panel's
    network is shattered into as many pieces as there are seats."""
    if official_size <= 0:
        raise ValidationError("official size must be positive")
    if component_count < 0:
        raise ValidationError("component count must be >= 0")
    return component_count / official_size


def fragmentation_ratio(g: WeightedGraph, official_size: int) -> float:
    _, summaries = connected_components(g)
    return fragmentation_ratio_counts(len(summaries), official_size)


@dataclass
class MetricsSummary:
    """Headline numbers for one network, with node counts split by role.

    Published panel tables are inconsistent about whether the node base
    includes the panelists, so both bases are reported: density and
    average_degree use every node, the *_others_basis variants use only
    the non-panelists.
    """

    n_total: int
    n_panelists: int
    n_others: int
    edge_count: int
    total_weight: float
    min_weight: Optional[float]
    max_weight: Optional[float]
    weight_histogram: dict[str, int]
    density: Optional[float]
    average_degree: Optional[float]
    density_others_basis: Optional[float]
    average_degree_others_basis: Optional[float]
    component_count: int
    largest_component_size: int
    largest_component_panelists: int
    fragmentation_ratio: Optional[float]
    density_convention: str


def summarize_graph(g: WeightedGraph, official_size: Optional[int] = None,
                    convention: str = "loops_allowed") -> MetricsSummary:
    n = g.node_count
    m = g.edge_count
    n_panelists = len(g.panelists())
    n_others = n - n_panelists
    weights = [w for _, _, w in g.edges()]
    _, comps = connected_components(g)
    return MetricsSummary(
        n_total=n,
        n_panelists=n_panelists,
        n_others=n_others,
        edge_count=m,
        total_weight=sum(weights),
        min_weight=min(weights) if weights else None,
        max_weight=max(weights) if weights else None,
        weight_histogram=g.edge_weight_histogram(),
        density=density_counts(n, m, convention) if n else None,
        average_degree=average_degree_counts(n, m) if n else None,
        density_others_basis=density_counts(n_others, m, convention) if n_others else None,
        average_degree_others_basis=average_degree_counts(n_others, m) if n_others else None,
        component_count=len(comps),
        largest_component_size=comps[0].size if comps else 0,
        largest_component_panelists=comps[0].panelist_count if comps else 0,
        fragmentation_ratio=(fragmentation_ratio_counts(len(comps), official_size)
                             if official_size else None),
        density_convention=convention,
    )


def betweenness(g: WeightedGraph, normalized: bool = True,
                weighted_paths: bool = False) -> dict[str, float]:
    """Betweenness centrality (Brandes accumulation).

    By default shortest paths are counted on the unweighted skeleton.
    With weighted_paths=True the edge length is 1/weight, so heavier ties
    are shorter; exact float comparison decides path ties, which is fine
    for the small weight sets seen here.
    Normalization divides by (n-1)(n-2)/2.
    """
    nodes = g.nodes()
    bc = dict.fromkeys(nodes, 0.0)
    for s in nodes:
        sigma = dict.fromkeys(nodes, 0)
        sigma[s] = 1
        preds: dict[str, list[str]] = {v: [] for v in nodes}
        order: list[str] = []
        if not weighted_paths:
            dist = dict.fromkeys(nodes, -1)
            dist[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                order.append(v)
                for w in sorted(g.neighbors(v)):
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        queue.append(w)
                    if dist[w] == dist[v] + 1:
                        sigma[w] += sigma[v]
                        preds[w].append(v)
        else:
            dist = dict.fromkeys(nodes, math.inf)
            dist[s] = 0.0
            done: set[str] = set()
            heap: list[tuple[float, str]] = [(0.0, s)]
            while heap:
                d, v = heapq.heappop(heap)
                if v in done:
                    continue
                done.add(v)
                order.append(v)
                for w, wt in sorted(g.neighbors(v).items()):
                    nd = d + 1.0 / wt
                    if nd < dist[w]:
                        dist[w] = nd
                        sigma[w] = sigma[v]
                        preds[w] = [v]
                        heapq.heappush(heap, (nd, w))
                    elif nd == dist[w] and v not in preds[w]:
                        sigma[w] += sigma[v]
                        preds[w].append(v)
        delta = dict.fromkeys(nodes, 0.0)
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]

    n = len(nodes)
    scale = 0.5  # each unordered pair visited from both endpoints
    if normalized and n > 2:
        scale /= (n - 1) * (n - 2) / 2.0
    return {v: bc[v] * scale for v in nodes}


@dataclass
class CentralityRow:
    node_id: str
    name: str
    value: float
    rank: int
    is_panelist: bool


def ranked_centrality_table(g: WeightedGraph, values: dict[str, float]) -> list[CentralityRow]:
    """Rows sorted by value descending; equal values keep id order and get
    consecutive ranks."""
    ordered = sorted(values, key=lambda v: (-values[v], v))
    rows = []
    for rank, v in enumerate(ordered, start=1):
        info = g.info(v)
        rows.append(CentralityRow(v, info.name, values[v], rank, info.is_panelist))
    return rows


def write_centrality_csv(rows: list[CentralityRow], path, decimals: int = 3) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["name", "value", "rank", "is_panelist"])
        for r in rows:
            writer.writerow([r.name, f"{r.value:.{decimals}f}", r.rank,
                             "yes" if r.is_panelist else "no"])


def _adjacency(g: Union[WeightedGraph, BipartiteGraph],
               weighted: bool) -> tuple[list[str], np.ndarray]:
    if isinstance(g, BipartiteGraph):
        nodes = g.left_nodes() + g.right_nodes()
        index = {v: i for i, v in enumerate(nodes)}
        a = np.zeros((len(nodes), len(nodes)))
        for lid, rid, w in g.edges():
            val = w if weighted else 1.0
            a[index[lid], index[rid]] = val
            a[index[rid], index[lid]] = val
        return nodes, a
    nodes = g.nodes()
    index = {v: i for i, v in enumerate(nodes)}
    a = np.zeros((len(nodes), len(nodes)))
    for u, v, w in g.edges():
        val = w if weighted else 1.0
        a[index[u], index[v]] = val
        a[index[v], index[u]] = val
    return nodes, a


def eigenvector_centrality(g: Union[WeightedGraph, BipartiteGraph],
                           weighted: bool = True, tol: float = 1e-10,
                           max_iter: int = 10000) -> dict[str, float]:
    """Dominant-eigenvector scores by power iteration.

    Iterates y = A x + x; the identity shift keeps the iteration from
    oscillating on bipartite adjacency (whose spectrum is symmetric) and
    leaves the eigenvectors unchanged. Scores are Euclidean-normalized and
    non-negative. On a disconnected graph only the component carrying the
    dominant eigenvalue keeps mass; the rest decay to zero. A graph with
    no edges returns the uniform vector (every node is 0-regular).

    Raises ConvergenceError (carrying the iteration count) if the
    successive-iterate max difference is still >= tol after max_iter steps.
    """
    nodes, a = _adjacency(g, weighted)
    n = len(nodes)
    if n == 0:
        raise ValidationError("eigenvector centrality needs at least one node")
    x = np.full(n, 1.0 / math.sqrt(n))
    for _ in range(max_iter):
        y = a @ x + x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            raise ValidationError("iteration collapsed to the zero vector")
        y /= norm
        if float(np.max(np.abs(y - x))) < tol:
            return {v: float(y[i]) for i, v in enumerate(nodes)}
        x = y
    raise ConvergenceError(
        f"eigenvector iteration did not converge in {max_iter} iterations",
        iterations=max_iter)
