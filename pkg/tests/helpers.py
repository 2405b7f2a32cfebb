"""Shared generators and brute-force oracles for the test suite.

The oracles deliberately avoid the implementation's data structures and
algorithms: components via BFS, betweenness via full shortest-path
enumeration, islands via exhaustive subset search, projections via set
intersections, the dominant eigenvector via a dense symmetric
eigendecomposition.
"""

import csv
import json
from collections import deque
from itertools import combinations
from pathlib import Path

import numpy as np

from panelaudit.model import BipartiteGraph, WeightedGraph

DATA = __file__.rsplit("/", 1)[0] + "/data"


def write_roster(path, label, year, official, members):
    payload = {"panel_label": label, "appointment_year": year,
               "official_size": official,
               "members": [{"id": m, "name": m.replace("_", " ").title()}
                           for m in members]}
    Path(path).write_text(json.dumps(payload, indent=1), encoding="utf-8")
    return path


def write_pubs(path, rows):
    """rows: (paper_id, year, [authors], journal_id or None)"""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["paper_id", "year", "authors", "journal_id"])
        for pid, year, authors, jid in rows:
            w.writerow([pid, year, ";".join(authors), jid or ""])
    return path


def write_affs(path, rows):
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["scholar_id", "institution_id", "category"])
        w.writerows(rows)
    return path


def make_workspace(base: Path) -> dict:
    """Two-panel dataset with journals, affiliations, a candidate pool and
    an analyze config; returns the paths keyed by name."""
    base = Path(base)
    base.mkdir(parents=True, exist_ok=True)
    paths = {}

    paths["roster_a"] = write_roster(
        base / "alpha_roster.json", "alpha", 2010, 5,
        ["am1", "am2", "am3", "am4"])
    pubs_a = [
        ("a1", 2001, ["am1", "ax1"], "j_core"),
        ("a2", 2003, ["am1", "ax1"], "j_core"),
        ("a3", 2004, ["am1", "ax1", "ax2"], "j_core"),
        ("a4", 2005, ["am2", "ax1"], "j_core"),
        ("a5", 2006, ["am2", "ax3"], "j_field"),
        ("a6", 2007, ["am1", "am2"], "j_field"),
        ("a7", 2008, ["am3", "ax4"], "j_niche"),
        ("a8", 2009, ["am3"], None),
        ("a9", 1980, ["am4", "ax9"], "j_old"),      # outside the window
        ("a10", 2010, ["ax8", "ax9"], "j_field"),   # no member
    ]
    paths["pubs_a"] = write_pubs(base / "alpha_pubs.csv", pubs_a)
    paths["affs_a"] = write_affs(base / "alpha_affs.csv", [
        ("am1", "uni_a", "university"),
        ("am2", "uni_a", "university"),
        ("am1", "inst_x", "research_centre"),
        ("am2", "inst_x", "research_centre"),
        ("am3", "uni_b", "university"),
        ("ax1", "uni_a", "university"),
        ("ax1", "inst_x", "research_centre"),
    ])

    paths["roster_b"] = write_roster(
        base / "lottery_roster.json", "lottery", 2019, 3,
        ["bm1", "bm2", "bm3"])
    pubs_b = [
        ("b1", 2015, ["bm1", "bx1"], "j_core"),
        ("b2", 2016, ["bm2", "bx2"], "j_field"),
        ("b3", 2017, ["bm3", "bx3"], "j_niche"),
        ("b4", 2018, ["bm1", "bm2"], "j_field"),
    ]
    paths["pubs_b"] = write_pubs(base / "lottery_pubs.csv", pubs_b)
    paths["affs_b"] = write_affs(base / "lottery_affs.csv", [
        ("bm1", "uni_c", "university"),
        ("bm2", "uni_d", "university"),
        ("bm3", "uni_d", "graduation"),
    ])

    pool = {"panel_label": "pool-2010",
            "members": [{"id": f"cand{i:02d}"} for i in range(1, 10)]
            + [{"id": m} for m in ("am1", "am2", "am3")]}
    paths["pool"] = base / "pool.json"
    paths["pool"].write_text(json.dumps(pool, indent=1), encoding="utf-8")

    config = f"""[analysis]
control = "lottery"
importance_k = 3
window_years = 25

[[panel]]
roster = "alpha_roster.json"
publications = "alpha_pubs.csv"
affiliations = "alpha_affs.csv"

[[panel]]
roster = "lottery_roster.json"
publications = "lottery_pubs.csv"
affiliations = "lottery_affs.csv"
"""
    paths["config"] = base / "audit.toml"
    paths["config"].write_text(config, encoding="utf-8")
    return paths


def random_graph(rng, n_max=12, weight_max=5, n_min=1):
    n = int(rng.integers(n_min, n_max + 1))
    ids = [f"v{i:02d}" for i in range(n)]
    g = WeightedGraph()
    for v in ids:
        g.add_node(v)
    if n >= 2:
        pairs = list(combinations(range(n), 2))
        rng.shuffle(pairs)
        m = int(rng.integers(0, len(pairs) + 1))
        for u, v in pairs[:m]:
            g.add_edge(ids[u], ids[v], float(rng.integers(1, weight_max + 1)))
    return g


def random_connected_graph(rng, n_max=12, weight_max=5):
    n = int(rng.integers(2, n_max + 1))
    ids = [f"v{i:02d}" for i in range(n)]
    g = WeightedGraph()
    for v in ids:
        g.add_node(v)
    order = list(rng.permutation(n))
    for i in range(1, n):  # random spanning tree first
        j = int(rng.integers(i))
        g.add_edge(ids[order[i]], ids[order[j]], float(rng.integers(1, weight_max + 1)))
    for _ in range(int(rng.integers(0, n))):
        u, v = int(rng.integers(n)), int(rng.integers(n))
        if u != v:
            g.add_edge(ids[u], ids[v], float(rng.integers(1, weight_max + 1)))
    return g


def random_bipartite(rng, left_max=10, right_max=10, p=0.3, weight_max=3):
    nl = int(rng.integers(1, left_max + 1))
    nr = int(rng.integers(1, right_max + 1))
    b = BipartiteGraph()
    for i in range(nl):
        b.add_left(f"l{i:02d}")
    for j in range(nr):
        b.add_right(f"r{j:02d}")
    for i in range(nl):
        for j in range(nr):
            if rng.random() < p:
                b.add_edge(f"l{i:02d}", f"r{j:02d}", float(rng.integers(1, weight_max + 1)))
    return b


def bfs_components(g: WeightedGraph) -> set[frozenset]:
    seen: set[str] = set()
    comps = []
    for start in g.nodes():
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return set(comps)


def brute_betweenness(g: WeightedGraph) -> dict[str, float]:
    """Normalized betweenness by enumerating every shortest path."""
    nodes = g.nodes()
    n = len(nodes)
    bc = {v: 0.0 for v in nodes}
    for s, t in combinations(nodes, 2):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if t not in dist:
            continue
        paths: list[list[str]] = []

        def walk(path):
            x = path[-1]
            if x == t:
                paths.append(list(path))
                return
            for y in g.neighbors(x):
                if dist.get(y) == dist[x] + 1 and dist[y] <= dist[t]:
                    path.append(y)
                    walk(path)
                    path.pop()

        walk([s])
        for p in paths:
            for v in p[1:-1]:
                bc[v] += 1.0 / len(paths)
    if n > 2:
        scale = (n - 1) * (n - 2) / 2.0
        bc = {v: x / scale for v, x in bc.items()}
    return bc


def brute_islands(g: WeightedGraph, min_size: int, max_size: int) -> set[frozenset]:
    """Maximal multi-node subsets connected by edges strictly heavier than
    every edge leaving them, within the size band."""
    nodes = g.nodes()
    n = len(nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    adj = [[0.0] * n for _ in range(n)]
    for u, v, w in g.edges():
        adj[idx[u]][idx[v]] = adj[idx[v]][idx[u]] = w
    cand = []
    for mask in range(1, 1 << n):
        size = bin(mask).count("1")
        if size < 2 or not min_size <= size <= max_size:
            continue
        inside = [i for i in range(n) if mask >> i & 1]
        eps = 0.0
        for i in inside:
            for j in range(n):
                if not mask >> j & 1 and adj[i][j] > eps:
                    eps = adj[i][j]
        seen = {inside[0]}
        stack = [inside[0]]
        while stack:
            x = stack.pop()
            for y in inside:
                if y not in seen and adj[x][y] > eps:
                    seen.add(y)
                    stack.append(y)
        if len(seen) == size:
            cand.append(frozenset(nodes[i] for i in inside))
    return {c for c in cand if not any(c < d for d in cand)}


def eigh_centrality(g) -> dict[str, float]:
    """Dominant eigenvector of the (symmetric) adjacency via numpy.eigh."""
    if isinstance(g, BipartiteGraph):
        nodes = g.left_nodes() + g.right_nodes()
    else:
        nodes = g.nodes()
    index = {v: i for i, v in enumerate(nodes)}
    a = np.zeros((len(nodes), len(nodes)))
    for u, v, w in g.edges():
        a[index[u], index[v]] = a[index[v], index[u]] = w
    _, vecs = np.linalg.eigh(a)
    vec = vecs[:, -1]
    if vec.sum() < 0:
        vec = -vec
    return {v: float(abs(vec[i])) for i, v in enumerate(nodes)}
