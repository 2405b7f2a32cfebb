"""Pajek .net / .clu reading and writing.

Dialect notes (see docs/formats.md for the full description):

* one-mode header ``*Vertices n``, two-mode ``*Vertices n n_left``;
* vertex lines ``index "label"`` (anything after the label, such as
  coordinates, is ignored on read); missing vertex lines default the
  label to the index;
* ``*Edges`` lines ``u v [w]`` with default weight 1; repeated pairs
  aggregate their weights;
* ``%`` starts a comment, blank lines are skipped;
* ``*Arcs`` and the list/matrix sections are rejected: the audit only
  deals in undirected weighted graphs.

Writers emit vertices sorted by node id (left side first for two-mode
graphs), LF line endings and UTF-8, so write -> read -> write is
byte-stable.
"""

from __future__ import annotations

import shlex
from pathlib import Path
from typing import Union

from .errors import ValidationError
from .model import BipartiteGraph, Partition, WeightedGraph

Graph = Union[WeightedGraph, BipartiteGraph]


class PajekError(ValidationError):
    pass


def _fmt_weight(w: float) -> str:
    if float(w).is_integer():
        return str(int(w))
    return repr(float(w))


def _check_label(label: str) -> str:
    if '"' in label or "\n" in label or "\r" in label:
        raise PajekError(f"label {label!r} cannot be written to a .net file")
    return label


def vertex_order(g: Graph) -> list[str]:
    """Node ids in the order the writer numbers them (1-based)."""
    if isinstance(g, BipartiteGraph):
        return g.left_nodes() + g.right_nodes()
    return g.nodes()


def net_text(g: Graph) -> str:
    order = vertex_order(g)
    index = {v: i for i, v in enumerate(order, start=1)}
    lines = []
    if isinstance(g, BipartiteGraph):
        lines.append(f"*Vertices {len(order)} {g.left_count}")
    else:
        lines.append(f"*Vertices {len(order)}")
    for i, v in enumerate(order, start=1):
        lines.append(f'{i} "{_check_label(v)}"')
    lines.append("*Edges")
    for u, v, w in g.edges():
        lines.append(f"{index[u]} {index[v]} {_fmt_weight(w)}")
    return "\n".join(lines) + "\n"


def write_net(g: Graph, path) -> None:
    Path(path).write_text(net_text(g), encoding="utf-8", newline="\n")


_REJECTED = ("*arcs", "*arcslist", "*edgeslist", "*matrix")


def parse_net(text: str, source: str = "<string>") -> Graph:
    n_total = -1
    n_left = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, int, float]] = []
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("*"):
            parts = low.split()
            head = parts[0]
            if head == "*vertices":
                if n_total >= 0:
                    raise PajekError(f"{source}:{lineno}: repeated *Vertices")
                try:
                    n_total = int(parts[1])
                    if len(parts) > 2:
                        n_left = int(parts[2])
                except (IndexError, ValueError):
                    raise PajekError(f"{source}:{lineno}: bad *Vertices header "
                                     f"{raw.strip()!r}") from None
                if n_total < 0 or (n_left is not None and not 0 <= n_left <= n_total):
                    raise PajekError(f"{source}:{lineno}: inconsistent vertex counts")
                section = "vertices"
            elif head == "*edges":
                if n_total < 0:
                    raise PajekError(f"{source}:{lineno}: *Edges before *Vertices")
                section = "edges"
            elif head in _REJECTED:
                if head == "*arcs":
                    raise PajekError(f"{source}:{lineno}: *Arcs sections describe "
                                     "directed networks, which are not supported; "
                                     "export the data as undirected *Edges")
                raise PajekError(f"{source}:{lineno}: unsupported section {head}")
            else:
                raise PajekError(f"{source}:{lineno}: unknown section {head}")
            continue
        if section == "vertices":
            try:
                tokens = shlex.split(line)
            except ValueError as exc:
                raise PajekError(f"{source}:{lineno}: {exc}") from None
            try:
                idx = int(tokens[0])
            except (IndexError, ValueError):
                raise PajekError(f"{source}:{lineno}: vertex line must start "
                                 "with an integer index") from None
            if not 1 <= idx <= n_total:
                raise PajekError(f"{source}:{lineno}: vertex index {idx} outside "
                                 f"1..{n_total}")
            if idx in labels:
                raise PajekError(f"{source}:{lineno}: duplicate vertex index {idx}")
            labels[idx] = tokens[1] if len(tokens) > 1 else str(idx)
        elif section == "edges":
            tokens = line.split()
            if len(tokens) < 2:
                raise PajekError(f"{source}:{lineno}: edge line needs two endpoints")
            try:
                u, v = int(tokens[0]), int(tokens[1])
                w = float(tokens[2]) if len(tokens) > 2 else 1.0
            except ValueError:
                raise PajekError(f"{source}:{lineno}: bad edge line "
                                 f"{raw.strip()!r}") from None
            for e in (u, v):
                if not 1 <= e <= n_total:
                    raise PajekError(f"{source}:{lineno}: vertex index {e} outside "
                                     f"1..{n_total}")
            if w <= 0:
                raise PajekError(f"{source}:{lineno}: edge weight must be positive")
            edges.append((u, v, w))
        else:
            raise PajekError(f"{source}:{lineno}: data line outside any section")

    if n_total < 0:
        raise PajekError(f"{source}: no *Vertices section")
    for idx in range(1, n_total + 1):
        labels.setdefault(idx, str(idx))
    if len(set(labels.values())) != n_total:
        raise PajekError(f"{source}: vertex labels are not unique")

    if n_left is None:
        g = WeightedGraph()
        for idx in range(1, n_total + 1):
            g.add_node(labels[idx])
        for u, v, w in edges:
            if u == v:
                raise PajekError(f"{source}: self-loop on vertex {u}")
            g.add_edge(labels[u], labels[v], w)
        return g

    b = BipartiteGraph()
    for idx in range(1, n_left + 1):
        b.add_left(labels[idx])
    for idx in range(n_left + 1, n_total + 1):
        b.add_right(labels[idx])
    for u, v, w in edges:
        u_left, v_left = u <= n_left, v <= n_left
        if u_left == v_left:
            raise PajekError(f"{source}: edge {u}-{v} stays on one side of a "
                             "two-mode network")
        if not u_left:
            u, v = v, u
        b.add_edge(labels[u], labels[v], w)
    return b


def read_net(path) -> Graph:
    path = Path(path)
    return parse_net(path.read_text(encoding="utf-8"), source=str(path))


def clu_text(g: Graph, partition: Partition) -> str:
    lines = [f"*Vertices {len(vertex_order(g))}"]
    for v in vertex_order(g):
        lines.append(str(partition.group(v)))
    return "\n".join(lines) + "\n"


def write_clu(g: Graph, partition: Partition, path) -> None:
    Path(path).write_text(clu_text(g, partition), encoding="utf-8", newline="\n")


def read_clu(path) -> list[int]:
    path = Path(path)
    values: list[int] = []
    n = -1
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("*vertices"):
            try:
                n = int(line.split()[1])
            except (IndexError, ValueError):
                raise PajekError(f"{path}:{lineno}: bad *Vertices header") from None
            continue
        if n < 0:
            raise PajekError(f"{path}:{lineno}: value before *Vertices")
        try:
            values.append(int(line))
        except ValueError:
            raise PajekError(f"{path}:{lineno}: expected an integer") from None
    if n != len(values):
        raise PajekError(f"{path}: header claims {n} values, found {len(values)}")
    return values
