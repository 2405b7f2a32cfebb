"""Construction of the three network families from input records.

All builders expect publications already restricted to the audit window
(see ingest.filter_window); they never look at years themselves.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .errors import ValidationError
from .ingest import AffiliationRecord, PanelRoster, PublicationRecord, Scholar
from .metrics import betweenness
from .model import BipartiteGraph, WeightedGraph

log = logging.getLogger(__name__)

# normalized betweenness above which a non-member co-author is pulled into
# the affinity analysis
CENTRAL_COAUTHOR_THRESHOLD = 0.002


@dataclass
class CoauthorshipBuild:
    graph: WeightedGraph
    members_in_graph: list[str]
    members_dropped: list[str]     # roster members with no windowed papers
    papers_used: int


def build_coauthorship(roster: PanelRoster,
                       pubs: Sequence[PublicationRecord]) -> CoauthorshipBuild:
    """Merge the members' ego networks.

    A paper counts when at least one roster member signs it; every pair of
    its authors then gains one unit of tie weight. Members without any
    qualifying paper stay out of the graph (they are reported as dropped,
    and still count in the official panel size).
    """
    member_names = {m.id: m.name for m in roster.members}
    g = WeightedGraph()
    present: set[str] = set()
    papers = 0
    for pub in pubs:
        hit = [a for a in pub.authors if a in member_names]
        if not hit:
            continue
        papers += 1
        for a in pub.authors:
            if a in member_names:
                g.add_node(a, member_names[a], is_panelist=True,
                           panel_label=roster.panel_label)
                present.add(a)
            else:
                g.add_node(a, a)
        for u, v in combinations(pub.authors, 2):
            g.add_edge(u, v, 1.0)
    dropped = sorted(set(member_names) - present)
    if dropped:
        log.info("%s: %d members have no windowed papers", roster.panel_label,
                 len(dropped))
    return CoauthorshipBuild(g, sorted(present), dropped, papers)


@dataclass
class JournalBuild:
    graph: BipartiteGraph          # left: members, right: journals
    members_dropped: list[str]     # members with no windowed journal paper
    skipped_no_journal: int        # member papers without a journal id


def build_journal_bipartite(roster: PanelRoster,
                            pubs: Sequence[PublicationRecord]) -> JournalBuild:
    """Member-journal incidence; weight = member's papers in the journal."""
    member_names = {m.id: m.name for m in roster.members}
    b = BipartiteGraph()
    present: set[str] = set()
    skipped = 0
    for pub in pubs:
        hit = [a for a in pub.authors if a in member_names]
        if not hit:
            continue
        if pub.journal_id is None:
            skipped += 1
            continue
        b.add_right(pub.journal_id)
        for a in hit:
            b.add_left(a, member_names[a], is_panelist=True,
                       panel_label=roster.panel_label)
            present.add(a)
            b.add_edge(a, pub.journal_id, 1.0)
    dropped = sorted(set(member_names) - present)
    return JournalBuild(b, dropped, skipped)


def project_shared_neighbors(b: BipartiteGraph, side: str = "left") -> WeightedGraph:
    """One-mode projection; edge weight = number of distinct shared
    neighbors on the other side (not the incidence weights)."""
    if side not in ("left", "right"):
        raise ValidationError(f"side must be 'left' or 'right', got {side!r}")
    g = WeightedGraph()
    if side == "left":
        own = b.left_nodes()
        for v in own:
            info = b.left_info(v)
            g.add_node(v, info.name, info.is_panelist, info.panel_label)
        other = b.right_nodes()
        neighbors_of = b.left_neighbors
    else:
        own = b.right_nodes()
        for v in own:
            info = b.right_info(v)
            g.add_node(v, info.name)
        other = b.left_nodes()
        neighbors_of = b.right_neighbors
    for hub in other:
        touched = sorted(neighbors_of(hub))
        for u, v in combinations(touched, 2):
            g.add_edge(u, v, 1.0)
    return g


def select_central_coauthors(g: WeightedGraph,
                             threshold: float = CENTRAL_COAUTHOR_THRESHOLD,
                             scores: Optional[dict[str, float]] = None) -> list[str]:
    """Non-member co-authors whose normalized betweenness strictly exceeds
    the threshold, strongest first (ties by id).

    Pass precomputed scores to avoid running Brandes twice.
    """
    if threshold < 0:
        raise ValidationError(f"threshold must be >= 0, got {threshold}")
    if scores is None:
        scores = betweenness(g, normalized=True)
    picked = [v for v in scores
              if not g.info(v).is_panelist and scores[v] > threshold]
    return sorted(picked, key=lambda v: (-scores[v], v))


@dataclass
class AffinityBuild:
    graph: BipartiteGraph          # left: scholars, right: institutions
    member_ids: list[str]          # members present in the graph
    coauthor_ids: list[str]        # selected co-authors present in the graph
    scholars_without_records: list[str] = field(default_factory=list)


def build_affinity_bipartite(roster: PanelRoster, coauthor_ids: Sequence[str],
                             affiliations: Sequence[AffiliationRecord]) -> AffinityBuild:
    """Scholar-institution incidence for the panel members plus the
    selected central co-authors. Scholars with no affiliation record are
    left out and reported."""
    member_names = {m.id: m.name for m in roster.members}
    wanted = dict(member_names)
    for cid in coauthor_ids:
        if cid in member_names:
            raise ValidationError(f"co-author id {cid!r} is already a panel member")
        wanted.setdefault(cid, cid)

    by_scholar: dict[str, list[AffiliationRecord]] = {}
    for rec in affiliations:
        if rec.scholar_id in wanted:
            by_scholar.setdefault(rec.scholar_id, []).append(rec)

    b = BipartiteGraph()
    members_in: list[str] = []
    coauthors_in: list[str] = []
    missing: list[str] = []
    for sid in sorted(wanted):
        recs = by_scholar.get(sid)
        if not recs:
            missing.append(sid)
            continue
        is_member = sid in member_names
        b.add_left(sid, wanted[sid], is_panelist=is_member,
                   panel_label=roster.panel_label if is_member else None)
        (members_in if is_member else coauthors_in).append(sid)
        for rec in recs:
            b.add_right(rec.institution_id)
            b.add_edge(sid, rec.institution_id, 1.0)
    if missing:
        log.info("%s: %d scholars lack affiliation records", roster.panel_label,
                 len(missing))
    return AffinityBuild(b, members_in, coauthors_in, missing)


def make_scholar(sid: str) -> Scholar:
    return Scholar(sid, sid)
