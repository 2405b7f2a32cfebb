"""Panel analysis assembly and report rendering.

analyze_panel runs the whole pipeline for one panel; compare_panels adds
the cross-panel statistics (degree-distribution KS tests with multiplicity
adjustment, indicator deltas against the control panel, overlap lists).
render writes the bundle: report.json, report.md, a csv/ directory and,
unless disabled, PNG charts under figures/.

The report states measurements only; it never declares a panel fair or
unfair. JSON carries full-precision values; the markdown and CSV views
round as documented (three decimals for densities and centralities, two
for distribution percent columns, one for summary percentages).
"""

from __future__ import annotations

import dataclasses
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import figures
from .builders import (build_affinity_bipartite, build_coauthorship,
                       build_journal_bipartite, project_shared_neighbors,
                       select_central_coauthors)
from .errors import ValidationError
from .ingest import (AffiliationRecord, PanelRoster, PublicationRecord,
                     filter_window)
from .islands import (CrosstabRow, ImportanceSelection, IslandParams,
                      IslandResult, default_journal_max_size,
                      importance_island_crosstab, important_vertices,
                      line_islands, off_island_share)
from .metrics import (CentralityRow, ComponentSummary, DegreeFrequencyTable,
                      MetricsSummary, betweenness, bipartite_density,
                      connected_components, degree_frequency,
                      eigenvector_centrality, ranked_centrality_table,
                      summarize_graph, write_centrality_csv)
from .stats import KsResult, adjust_pvalues, ks_two_sample

SCHEMA_VERSION = 1

DENSITY_CONVENTIONS = ("loops_allowed", "simple")
IMPORTANCE_SOURCES = ("bipartite", "projection")


@dataclass
class AnalysisParams:
    """Tunables for one audit run; defaults follow the published protocol."""

    window_years: int = 25
    importance_k: int = 17
    island_min_size: int = 1
    journal_island_max_size: Optional[int] = None   # None: 3n/5 of members present
    affinity_island_max_size: int = 17
    betweenness_threshold: float = 0.002
    density_convention: str = "loops_allowed"
    importance_source: str = "bipartite"
    ks_variant: str = "asymptotic"
    adjust_method: str = "holm"

    def __post_init__(self):
        if self.window_years < 1:
            raise ValidationError("window_years must be >= 1")
        if self.importance_k < 1:
            raise ValidationError("importance_k must be >= 1")
        if self.density_convention not in DENSITY_CONVENTIONS:
            raise ValidationError(f"unknown density convention "
                                  f"{self.density_convention!r}")
        if self.importance_source not in IMPORTANCE_SOURCES:
            raise ValidationError(f"unknown importance source "
                                  f"{self.importance_source!r}")


@dataclass
class CoauthorshipSection:
    summary: MetricsSummary
    degree_table: DegreeFrequencyTable
    components: list[ComponentSummary]
    betweenness_rows: list[CentralityRow]
    central_coauthors: list[str]
    papers_used: int


@dataclass
class JournalSection:
    members_in: int
    journals: int
    edge_count: int
    bipartite_density: Optional[float]
    mean_journals_per_member: Optional[float]
    papers_skipped_no_journal: int
    members_dropped: list[str]
    projection_summary: Optional[MetricsSummary]
    islands: Optional[IslandResult]
    island_max_size: Optional[int]
    off_island_pct: Optional[float]
    off_island_members: list[str]


@dataclass
class AffinitySection:
    members_in: list[str]
    coauthors_in: list[str]
    institutions: int
    edge_count: int
    bipartite_density: Optional[float]
    mean_affiliations_per_scholar: Optional[float]
    scholars_without_records: list[str]
    importance_source: str
    scholar_summary: MetricsSummary
    scholar_islands: IslandResult
    institution_summary: MetricsSummary
    institution_islands: IslandResult
    important_scholars: ImportanceSelection
    important_institutions: ImportanceSelection
    scholar_crosstab: list[CrosstabRow]
    institution_crosstab: list[CrosstabRow]


@dataclass
class PanelAnalysis:
    panel_label: str
    appointment_year: int
    window: tuple[int, int]
    official_size: int
    members: list[tuple[str, str]]          # (id, name), roster order
    analyzed_members: list[str]             # present in the co-authorship graph
    members_dropped: list[str]
    params: AnalysisParams
    coauthorship: CoauthorshipSection
    journal: JournalSection
    affinity: Optional[AffinitySection]

    def member_ids(self) -> set[str]:
        return {mid for mid, _ in self.members}

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["schema_version"] = SCHEMA_VERSION
        out["kind"] = "panel_analysis"
        return out


def analyze_panel(roster: PanelRoster, pubs: Sequence[PublicationRecord],
                  affiliations: Optional[Sequence[AffiliationRecord]] = None,
                  params: Optional[AnalysisParams] = None) -> PanelAnalysis:
    params = params or AnalysisParams()
    windowed = filter_window(pubs, roster, params.window_years)

    co = build_coauthorship(roster, windowed)
    g = co.graph
    summary = summarize_graph(g, official_size=roster.official_size,
                              convention=params.density_convention)
    scores = betweenness(g, normalized=True)
    rows = ranked_centrality_table(g, scores)
    central = select_central_coauthors(g, params.betweenness_threshold, scores=scores)
    co_section = CoauthorshipSection(summary, degree_frequency(g),
                                     connected_components(g)[1], rows, central,
                                     co.papers_used)

    jb = build_journal_bipartite(roster, windowed)
    if jb.graph.left_count and jb.graph.right_count:
        proj = project_shared_neighbors(jb.graph, "left")
        jmax = params.journal_island_max_size
        if jmax is None:
            jmax = default_journal_max_size(proj.node_count)
        isl = line_islands(proj, IslandParams(params.island_min_size, jmax))
        panelists = proj.panelists()
        off_pct = off_island_share(isl, panelists) if panelists else None
        off_members = sorted(set(panelists) & set(isl.off_island))
        j_section = JournalSection(
            members_in=jb.graph.left_count,
            journals=jb.graph.right_count,
            edge_count=jb.graph.edge_count,
            bipartite_density=bipartite_density(jb.graph),
            mean_journals_per_member=jb.graph.edge_count / jb.graph.left_count,
            papers_skipped_no_journal=jb.skipped_no_journal,
            members_dropped=jb.members_dropped,
            projection_summary=summarize_graph(proj, convention=params.density_convention),
            islands=isl,
            island_max_size=jmax,
            off_island_pct=off_pct,
            off_island_members=off_members,
        )
    else:
        j_section = JournalSection(jb.graph.left_count, jb.graph.right_count,
                                   0, None, None, jb.skipped_no_journal,
                                   jb.members_dropped, None, None, None, None, [])

    a_section = None
    if affiliations is not None:
        ab = build_affinity_bipartite(roster, central, affiliations)
        if ab.graph.left_count and ab.graph.right_count:
            s_proj = project_shared_neighbors(ab.graph, "left")
            i_proj = project_shared_neighbors(ab.graph, "right")
            cap = params.affinity_island_max_size
            s_islands = line_islands(s_proj, IslandParams(params.island_min_size, cap))
            i_islands = line_islands(i_proj, IslandParams(params.island_min_size, cap))
            if params.importance_source == "bipartite":
                joint = eigenvector_centrality(ab.graph)
                s_scores = {v: joint[v] for v in ab.graph.left_nodes()}
                i_scores = {v: joint[v] for v in ab.graph.right_nodes()}
            else:
                s_scores = eigenvector_centrality(s_proj)
                i_scores = eigenvector_centrality(i_proj)
            imp_s = important_vertices(s_scores, params.importance_k)
            imp_i = important_vertices(i_scores, params.importance_k)
            a_section = AffinitySection(
                members_in=ab.member_ids,
                coauthors_in=ab.coauthor_ids,
                institutions=ab.graph.right_count,
                edge_count=ab.graph.edge_count,
                bipartite_density=bipartite_density(ab.graph),
                mean_affiliations_per_scholar=ab.graph.edge_count / ab.graph.left_count,
                scholars_without_records=ab.scholars_without_records,
                importance_source=params.importance_source,
                scholar_summary=summarize_graph(s_proj,
                                                convention=params.density_convention),
                scholar_islands=s_islands,
                institution_summary=summarize_graph(i_proj,
                                                    convention=params.density_convention),
                institution_islands=i_islands,
                important_scholars=imp_s,
                important_institutions=imp_i,
                scholar_crosstab=importance_island_crosstab(s_islands, imp_s),
                institution_crosstab=importance_island_crosstab(i_islands, imp_i),
            )

    return PanelAnalysis(
        panel_label=roster.panel_label,
        appointment_year=roster.appointment_year,
        window=roster.window(params.window_years),
        official_size=roster.official_size,
        members=[(m.id, m.name) for m in roster.members],
        analyzed_members=co.members_in_graph,
        members_dropped=co.members_dropped,
        params=params,
        coauthorship=co_section,
        journal=j_section,
        affinity=a_section,
    )


@dataclass
class IndicatorDelta:
    panel_label: str
    indicator: str
    value: Optional[float]
    control_value: Optional[float]
    delta: Optional[float]


@dataclass
class OverlapRow:
    pair: str
    shared: list[str]


@dataclass
class ComparisonReport:
    panels: list[PanelAnalysis]
    control_label: str
    ks_tests: list[KsResult]
    deltas: list[IndicatorDelta]
    member_overlaps: list[OverlapRow]
    important_overlaps: list[OverlapRow]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "comparison",
            "control_label": self.control_label,
            "panels": [dataclasses.asdict(p) for p in self.panels],
            "ks_tests": [dataclasses.asdict(t) for t in self.ks_tests],
            "deltas": [dataclasses.asdict(d) for d in self.deltas],
            "member_overlaps": [dataclasses.asdict(o) for o in self.member_overlaps],
            "important_overlaps": [dataclasses.asdict(o) for o in self.important_overlaps],
        }


def _indicator_values(p: PanelAnalysis) -> dict[str, Optional[float]]:
    s = p.coauthorship.summary
    listed = len(p.members)
    return {
        "fragmentation_pct": (100.0 * s.fragmentation_ratio
                              if s.fragmentation_ratio is not None else None),
        "journal_off_island_pct": p.journal.off_island_pct,
        "largest_component_panelist_share_pct": (
            100.0 * s.largest_component_panelists / listed if listed else None),
        "density": s.density,
        "average_degree": s.average_degree,
    }


def compare_panels(analyses: Sequence[PanelAnalysis],
                   control_label: str) -> ComparisonReport:
    if len(analyses) < 2:
        raise ValidationError("comparison needs at least two panels")
    labels = [p.panel_label for p in analyses]
    if len(set(labels)) != len(labels):
        raise ValidationError("panel labels must be unique")
    by_label = {p.panel_label: p for p in analyses}
    if control_label not in by_label:
        raise ValidationError(f"control panel {control_label!r} is not among "
                              f"{labels}")
    control = by_label[control_label]
    variant = analyses[0].params.ks_variant
    method = analyses[0].params.adjust_method

    ks_tests: list[KsResult] = []
    for i in range(len(analyses)):
        for j in range(i + 1, len(analyses)):
            a, b = analyses[i], analyses[j]
            ks_tests.append(ks_two_sample(a.coauthorship.degree_table,
                                          b.coauthorship.degree_table,
                                          variant=variant,
                                          label=f"{a.panel_label} vs {b.panel_label}"))
    adjusted = adjust_pvalues([t.p_value for t in ks_tests], method)
    for t, adj in zip(ks_tests, adjusted):
        t.p_adjusted = adj

    control_vals = _indicator_values(control)
    deltas: list[IndicatorDelta] = []
    for p in analyses:
        if p.panel_label == control_label:
            continue
        vals = _indicator_values(p)
        for name, value in vals.items():
            cv = control_vals[name]
            delta = value - cv if value is not None and cv is not None else None
            deltas.append(IndicatorDelta(p.panel_label, name, value, cv, delta))

    member_overlaps: list[OverlapRow] = []
    important_overlaps: list[OverlapRow] = []
    for i in range(len(analyses)):
        for j in range(i + 1, len(analyses)):
            a, b = analyses[i], analyses[j]
            pair = f"{a.panel_label} vs {b.panel_label}"
            member_overlaps.append(OverlapRow(
                pair, sorted(a.member_ids() & b.member_ids())))
            if a.affinity and b.affinity:
                important_overlaps.append(OverlapRow(
                    pair, sorted(a.affinity.important_scholars.selected()
                                 & b.affinity.important_scholars.selected())))
    if all(p.affinity for p in analyses) and len(analyses) > 2:
        shared = set.intersection(
            *(p.affinity.important_scholars.selected() for p in analyses))
        important_overlaps.append(OverlapRow("all panels", sorted(shared)))

    return ComparisonReport(list(analyses), control_label, ks_tests, deltas,
                            member_overlaps, important_overlaps)


# rendering

def _slug(label: str) -> str:
    out = re.sub(r"[^A-Za-z0-9]+", "_", label).strip("_").lower()
    return out or "panel"


def _fmt(x: Optional[float], nd: int) -> str:
    return "n/a" if x is None else f"{x:.{nd}f}"


def _md_table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = ["| " + " | ".join(str(h) for h in headers) + " |",
             "| " + " | ".join("---" for _ in headers) + " |"]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines)


def _summary_rows(s: MetricsSummary) -> list[tuple[str, str]]:
    rows = [
        ("nodes", str(s.n_total)),
        ("panelists in graph", str(s.n_panelists)),
        ("non-panelists", str(s.n_others)),
        ("edges", str(s.edge_count)),
        ("total edge weight", _fmt(s.total_weight, 0)),
        ("max edge weight", _fmt(s.max_weight, 0)),
        ("edges w=1 / w=2 / w>2",
         f"{s.weight_histogram['w1']} / {s.weight_histogram['w2']} / "
         f"{s.weight_histogram['w_gt2']}"),
        (f"density ({s.density_convention})", _fmt(s.density, 3)),
        ("average degree", _fmt(s.average_degree, 3)),
        ("density, non-panelist base", _fmt(s.density_others_basis, 3)),
        ("average degree, non-panelist base", _fmt(s.average_degree_others_basis, 3)),
        ("components", str(s.component_count)),
        ("largest component size", str(s.largest_component_size)),
        ("largest component panelists", str(s.largest_component_panelists)),
    ]
    if s.fragmentation_ratio is not None:
        rows.append(("fragmentation (components / official size)",
                     f"{_fmt(100.0 * s.fragmentation_ratio, 1)}%"))
    return rows


def _island_table(result: IslandResult) -> str:
    rows = []
    for isl in result.islands:
        rows.append([isl.index, isl.size, _fmt(isl.form_weight, 0),
                     _fmt(isl.external_max, 0), _fmt(isl.strength, 0),
                     "; ".join(isl.members)])
    return _md_table(["island", "size", "form weight", "external max",
                      "strength", "members"], rows)


def _crosstab_table(rows: list[CrosstabRow]) -> str:
    return _md_table(
        ["group", "nodes", "important", "% of important"],
        [[r.label, r.node_count, r.important_count,
          _fmt(r.important_share_pct, 1)] for r in rows])


def _panel_markdown(p: PanelAnalysis) -> list[str]:
    s = p.coauthorship.summary
    out = [f"## Panel {p.panel_label}", ""]
    out.append(_md_table(["", ""], [
        ["appointment year", p.appointment_year],
        ["publication window", f"{p.window[0]}-{p.window[1]}"],
        ["official size", p.official_size],
        ["listed members", len(p.members)],
        ["members in co-authorship graph", len(p.analyzed_members)],
        ["members without windowed papers", len(p.members_dropped)],
        ["papers used", p.coauthorship.papers_used],
    ]))
    out += ["", "### Co-authorship network", "",
            _md_table(["measure", "value"], _summary_rows(s)), ""]

    out += ["#### Degree distribution", "",
            _md_table(["degree", "nodes", "%"],
                      [[d, f, _fmt(pct, 2)]
                       for d, f, pct in p.coauthorship.degree_table.percents()]), ""]

    comp_rows = [[c.index, c.size, _fmt(c.node_share_pct, 2), c.panelist_count,
                  _fmt(c.panelist_share_pct, 2)]
                 for c in p.coauthorship.components]
    out += ["#### Components", "",
            _md_table(["component", "nodes", "% nodes", "panelists",
                       "% panelists"], comp_rows), ""]

    top = p.coauthorship.betweenness_rows[:10]
    out += ["#### Betweenness (top 10, full table in csv/)", "",
            _md_table(["name", "value", "rank", "panelist"],
                      [[r.name, _fmt(r.value, 3), r.rank,
                        "yes" if r.is_panelist else "no"] for r in top]), ""]
    out.append(f"Central non-member co-authors (betweenness > "
               f"{p.params.betweenness_threshold}): "
               f"{len(p.coauthorship.central_coauthors)}")
    out.append("")

    j = p.journal
    out += ["### Journal network", "",
            _md_table(["measure", "value"], [
                ["members with journal papers", j.members_in],
                ["journals", j.journals],
                ["incidence edges", j.edge_count],
                ["two-mode density", _fmt(j.bipartite_density, 3)],
                ["mean journals per member", _fmt(j.mean_journals_per_member, 1)],
                ["papers without journal id", j.papers_skipped_no_journal],
            ]), ""]
    if j.projection_summary is not None:
        out += ["#### Shared-journal projection", "",
                _md_table(["measure", "value"],
                          _summary_rows(j.projection_summary)), ""]
        out += [f"#### Islands (size {p.params.island_min_size}-"
                f"{j.island_max_size})", "", _island_table(j.islands), ""]
        out.append(f"Members off-island: {len(j.off_island_members)} "
                   f"({_fmt(j.off_island_pct, 1)}%)")
        out.append("")

    a = p.affinity
    if a is not None:
        out += ["### Affinity network", "",
                _md_table(["measure", "value"], [
                    ["panel members", len(a.members_in)],
                    ["central co-authors", len(a.coauthors_in)],
                    ["institutions", a.institutions],
                    ["incidence edges", a.edge_count],
                    ["two-mode density", _fmt(a.bipartite_density, 3)],
                    ["mean affiliations per scholar",
                     _fmt(a.mean_affiliations_per_scholar, 1)],
                    ["scholars without records", len(a.scholars_without_records)],
                ]), ""]
        out += ["#### Scholar projection islands", "",
                _island_table(a.scholar_islands), ""]
        out += [f"#### Important scholars (top {a.important_scholars.k_requested}, "
                f"{a.importance_source} eigenvector)", "",
                _md_table(["rank", "name", "score"],
                          [[i, node, _fmt(score, 3)]
                           for i, (node, score) in
                           enumerate(a.important_scholars.ranked, 1)]), ""]
        out += ["#### Important scholars by island", "",
                _crosstab_table(a.scholar_crosstab), ""]
        out += ["#### Institution projection islands", "",
                _island_table(a.institution_islands), ""]
        out += [f"#### Important institutions (top "
                f"{a.important_institutions.k_requested})", "",
                _md_table(["rank", "name", "score"],
                          [[i, node, _fmt(score, 3)]
                           for i, (node, score) in
                           enumerate(a.important_institutions.ranked, 1)]), ""]
        out += ["#### Important institutions by island", "",
                _crosstab_table(a.institution_crosstab), ""]
    return out


_DELTA_DECIMALS = {
    "fragmentation_pct": 1,
    "journal_off_island_pct": 1,
    "largest_component_panelist_share_pct": 1,
    "density": 3,
    "average_degree": 3,
}


def _comparison_markdown(rep: ComparisonReport) -> list[str]:
    out = ["## Cross-panel comparison", "",
           f"Control panel: {rep.control_label}", ""]
    out += ["### Degree distribution divergence (two-sample KS)", "",
            _md_table(["pair", "D", "p", f"p ({rep.panels[0].params.adjust_method})",
                       "n1", "n2"],
                      [[t.label, _fmt(t.d, 3), f"{t.p_value:.3e}",
                        f"{t.p_adjusted:.3e}", t.n1, t.n2]
                       for t in rep.ks_tests]), ""]
    delta_rows = []
    for d in rep.deltas:
        nd = _DELTA_DECIMALS[d.indicator]
        delta_rows.append([d.panel_label, d.indicator, _fmt(d.value, nd),
                           _fmt(d.control_value, nd), _fmt(d.delta, nd)])
    out += ["### Indicators relative to the control panel", "",
            _md_table(["panel", "indicator", "value", "control", "delta"],
                      delta_rows), ""]
    out += ["### Shared panel members", "",
            _md_table(["pair", "shared", "ids"],
                      [[o.pair, len(o.shared), "; ".join(o.shared) or "-"]
                       for o in rep.member_overlaps]), ""]
    if rep.important_overlaps:
        out += ["### Shared important scholars", "",
                _md_table(["pair", "shared", "ids"],
                          [[o.pair, len(o.shared), "; ".join(o.shared) or "-"]
                           for o in rep.important_overlaps]), ""]
    return out


def _write_csv(path: Path, headers: Sequence[str], rows: Sequence[Sequence]) -> None:
    import csv as _csv
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = _csv.writer(fh, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)


def _panel_csvs(p: PanelAnalysis, csv_dir: Path) -> None:
    slug = _slug(p.panel_label)
    _write_csv(csv_dir / f"{slug}_degree.csv", ["degree", "frequency", "percent"],
               [[d, f, _fmt(pct, 2)] for d, f, pct
                in p.coauthorship.degree_table.percents()])
    write_centrality_csv(p.coauthorship.betweenness_rows,
                         csv_dir / f"{slug}_betweenness.csv")
    _write_csv(csv_dir / f"{slug}_components.csv",
               ["component", "size", "node_share_pct", "panelists",
                "panelist_share_pct"],
               [[c.index, c.size, _fmt(c.node_share_pct, 2), c.panelist_count,
                 _fmt(c.panelist_share_pct, 2)] for c in p.coauthorship.components])
    if p.journal.islands is not None:
        part = p.journal.islands.partition()
        _write_csv(csv_dir / f"{slug}_journal_islands.csv",
                   ["member", "island"],
                   [[v, part.group(v)] for v in sorted(part.assignment)])
    if p.affinity is not None:
        for kind, islands, selection in (
                ("scholar", p.affinity.scholar_islands,
                 p.affinity.important_scholars),
                ("institution", p.affinity.institution_islands,
                 p.affinity.important_institutions)):
            part = islands.partition()
            chosen = selection.selected()
            _write_csv(csv_dir / f"{slug}_affinity_{kind}_islands.csv",
                       ["node", "island", "important"],
                       [[v, part.group(v), "yes" if v in chosen else "no"]
                        for v in sorted(part.assignment)])


def _render_figures(panels: Sequence[PanelAnalysis], fig_dir: Path,
                    rep: Optional[ComparisonReport] = None) -> None:
    tables = {p.panel_label: p.coauthorship.degree_table for p in panels}
    figures.save_degree_ecdf(tables, fig_dir / "degree_ecdf.png")
    for p in panels:
        figures.save_degree_histogram(p.coauthorship.degree_table, p.panel_label,
                                      fig_dir / f"degree_hist_{_slug(p.panel_label)}.png")
    if rep is not None:
        deltas: dict[str, dict[str, float]] = {}
        for d in rep.deltas:
            if d.delta is not None:
                deltas.setdefault(d.panel_label, {})[d.indicator] = d.delta
        if deltas:
            figures.save_indicator_deltas(deltas, fig_dir / "indicator_deltas.png")


def render(report, out_dir, formats: Sequence[str] = ("json", "markdown", "csv"),
           with_figures: bool = True) -> list[Path]:
    """Write the report bundle and return the paths written."""
    for f in formats:
        if f not in ("json", "markdown", "csv"):
            raise ValidationError(f"unknown format {f!r}")
    if isinstance(report, PanelAnalysis):
        panels: list[PanelAnalysis] = [report]
        rep: Optional[ComparisonReport] = None
        payload = report.to_dict()
        title = f"# Composition audit: panel {report.panel_label}"
    elif isinstance(report, ComparisonReport):
        panels = report.panels
        rep = report
        payload = report.to_dict()
        title = "# Composition audit: panel comparison"
    else:
        raise ValidationError(f"cannot render {type(report).__name__}")

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if "json" in formats:
        path = out_dir / "report.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8", newline="\n")
        written.append(path)
    if "markdown" in formats:
        lines = [title, ""]
        for p in panels:
            lines += _panel_markdown(p)
        if rep is not None:
            lines += _comparison_markdown(rep)
        path = out_dir / "report.md"
        path.write_text("\n".join(lines).rstrip() + "\n", encoding="utf-8",
                        newline="\n")
        written.append(path)
    if "csv" in formats:
        csv_dir = out_dir / "csv"
        csv_dir.mkdir(exist_ok=True)
        for p in panels:
            _panel_csvs(p, csv_dir)
        if rep is not None:
            _write_csv(csv_dir / "ks_tests.csv",
                       ["pair", "d", "p_value", "p_adjusted", "n1", "n2"],
                       [[t.label, _fmt(t.d, 3), f"{t.p_value:.3e}",
                         f"{t.p_adjusted:.3e}", t.n1, t.n2] for t in rep.ks_tests])
            _write_csv(csv_dir / "indicator_deltas.csv",
                       ["panel", "indicator", "value", "control_value", "delta"],
                       [[d.panel_label, d.indicator,
                         _fmt(d.value, _DELTA_DECIMALS[d.indicator]),
                         _fmt(d.control_value, _DELTA_DECIMALS[d.indicator]),
                         _fmt(d.delta, _DELTA_DECIMALS[d.indicator])]
                        for d in rep.deltas])
            _write_csv(csv_dir / "member_overlap.csv", ["pair", "shared_ids"],
                       [[o.pair, ";".join(o.shared)] for o in rep.member_overlaps])
            if rep.important_overlaps:
                _write_csv(csv_dir / "important_overlap.csv", ["pair", "shared_ids"],
                           [[o.pair, ";".join(o.shared)]
                            for o in rep.important_overlaps])
        written.extend(sorted(csv_dir.glob("*.csv")))
    if with_figures:
        _render_figures(panels, out_dir / "figures", rep)
        written.extend(sorted((out_dir / "figures").glob("*.png")))
    return written
