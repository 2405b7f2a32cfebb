"""Command line entry point.

Three subcommands:

* build: construct one network family and write Pajek + JSON dumps;
* analyze: run the full audit from a TOML config and write the report
  bundle (JSON, markdown, CSV, figures);
* simulate: compare an observed indicator against random panels drawn
  from the candidate pool.

Exit codes: 0 success, 2 bad input (including usage errors), 3 a
computation failed (e.g. centrality iteration did not converge). Set
PANELAUDIT_LOG=debug|info|warning for log verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import io_pajek
from .builders import (build_affinity_bipartite, build_coauthorship,
                       build_journal_bipartite, project_shared_neighbors,
                       select_central_coauthors)
from .errors import ComputationError, ValidationError
from .ingest import (filter_window, load_affiliations, load_pool,
                     load_publications, load_roster)
from .metrics import connected_components
from .model import BipartiteGraph, graph_to_dict
from .report import AnalysisParams, analyze_panel, compare_panels, render
from .stats import INDICATORS, make_indicator, null_model_sample

log = logging.getLogger("panelaudit")


def _setup_logging() -> None:
    level = os.environ.get("PANELAUDIT_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _write_json(payload: dict, path: Path) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8", newline="\n")


def _emit_graph(g, name: str, out_dir: Path) -> None:
    io_pajek.write_net(g, out_dir / f"{name}.net")
    _write_json(graph_to_dict(g), out_dir / f"{name}.json")
    if isinstance(g, BipartiteGraph):
        print(f"{name}: left={g.left_count} right={g.right_count} "
              f"m={g.edge_count}")
    else:
        _, comps = connected_components(g)
        print(f"{name}: n={g.node_count} m={g.edge_count} components={len(comps)}")


def cmd_build(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    roster = load_roster(args.roster)
    pubs = filter_window(load_publications(args.pubs), roster, args.window_years)

    if args.kind == "coauthorship":
        build = build_coauthorship(roster, pubs)
        _emit_graph(build.graph, "coauthorship", out_dir)
    elif args.kind == "journal":
        jb = build_journal_bipartite(roster, pubs)
        _emit_graph(jb.graph, "journal_bipartite", out_dir)
        _emit_graph(project_shared_neighbors(jb.graph, "left"),
                    "journal_projection", out_dir)
    else:  # affinity
        if not args.affiliations:
            raise ValidationError("--kind affinity requires --affiliations")
        co = build_coauthorship(roster, pubs)
        central = select_central_coauthors(co.graph, args.betweenness_threshold)
        ab = build_affinity_bipartite(roster, central,
                                      load_affiliations(args.affiliations))
        _emit_graph(ab.graph, "affinity_bipartite", out_dir)
        _emit_graph(project_shared_neighbors(ab.graph, "left"),
                    "affinity_scholars", out_dir)
        _emit_graph(project_shared_neighbors(ab.graph, "right"),
                    "affinity_institutions", out_dir)
    return 0


def _params_from_config(cfg: dict) -> AnalysisParams:
    defaults = AnalysisParams()
    keys = {f for f in vars(defaults)}
    unknown = set(cfg) - keys - {"control", "formats", "figures", "seed"}
    if unknown:
        raise ValidationError(f"unknown analysis settings: {sorted(unknown)}")
    kwargs = {k: cfg[k] for k in keys if k in cfg}
    return AnalysisParams(**kwargs)


def cmd_analyze(args) -> int:
    config_path = Path(args.config)
    try:
        with config_path.open("rb") as fh:
            cfg = tomllib.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"config file {config_path} not found") from None
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"{config_path}: {exc}") from None

    base = config_path.parent
    analysis_cfg = cfg.get("analysis", {})
    params = _params_from_config(analysis_cfg)
    panel_cfgs = cfg.get("panel", [])
    if not panel_cfgs:
        raise ValidationError(f"{config_path}: no [[panel]] entries")

    analyses = []
    for pc in panel_cfgs:
        if "roster" not in pc or "publications" not in pc:
            raise ValidationError(f"{config_path}: each [[panel]] needs "
                                  "'roster' and 'publications'")
        roster = load_roster(base / pc["roster"])
        pubs = load_publications(base / pc["publications"])
        affs = (load_affiliations(base / pc["affiliations"])
                if "affiliations" in pc else None)
        analyses.append(analyze_panel(roster, pubs, affs, params))
        log.info("analyzed %s", roster.panel_label)

    control = analysis_cfg.get("control")
    if len(analyses) == 1:
        report = analyses[0]
    else:
        if not control:
            raise ValidationError(f"{config_path}: multi-panel analysis needs "
                                  "analysis.control")
        report = compare_panels(analyses, control)

    formats = args.formats.split(",") if args.formats else \
        list(analysis_cfg.get("formats", ["json", "markdown", "csv"]))
    with_figures = not args.no_figures and analysis_cfg.get("figures", True)
    written = render(report, args.out, formats=formats, with_figures=with_figures)
    print(f"wrote {len(written)} files to {args.out}")
    return 0


def cmd_simulate(args) -> int:
    roster = load_roster(args.roster)
    pool = load_pool(args.pool)
    pubs = filter_window(load_publications(args.pubs), roster,
                         args.window_years)
    size = args.size if args.size is not None else roster.official_size

    fn = make_indicator(args.indicator, pubs)
    observed = fn(roster.member_ids())
    run = null_model_sample(pool.member_ids(), size, fn, observed,
                            indicator=args.indicator, samples=args.samples,
                            seed=args.seed, exhaustive=args.exhaustive,
                            pool_label=pool.label)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_json(run.to_dict(), out_dir / "run.json")
    with (out_dir / "values.csv").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("draw,value\n")
        for i, v in enumerate(run.values):
            fh.write(f"{i},{v!r}\n")
    if args.figures:
        from .figures import save_null_histogram
        save_null_histogram(run, out_dir / "null_distribution.png")
    print(f"indicator={run.indicator} observed={run.observed:.6g} "
          f"percentile={run.percentile:.4g} samples={run.samples} "
          f"exhaustive={str(run.exhaustive).lower()}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="panelaudit",
        description="Audit evaluation-panel composition through co-authorship, "
                    "journal and affinity networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct one network family")
    p_build.add_argument("--kind", required=True,
                         choices=["coauthorship", "journal", "affinity"])
    p_build.add_argument("--roster", required=True, help="roster JSON file")
    p_build.add_argument("--pubs", required=True, help="publications CSV/JSONL")
    p_build.add_argument("--affiliations", help="affiliations CSV (affinity kind)")
    p_build.add_argument("--out", required=True, help="output directory")
    p_build.add_argument("--window-years", type=int, default=25)
    p_build.add_argument("--betweenness-threshold", type=float, default=0.002)
    p_build.add_argument("--seed", type=int, default=0,
                         help="accepted for interface uniformity; build is "
                              "deterministic and ignores it")
    p_build.set_defaults(func=cmd_build)

    p_an = sub.add_parser("analyze", help="run the audit from a TOML config")
    p_an.add_argument("--config", required=True)
    p_an.add_argument("--out", required=True)
    p_an.add_argument("--formats", help="comma-separated: json,markdown,csv")
    p_an.add_argument("--no-figures", action="store_true")
    p_an.add_argument("--seed", type=int, default=0,
                      help="accepted for interface uniformity; analyze is "
                           "deterministic and ignores it")
    p_an.set_defaults(func=cmd_analyze)

    p_sim = sub.add_parser("simulate",
                           help="null-model distribution of an indicator")
    p_sim.add_argument("--pool", required=True, help="candidate pool JSON")
    p_sim.add_argument("--roster", required=True, help="observed roster JSON")
    p_sim.add_argument("--pubs", required=True, help="publications CSV/JSONL")
    p_sim.add_argument("--indicator", required=True, choices=list(INDICATORS))
    p_sim.add_argument("--size", type=int,
                       help="panel size to draw (default: roster official size)")
    p_sim.add_argument("--samples", type=int, default=10000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--exhaustive", action="store_true",
                       help="enumerate every possible panel instead of sampling")
    p_sim.add_argument("--window-years", type=int, default=25)
    p_sim.add_argument("--figures", action="store_true",
                       help="also render the null-distribution histogram")
    p_sim.add_argument("--out", required=True)
    p_sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
