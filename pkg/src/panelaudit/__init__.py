"""Network-based audit of evaluation-panel composition.

The package builds three network families around a panel (merged
co-authorship ego networks, member-journal incidence with its projection,
scholar-institution affinity with both projections), measures cohesion and
brokerage on them, and compares appointed panels against a lottery-drawn
control both directly and through a random-panel null model.
"""

from .errors import AuditError, ComputationError, ConvergenceError, ValidationError
from .ingest import (AffiliationRecord, CandidatePool, PanelRoster,
                     PublicationRecord, Scholar, filter_window,
                     load_affiliations, load_pool, load_publications,
                     load_roster)
from .model import BipartiteGraph, Partition, WeightedGraph
from .report import (AnalysisParams, ComparisonReport, PanelAnalysis,
                     analyze_panel, compare_panels, render)

__version__ = "0.1.0"

__all__ = [
    "AuditError", "ComputationError", "ConvergenceError", "ValidationError",
    "AffiliationRecord", "CandidatePool", "PanelRoster", "PublicationRecord",
    "Scholar", "filter_window", "load_affiliations", "load_pool",
    "load_publications", "load_roster",
    "BipartiteGraph", "Partition", "WeightedGraph",
    "AnalysisParams", "ComparisonReport", "PanelAnalysis", "analyze_panel",
    "compare_panels", "render",
    "__version__",
]
