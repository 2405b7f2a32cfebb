"""Two-sample comparison and the lottery null model.

The KS machinery works on degree-frequency tables directly (the published
tables are the only form the historical samples survive in), so the exact
D statistic comes from cumulative sums over the union support rather than
from re-expanded samples.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .builders import build_coauthorship, build_journal_bipartite, project_shared_neighbors
from .errors import ValidationError
from .ingest import PanelRoster, PublicationRecord, Scholar
from .islands import IslandParams, default_journal_max_size, line_islands, off_island_share
from .metrics import DegreeFrequencyTable, average_degree, connected_components, density

Sample = Union[DegreeFrequencyTable, Sequence[float]]

KS_VARIANTS = ("asymptotic", "stephens")

INDICATORS = (
    "fragmentation_ratio",
    "off_island_share",
    "largest_component_panelist_share",
    "density",
    "average_degree",
)


@dataclass
class KsResult:
    d: float
    p_value: float
    n1: int
    n2: int
    variant: str
    label: str = ""
    p_adjusted: Optional[float] = None


def _as_table(sample: Sample) -> DegreeFrequencyTable:
    if isinstance(sample, DegreeFrequencyTable):
        return sample
    counts: dict[int, int] = {}
    for value in sample:
        v = int(value)
        if v != value:
            raise ValidationError(f"degree samples must be integers, got {value!r}")
        counts[v] = counts.get(v, 0) + 1
    return DegreeFrequencyTable.from_counts(counts)


def ks_statistic(a: Sample, b: Sample) -> float:
    """Exact two-sample D: max CDF gap over the union support."""
    t1, t2 = _as_table(a), _as_table(b)
    n1, n2 = t1.total, t2.total
    if n1 == 0 or n2 == 0:
        raise ValidationError("KS needs non-empty samples on both sides")
    c1 = dict(t1.rows)
    c2 = dict(t2.rows)
    support = sorted(set(c1) | set(c2))
    acc1 = acc2 = 0
    d = 0.0
    for x in support:
        acc1 += c1.get(x, 0)
        acc2 += c2.get(x, 0)
        gap = abs(acc1 / n1 - acc2 / n2)
        if gap > d:
            d = gap
    return d


def _kolmogorov_p(lam: float) -> float:
    """Two-sided tail 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lam^2)."""
    if lam <= 0:
        return 1.0
    total = 0.0
    for j in range(1, 1001):
        term = 2.0 * (-1.0) ** (j - 1) * math.exp(-2.0 * j * j * lam * lam)
        total += term
        if abs(term) < 1e-12:
            break
    return min(1.0, max(0.0, total))


def ks_two_sample(a: Sample, b: Sample, variant: str = "asymptotic",
                  label: str = "") -> KsResult:
    """Two-sample KS test.

    variant 'asymptotic' uses lambda = sqrt(n_e) * D; 'stephens' applies
    the small-sample adjustment lambda = (sqrt(n_e) + 0.12 +
    0.11/sqrt(n_e)) * D.
    """
    if variant not in KS_VARIANTS:
        raise ValidationError(f"unknown KS variant {variant!r}")
    t1, t2 = _as_table(a), _as_table(b)
    d = ks_statistic(t1, t2)
    n1, n2 = t1.total, t2.total
    n_e = n1 * n2 / (n1 + n2)
    root = math.sqrt(n_e)
    lam = root * d if variant == "asymptotic" else (root + 0.12 + 0.11 / root) * d
    return KsResult(d, _kolmogorov_p(lam), n1, n2, variant, label)


def holm_adjust(p_values: Sequence[float]) -> list[float]:
    """Holm step-down adjusted p-values, returned in the input order."""
    m = len(p_values)
    for p in p_values:
        if not 0.0 <= p <= 1.0:
            raise ValidationError(f"p-value {p!r} outside [0, 1]")
    order = sorted(range(m), key=lambda i: p_values[i])
    out = [0.0] * m
    running = 0.0
    for pos, idx in enumerate(order):
        running = max(running, min(1.0, (m - pos) * p_values[idx]))
        out[idx] = running
    return out


def bonferroni_adjust(p_values: Sequence[float]) -> list[float]:
    m = len(p_values)
    for p in p_values:
        if not 0.0 <= p <= 1.0:
            raise ValidationError(f"p-value {p!r} outside [0, 1]")
    return [min(1.0, m * p) for p in p_values]


def adjust_pvalues(p_values: Sequence[float], method: str = "holm") -> list[float]:
    if method == "holm":
        return holm_adjust(p_values)
    if method == "bonferroni":
        return bonferroni_adjust(p_values)
    raise ValidationError(f"unknown adjustment method {method!r}")


def draw_panel(pool_ids: Sequence[str], size: int, rng: np.random.Generator) -> list[str]:
    """One lottery draw: the first `size` slots of a partial Fisher-Yates
    shuffle over the sorted pool."""
    n = len(pool_ids)
    if not 1 <= size <= n:
        raise ValidationError(f"panel size {size} impossible for a pool of {n}")
    idx = list(range(n))
    for j in range(size):
        k = j + int(rng.integers(n - j))
        idx[j], idx[k] = idx[k], idx[j]
    return [pool_ids[idx[j]] for j in range(size)]


def _draw_rng(seed: int, draw_index: int) -> np.random.Generator:
    # per-draw generator: repeatable under any execution order
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, draw_index))))


def make_indicator(name: str, pubs: Sequence[PublicationRecord], *,
                   density_convention: str = "loops_allowed",
                   island_min: int = 1,
                   island_max: Optional[int] = None) -> Callable[[Sequence[str]], float]:
    """Bind an indicator name to the windowed publication set.

    The returned callable maps a list of member ids to the indicator value
    for that hypothetical panel. Degenerate cases (a drawn panel whose
    members have no qualifying papers) yield 0.0 instead of failing, so a
    simulation run never dies on an unlucky draw.
    """
    if name not in INDICATORS:
        raise ValidationError(f"unknown indicator {name!r}; expected one of "
                              f"{', '.join(INDICATORS)}")

    def roster_for(member_ids: Sequence[str]) -> PanelRoster:
        return PanelRoster("draw", 0, len(member_ids),
                           [Scholar(i, i) for i in member_ids])

    def coauthor_graph(member_ids):
        return build_coauthorship(roster_for(member_ids), pubs).graph

    if name == "fragmentation_ratio":
        def fn(member_ids: Sequence[str]) -> float:
            g = coauthor_graph(member_ids)
            if g.node_count == 0:
                return 0.0
            _, comps = connected_components(g)
            return len(comps) / len(member_ids)
    elif name == "largest_component_panelist_share":
        def fn(member_ids: Sequence[str]) -> float:
            g = coauthor_graph(member_ids)
            if g.node_count == 0:
                return 0.0
            _, comps = connected_components(g)
            return 100.0 * comps[0].panelist_count / len(member_ids)
    elif name == "density":
        def fn(member_ids: Sequence[str]) -> float:
            g = coauthor_graph(member_ids)
            if g.node_count == 0:
                return 0.0
            return density(g, density_convention)
    elif name == "average_degree":
        def fn(member_ids: Sequence[str]) -> float:
            g = coauthor_graph(member_ids)
            if g.node_count == 0:
                return 0.0
            return average_degree(g)
    else:  # off_island_share
        def fn(member_ids: Sequence[str]) -> float:
            build = build_journal_bipartite(roster_for(member_ids), pubs)
            proj = project_shared_neighbors(build.graph, "left")
            if proj.node_count == 0:
                return 0.0
            cap = island_max if island_max is not None else \
                default_journal_max_size(proj.node_count)
            result = line_islands(proj, IslandParams(island_min, cap))
            return off_island_share(result, proj.panelists())
    return fn


@dataclass
class NullModelRun:
    indicator: str
    observed: float
    percentile: float
    values: list[float]
    samples: int
    seed: Optional[int]
    exhaustive: bool
    panel_size: int
    pool_size: int
    pool_label: str = ""

    def mean(self) -> float:
        return statistics.fmean(self.values)

    def stdev(self) -> float:
        return statistics.stdev(self.values) if len(self.values) > 1 else 0.0

    def to_dict(self) -> dict:
        return {
            "indicator": self.indicator,
            "observed": self.observed,
            "percentile": self.percentile,
            "mean": self.mean(),
            "stdev": self.stdev(),
            "samples": self.samples,
            "seed": self.seed,
            "exhaustive": self.exhaustive,
            "panel_size": self.panel_size,
            "pool_size": self.pool_size,
            "pool_label": self.pool_label,
            "values": self.values,
        }


def percentile_of(values: Sequence[float], observed: float) -> float:
    """Share of draws at or below the observed value, as a percentage."""
    if not values:
        raise ValidationError("percentile needs at least one sampled value")
    return 100.0 * sum(1 for v in values if v <= observed) / len(values)


def null_model_sample(pool_ids: Sequence[str], panel_size: int,
                      indicator_fn: Callable[[Sequence[str]], float],
                      observed: float, *, indicator: str = "",
                      samples: int = 10000, seed: int = 0,
                      exhaustive: bool = False,
                      max_exhaustive: int = 2_000_000,
                      pool_label: str = "") -> NullModelRun:
    """Distribution of an indicator over random (or all) same-size panels
    drawn from the candidate pool."""
    pool = sorted(set(pool_ids))
    if len(pool) != len(pool_ids):
        raise ValidationError("candidate pool contains duplicate ids")
    if not 1 <= panel_size <= len(pool):
        raise ValidationError(f"panel size {panel_size} impossible for a pool "
                              f"of {len(pool)}")
    values: list[float] = []
    if exhaustive:
        total = math.comb(len(pool), panel_size)
        if total > max_exhaustive:
            raise ValidationError(
                f"exhaustive enumeration would visit {total} panels "
                f"(cap {max_exhaustive}); use sampling instead")
        for team in combinations(pool, panel_size):
            values.append(indicator_fn(list(team)))
        run_seed: Optional[int] = None
    else:
        if samples < 1:
            raise ValidationError(f"samples must be >= 1, got {samples}")
        for i in range(samples):
            team = draw_panel(pool, panel_size, _draw_rng(seed, i))
            values.append(indicator_fn(team))
        run_seed = seed
    return NullModelRun(indicator, observed, percentile_of(values, observed),
                        values, len(values), run_seed, exhaustive, panel_size,
                        len(pool), pool_label)
