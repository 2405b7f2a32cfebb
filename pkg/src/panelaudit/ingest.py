"""Input records and loaders.

File formats:

* roster / candidate pool: JSON object with ``panel_label``,
  ``appointment_year``, ``official_size`` and ``members`` (list of
  ``{"id": ..., "name": ...}``).
* publications: CSV with header ``paper_id,year,authors,journal_id``
  (authors joined by ``;``), or JSON lines with the same fields and
  ``authors`` as a list.
* affiliations: CSV with header ``scholar_id,institution_id,category``.

Loaders raise ValidationError with the offending line number so the CLI
can point at the exact input row.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .errors import ValidationError

log = logging.getLogger(__name__)

YEAR_MIN = 1900
YEAR_MAX = 2100

# Scholars self-report at most this many affiliations per category.
AFFILIATION_CAPS = {
    "graduation": 2,
    "postgraduate": 2,
    "university": 2,
    "research_centre": 5,
    "media": 5,
}


class IngestError(ValidationError):
    pass


@dataclass(frozen=True)
class Scholar:
    id: str
    name: str


@dataclass
class PanelRoster:
    """Composition of one evaluation panel.

    official_size is the size fixed by the call (it can exceed the listed
    members when some were never identified in the data); window bounds
    for publications derive from the appointment year.
    """

    panel_label: str
    appointment_year: int
    official_size: int
    members: list[Scholar]

    def member_ids(self) -> list[str]:
        return [m.id for m in self.members]

    def window(self, window_years: int = 25) -> tuple[int, int]:
        """Inclusive (start, end) years: the appointment year and the
        window_years - 1 years before it."""
        if window_years < 1:
            raise IngestError(f"window_years must be >= 1, got {window_years}")
        return self.appointment_year - (window_years - 1), self.appointment_year


@dataclass
class CandidatePool:
    label: str
    members: list[Scholar]

    def member_ids(self) -> list[str]:
        return [m.id for m in self.members]


@dataclass(frozen=True)
class PublicationRecord:
    paper_id: str
    year: int
    authors: tuple[str, ...]
    journal_id: Optional[str] = None


@dataclass(frozen=True)
class AffiliationRecord:
    scholar_id: str
    institution_id: str
    category: str


def _parse_members(raw, where: str) -> list[Scholar]:
    if not isinstance(raw, list) or not raw:
        raise IngestError(f"{where}: 'members' must be a non-empty list")
    members = []
    seen: set[str] = set()
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or "id" not in entry:
            raise IngestError(f"{where}: member #{i + 1} must be an object with an 'id'")
        sid = str(entry["id"]).strip()
        if not sid:
            raise IngestError(f"{where}: member #{i + 1} has an empty id")
        if sid in seen:
            raise IngestError(f"{where}: duplicate member id {sid!r}")
        seen.add(sid)
        members.append(Scholar(sid, str(entry.get("name", sid)).strip() or sid))
    return members


def _check_year(value, where: str) -> int:
    try:
        year = int(value)
    except (TypeError, ValueError):
        raise IngestError(f"{where}: year {value!r} is not an integer") from None
    if not YEAR_MIN <= year <= YEAR_MAX:
        raise IngestError(f"{where}: year {year} outside [{YEAR_MIN}, {YEAR_MAX}]")
    return year


def load_roster(path) -> PanelRoster:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise IngestError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise IngestError(f"{path}: expected a JSON object")
    for key in ("panel_label", "appointment_year", "members"):
        if key not in data:
            raise IngestError(f"{path}: missing required key {key!r}")
    members = _parse_members(data["members"], str(path))
    year = _check_year(data["appointment_year"], str(path))
    official = data.get("official_size")
    if official is None:
        official = len(members)
        log.warning("%s: official_size missing, using listed member count %d",
                    path, official)
    official = int(official)
    if official < len(members):
        raise IngestError(f"{path}: official_size {official} below listed "
                          f"member count {len(members)}")
    return PanelRoster(str(data["panel_label"]), year, official, members)


def load_pool(path) -> CandidatePool:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise IngestError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "members" not in data:
        raise IngestError(f"{path}: expected a JSON object with 'members'")
    members = _parse_members(data["members"], str(path))
    label = str(data.get("panel_label") or data.get("pool_label") or "")
    return CandidatePool(label, members)


def _pub_from_fields(paper_id, year, authors: Sequence[str], journal_id,
                     where: str, seen_ids: set[str]) -> PublicationRecord:
    pid = str(paper_id).strip()
    if not pid:
        raise IngestError(f"{where}: empty paper_id")
    if pid in seen_ids:
        raise IngestError(f"{where}: duplicate paper_id {pid!r}")
    seen_ids.add(pid)
    yr = _check_year(year, where)
    cleaned: list[str] = []
    for a in authors:
        a = str(a).strip()
        if not a:
            raise IngestError(f"{where}: empty author id")
        if a in cleaned:
            log.warning("%s: author %r repeated on paper %r, keeping one", where, a, pid)
            continue
        cleaned.append(a)
    if not cleaned:
        raise IngestError(f"{where}: no authors for paper {pid!r}")
    jid = str(journal_id).strip() if journal_id is not None else ""
    return PublicationRecord(pid, yr, tuple(cleaned), jid or None)


def load_publications(path, format: Optional[str] = None) -> list[PublicationRecord]:
    """Load publication records from CSV or JSON lines.

    format may be 'csv' or 'jsonl'; by default it is inferred from the
    file extension.
    """
    path = Path(path)
    if format is None:
        suffix = path.suffix.lower()
        if suffix == ".csv":
            format = "csv"
        elif suffix in (".jsonl", ".ndjson"):
            format = "jsonl"
        else:
            raise IngestError(f"{path}: cannot infer format from extension {suffix!r}")
    if format not in ("csv", "jsonl"):
        raise IngestError(f"unknown publications format {format!r}")

    records: list[PublicationRecord] = []
    seen: set[str] = set()
    if format == "csv":
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            expected = ["paper_id", "year", "authors", "journal_id"]
            if reader.fieldnames != expected:
                raise IngestError(f"{path}: header must be {','.join(expected)}, "
                                  f"got {reader.fieldnames}")
            for lineno, row in enumerate(reader, start=2):
                where = f"{path}:{lineno}"
                authors = [a for a in (row["authors"] or "").split(";")]
                records.append(_pub_from_fields(row["paper_id"], row["year"],
                                                authors, row["journal_id"],
                                                where, seen))
    else:
        with path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                where = f"{path}:{lineno}"
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise IngestError(f"{where}: invalid JSON: {exc}") from None
                if not isinstance(obj, dict):
                    raise IngestError(f"{where}: expected a JSON object")
                for key in ("paper_id", "year", "authors"):
                    if key not in obj:
                        raise IngestError(f"{where}: missing key {key!r}")
                authors = obj["authors"]
                if not isinstance(authors, list):
                    raise IngestError(f"{where}: 'authors' must be a list")
                records.append(_pub_from_fields(obj["paper_id"], obj["year"],
                                                authors, obj.get("journal_id"),
                                                where, seen))
    return records


def filter_window(pubs: Sequence[PublicationRecord], roster: PanelRoster,
                  window_years: int = 25) -> list[PublicationRecord]:
    """Keep publications inside the roster's appointment window."""
    start, end = roster.window(window_years)
    return [p for p in pubs if start <= p.year <= end]


def load_affiliations(path) -> list[AffiliationRecord]:
    path = Path(path)
    records: list[AffiliationRecord] = []
    counts: dict[tuple[str, str], int] = {}
    seen: set[tuple[str, str]] = set()
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        expected = ["scholar_id", "institution_id", "category"]
        if reader.fieldnames != expected:
            raise IngestError(f"{path}: header must be {','.join(expected)}, "
                              f"got {reader.fieldnames}")
        for lineno, row in enumerate(reader, start=2):
            where = f"{path}:{lineno}"
            sid = (row["scholar_id"] or "").strip()
            iid = (row["institution_id"] or "").strip()
            cat = (row["category"] or "").strip()
            if not sid or not iid:
                raise IngestError(f"{where}: scholar_id and institution_id required")
            if cat not in AFFILIATION_CAPS:
                raise IngestError(f"{where}: unknown category {cat!r}; expected one of "
                                  f"{sorted(AFFILIATION_CAPS)}")
            if (sid, iid) in seen:
                raise IngestError(f"{where}: duplicate affiliation {sid!r} -> {iid!r}")
            seen.add((sid, iid))
            counts[(sid, cat)] = counts.get((sid, cat), 0) + 1
            if counts[(sid, cat)] > AFFILIATION_CAPS[cat]:
                raise IngestError(f"{where}: scholar {sid!r} exceeds the "
                                  f"{AFFILIATION_CAPS[cat]} allowed {cat!r} entries")
            records.append(AffiliationRecord(sid, iid, cat))
    return records
