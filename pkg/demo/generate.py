#!/usr/bin/env python3
"""Regenerate the demo dataset under demo/data.

Everything is drawn from a fixed seed, so the committed files are
reproducible: two appointed panels whose members collaborate inside a
few tight clusters, and a lottery-drawn control panel whose members
barely know each other. Running an audit over the three should show the
contrast on every indicator.
"""

import csv
import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent
DATA = HERE / "data"

JOURNALS = [f"jrn{i:02d}" for i in range(1, 13)]
# alpha/beta members favour the first few venues, lottery members spread out
CORE, FRINGE = JOURNALS[:4], JOURNALS[4:]


def scholars(prefix, count):
    return [f"{prefix}{i:02d}" for i in range(1, count + 1)]


def write_roster(path, label, year, official, members):
    payload = {
        "panel_label": label,
        "appointment_year": year,
        "official_size": official,
        "members": [{"id": m, "name": m.replace("_", " ").title()}
                    for m in members],
    }
    path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")


def write_csv(path, header, rows):
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def clustered_papers(rng, tag, members, coauthors, year_hi, n_papers):
    """Papers where members co-write with each other and shared coauthors."""
    rows = []
    for i in range(n_papers):
        first = rng.choice(members)
        authors = {first}
        # pull 1-3 collaborators, mostly from the same pool
        for _ in range(rng.randint(1, 3)):
            src = members if rng.random() < 0.55 else coauthors
            authors.add(rng.choice(src))
        journal = rng.choice(CORE if rng.random() < 0.7 else FRINGE)
        if rng.random() < 0.08:
            journal = None          # grey literature, no venue
        rows.append((f"{tag}{i + 1:03d}", rng.randint(year_hi - 20, year_hi),
                     sorted(authors), journal))
    return rows


def solo_papers(rng, tag, members, outsiders, year_hi, n_papers):
    """Papers by control-panel members: solo or with one outside coauthor."""
    rows = []
    for i in range(n_papers):
        who = rng.choice(members)
        authors = [who]
        if rng.random() < 0.6:
            authors.append(rng.choice(outsiders))
        rows.append((f"{tag}{i + 1:03d}", rng.randint(year_hi - 18, year_hi),
                     sorted(set(authors)), rng.choice(JOURNALS)))
    return rows


def affiliation_rows(rng, ids, unis, centres, spread):
    """spread=False piles everyone onto the same two or three institutions."""
    rows = []
    for s in ids:
        uni = rng.choice(unis if spread else unis[:2])
        rows.append((s, uni, "university"))
        if rng.random() < (0.4 if spread else 0.75):
            rows.append((s, rng.choice(centres if spread else centres[:1]),
                         "research_centre"))
        if rng.random() < 0.25:
            rows.append((s, rng.choice(unis), "graduation"))
    # keep one record per (scholar, institution) pair
    seen, out = set(), []
    for r in rows:
        if (r[0], r[1]) not in seen:
            seen.add((r[0], r[1]))
            out.append(r)
    return out


def main():
    rng = random.Random(20240501)
    DATA.mkdir(parents=True, exist_ok=True)

    insiders = scholars("sch", 30)
    outsiders = scholars("co", 20)
    unis = [f"uni_{c}" for c in "abcdefgh"]
    centres = [f"centre_{c}" for c in "xyz"]

    alpha = insiders[:8]                      # sch01..sch08
    beta = insiders[6:14]                     # sch07..sch14, overlaps alpha
    lottery = insiders[19::2]                 # sch20, 22, ... 30

    write_roster(DATA / "alpha_roster.json", "alpha", 2006, 8, alpha)
    write_roster(DATA / "beta_roster.json", "beta", 2012, 8, beta)
    write_roster(DATA / "lottery_roster.json", "lottery", 2019, 6, lottery)

    shared_co = outsiders[:8]                 # the appointed circles share these
    pub_header = ["paper_id", "year", "authors", "journal_id"]
    for label, members, year in (("alpha", alpha, 2006), ("beta", beta, 2012)):
        rows = clustered_papers(rng, label[0], members, shared_co, year, 42)
        write_csv(DATA / f"{label}_pubs.csv", pub_header,
                  [(pid, yr, ";".join(a), j or "") for pid, yr, a, j in rows])
    rows = solo_papers(rng, "l", lottery, outsiders[8:], 2019, 20)
    write_csv(DATA / "lottery_pubs.csv", pub_header,
              [(pid, yr, ";".join(a), j or "") for pid, yr, a, j in rows])

    # one merged corpus covering everyone, for null-model simulations
    merged = []
    for name in ("alpha_pubs.csv", "beta_pubs.csv", "lottery_pubs.csv"):
        with (DATA / name).open(encoding="utf-8") as fh:
            merged.extend(list(csv.reader(fh))[1:])
    write_csv(DATA / "registry_pubs.csv", pub_header,
              sorted(merged, key=lambda r: r[0]))

    aff_header = ["scholar_id", "institution_id", "category"]
    write_csv(DATA / "alpha_affs.csv", aff_header,
              affiliation_rows(rng, alpha + shared_co, unis, centres, False))
    write_csv(DATA / "beta_affs.csv", aff_header,
              affiliation_rows(rng, beta + shared_co, unis, centres, False))
    write_csv(DATA / "lottery_affs.csv", aff_header,
              affiliation_rows(rng, lottery, unis, centres, True))

    pool = {"panel_label": "registry-2019",
            "members": [{"id": s} for s in insiders[14:]]}
    (DATA / "pool.json").write_text(json.dumps(pool, indent=1) + "\n",
                                    encoding="utf-8")

    (HERE / "audit.toml").write_text("""[analysis]
control = "lottery"
importance_k = 5
window_years = 25

[[panel]]
roster = "data/alpha_roster.json"
publications = "data/alpha_pubs.csv"
affiliations = "data/alpha_affs.csv"

[[panel]]
roster = "data/beta_roster.json"
publications = "data/beta_pubs.csv"
affiliations = "data/beta_affs.csv"

[[panel]]
roster = "data/lottery_roster.json"
publications = "data/lottery_pubs.csv"
affiliations = "data/lottery_affs.csv"
""", encoding="utf-8")
    print(f"wrote demo dataset under {DATA}")


if __name__ == "__main__":
    main()
