"""Per-script census and database-level averages.

A concept counts as a script when it has at least one event assertion.
Rows count a script's own assertions only (no inheritance): events (gotos
included, since they are event assertions), roles, places, and "other" =
entry conditions + results + goals + emotions + duration + period + cost +
role scripts.  Published figures for well-known databases ship alongside
so local numbers can be read in context.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .errors import EmptyDatabase
from .kb import KnowledgeBase
from .scripts import EVENT_RE, ROLE_RE, ROLE_SCRIPT_RE

OTHER_PREDICATES = frozenset({
    "entry-condition-of", "result-of", "goal-of", "emotion-of",
    "duration-of", "period-of", "cost-of",
})


@dataclass(frozen=True)
class CensusRow:
    script: str
    subevents: int
    roles: int
    places: int
    other: int


@dataclass(frozen=True)
class SummaryRow:
    scripts: int
    avg_subevents: float
    avg_roles: float
    avg_places: float
    avg_other: float


@dataclass(frozen=True)
class ReferenceRow:
    """A published census row, kept as display strings to preserve the
    precision the figures were reported with."""

    name: str
    scripts: str
    subevents: str
    roles: str
    places: str
    other: str


PUBLISHED = (
    ReferenceRow("Cyc", "185", "1.71", "0.032", "0.092", "15.76"),
    ReferenceRow("FrameNet", "20", "0", "4.94", "0", "0"),
    ReferenceRow("Gordon's EPs", "768", "3.12", "6.14", "1.71", "1.29"),
    ReferenceRow("ThoughtTreasure", "93", "8.57", "5.30", "0.86", "6.10"),
    ReferenceRow("WordNet 1.6", "427", "1.06", "0", "0", "0"),
)


def census(kb: KnowledgeBase) -> list[CensusRow]:
    """One row per script concept, name ascending."""
    rows = []
    for concept in kb.script_concepts():
        subevents = roles = places = other = 0
        for a in kb.assertions_about(concept):
            pred = a.predicate
            if EVENT_RE.fullmatch(pred):
                subevents += 1
            elif ROLE_RE.fullmatch(pred):
                roles += 1
            elif pred == "performed-in":
                places += 1
            elif pred in OTHER_PREDICATES or ROLE_SCRIPT_RE.fullmatch(pred):
                other += 1
        rows.append(CensusRow(concept, subevents, roles, places, other))
    return rows


def summary(kb: KnowledgeBase) -> SummaryRow:
    rows = census(kb)
    if not rows:
        raise EmptyDatabase("no scripts loaded; averages are undefined")
    n = len(rows)
    return SummaryRow(
        n,
        sum(r.subevents for r in rows) / n,
        sum(r.roles for r in rows) / n,
        sum(r.places for r in rows) / n,
        sum(r.other for r in rows) / n,
    )


# -- rendering ----------------------------------------------------------------

_COMPARISON_HEADER = ("Name", "Scripts (#)", "Subevents (#/script)",
                      "Roles (#/script)", "Places (#/script)", "Other (#/script)")


def format_census(rows) -> str:
    header = ("Script", "Subevents", "Roles", "Places", "Other")
    table = [header] + [
        (r.script, str(r.subevents), str(r.roles), str(r.places), str(r.other))
        for r in rows]
    return _align(table)


def format_comparison(local: SummaryRow) -> str:
    table = [_COMPARISON_HEADER]
    table.append(("local database", str(local.scripts),
                  f"{local.avg_subevents:.2f}", f"{local.avg_roles:.2f}",
                  f"{local.avg_places:.2f}", f"{local.avg_other:.2f}"))
    for row in PUBLISHED:
        table.append((f"{row.name} (published)", row.scripts, row.subevents,
                      row.roles, row.places, row.other))
    return _align(table)


def census_csv(kb: KnowledgeBase) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["script", "subevents", "roles", "places", "other"])
    rows = census(kb)
    for r in rows:
        writer.writerow([r.script, r.subevents, r.roles, r.places, r.other])
    if rows:
        s = summary(kb)
        writer.writerow([])
        writer.writerow(["scripts", "avg_subevents", "avg_roles", "avg_places",
                         "avg_other"])
        writer.writerow([s.scripts, f"{s.avg_subevents:.2f}", f"{s.avg_roles:.2f}",
                         f"{s.avg_places:.2f}", f"{s.avg_other:.2f}"])
    return out.getvalue()


def _align(table) -> str:
    widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
    lines = []
    for row in table:
        cells = [row[0].ljust(widths[0])]
        cells += [row[i].rjust(widths[i]) for i in range(1, len(row))]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)
