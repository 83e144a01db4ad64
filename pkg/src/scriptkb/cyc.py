"""Tuple extraction from first-order event rules (Cyc-style corpora).

Rules arrive as s-expressions.  Scanning a rule for ``subEvents``,
``actsInCapacity``, and ``eventOccursAt`` formulas yields census tuples,
with variables instantiated from ``isa`` formulas in the same rule:

* ``(subEvents ?X ?U)`` with ``(isa ?X Bathing)`` and ``(isa ?U
  TurningOffWater)`` gives ``Bathing:subEvents:TurningOffWater``;
* ``actsInCapacity`` pairs the event (third argument) with the actor's
  type: ``DancingProcess-Human:actsInCapacity:Dancer``;
* ``eventOccursAt`` pairs the event type with the place type.

A rule yields tuples only when every variable in it has an ``isa``
binding; a rule with an unbound variable cannot be fully grounded and is
treated as unextractable.  A variable with several bindings yields one
tuple per binding.  When no tuples come out of a rule, an Other tuple is
recorded for each known event named in it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .errors import UnbalancedParen

Sexp = Union[str, list]

SUBEVENTS = "subEvents"
ACTS_IN_CAPACITY = "actsInCapacity"
EVENT_OCCURS_AT = "eventOccursAt"
OTHER = "Other"
OTHER_TAIL = "other"


def is_variable(atom: str) -> bool:
    return atom.startswith("?")


@dataclass(frozen=True)
class ExtractedTuple:
    head: str
    relation: str
    tail: str

    def render(self) -> str:
        return f"{self.head}:{self.relation}:{self.tail}"


def parse_forms(text: str) -> list[Sexp]:
    """Parse all top-level s-expressions; ``;`` starts a line comment."""
    forms: list[Sexp] = []
    stack: list[list] = []
    opens: list[int] = []

    def pos(idx: int) -> tuple[int, int]:
        line = text.count("\n", 0, idx) + 1
        last = text.rfind("\n", 0, idx)
        return line, idx - last if last >= 0 else idx + 1

    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == "(":
            stack.append([])
            opens.append(i)
            i += 1
        elif ch == ")":
            if not stack:
                raise UnbalancedParen("unmatched ')'", *pos(i))
            done = stack.pop()
            opens.pop()
            if stack:
                stack[-1].append(done)
            else:
                forms.append(done)
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            if stack:
                stack[-1].append(text[i:j])
            else:
                forms.append(text[i:j])
            i = j
    if stack:
        raise UnbalancedParen("unclosed '('", *pos(opens[0]))
    return forms


def subforms(form: Sexp) -> Iterator[list]:
    if isinstance(form, list):
        yield form
        for child in form:
            yield from subforms(child)


def atoms(form: Sexp) -> Iterator[str]:
    if isinstance(form, str):
        yield form
    else:
        for child in form:
            yield from atoms(child)


def extract_tuples(form: Sexp, known_events) -> frozenset[ExtractedTuple]:
    """Census tuples from one rule, falling back to Other tuples when the
    rule grounds nothing."""
    bindings: dict[str, list[str]] = {}
    for f in subforms(form):
        if len(f) >= 3 and f[0] == "isa" and isinstance(f[1], str) \
                and is_variable(f[1]) and isinstance(f[2], str) \
                and not is_variable(f[2]):
            bindings.setdefault(f[1], []).append(f[2])

    variables = {a for a in atoms(form) if is_variable(a)}
    tuples: set[ExtractedTuple] = set()
    if variables <= bindings.keys():
        def ground(term) -> list[str]:
            if not isinstance(term, str):
                return []
            if is_variable(term):
                return bindings.get(term, [])
            return [term]

        for f in subforms(form):
            if not f or not isinstance(f[0], str):
                continue
            if f[0] == SUBEVENTS and len(f) >= 3:
                pairs = [(h, t) for h in ground(f[1]) for t in ground(f[2])]
                relation = SUBEVENTS
            elif f[0] == ACTS_IN_CAPACITY and len(f) >= 4:
                pairs = [(h, t) for h in ground(f[3]) for t in ground(f[1])]
                relation = ACTS_IN_CAPACITY
            elif f[0] == EVENT_OCCURS_AT and len(f) >= 3:
                pairs = [(h, t) for h in ground(f[1]) for t in ground(f[2])]
                relation = EVENT_OCCURS_AT
            else:
                continue
            tuples.update(ExtractedTuple(h, relation, t) for h, t in pairs)

    if not tuples:
        known = set(known_events)
        tuples = {ExtractedTuple(a, OTHER, OTHER_TAIL)
                  for a in atoms(form) if a in known}
    return frozenset(tuples)


def extract_all(forms, known_events) -> frozenset[ExtractedTuple]:
    out: set[ExtractedTuple] = set()
    for form in forms:
        out |= extract_tuples(form, known_events)
    return frozenset(out)


@dataclass(frozen=True)
class EventCensusRow:
    event: str
    subevents: int
    roles: int
    places: int
    other: int


@dataclass(frozen=True)
class EventSummary:
    events: int
    scripts: int
    avg_subevents: float
    avg_roles: float
    avg_places: float
    avg_other: float


def event_census(tuples, known_events) -> tuple[list[EventCensusRow], EventSummary]:
    """Per-event counts over a tuple set.

    Only events heading at least one subEvents tuple count as scripts;
    averages run over those scripts.
    """
    by_head: dict[str, set[ExtractedTuple]] = {}
    for t in tuples:
        by_head.setdefault(t.head, set()).add(t)

    rows = []
    for event in sorted(by_head):
        group = by_head[event]
        counts = {rel: sum(1 for t in group if t.relation == rel)
                  for rel in (SUBEVENTS, ACTS_IN_CAPACITY, EVENT_OCCURS_AT, OTHER)}
        if counts[SUBEVENTS] >= 1:
            rows.append(EventCensusRow(event, counts[SUBEVENTS],
                                       counts[ACTS_IN_CAPACITY],
                                       counts[EVENT_OCCURS_AT], counts[OTHER]))
    n = len(rows)
    summary = EventSummary(
        len(set(known_events)), n,
        sum(r.subevents for r in rows) / n if n else 0.0,
        sum(r.roles for r in rows) / n if n else 0.0,
        sum(r.places for r in rows) / n if n else 0.0,
        sum(r.other for r in rows) / n if n else 0.0,
    )
    return rows, summary


def tuple_lines(tuples) -> list[str]:
    return sorted(t.render() for t in tuples)
