"""Script views over a concept's assertions.

A script gathers the field assertions of one concept: numbered roles and
role scripts, an event timeline, entry conditions, results, goals,
emotions, places, duration, period, and cost.  Events sharing an index are
simultaneous; a ``[goto eventNN-of]`` pseudo-event restarts the timeline
at an earlier group and has no exit condition, so unrolling is bounded by
a caller-supplied limit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    BadGotoTarget,
    MalformedField,
    RoleTypeMismatch,
    TooManyBindings,
    UnknownConcept,
)
from .kb import KnowledgeBase
from .terms import NA, Assertion, Measure, NaType, Term, term_symbols

EVENT_RE = re.compile(r"event(\d{2})-of")
ROLE_RE = re.compile(r"role(\d{2})-of")
ROLE_SCRIPT_RE = re.compile(r"role(\d{2})-script-of")

SCALAR_PREDICATES = {"duration-of": "duration", "period-of": "period", "cost-of": "cost"}
LIST_PREDICATES = {
    "entry-condition-of": "entry_conditions",
    "result-of": "results",
    "goal-of": "goals",
    "emotion-of": "emotions",
}
PLACE_PREDICATE = "performed-in"


@dataclass(frozen=True)
class EventGroup:
    """Events sharing one index, considered roughly simultaneous."""

    index: int
    events: tuple = ()
    goto_target: int | None = None


@dataclass
class Script:
    concept: str
    roles: dict[int, str] = field(default_factory=dict)
    role_scripts: dict[int, str] = field(default_factory=dict)
    events: tuple = ()
    entry_conditions: tuple = ()
    results: tuple = ()
    goals: tuple = ()
    emotions: tuple = ()
    places: tuple = ()
    duration: Measure | None = None
    period: Measure | None = None
    cost: Measure | None = None


@dataclass(frozen=True)
class Finding:
    severity: str
    code: str
    message: str


@dataclass(frozen=True)
class FieldValue:
    """A field value together with the concept it came from."""

    value: object
    source: str
    inherited: bool


def _goto_target(term: Term) -> int | None:
    if isinstance(term, Assertion) and term.predicate == "goto" \
            and len(term.args) == 1 and isinstance(term.args[0], str):
        m = EVENT_RE.fullmatch(term.args[0])
        if m:
            return int(m.group(1))
    return None


def build_script(kb: KnowledgeBase, concept: str) -> Script:
    """Materialize the script view of a concept from its assertions.

    Assertions are grouped by predicate with file order preserved; the
    first value wins for scalar fields.  Raises MalformedField when a field
    argument has the wrong shape (e.g. duration without a measure).
    """
    assertions = kb.assertions_about(concept)
    script = Script(concept)
    groups: dict[int, list[Term]] = {}
    gotos: dict[int, int] = {}

    for a in assertions:
        pred = a.predicate
        value = a.args[1] if len(a.args) > 1 else None
        if m := ROLE_RE.fullmatch(pred):
            if not isinstance(value, str):
                raise MalformedField(f"{concept}: {pred} needs a concept argument")
            script.roles.setdefault(int(m.group(1)), value)
        elif m := ROLE_SCRIPT_RE.fullmatch(pred):
            if not isinstance(value, str):
                raise MalformedField(f"{concept}: {pred} needs a concept argument")
            script.role_scripts.setdefault(int(m.group(1)), value)
        elif m := EVENT_RE.fullmatch(pred):
            if value is None:
                raise MalformedField(f"{concept}: {pred} needs an event argument")
            index = int(m.group(1))
            groups.setdefault(index, []).append(value)
            target = _goto_target(value)
            if target is not None:
                gotos.setdefault(index, target)
        elif pred in SCALAR_PREDICATES:
            if not isinstance(value, Measure):
                raise MalformedField(f"{concept}: {pred} needs a measure argument")
            name = SCALAR_PREDICATES[pred]
            if getattr(script, name) is None:
                setattr(script, name, value)
        elif pred in LIST_PREDICATES:
            if value is None:
                raise MalformedField(f"{concept}: {pred} needs an argument")
            name = LIST_PREDICATES[pred]
            setattr(script, name, getattr(script, name) + (value,))
        elif pred == PLACE_PREDICATE:
            if not isinstance(value, str):
                raise MalformedField(f"{concept}: {pred} needs a place argument")
            script.places = script.places + (value,)

    script.roles = dict(sorted(script.roles.items()))
    script.role_scripts = dict(sorted(script.role_scripts.items()))
    script.events = tuple(
        EventGroup(i, tuple(groups[i]), gotos.get(i)) for i in sorted(groups))
    return script


def is_script(kb: KnowledgeBase, concept: str) -> bool:
    """A concept is a script when it has at least one event assertion of its own."""
    return any(EVENT_RE.fullmatch(a.predicate) for a in kb.assertions_about(concept))


def timeline(script: Script, unroll_limit: int = 3) -> list[EventGroup]:
    """Flatten the timeline, following gotos at most ``unroll_limit`` times.

    Groups come out in index order; a goto restarts emission at its target
    group and emission stops once the jump budget is spent.  Goto groups
    themselves are not emitted.
    """
    if unroll_limit < 0:
        raise ValueError("unroll_limit must be nonnegative")
    position = {g.index: i for i, g in enumerate(script.events)}
    out: list[EventGroup] = []
    jumps = 0
    i = 0
    while i < len(script.events):
        group = script.events[i]
        if group.goto_target is not None:
            if group.goto_target not in position:
                raise BadGotoTarget(
                    f"{script.concept}: goto targets missing group "
                    f"{group.goto_target:02d}")
            if jumps >= unroll_limit:
                break
            jumps += 1
            i = position[group.goto_target]
            continue
        out.append(group)
        i += 1
    return out


def instance_assertion(kb: KnowledgeBase, script: Script, bindings) -> Assertion:
    """Assertion about a script instance: predicate is the script concept and
    the arguments fill the numbered roles in order.

    Each binding must be a descendant of (or equal to) its role concept;
    ``na`` leaves a role unfilled.
    """
    role_items = sorted(script.roles.items())
    if len(bindings) > len(role_items):
        raise TooManyBindings(
            f"{script.concept} has {len(role_items)} roles, got {len(bindings)} bindings")
    args: list[Term] = []
    for (index, role_concept), binding in zip(role_items, bindings):
        if isinstance(binding, NaType) or binding == "na":
            args.append(NA)
            continue
        if binding not in kb.ontology:
            raise UnknownConcept(binding)
        if not kb.ontology.is_a(binding, role_concept):
            raise RoleTypeMismatch(
                f"{binding!r} does not fill role {index:02d} ({role_concept})")
        args.append(binding)
    return Assertion(script.concept, tuple(args))


def validate(kb: KnowledgeBase, script: Script) -> list[Finding]:
    """Sanity findings for a script; errors, warnings, and notes, not exceptions."""
    findings: list[Finding] = []

    indices = list(script.roles)
    if indices and indices != list(range(1, len(indices) + 1)):
        findings.append(Finding("error", "RoleGap",
                                f"role indices {indices} are not contiguous from 01"))
    for index in script.role_scripts:
        if index not in script.roles:
            findings.append(Finding("warning", "RoleScriptWithoutRole",
                                    f"role{index:02d}-script-of has no matching role"))

    group_indices = {g.index for g in script.events}
    for g in script.events:
        if not g.events:
            findings.append(Finding("error", "EmptyEventGroup",
                                    f"event group {g.index:02d} is empty"))
        if g.goto_target is not None:
            if g.goto_target not in group_indices:
                findings.append(Finding("error", "BadGotoTarget",
                                        f"goto in group {g.index:02d} targets missing "
                                        f"group {g.goto_target:02d}"))
            if len(g.events) > 1:
                findings.append(Finding("warning", "GotoNotAlone",
                                        f"group {g.index:02d} mixes a goto with other "
                                        f"events"))

    for measure, label in ((script.duration, "duration"), (script.period, "period")):
        if measure is not None and measure.quantity <= 0:
            findings.append(Finding("error", "NonPositiveMeasure",
                                    f"{label} must be positive, got {measure.text}"))
    if script.cost is not None and script.cost.quantity < 0:
        findings.append(Finding("error", "NonPositiveMeasure",
                                f"cost must not be negative, got {script.cost.text}"))

    counts: dict[str, int] = {}
    if script.concept in kb.ontology:
        for a in kb.assertions_about(script.concept):
            if a.predicate in SCALAR_PREDICATES or ROLE_RE.fullmatch(a.predicate) \
                    or ROLE_SCRIPT_RE.fullmatch(a.predicate):
                counts[a.predicate] = counts.get(a.predicate, 0) + 1
    for pred, count in counts.items():
        if count > 1:
            findings.append(Finding("warning", "DuplicateField",
                                    f"{pred} given {count} times; first wins"))

    role_concepts = set(script.roles.values())
    flagged: set[str] = set()
    for g in script.events:
        for term in g.events:
            if _goto_target(term) is not None:
                continue
            args = term.args if isinstance(term, Assertion) else ()
            for sym in args:
                for name in term_symbols(sym, include_predicates=False):
                    if name in flagged:
                        continue
                    if not _role_related(kb, name, role_concepts):
                        flagged.add(name)
                        findings.append(Finding(
                            "info", "EventArgOutsideRoles",
                            f"event argument {name!r} names no declared role "
                            f"concept (nor an ancestor or descendant of one)"))
    return findings


def _role_related(kb: KnowledgeBase, name: str, role_concepts: set[str]) -> bool:
    if name not in kb.ontology:
        return False
    for rc in role_concepts:
        if rc in kb.ontology and (
                kb.ontology.is_a(name, rc) or kb.ontology.is_a(rc, name)):
            return True
    return False


_INHERITABLE = {"duration", "period", "cost", "places"}


def inherited_field(kb: KnowledgeBase, concept: str, fieldname: str) -> FieldValue | None:
    """Scalar field with ancestor fallback: the concept's own value when set,
    otherwise the nearest ancestor's.  Events and roles never inherit."""
    if fieldname not in _INHERITABLE:
        raise ValueError(f"field {fieldname!r} does not support inheritance")
    for source in [concept] + kb.ontology.ancestors(concept):
        value = getattr(build_script(kb, source), fieldname)
        if value is not None and value != ():
            return FieldValue(value, source, source != concept)
    return None
