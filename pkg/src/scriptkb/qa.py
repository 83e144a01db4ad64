"""Template question answering over script fields.

Nine question shapes are recognized; the blank is a lexicon phrase.
Answers are structured data traceable to stored assertions or inherited
fields; an empty payload means "unknown" and is never an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import NotAScript, UnknownConcept, UnknownSubjectPhrase, UnrecognizedTemplate
from .kb import KnowledgeBase, instance_base
from .ontology import Language
from .recognizer import mention_set
from .scripts import build_script, inherited_field, is_script, timeline
from .terms import term_symbols


class QuestionKind(Enum):
    WHAT_DOES = "what-does"
    USED_FOR = "used-for"
    WHERE_FOUND = "where-found"
    CONSIST_OF = "consist-of"
    RESULT_OF = "result-of"
    WHERE_DOES_ONE = "where-does-one"
    HOW_LONG = "how-long"
    HOW_OFTEN = "how-often"
    HOW_MUCH = "how-much"


SCRIPT_KINDS = frozenset({
    QuestionKind.CONSIST_OF, QuestionKind.RESULT_OF, QuestionKind.WHERE_DOES_ONE,
    QuestionKind.HOW_LONG, QuestionKind.HOW_OFTEN, QuestionKind.HOW_MUCH,
})

# more specific templates first: "...consist of" must win over "...do"
_TEMPLATES: list[tuple[QuestionKind, re.Pattern]] = [
    (QuestionKind.CONSIST_OF, re.compile(r"what does (.+) consist of", re.I)),
    (QuestionKind.RESULT_OF, re.compile(r"what is the result of (.+)", re.I)),
    (QuestionKind.USED_FOR, re.compile(r"what is (.+) used for", re.I)),
    (QuestionKind.WHERE_FOUND, re.compile(r"where is (.+) found", re.I)),
    (QuestionKind.WHERE_DOES_ONE, re.compile(r"where does one (.+)", re.I)),
    (QuestionKind.HOW_LONG, re.compile(r"how long does (.+) take", re.I)),
    (QuestionKind.HOW_OFTEN, re.compile(r"how often does one (.+)", re.I)),
    (QuestionKind.HOW_MUCH, re.compile(r"how much does (.+) cost", re.I)),
    (QuestionKind.WHAT_DOES, re.compile(r"what does (.+) do", re.I)),
]

_RENDER = {
    QuestionKind.WHAT_DOES: "What does a {} do?",
    QuestionKind.USED_FOR: "What is a {} used for?",
    QuestionKind.WHERE_FOUND: "Where is a {} found?",
    QuestionKind.CONSIST_OF: "What does {} consist of?",
    QuestionKind.RESULT_OF: "What is the result of {}?",
    QuestionKind.WHERE_DOES_ONE: "Where does one {}?",
    QuestionKind.HOW_LONG: "How long does {} take?",
    QuestionKind.HOW_OFTEN: "How often does one {}?",
    QuestionKind.HOW_MUCH: "How much does {} cost?",
}

_ARTICLE_RE = re.compile(r"(a|an|the)\s+", re.I)


@dataclass(frozen=True)
class Question:
    kind: QuestionKind
    subject: str
    note: str | None = None


@dataclass(frozen=True)
class RoleUse:
    script: str
    role_index: int
    role_script: str | None
    events: tuple


@dataclass(frozen=True)
class Usage:
    script: str
    events: tuple


@dataclass(frozen=True)
class Answer:
    kind: QuestionKind
    subject: str
    payload: object
    sources: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()


def parse_question(kb: KnowledgeBase, text: str) -> Question:
    """Match one of the nine templates and resolve the blank via the lexicon.

    Leading articles are stripped before lookup.  An ambiguous phrase picks
    the first script-compatible concept and records a note.
    """
    normalized = re.sub(r"\s+", " ", text).strip().rstrip("?.! ")
    for kind, pattern in _TEMPLATES:
        m = pattern.fullmatch(normalized)
        if not m:
            continue
        phrase = m.group(1).strip()
        stripped = _ARTICLE_RE.match(phrase)
        if stripped:
            phrase = phrase[stripped.end():]
        candidates = kb.ontology.lookup_phrase(phrase, Language.ENGLISH)
        if not candidates:
            raise UnknownSubjectPhrase(f"no concept for phrase {phrase!r}")
        subject = candidates[0]
        if kind in SCRIPT_KINDS:
            subject = next((c for c in candidates if is_script(kb, c)), candidates[0])
        note = None
        if len(candidates) > 1:
            note = (f"phrase {phrase!r} is ambiguous ({', '.join(candidates)}); "
                    f"using {subject!r}")
        return Question(kind, subject, note)
    raise UnrecognizedTemplate(f"question does not match any template: {text!r}")


def render_question(kb: KnowledgeBase, question: Question) -> str:
    """Surface form of a question, using the subject's first English phrase."""
    phrases = kb.ontology.lexemes_of(question.subject, Language.ENGLISH)
    phrase = phrases[0] if phrases else question.subject.replace("-", " ")
    return _RENDER[question.kind].format(phrase)


def answer(kb: KnowledgeBase, question: Question) -> Answer:
    if question.subject not in kb.ontology:
        raise UnknownConcept(question.subject)
    if question.kind in SCRIPT_KINDS and not is_script(kb, question.subject):
        raise NotAScript(f"{question.subject!r} has no events")
    notes = (question.note,) if question.note else ()
    payload, sources = _ANSWERERS[question.kind](kb, question.subject)
    return Answer(question.kind, question.subject, payload, tuple(sources), notes)


def _events_mentioning(script, concept):
    out = []
    for group in script.events:
        for term in group.events:
            if concept in term_symbols(term):
                out.append(term)
    return tuple(out)


def _what_does(kb, subject):
    items = []
    for name in kb.script_concepts():
        script = build_script(kb, name)
        for index, role_concept in script.roles.items():
            if kb.ontology.is_a(subject, role_concept):
                items.append(RoleUse(name, index, script.role_scripts.get(index),
                                     _events_mentioning(script, role_concept)))
                break
    return items, [item.script for item in items]


def _used_for(kb, subject):
    items = []
    for name in kb.script_concepts():
        script = build_script(kb, name)
        if subject in mention_set(script):
            items.append(Usage(name, _events_mentioning(script, subject)))
    return items, [item.script for item in items]


def _where_found(kb, subject):
    places: list[str] = []
    sources: list[str] = []
    for name in kb.script_concepts():
        script = build_script(kb, name)
        if subject in mention_set(script):
            sources.append(name)
            places.extend(script.places)
    for grid_name in sorted(kb.grids):
        grid = kb.grids[grid_name]
        if subject in grid.legend.values():
            sources.append(grid_name)
            base = instance_base(grid_name)
            places.append(base if base and base in kb.ontology else grid_name)
    return list(dict.fromkeys(places)), sources


def _consist_of(kb, subject):
    return timeline(build_script(kb, subject), 0), [subject]


def _result_of(kb, subject):
    return list(build_script(kb, subject).results), [subject]


def _inherited(fieldname):
    def answerer(kb, subject):
        fv = inherited_field(kb, subject, fieldname)
        if fv is None:
            return None, []
        value = list(fv.value) if fieldname == "places" else fv.value
        return value, [fv.source]
    return answerer


_ANSWERERS = {
    QuestionKind.WHAT_DOES: _what_does,
    QuestionKind.USED_FOR: _used_for,
    QuestionKind.WHERE_FOUND: _where_found,
    QuestionKind.CONSIST_OF: _consist_of,
    QuestionKind.RESULT_OF: _result_of,
    QuestionKind.WHERE_DOES_ONE: _inherited("places"),
    QuestionKind.HOW_LONG: _inherited("duration"),
    QuestionKind.HOW_OFTEN: _inherited("period"),
    QuestionKind.HOW_MUCH: _inherited("cost"),
}
