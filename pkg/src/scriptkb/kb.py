"""Knowledge base: parsed blocks, hierarchy, lexicon, and grids in one place.

Loading merges any number of files.  ``ako`` assertions supply hierarchy
parents.  Symbols that are referenced but never declared are auto-registered
as children of the root with a warning, since source excerpts routinely
mention concepts defined elsewhere.  A trailing-digit name like
``hotel-room1`` is treated as an instance and re-parented under its base
concept when the base exists.  After the cycle check the base is immutable
and all queries are pure reads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .diagnostics import ERROR, WARNING, Diagnostic
from .errors import KbError, MalformedHeader, UnknownConcept
from .grid import Grid, parse_grid
from .ontology import ROOT, Ontology
from .parser import ParseResult, parse_database
from .terms import DEFAULT_UNITS, Assertion, ObjectBlock, term_symbols

_INSTANCE_RE = re.compile(r"(.+?)\d+$")
_EVENT_RE = re.compile(r"event\d{2}-of")

# predicates the file format itself defines; registered without a warning
_STRUCTURAL_RE = re.compile(r"(?:event|role)\d{2}-of|role\d{2}-script-of")
_STRUCTURAL = frozenset({
    "ako", "goto", "performed-in", "duration-of", "period-of", "cost-of",
    "entry-condition-of", "result-of", "goal-of", "emotion-of",
})


def _is_structural(symbol: str) -> bool:
    return symbol in _STRUCTURAL or bool(_STRUCTURAL_RE.fullmatch(symbol))


def instance_base(name: str) -> str | None:
    """Base concept name for instance-style names: hotel-room1 -> hotel-room."""
    m = _INSTANCE_RE.fullmatch(name)
    return m.group(1) if m else None


@dataclass
class KnowledgeBase:
    ontology: Ontology = field(default_factory=Ontology)
    blocks: list[ObjectBlock] = field(default_factory=list)
    grids: dict[str, Grid] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    _by_subject: dict[str, list[Assertion]] = field(default_factory=dict)

    # -- queries -------------------------------------------------------------

    def __contains__(self, concept: str) -> bool:
        return concept in self.ontology

    def assertions_about(self, concept: str) -> tuple[Assertion, ...]:
        """All loaded assertions whose first argument is the concept, in file order."""
        if concept not in self.ontology:
            raise UnknownConcept(concept)
        return tuple(self._by_subject.get(concept, ()))

    def script_concepts(self) -> list[str]:
        """Concepts with at least one event assertion, sorted by name."""
        out = []
        for concept, assertions in self._by_subject.items():
            if any(_EVENT_RE.fullmatch(a.predicate) for a in assertions):
                out.append(concept)
        return sorted(out)

    # -- loading -------------------------------------------------------------

    @classmethod
    def from_texts(cls, named_texts, units=DEFAULT_UNITS) -> "KnowledgeBase":
        """Build a base from (name, text) pairs, merged in order."""
        kb = cls()
        results = [parse_database(text, filename=str(name), units=units)
                   for name, text in named_texts]
        kb._assemble(results)
        return kb

    @classmethod
    def from_paths(cls, paths, units=DEFAULT_UNITS) -> "KnowledgeBase":
        texts = [(str(p), Path(p).read_text(encoding="utf-8")) for p in paths]
        return cls.from_texts(texts, units=units)

    def _assemble(self, results: list[ParseResult]) -> None:
        for r in results:
            self.diagnostics.extend(r.diagnostics)

        merged: dict[str, ObjectBlock] = {}
        for r in results:
            for block in r.blocks:
                if block.concept in merged:
                    self.diagnostics.append(Diagnostic(
                        block.file, block.line, 1, WARNING, "DuplicateBlock",
                        f"duplicate Object block for {block.concept!r}; "
                        f"assertions appended"))
                    first = merged[block.concept]
                    first.lexicon.extend(block.lexicon)
                    first.assertion_lines = (
                        [first.assertion_line(i) for i in range(len(first.assertions))]
                        + [block.assertion_line(i) for i in range(len(block.assertions))])
                    first.assertions.extend(block.assertions)
                else:
                    merged[block.concept] = block
                    self.blocks.append(block)

        for r in results:
            for src in r.grid_sources:
                try:
                    grid, gdiags = parse_grid(src.text, filename=src.file, line=src.line)
                except MalformedHeader as e:
                    self.diagnostics.append(Diagnostic(
                        src.file, e.line or src.line, e.col or 1, ERROR,
                        "MalformedHeader", e.message))
                    continue
                self.diagnostics.extend(gdiags)
                if grid.name in self.grids:
                    self.diagnostics.append(Diagnostic(
                        src.file, src.line, 1, WARNING, "DuplicateGrid",
                        f"grid {grid.name!r} defined again; last definition wins"))
                self.grids[grid.name] = grid

        # hierarchy links come from ako assertions anywhere in the files
        ako_parents: dict[str, list[str]] = {}
        for block in self.blocks:
            for i, a in enumerate(block.assertions):
                if a.predicate == "ako" and a.args and isinstance(a.args[0], str):
                    child = a.args[0]
                    for parent in a.args[1:]:
                        if isinstance(parent, str):
                            ako_parents.setdefault(child, []).append(parent)
                        else:
                            self.diagnostics.append(Diagnostic(
                                block.file, block.assertion_line(i), 1, WARNING,
                                "BadAkoArgument",
                                f"ignoring non-symbol ako argument in {a.render()}"))

        ontology = self.ontology
        if ROOT not in ontology:
            ontology.add_concept(ROOT)
        for block in self.blocks:
            if block.concept not in ontology:
                ontology.add_concept(block.concept, ako_parents.get(block.concept, ()))

        mentioned: dict[str, tuple[str, int]] = {}

        def mention(sym, file, line):
            if sym not in mentioned:
                mentioned[sym] = (file, line)

        for block in self.blocks:
            for i, a in enumerate(block.assertions):
                for sym in term_symbols(a):
                    mention(sym, block.file, block.assertion_line(i))
        for grid in self.grids.values():
            mention(grid.name, grid.file, grid.line)
            for concept in grid.legend.values():
                mention(concept, grid.file, grid.line)
            for concept in grid.extended_keys.values():
                mention(concept, grid.file, grid.line)

        auto: list[str] = []
        for sym, (file, line) in mentioned.items():
            if sym not in ontology:
                try:
                    ontology.add_concept(sym, ako_parents.get(sym, ()))
                except KbError:
                    # grid names and legend values are free-form text; a name
                    # the hierarchy cannot hold is reported, not registered
                    self.diagnostics.append(Diagnostic(
                        file, line, 1, ERROR, "InvalidConceptName",
                        f"cannot register concept named {sym!r}"))
                    continue
                auto.append(sym)
                if not _is_structural(sym):
                    self.diagnostics.append(Diagnostic(
                        file, line, 1, WARNING, "AutoRegistered",
                        f"undeclared concept {sym!r} registered under {ROOT!r}"))

        # hang auto-registered instances below their base concept
        for sym in auto:
            base = instance_base(sym)
            if base and base != sym and base in ontology \
                    and ontology.parents(sym) == (ROOT,):
                ontology.reparent(sym, (base,))

        ontology.resolve()

        for block in self.blocks:
            for lang, phrases in block.lexicon:
                for phrase in phrases:
                    ontology.link_lexeme(phrase, lang, block.concept)

        for block in self.blocks:
            for a in block.assertions:
                if a.args and isinstance(a.args[0], str):
                    self._by_subject.setdefault(a.args[0], []).append(a)


def load(paths, units=DEFAULT_UNITS) -> KnowledgeBase:
    return KnowledgeBase.from_paths(paths, units=units)
