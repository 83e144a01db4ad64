"""Concept hierarchy and bilingual lexicon.

Concepts form a single-rooted directed acyclic graph under the root
``concept``; a node may have several parents.  Phrases in English or French
link to concepts many-to-many.  Phrase lookup lowercases only the first
character of the query, so sentence-initial capitalization still matches
while the rest of the phrase is compared exactly.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator

from .errors import (
    CycleDetected,
    DuplicateConcept,
    KbError,
    UnknownConcept,
    UnknownParent,
)

ROOT = "concept"


class Language(str, Enum):
    ENGLISH = "English"
    FRENCH = "French"


def _coerce_language(language) -> Language:
    if isinstance(language, Language):
        return language
    return Language(str(language))


def _normalize_phrase(phrase: str) -> str:
    if not phrase:
        return phrase
    return phrase[0].lower() + phrase[1:]


class Ontology:
    """Mutable while loading; treated as read-only once a base is built."""

    def __init__(self):
        self._parents: dict[str, tuple[str, ...]] = {}
        self._by_phrase: dict[tuple[Language, str], list[str]] = {}
        self._by_concept: dict[tuple[str, Language], list[str]] = {}

    # -- construction ------------------------------------------------------

    def add_concept(self, name: str, parents: Iterable[str] = ()) -> str:
        """Register a concept under the given parents.

        The root ``concept`` takes no parents; any other concept registered
        without parents becomes a direct child of the root.  Parent existence
        is not checked here: :meth:`resolve` verifies it once loading is done.
        """
        if not isinstance(name, str) or not name or any(c in name for c in " \t\n[]"):
            raise KbError(f"invalid concept name {name!r}")
        if name in self._parents:
            raise DuplicateConcept(name)
        parent_list = tuple(dict.fromkeys(parents))
        if name == ROOT:
            if parent_list:
                raise KbError("the root concept takes no parents")
        elif not parent_list:
            if ROOT not in self._parents:
                self._parents[ROOT] = ()
            parent_list = (ROOT,)
        self._parents[name] = parent_list
        return name

    def reparent(self, name: str, parents: Iterable[str]) -> None:
        """Replace a concept's parent links (loader use, before :meth:`resolve`)."""
        self._require(name)
        parent_list = tuple(dict.fromkeys(parents))
        if name == ROOT and parent_list:
            raise KbError("the root concept takes no parents")
        self._parents[name] = parent_list if parent_list or name == ROOT else (ROOT,)

    def resolve(self) -> None:
        """Check parent existence and acyclicity for the whole hierarchy."""
        for name, parents in self._parents.items():
            for p in parents:
                if p not in self._parents:
                    raise UnknownParent(f"{name}: unknown parent {p!r}")
        done: set[str] = set()
        in_progress: set[str] = set()
        for start in self._parents:
            if start in done:
                continue
            # iterative DFS; recursion would overflow on deep chains
            stack: list[tuple[str, int]] = [(start, 0)]
            in_progress.add(start)
            while stack:
                node, i = stack[-1]
                parents = self._parents[node]
                if i < len(parents):
                    stack[-1] = (node, i + 1)
                    nxt = parents[i]
                    if nxt in in_progress:
                        raise CycleDetected(f"hierarchy cycle through {nxt!r}")
                    if nxt not in done:
                        stack.append((nxt, 0))
                        in_progress.add(nxt)
                else:
                    stack.pop()
                    in_progress.discard(node)
                    done.add(node)

    # -- hierarchy queries --------------------------------------------------

    def __contains__(self, name: str) -> bool:
        return name in self._parents

    def __len__(self) -> int:
        return len(self._parents)

    def concepts(self) -> Iterator[str]:
        return iter(self._parents)

    def parents(self, name: str) -> tuple[str, ...]:
        self._require(name)
        return self._parents[name]

    def is_a(self, a: str, b: str) -> bool:
        """True when ``b`` is reachable from ``a`` over zero or more parent links."""
        self._require(a)
        self._require(b)
        if a == b:
            return True
        seen = {a}
        frontier = [a]
        while frontier:
            nxt = []
            for node in frontier:
                for p in self._parents[node]:
                    if p == b:
                        return True
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
        return False

    def ancestors(self, name: str, max_depth: int | None = None) -> list[str]:
        """Proper ancestors of ``name``, breadth-first, nearest first, deduplicated."""
        self._require(name)
        out: list[str] = []
        seen = {name}
        frontier = [name]
        depth = 0
        while frontier and (max_depth is None or depth < max_depth):
            depth += 1
            nxt = []
            for node in frontier:
                for p in self._parents[node]:
                    if p not in seen:
                        seen.add(p)
                        out.append(p)
                        nxt.append(p)
            frontier = nxt
        return out

    # -- lexicon -------------------------------------------------------------

    def link_lexeme(self, phrase: str, language, concept: str) -> None:
        """Attach a phrase to a concept; repeated links are no-ops."""
        self._require(concept)
        lang = _coerce_language(language)
        key = (lang, _normalize_phrase(phrase))
        concepts = self._by_phrase.setdefault(key, [])
        if concept not in concepts:
            concepts.append(concept)
        phrases = self._by_concept.setdefault((concept, lang), [])
        if phrase not in phrases:
            phrases.append(phrase)

    def lookup_phrase(self, phrase: str, language) -> tuple[str, ...]:
        lang = _coerce_language(language)
        return tuple(self._by_phrase.get((lang, _normalize_phrase(phrase)), ()))

    def lexemes_of(self, concept: str, language) -> list[str]:
        self._require(concept)
        lang = _coerce_language(language)
        return list(self._by_concept.get((concept, lang), ()))

    def _require(self, name: str) -> None:
        if name not in self._parents:
            raise UnknownConcept(name)
