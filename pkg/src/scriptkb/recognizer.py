"""Script recognition from free text.

Text activates concepts through the lexicon: greedy longest match over
token n-grams (up to four words), with naive suffix stripping as a
fallback for single tokens and a stop-word list to keep closed-class words
from firing.  Each distinct activated concept then contributes 1.0 to
every script that mentions it, either directly or, with generalization on,
through a more general concept in the script's mention set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .kb import KnowledgeBase
from .ontology import Language
from .scripts import Script, build_script
from .terms import Assertion, term_symbols

_TOKEN_RE = re.compile(r"[0-9A-Za-zÀ-ÖØ-öø-ÿ]+(?:['’-][0-9A-Za-zÀ-ÖØ-öø-ÿ]+)*")
_SUFFIXES = ("s", "es", "ed", "ing")
_stopwords: frozenset[str] | None = None


def stopwords() -> frozenset[str]:
    global _stopwords
    if _stopwords is None:
        text = resources.files("scriptkb.data").joinpath("stopwords_en.txt").read_text("utf-8")
        _stopwords = frozenset(
            w.strip() for w in text.splitlines() if w.strip() and not w.startswith("#"))
    return _stopwords


@dataclass(frozen=True)
class Activation:
    concept: str
    start: int
    end: int
    surface: str
    phrase: str


@dataclass(frozen=True)
class ActivationSet:
    items: tuple[Activation, ...] = ()

    def concepts(self) -> tuple[str, ...]:
        """Distinct activated concepts in order of first occurrence."""
        return tuple(dict.fromkeys(a.concept for a in self.items))


def activate(text: str, kb: KnowledgeBase, language=Language.ENGLISH, *,
             max_ngram: int = 4, stop=None) -> ActivationSet:
    """Map text spans to concepts via the lexicon.

    Spans never overlap: after a phrase match the scan resumes past it.
    Matching is case-insensitive at the start of a phrase (the lexicon's
    own rule); unmatched single tokens are retried with -s/-es/-ed/-ing
    stripped.
    """
    stop = stopwords() if stop is None else stop
    lookup = kb.ontology.lookup_phrase
    tokens = [(m.group(0), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]
    items: list[Activation] = []
    i = 0
    while i < len(tokens):
        advanced = False
        for n in range(min(max_ngram, len(tokens) - i), 0, -1):
            if n == 1 and tokens[i][0].casefold() in stop:
                break
            phrase = " ".join(tokens[i + k][0] for k in range(n))
            concepts = lookup(phrase, language)
            if not concepts and n == 1:
                concepts, phrase = _strip_suffix(tokens[i][0], lookup, language)
            if concepts:
                start, end = tokens[i][1], tokens[i + n - 1][2]
                for concept in concepts:
                    items.append(Activation(concept, start, end, text[start:end], phrase))
                i += n
                advanced = True
                break
        if not advanced:
            i += 1
    return ActivationSet(tuple(items))


def _strip_suffix(token, lookup, language):
    for suffix in _SUFFIXES:
        if token.casefold().endswith(suffix) and len(token) - len(suffix) >= 2:
            candidate = token[:-len(suffix)]
            concepts = lookup(candidate, language)
            if concepts:
                return concepts, candidate
    return (), token


def mention_set(script: Script) -> frozenset[str]:
    """Every concept a script touches: roles, event predicates and event
    arguments (nested assertions included, ``na`` and gotos excluded), and
    places."""
    symbols: set[str] = set(script.roles.values())
    for group in script.events:
        for term in group.events:
            if isinstance(term, Assertion) and term.predicate == "goto":
                continue
            symbols.update(term_symbols(term))
    symbols.update(script.places)
    return frozenset(symbols)


@dataclass(frozen=True)
class RecognitionResult:
    script: str
    score: float
    evidence: tuple[str, ...]


def score_scripts(activations: ActivationSet, kb: KnowledgeBase, *,
                  generalization: bool = True,
                  max_hops: int | None = None) -> list[RecognitionResult]:
    """Rank scripts by how many distinct activated concepts they mention.

    A concept supports a script when it is in the script's mention set or,
    with generalization on, when some mentioned concept is an ancestor of
    it (``max_hops`` caps the climb).  Each supporting concept is worth
    1.0; zero-scoring scripts are omitted.  Sorted by score descending,
    then script name.
    """
    activated = activations.concepts()
    reach: dict[str, set[str]] = {}
    for concept in activated:
        names = {concept}
        if generalization:
            names.update(kb.ontology.ancestors(concept, max_depth=max_hops))
        reach[concept] = names

    results = []
    for name in kb.script_concepts():
        mentions = mention_set(build_script(kb, name))
        evidence = tuple(c for c in activated if reach[c] & mentions)
        if evidence:
            results.append(RecognitionResult(name, float(len(evidence)), evidence))
    results.sort(key=lambda r: (-r.score, r.script))
    return results


def format_results(results) -> list[str]:
    return [f"score {r.score:.1f} for script {r.script} based on "
            + ", ".join(r.evidence) for r in results]
