"""Assertion data model.

An assertion is a predicate applied to ordered argument terms.  A term is
one of: a concept symbol (plain ``str``), the ``na`` placeholder, a unit
measure, or a nested assertion.  The ``^`` self-reference that appears in
source files is resolved to the enclosing block's concept during parsing
and never survives into the model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Union

from .errors import MalformedNumber
from .ontology import Language


class NaType:
    """Singleton for the ``na`` (unspecified) argument."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "na"


NA = NaType()

DEFAULT_UNITS = ("second", "USD", "in")


class Measure:
    """A number with a unit, e.g. 3600 seconds or 0.33 USD.

    The numeric text is kept exactly as written so serialization is
    bit-faithful; equality compares the decimal value, so ``3.1536e+07``
    and ``31536000`` with the same unit are equal.
    """

    __slots__ = ("unit", "text")

    def __init__(self, unit: str, text):
        self.unit = unit
        self.text = str(text)
        try:
            finite = Decimal(self.text).is_finite()
        except InvalidOperation:
            finite = False
        if not finite:
            raise MalformedNumber(f"bad numeric text {self.text!r}")

    @property
    def quantity(self) -> Decimal:
        return Decimal(self.text)

    @property
    def value(self) -> float:
        return float(self.text)

    def render(self) -> str:
        return f"NUMBER:{self.unit}:{self.text}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return self.unit == other.unit and self.quantity == other.quantity

    def __hash__(self) -> int:
        return hash((self.unit, self.quantity.normalize()))

    def __repr__(self) -> str:
        return f"Measure({self.unit!r}, {self.text!r})"


Term = Union[str, NaType, Measure, "Assertion"]


@dataclass(frozen=True)
class Assertion:
    predicate: str
    args: tuple = ()

    def render(self) -> str:
        parts = [self.predicate] + [render_term(a) for a in self.args]
        return "[" + " ".join(parts) + "]"

    def __repr__(self) -> str:
        return f"Assertion({self.render()!r})"


def render_term(term: Term) -> str:
    if isinstance(term, Assertion):
        return term.render()
    if isinstance(term, Measure):
        return term.render()
    if isinstance(term, NaType):
        return "na"
    return term


def term_symbols(term: Term, include_predicates: bool = True):
    """Yield every concept symbol inside a term, nested assertions included."""
    if isinstance(term, str):
        yield term
    elif isinstance(term, Assertion):
        if include_predicates:
            yield term.predicate
        for arg in term.args:
            yield from term_symbols(arg, include_predicates)


@dataclass
class ObjectBlock:
    """One ``Object <name>`` block: lexicon lines plus ordered assertions."""

    concept: str
    lexicon: list[tuple[Language, tuple[str, ...]]] = field(default_factory=list)
    assertions: list[Assertion] = field(default_factory=list)
    line: int = field(default=0, compare=False)
    file: str = field(default="<kb>", compare=False)
    # source line of each assertion, parallel to `assertions` when known
    assertion_lines: list[int] = field(default_factory=list, compare=False)

    def assertion_line(self, index: int) -> int:
        if index < len(self.assertion_lines):
            return self.assertion_lines[index]
        return self.line
