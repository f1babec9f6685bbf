"""RDF terms extended with constraint constants and e-literals.

Five disjoint kinds of terms live here: IRIs, blank nodes, plain literals,
constraint constants (``CLiteral``) and existential literals (``ELiteral``).
Query variables are kept apart from terms on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

# Constraint languages and the datatype their constants and e-literals carry.
SORTS = {
    "ecl": "const",
    "dipcl": "integer",
    "depcl": "rational",
    "rcl": "box",
    "pcl": "region",
    "tcl": "region",
}
LANGUAGES = tuple(SORTS)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_number(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Iri:
    value: str

    def __str__(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True)
class Blank:
    label: str

    def __str__(self) -> str:
        return f"_:{self.label}"


@dataclass(frozen=True)
class PlainLiteral:
    lexical: str
    datatype: str | None = None

    def __str__(self) -> str:
        if self.datatype is None:
            return _quote(self.lexical)
        return f"{_quote(self.lexical)}^^<{self.datatype}>"


@dataclass(frozen=True)
class CLiteral:
    """A constant of the constraint language: a number or a polygon."""

    value: object
    datatype: str

    def __str__(self) -> str:
        if isinstance(self.value, (int, Fraction)):
            return format_number(self.value)
        return _quote(self.value.to_text())


@dataclass(frozen=True)
class ELiteral:
    """An existential literal: a constant whose value is only constrained."""

    name: str
    datatype: str

    def __str__(self) -> str:
        return f"_{self.name}"


@dataclass(frozen=True)
class Variable:
    name: str
    special: bool = False

    def __str__(self) -> str:
        return f"?{self.name}!s" if self.special else f"?{self.name}"


Term = Union[Iri, Blank, PlainLiteral, CLiteral, ELiteral]


def is_rdf_term(t) -> bool:
    """I, B or L: the terms a normal variable may bind to."""
    return isinstance(t, (Iri, Blank, PlainLiteral))


def is_constraint_term(t) -> bool:
    """C or U: the terms a special variable may bind to."""
    return isinstance(t, (CLiteral, ELiteral))


def can_bind(var: Variable, t) -> bool:
    return is_constraint_term(t) if var.special else is_rdf_term(t)


def sort_key(t) -> tuple:
    """Total order used wherever output must be deterministic."""
    return (type(t).__name__, str(t))
