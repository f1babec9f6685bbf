"""Conditional triples and databases."""

from __future__ import annotations

from dataclasses import dataclass

from .backends import get_backend
from .errors import IllFormedTriple, LanguageMismatch
from .formulas import TRUE, atoms, eliterals
from .terms import SORTS, Blank, CLiteral, ELiteral, Iri, PlainLiteral, Variable, sort_key


@dataclass(frozen=True)
class ETriple:
    subject: object
    predicate: object
    object: object

    def __iter__(self):
        return iter((self.subject, self.predicate, self.object))

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object}"


@dataclass(frozen=True)
class ConditionalTriple:
    triple: ETriple
    condition: object = TRUE


@dataclass(frozen=True)
class Database:
    graph: frozenset
    global_constraint: object
    language: str

    def sorted_graph(self) -> list[ConditionalTriple]:
        return sorted(self.graph, key=lambda ct: (triple_key(ct.triple), str(ct.condition)))


def triple_key(t: ETriple) -> tuple:
    return tuple(sort_key(x) for x in t)


def well_formed(t: ETriple) -> bool:
    return (isinstance(t.subject, (Iri, Blank)) and isinstance(t.predicate, Iri)
            and isinstance(t.object, (Iri, Blank, PlainLiteral, CLiteral, ELiteral)))


def check_term(t, lang: str) -> None:
    if isinstance(t, (CLiteral, ELiteral)):
        get_backend(lang).check_operand(t)


def check_formula(f, lang: str) -> None:
    backend = get_backend(lang)
    for a in atoms(f):
        backend.check_atom(a)


def mk_database(triples, global_constraint=TRUE, language: str = "pcl") -> Database:
    """Validate and build a database; identical conditional triples collapse."""
    if language not in SORTS:
        raise LanguageMismatch(f"unknown constraint language {language!r}")
    graph = set()
    for ct in triples:
        if isinstance(ct, ETriple):
            ct = ConditionalTriple(ct)
        t = ct.triple
        if any(isinstance(x, Variable) for x in t) or not well_formed(t):
            raise IllFormedTriple(f"ill-formed triple ({t})")
        check_term(t.object, language)
        check_formula(ct.condition, language)
        graph.add(ct)
    check_formula(global_constraint, language)
    return Database(frozenset(graph), global_constraint, language)


def e_literals_of(db: Database) -> set[ELiteral]:
    return graph_eliterals(db.graph) | eliterals(db.global_constraint)


def graph_eliterals(graph) -> set[ELiteral]:
    out = set()
    for ct in graph:
        if isinstance(ct.triple.object, ELiteral):
            out.add(ct.triple.object)
        out |= eliterals(ct.condition)
    return out

