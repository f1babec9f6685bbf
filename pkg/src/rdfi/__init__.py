"""Incomplete RDF with e-literals, conditional triples and SPARQL over them."""

from rdfi.algebra import (AndPattern, ConditionalMapping, FilterPattern, OptPattern, TriplePattern,
                          UnionPattern, eval_pattern)
from rdfi.constraints import entails, satisfiable, solve
from rdfi.errors import RdfiError
from rdfi.formulas import FALSE, TRUE, Coord, Diff, Rel, conj, disj, neg
from rdfi.model import ConditionalTriple, Database, ETriple, mk_database
from rdfi.oracle import enumerate_worlds, oracle_certain, std_eval
from rdfi.query import (ConstructQuery, SelectAnswer, SelectQuery, certain_answer, certain_select,
                        certainty, eq_complete, eval_construct, eval_select, fragment, normalize)
from rdfi.syntax import (parse_database, parse_domain, parse_graph, parse_query, serialize_answers,
                         serialize_database, serialize_query)
from rdfi.terms import Blank, CLiteral, ELiteral, Iri, PlainLiteral, Variable

__all__ = [
    "AndPattern", "Blank", "CLiteral", "ConditionalMapping", "ConditionalTriple", "ConstructQuery",
    "Coord", "Database", "Diff", "ELiteral", "ETriple", "FALSE", "FilterPattern", "Iri",
    "OptPattern", "PlainLiteral", "RdfiError", "Rel", "SelectAnswer", "SelectQuery", "TRUE",
    "TriplePattern", "UnionPattern", "Variable", "certain_answer", "certain_select", "certainty",
    "conj", "disj", "entails", "enumerate_worlds", "eq_complete", "eval_construct", "eval_pattern",
    "eval_select", "fragment", "mk_database", "neg", "normalize", "oracle_certain", "parse_database",
    "parse_domain", "parse_graph", "parse_query", "satisfiable", "serialize_answers",
    "serialize_database", "serialize_query", "solve", "std_eval",
]
