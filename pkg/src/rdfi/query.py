"""SELECT and CONSTRUCT queries, EQ-completion, normalization and certain answers."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (AndPattern, ConditionalMapping, FilterPattern, OptPattern, TriplePattern,
                      UnionPattern, eval_pattern, pattern_variables, restrict)
from .backends import get_backend
from .constraints import entails, forced_constant, satisfiable, solve
from .errors import NotAfoFragment, UnsatGlobal, UnsupportedFragment
from .formulas import Rel, conj, disj, eliterals, evaluate, substitute, variables
from .model import ConditionalTriple, Database, ETriple, graph_eliterals, well_formed
from .terms import Blank, CLiteral, ELiteral, Variable


@dataclass(frozen=True)
class SelectQuery:
    variables: tuple
    pattern: object


@dataclass(frozen=True)
class ConstructQuery:
    template: tuple
    pattern: object


@dataclass(frozen=True)
class SelectAnswer:
    """Conditional solutions of a SELECT query, with the database's global constraint."""

    solutions: frozenset
    global_constraint: object
    language: str


# -- fragments -------------------------------------------------------------------

def _uses(p, kind) -> bool:
    if isinstance(p, kind):
        return True
    if isinstance(p, TriplePattern):
        return False
    if isinstance(p, FilterPattern):
        return _uses(p.inner, kind)
    return _uses(p.left, kind) or _uses(p.right, kind)


def _occurrences(p, path=()) -> list[tuple[tuple, Variable]]:
    if isinstance(p, TriplePattern):
        return [(path, t) for t in p if isinstance(t, Variable)]
    if isinstance(p, FilterPattern):
        return _occurrences(p.inner, path + (0,)) + [(path, v) for v in variables(p.condition)]
    return _occurrences(p.left, path + (0,)) + _occurrences(p.right, path + (1,))


def _nodes(p, path=()):
    yield path, p
    if isinstance(p, FilterPattern):
        yield from _nodes(p.inner, path + (0,))
    elif not isinstance(p, TriplePattern):
        yield from _nodes(p.left, path + (0,))
        yield from _nodes(p.right, path + (1,))


def check_well_designed(p) -> bool:
    """Safe filters, and every OPT's right side shares outside variables only through its left."""
    if _uses(p, UnionPattern):
        raise NotAfoFragment("well-designedness is defined for AND/FILTER/OPT patterns only")
    occ = _occurrences(p)
    for path, node in _nodes(p):
        if isinstance(node, FilterPattern):
            if not variables(node.condition) <= pattern_variables(node.inner):
                return False
        elif isinstance(node, OptPattern):
            n = len(path)
            inside_left = {v for q, v in occ if q[:n + 1] == path + (0,)}
            inside_right = {v for q, v in occ if q[:n + 1] == path + (1,)}
            outside = {v for q, v in occ if q[:n] != path}
            if not (inside_right & outside) <= inside_left:
                return False
    return True


def fragment(p) -> str:
    """``AUF`` (no OPT), ``WD`` (well-designed) or ``OTHER``."""
    if not _uses(p, OptPattern):
        return "AUF"
    if not _uses(p, UnionPattern) and check_well_designed(p):
        return "WD"
    return "OTHER"


# -- evaluation ----------------------------------------------------------------

def eval_select(q: SelectQuery, db: Database) -> SelectAnswer:
    sols = frozenset(restrict(m, q.variables) for m in eval_pattern(q.pattern, db))
    return SelectAnswer(sols, db.global_constraint, db.language)


def fresh_blank_renaming(template, solutions, graph) -> list[dict]:
    """One renaming of the template's blank nodes per solution, fresh for ``graph``."""
    used = {t.label for ct in graph for t in ct.triple if isinstance(t, Blank)}
    blanks = sorted({t for tp in template for t in tp if isinstance(t, Blank)}, key=lambda b: b.label)
    out = []
    for k, _ in enumerate(solutions):
        renaming = {}
        for b in blanks:
            label, counter = f"{b.label}_{k}", 0
            while label in used:
                counter += 1
                label = f"{b.label}_{k}_{counter}"
            used.add(label)
            renaming[b] = Blank(label)
        out.append(renaming)
    return out


def eval_construct(q: ConstructQuery, db: Database) -> Database:
    sols = sorted(eval_pattern(q.pattern, db), key=ConditionalMapping.sort_key)
    renamings = fresh_blank_renaming(q.template, sols, db.graph)
    graph = set()
    for m, renaming in zip(sols, renamings):
        binding = m.mapping
        for tp in q.template:
            t = ETriple(*(binding.get(x, x) if isinstance(x, Variable) else renaming.get(x, x)
                          for x in tp))
            if well_formed(t):
                graph.add(ConditionalTriple(t, m.condition))
    return Database(frozenset(graph), db.global_constraint, db.language)


def _require_satisfiable(db: Database) -> None:
    if not satisfiable(db.global_constraint, db.language):
        raise UnsatGlobal(f"global constraint is unsatisfiable: {db.global_constraint}")


def eq_complete(db: Database) -> Database:
    """Replace every e-literal the global constraint pins to a constant."""
    _require_satisfiable(db)
    forced = {}
    for e in sorted(graph_eliterals(db.graph), key=lambda e: e.name):
        c = forced_constant(db.global_constraint, e, db.language)
        if c is not None:
            forced[e] = c
    graph = frozenset(
        ConditionalTriple(ETriple(ct.triple.subject, ct.triple.predicate,
                                  forced.get(ct.triple.object, ct.triple.object)),
                          substitute(ct.condition, forced))
        for ct in db.graph)
    return Database(graph, db.global_constraint, db.language)


def normalize(db: Database) -> Database:
    """One conditional triple per e-triple, its conditions joined disjunctively."""
    groups: dict = {}
    for ct in db.graph:
        groups.setdefault(ct.triple, set()).add(ct.condition)
    graph = frozenset(ConditionalTriple(t, disj(*conds)) for t, conds in groups.items())
    return Database(graph, db.global_constraint, db.language)


# -- certain answers -----------------------------------------------------------

def _check_certain_fragment(q) -> None:
    if not isinstance(q, ConstructQuery):
        raise UnsupportedFragment("certain answers are computed for CONSTRUCT queries")
    if fragment(q.pattern) == "OTHER":
        raise UnsupportedFragment("query is neither union-free-of-OPT nor well-designed")
    if any(isinstance(t, Blank) for tp in q.template for t in tp):
        raise UnsupportedFragment("CONSTRUCT template contains blank nodes")


def _world(graph, valuation: dict, lang: str) -> set:
    """Ground triples present under a total valuation of the graph's e-literals."""
    holds = get_backend(lang).holds
    out = set()
    for ct in graph:
        if evaluate(substitute(ct.condition, valuation), holds):
            s, p, o = ct.triple
            out.add(ETriple(s, p, valuation.get(o, o)))
    return out


def _support(t: ETriple, graph):
    """Condition under which ground triple ``t`` is produced by ``graph``."""
    parts = []
    for ct in graph:
        s, p, o = ct.triple
        if (s, p) != (t.subject, t.predicate):
            continue
        if o == t.object:
            parts.append(ct.condition)
        elif isinstance(o, ELiteral) and isinstance(t.object, CLiteral):
            parts.append(conj(ct.condition, Rel("EQ", o, t.object)))
    return disj(*parts)


def certainty(q: ConstructQuery, triples, db: Database) -> bool:
    """Whether every triple of ``triples`` is a certain answer of ``q`` over ``db``."""
    _check_certain_fragment(q)
    _require_satisfiable(db)
    for t in triples:
        if isinstance(t.object, ELiteral):
            raise ValueError(f"certainty is asked of ground triples, got ({t})")
    answer = eval_construct(q, db)
    theta = conj(*(_support(t, answer.graph) for t in triples))
    return entails(db.global_constraint, theta, db.language)


def certain_answer(q: ConstructQuery, db: Database) -> frozenset:
    """Ground triples of ``q``'s answer in every represented graph.

    Triples whose completed, normalized condition is entailed come first.
    The remaining triples of one witness world are then checked one by one
    against the global constraint, which also catches triples that are
    produced by different conditional triples in different worlds.
    """
    _check_certain_fragment(q)
    _require_satisfiable(db)
    lang, phi = db.language, db.global_constraint
    answer = eval_construct(q, db)
    completed = normalize(eq_complete(answer))
    out = {ct.triple for ct in completed.graph
           if not isinstance(ct.triple.object, ELiteral) and entails(phi, ct.condition, lang)}
    witness = solve(phi, lang, graph_eliterals(answer.graph))
    for t in _world(answer.graph, witness, lang) - out:
        if entails(phi, _support(t, answer.graph), lang):
            out.add(t)
    return frozenset(out)


def certain_select(q: SelectQuery, db: Database) -> frozenset:
    """Certain solutions of a SELECT query without OPT, as unconditional mappings."""
    if fragment(q.pattern) != "AUF":
        raise UnsupportedFragment("certain SELECT answers need a pattern without OPT")
    _require_satisfiable(db)
    lang, phi = db.language, db.global_constraint
    sols = eval_select(q, db).solutions
    lits = set().union(set(), *(_mapping_eliterals(m) for m in sols))
    witness = solve(phi, lang, lits)
    holds = get_backend(lang).holds
    candidates = {ConditionalMapping.of({x: witness.get(t, t) for x, t in m.binding})
                  for m in sols if evaluate(substitute(m.condition, witness), holds)}
    out = set()
    for cand in candidates:
        target = cand.mapping
        parts = []
        for m in sols:
            b = m.mapping
            if b.keys() != target.keys():
                continue
            eqs = []
            for x, t in b.items():
                if t == target[x]:
                    continue
                if isinstance(t, ELiteral) and isinstance(target[x], CLiteral):
                    eqs.append(Rel("EQ", t, target[x]))
                else:
                    break
            else:
                parts.append(conj(m.condition, *eqs))
        if entails(phi, disj(*parts), lang):
            out.add(cand)
    return frozenset(out)


def _mapping_eliterals(m: ConditionalMapping) -> set:
    return {t for _, t in m.binding if isinstance(t, ELiteral)} | eliterals(m.condition)


__all__ = ["AndPattern", "ConstructQuery", "SelectAnswer", "SelectQuery", "certain_answer",
           "certain_select", "certainty", "check_well_designed", "eq_complete", "eval_construct",
           "eval_select", "fragment", "fresh_blank_renaming", "normalize"]
