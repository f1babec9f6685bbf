"""Brute-force possible-worlds semantics.

Everything here works on ground data only: a finite domain of candidate
constants per e-literal, every valuation that satisfies the global
constraint, and plain SPARQL evaluation over each resulting graph.  None of
the symbolic machinery is used, so the results can be compared against it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .algebra import (AndPattern, FilterPattern, OptPattern, TriplePattern, UnionPattern)
from .backends.geometry import rcc8_relation
from .errors import EmptyWorldSet
from .formulas import Coord, Diff, Rel, Truth, evaluate, substitute
from .model import Database, ETriple, e_literals_of
from .query import ConstructQuery, SelectQuery
from .terms import Blank, CLiteral, Iri, PlainLiteral, Variable, can_bind, sort_key

_CMP = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}
_CORNER = {"LLx": 0, "LLy": 1, "URx": 2, "URy": 3}


# -- ground truth of constraints ------------------------------------------------

def _value(o):
    if isinstance(o, Coord):
        return o.arg.value.bounds[_CORNER[o.fn]]
    return o.value


def ground_holds(a) -> bool:
    """Truth of a ground atom, computed from the constants' values directly."""
    if isinstance(a, Truth):
        return a.value
    if isinstance(a, Diff):
        lhs = _value(a.left) - (0 if a.right is None else _value(a.right))
        return _CMP[a.op](Fraction(lhs), a.bound)
    if a.pred == "EQ":
        return a.left == a.right
    if a.pred == "NEQ":
        return a.left != a.right
    return rcc8_relation(a.left.value, a.right.value) == a.pred


def ground_true(f) -> bool:
    return evaluate(f, ground_holds)


# -- valuations ----------------------------------------------------------------

def apply_valuation_graph(v: dict, graph) -> frozenset:
    """The RDF graph of triples whose condition holds under ``v``."""
    out = set()
    for ct in graph:
        if ground_true(substitute(ct.condition, v)):
            s, p, o = ct.triple
            out.add(ETriple(s, p, v.get(o, o)))
    return frozenset(out)


def apply_valuation_mappings(v: dict, mappings) -> frozenset:
    """Plain mappings of the conditional mappings whose condition holds under ``v``."""
    return frozenset(frozenset((x, v.get(t, t)) for x, t in m.binding)
                     for m in mappings if ground_true(substitute(m.condition, v)))


def valuations(db: Database, dom: dict):
    """Every valuation over ``dom`` satisfying the global constraint."""
    lits = sorted(e_literals_of(db), key=lambda e: e.name)
    missing = [e for e in lits if not dom.get(e)]
    if missing:
        raise ValueError(f"domain has no candidates for {', '.join(map(str, missing))}")
    for values in product(*(dom[e] for e in lits)):
        v = dict(zip(lits, values))
        if ground_true(substitute(db.global_constraint, v)):
            yield v


def enumerate_worlds(db: Database, dom: dict) -> list[frozenset]:
    """Minimal possible graphs of ``db`` over a finite domain, without duplicates."""
    seen = {apply_valuation_graph(v, db.graph) for v in valuations(db, dom)}
    if not seen:
        raise EmptyWorldSet("no valuation in the domain satisfies the global constraint")
    return sorted(seen, key=lambda w: sorted(_triple_key(t) for t in w))


def _triple_key(t: ETriple) -> tuple:
    return tuple(sort_key(x) for x in t)


# -- standard evaluation over RDF graphs -------------------------------------------

def _compatible(a: dict, b: dict) -> bool:
    return all(a[x] == b[x] for x in a.keys() & b.keys())


def _eval_triple(p: TriplePattern, world) -> list[dict]:
    out = []
    for t in world:
        m: dict = {}
        for pt, term in zip(p, t):
            if isinstance(pt, Variable):
                if not can_bind(pt, term) or m.setdefault(pt, term) != term:
                    break
            elif pt != term:
                break
        else:
            out.append(m)
    return out


def _filter_true(condition, m: dict) -> bool:
    def holds(a):
        a = substitute(a, m)
        leaves = []
        for o in (a.left, a.right) if isinstance(a, (Rel, Diff)) else ():
            leaves.append(o.arg if isinstance(o, Coord) else o)
        if any(isinstance(o, Variable) for o in leaves):
            return False
        return ground_holds(a)
    return evaluate(condition, holds)


def _dedup(ms) -> list[dict]:
    seen, out = set(), []
    for m in ms:
        key = frozenset(m.items())
        if key not in seen:
            seen.add(key)
            out.append(m)
    return out


def _eval(p, world) -> list[dict]:
    if isinstance(p, TriplePattern):
        return _dedup(_eval_triple(p, world))
    if isinstance(p, FilterPattern):
        return [m for m in _eval(p.inner, world) if _filter_true(p.condition, m)]
    left, right = _eval(p.left, world), _eval(p.right, world)
    if isinstance(p, UnionPattern):
        return _dedup(left + right)
    joined = _dedup({**a, **b} for a in left for b in right if _compatible(a, b))
    if isinstance(p, AndPattern):
        return joined
    if isinstance(p, OptPattern):
        rest = [a for a in left if not any(_compatible(a, b) for b in right)]
        return _dedup(joined + rest)
    raise TypeError(f"not a graph pattern: {p!r}")


def std_eval_pattern(p, world) -> frozenset:
    """Set-semantics evaluation of a graph pattern; mappings as frozensets of pairs."""
    return frozenset(frozenset(m.items()) for m in _eval(p, world))


def std_eval(q, world) -> frozenset:
    """Answer of a SELECT (mappings) or CONSTRUCT (triples) query over an RDF graph."""
    if isinstance(q, SelectQuery):
        keep = set(q.variables)
        return frozenset(frozenset((x, t) for x, t in m.items() if x in keep)
                         for m in _eval(q.pattern, world))
    if isinstance(q, ConstructQuery):
        sols = sorted(_eval(q.pattern, world),
                      key=lambda m: sorted((str(x), sort_key(t)) for x, t in m.items()))
        used = {t.label for tr in world for t in tr if isinstance(t, Blank)}
        out = set()
        for k, m in enumerate(sols):
            fresh = {}
            for tp in q.template:
                for t in tp:
                    if isinstance(t, Blank) and t not in fresh:
                        label = f"{t.label}_{k}"
                        while label in used:
                            label += "_"
                        used.add(label)
                        fresh[t] = Blank(label)
            for tp in q.template:
                s, pr, o = (m.get(x, x) if isinstance(x, Variable) else fresh.get(x, x) for x in tp)
                if isinstance(s, (Iri, Blank)) and isinstance(pr, Iri) \
                        and isinstance(o, (Iri, Blank, PlainLiteral, CLiteral)):
                    out.add(ETriple(s, pr, o))
        return frozenset(out)
    raise TypeError(f"not a query: {q!r}")


# -- certain answers and coinitiality ----------------------------------------------

def oracle_certain(q, db: Database, dom: dict) -> frozenset:
    """Intersection of the query's answers over every world of the domain.

    Only meaningful for monotone queries: worlds are the minimal graphs, and
    the intersection over all their supersets is the same only then.
    """
    answers = [std_eval(q, w) for w in enumerate_worlds(db, dom)]
    return frozenset.intersection(*answers)


def intersect_worlds(db: Database, dom: dict) -> frozenset:
    """Triples present in every possible graph over the domain."""
    return frozenset.intersection(*enumerate_worlds(db, dom))


def coinitial(gs, hs) -> bool:
    """Each graph of either list contains some graph of the other."""
    gs, hs = [frozenset(g) for g in gs], [frozenset(h) for h in hs]
    return all(any(h <= g for h in hs) for g in gs) and all(any(g <= h for g in gs) for h in hs)


__all__ = ["apply_valuation_graph", "apply_valuation_mappings", "coinitial", "enumerate_worlds",
           "ground_holds", "ground_true", "intersect_worlds", "oracle_certain", "std_eval",
           "std_eval_pattern", "valuations"]
