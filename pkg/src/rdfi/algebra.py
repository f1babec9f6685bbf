"""Graph patterns evaluated over conditional graphs.

A solution is a ``ConditionalMapping``: a binding of query variables plus a
condition under which the binding holds.  Bindings may mention e-literals;
joining an e-literal with another value records the needed equality in the
condition instead of failing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .backends import get_backend
from .constraints import to_dnf
from .errors import LanguageMismatch, NotPossiblyCompatible
from .formulas import (FALSE, TRUE, Rel, Truth, atom_leaves, atoms, conj, disj, map_atoms,
                       neg, substitute_atom)
from .terms import CLiteral, ELiteral, Variable, can_bind, is_rdf_term, sort_key


# -- patterns ----------------------------------------------------------------

@dataclass(frozen=True)
class TriplePattern:
    s: object
    p: object
    o: object

    def __iter__(self):
        return iter((self.s, self.p, self.o))


@dataclass(frozen=True)
class AndPattern:
    left: object
    right: object


@dataclass(frozen=True)
class UnionPattern:
    left: object
    right: object


@dataclass(frozen=True)
class OptPattern:
    left: object
    right: object


@dataclass(frozen=True)
class FilterPattern:
    inner: object
    condition: object


def pattern_variables(p) -> set[Variable]:
    """Variables occurring in triple patterns of ``p``."""
    if isinstance(p, TriplePattern):
        return {t for t in p if isinstance(t, Variable)}
    if isinstance(p, FilterPattern):
        return pattern_variables(p.inner)
    return pattern_variables(p.left) | pattern_variables(p.right)


# -- conditional mappings --------------------------------------------------------

def _var_key(v: Variable) -> tuple:
    return (v.name, v.special)


@dataclass(frozen=True)
class ConditionalMapping:
    binding: tuple
    condition: object = TRUE

    @classmethod
    def of(cls, binding: dict, condition=TRUE) -> "ConditionalMapping":
        return cls(tuple(sorted(binding.items(), key=lambda kv: _var_key(kv[0]))), condition)

    @property
    def mapping(self) -> dict:
        return dict(self.binding)

    @property
    def domain(self) -> set[Variable]:
        return {v for v, _ in self.binding}

    def sort_key(self) -> tuple:
        return (tuple((str(v), sort_key(t)) for v, t in self.binding), str(self.condition))


def compatible(m1: ConditionalMapping, m2: ConditionalMapping) -> bool:
    a, b = m1.mapping, m2.mapping
    return all(a[x] == b[x] for x in a.keys() & b.keys())


def possibly_compatible(m1: ConditionalMapping, m2: ConditionalMapping) -> bool:
    a, b = m1.mapping, m2.mapping
    for x in a.keys() & b.keys():
        if a[x] == b[x]:
            continue
        if not (x.special and (isinstance(a[x], ELiteral) or isinstance(b[x], ELiteral))):
            return False
    return True


def join(m1: ConditionalMapping, m2: ConditionalMapping) -> ConditionalMapping:
    """Merge two possibly compatible mappings, recording forced equalities."""
    if not possibly_compatible(m1, m2):
        raise NotPossiblyCompatible("mappings disagree on a variable")
    a, b = m1.mapping, m2.mapping
    out = dict(b)
    out.update(a)
    eqs = []
    for x in a.keys() & b.keys():
        if a[x] == b[x]:
            continue
        # the e-literal stays bound; between two e-literals the left one does
        if isinstance(b[x], ELiteral) and not isinstance(a[x], ELiteral):
            out[x] = b[x]
            eqs.append(Rel("EQ", b[x], a[x]))
        else:
            eqs.append(Rel("EQ", a[x], b[x]))
    return ConditionalMapping.of(out, conj(m1.condition, m2.condition, *eqs))


def join_sets(o1, o2) -> frozenset:
    return frozenset(join(m1, m2) for m1 in o1 for m2 in o2 if possibly_compatible(m1, m2))


def union_sets(o1, o2) -> frozenset:
    return frozenset(o1) | frozenset(o2)


def diff_sets(o1, o2) -> frozenset:
    """Mappings of ``o1`` kept exactly where no member of ``o2`` agrees with them.

    A mapping that may agree with some members gets the condition
    ``theta and (theta_i implies x differs for some shared special x)`` for
    every such member; mappings that can never agree pass unchanged.
    """
    out = set()
    for m in o1:
        clauses = []
        for mi in o2:
            if not possibly_compatible(m, mi):
                continue
            a, b = m.mapping, mi.mapping
            differ = [neg(Rel("EQ", a[x], b[x])) for x in sorted(a.keys() & b.keys(), key=_var_key)
                      if x.special and a[x] != b[x]]
            clauses.append(disj(neg(mi.condition), *differ))
        cond = conj(m.condition, *clauses)
        if cond != FALSE:
            out.add(ConditionalMapping(m.binding, cond))
    return frozenset(out)


def leftjoin_sets(o1, o2) -> frozenset:
    return join_sets(o1, o2) | diff_sets(o1, o2)


def restrict(m: ConditionalMapping, keep) -> ConditionalMapping:
    keep = set(keep)
    return ConditionalMapping(tuple((v, t) for v, t in m.binding if v in keep), m.condition)


def _plain(m) -> dict:
    if isinstance(m, ConditionalMapping):
        return m.mapping
    return dict(m)


def subsumes(m1, m2) -> bool:
    """``m1`` is subsumed by ``m2``: same values on a smaller domain."""
    a, b = _plain(m1), _plain(m2)
    return all(x in b and b[x] == t for x, t in a.items())


def set_subsumed(o1, o2) -> bool:
    return all(any(subsumes(m1, m2) for m2 in o2) for m1 in o1)


# -- evaluation ----------------------------------------------------------------

def _match(pattern: TriplePattern, triple, skip_object: bool = False) -> dict | None:
    binding: dict = {}
    pairs = list(zip(pattern, triple))
    if skip_object:
        pairs = pairs[:2]
    for pt, t in pairs:
        if isinstance(pt, Variable):
            if not can_bind(pt, t) or binding.setdefault(pt, t) != t:
                return None
        elif pt != t:
            return None
    return binding


def eval_triple(pattern: TriplePattern, graph) -> frozenset:
    out = set()
    for ct in graph:
        binding = _match(pattern, ct.triple)
        if binding is not None:
            out.add(ConditionalMapping.of(binding, ct.condition))
        elif isinstance(pattern.o, CLiteral) and isinstance(ct.triple.object, ELiteral):
            binding = _match(pattern, ct.triple, skip_object=True)
            if binding is not None:
                cond = conj(ct.condition, Rel("EQ", ct.triple.object, pattern.o))
                out.add(ConditionalMapping.of(binding, cond))
    return frozenset(out)


def check_filter(condition, lang: str) -> None:
    """Filter atoms are constraints of ``lang`` or equalities on RDF terms."""
    backend = get_backend(lang)
    for a in atoms(condition):
        leaves = list(atom_leaves(a))
        if any(is_rdf_term(t) or (isinstance(t, Variable) and not t.special) for t in leaves):
            if not (isinstance(a, Rel) and a.pred in ("EQ", "NEQ")):
                raise LanguageMismatch(f"{a} compares RDF terms with something other than EQ/NEQ")
            continue
        backend.check_atom(a)


def bind_filter(condition, binding: dict):
    """Push a binding into a filter condition.

    Atoms with an unbound variable are false, and (in)equalities involving
    RDF terms are decided on the spot; everything else stays symbolic.
    """
    def step(a):
        if isinstance(a, Truth):
            return a
        b = substitute_atom(a, binding)
        leaves = list(atom_leaves(b))
        if any(isinstance(t, Variable) for t in leaves):
            return FALSE
        if isinstance(b, Rel) and b.pred in ("EQ", "NEQ") and any(is_rdf_term(t) for t in leaves):
            same = b.left == b.right
            return Truth(same if b.pred == "EQ" else not same)
        return b
    return map_atoms(condition, step)


def eval_pattern(p, db) -> frozenset:
    """Evaluate a graph pattern over a database, returning conditional mappings."""
    return _eval(p, db.graph, db.language)


def _eval(p, graph, lang: str) -> frozenset:
    if isinstance(p, TriplePattern):
        return eval_triple(p, graph)
    if isinstance(p, AndPattern):
        return join_sets(_eval(p.left, graph, lang), _eval(p.right, graph, lang))
    if isinstance(p, UnionPattern):
        return union_sets(_eval(p.left, graph, lang), _eval(p.right, graph, lang))
    if isinstance(p, OptPattern):
        return leftjoin_sets(_eval(p.left, graph, lang), _eval(p.right, graph, lang))
    if isinstance(p, FilterPattern):
        check_filter(p.condition, lang)
        out = set()
        for m in _eval(p.inner, graph, lang):
            bound = bind_filter(p.condition, m.mapping)
            for disjunct in to_dnf(bound, lang):
                out.add(ConditionalMapping(m.binding, conj(m.condition, *disjunct)))
        return frozenset(out)
    raise TypeError(f"not a graph pattern: {p!r}")
