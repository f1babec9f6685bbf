"""Language-independent reasoning over Boolean combinations of constraints.

Satisfiability is decided by a small tableau: conjunctions are flattened into
a set of atoms that is checked by the language backend at every step, and
disjunctions are split one at a time.  Top-level conjuncts that share no
e-literal are decided independently, which keeps the large domain-closing
disjunctions of generated test databases from multiplying out.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from networkx.utils import UnionFind

from .backends import get_backend
from .errors import SolverError, UnsatGlobal
from .formulas import (FALSE, TRUE, And, Not, Or, Rel, Truth, conj, disj, eliterals,
                       is_atom, is_ground, neg)
from .terms import ELiteral


def negate_atom(a, lang: str) -> list:
    """A list of atoms whose disjunction is equivalent to the negation of ``a``."""
    if isinstance(a, Truth):
        return [Truth(not a.value)]
    return get_backend(lang).negate(a)


@lru_cache(maxsize=65536)
def nnf(f, lang: str, positive: bool = True):
    """Negation normal form with negated atoms expanded into disjunctions."""
    if isinstance(f, Not):
        return nnf(f.item, lang, not positive)
    if isinstance(f, (And, Or)):
        parts = [nnf(i, lang, positive) for i in f.items]
        use_and = isinstance(f, And) == positive
        return conj(*parts) if use_and else disj(*parts)
    if positive:
        return f
    return disj(*negate_atom(f, lang))


def to_dnf(f, lang: str) -> list[frozenset]:
    """Disjuncts of ``f`` as sets of atoms; ``[]`` is false, ``[frozenset()]`` true."""
    return [frozenset(c) for c in _dnf(nnf(f, lang))]


def _dnf(f) -> list[set]:
    if f == TRUE:
        return [set()]
    if f == FALSE:
        return []
    if isinstance(f, Or):
        out = []
        for i in f.items:
            out.extend(c for c in _dnf(i) if c not in out)
        return out
    if isinstance(f, And):
        acc = [set()]
        for i in f.items:
            acc = [a | b for a, b in product(acc, _dnf(i))]
        uniq: list[set] = []
        for c in acc:
            if c not in uniq:
                uniq.append(c)
        return uniq
    return [{f}]


@lru_cache(maxsize=262144)
def _conj_sat(lang: str, atoms: frozenset) -> bool:
    return get_backend(lang).conj_sat(atoms)


def _flatten(items, backend, atoms: set, ors: list) -> bool:
    """Split NNF formulas into atoms and pending disjunctions; False on a clash."""
    stack = list(items)
    while stack:
        f = stack.pop()
        if isinstance(f, And):
            stack.extend(f.items)
        elif isinstance(f, Or):
            merged = None
            if all(is_atom(i) for i in f.items):
                merged = backend.absorb(list(f.items))
            if merged is not None:
                stack.append(merged)
            else:
                ors.append(f)
        elif isinstance(f, Truth):
            if not f.value:
                return False
        elif is_ground(f):
            if not backend.holds(f):
                return False
        else:
            atoms.add(f)
    return True


def _branches(lang: str, atoms: frozenset, ors: tuple):
    """Yield satisfiable atom sets of a tableau node, depth first."""
    backend = get_backend(lang)
    if not _conj_sat(lang, atoms):
        return
    live = [o for o in ors if not any(i in atoms for i in o.items)]
    if not live:
        yield atoms
        return
    pick = min(live, key=lambda o: len(o.items))
    rest = [o for o in live if o is not pick]
    for choice in sorted(pick.items, key=str):
        new_atoms, new_ors = set(atoms), list(rest)
        if _flatten([choice], backend, new_atoms, new_ors):
            yield from _branches(lang, frozenset(new_atoms), tuple(new_ors))


def _components(f, lang: str) -> list[list]:
    """Group the top-level conjuncts of the NNF of ``f`` by shared e-literals."""
    g = nnf(f, lang)
    items = list(g.items) if isinstance(g, And) else [g]
    uf = UnionFind()
    owner = {}
    for k, item in enumerate(items):
        uf[k]
        for e in eliterals(item):
            if e in owner:
                uf.union(k, owner[e])
            else:
                owner[e] = k
    groups: dict = {}
    for k, item in enumerate(items):
        groups.setdefault(uf[k], []).append(item)
    return list(groups.values())


def _component_branches(group: list, lang: str):
    atoms: set = set()
    ors: list = []
    if not _flatten(group, get_backend(lang), atoms, ors):
        return iter(())
    return _branches(lang, frozenset(atoms), tuple(ors))


@lru_cache(maxsize=65536)
def satisfiable(f, lang: str) -> bool:
    """Whether some valuation satisfies ``f`` in the language's structure."""
    return all(next(_component_branches(g, lang), None) is not None
               for g in _components(f, lang))


def entails(phi, theta, lang: str) -> bool:
    """``phi |= theta``, decided by refuting ``phi`` and not ``theta``."""
    return not satisfiable(conj(phi, neg(theta)), lang)


def solve(f, lang: str, lits=()) -> dict | None:
    """A valuation of ``lits`` (and of every e-literal of ``f``) satisfying ``f``."""
    backend = get_backend(lang)
    wanted = set(lits) | eliterals(f)
    out: dict = {}
    for group in _components(f, lang):
        mentioned = set().union(*(eliterals(i) for i in group))
        found = None
        error = None
        for atoms in _component_branches(group, lang):
            try:
                found = backend.model(atoms, mentioned)
            except SolverError as exc:
                error = exc
                continue
            if found is not None:
                break
        if found is None:
            if error is not None:
                raise error
            return None
        out.update(found)
    missing = wanted - set(out)
    if missing:
        out.update(backend.model(frozenset(), missing))
    return {k: v for k, v in out.items() if k in wanted}


def forced_constant(phi, lit: ELiteral, lang: str):
    """The constant ``c`` with ``phi |= lit EQ c``, or ``None`` if there is none."""
    witness = solve(phi, lang, {lit})
    if witness is None:
        raise UnsatGlobal(f"global constraint is unsatisfiable: {phi}")
    c = witness[lit]
    return c if entails(phi, Rel("EQ", lit, c), lang) else None
