"""Constraint atoms and Boolean combinations of them.

Atoms come in three shapes:

* ``Rel(pred, left, right)``: a binary predicate such as ``EQ``, ``NEQ`` or an
  RCC-8 relation name.
* ``Diff(op, left, right, bound)``: the difference bound ``left - right op
  bound``; ``right`` may be ``None`` for a plain bound on ``left``.
* ``Truth(value)``: the constants ``true`` and ``false``.

Connectives keep their operands in frozensets so that conditions differing
only in the order of conjuncts are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Union

from .terms import CLiteral, ELiteral, Variable, format_number

RCC8_PREDICATES = ("DC", "EC", "PO", "EQ", "TPP", "NTPP")
REL_PREDICATES = ("EQ", "NEQ") + RCC8_PREDICATES[:3] + RCC8_PREDICATES[4:]
DIFF_OPS = ("<", "<=", "=", ">=", ">")
COORD_FUNCTIONS = ("LLx", "LLy", "URx", "URy")


@dataclass(frozen=True)
class Coord:
    """A box coordinate such as ``LLx(r)``."""

    fn: str
    arg: object

    def __str__(self) -> str:
        return f"{self.fn}({self.arg})"


@dataclass(frozen=True)
class Truth:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Rel:
    pred: str
    left: object
    right: object

    def __str__(self) -> str:
        return f"{self.left} {self.pred} {self.right}"


@dataclass(frozen=True)
class Diff:
    op: str
    left: object
    right: object
    bound: Fraction

    def __str__(self) -> str:
        lhs = str(self.left) if self.right is None else f"{self.left} - {self.right}"
        return f"{lhs} {self.op} {format_number(self.bound)}"


@dataclass(frozen=True)
class And:
    items: frozenset

    def __str__(self) -> str:
        return " && ".join(_wrap(i, Or) for i in _ordered(self.items))


@dataclass(frozen=True)
class Or:
    items: frozenset

    def __str__(self) -> str:
        return " || ".join(_wrap(i, And) for i in _ordered(self.items))


@dataclass(frozen=True)
class Not:
    item: object

    def __str__(self) -> str:
        return f"!({self.item})"


Atom = Union[Rel, Diff, Truth]
Formula = Union[Rel, Diff, Truth, And, Or, Not]

TRUE = Truth(True)
FALSE = Truth(False)


def _ordered(items: Iterable) -> list:
    return sorted(items, key=str)


def _wrap(f, parenthesize) -> str:
    return f"({f})" if isinstance(f, parenthesize) else str(f)


def is_atom(f) -> bool:
    return isinstance(f, (Rel, Diff, Truth))


def conj(*items) -> Formula:
    """Conjunction with flattening and the trivial truth-constant rules."""
    out: set = set()
    for f in items:
        parts = f.items if isinstance(f, And) else (f,)
        for p in parts:
            if p == FALSE:
                return FALSE
            if p != TRUE:
                out.add(p)
    if not out:
        return TRUE
    if len(out) == 1:
        return next(iter(out))
    return And(frozenset(out))


def disj(*items) -> Formula:
    """Disjunction; the empty disjunction is false."""
    out: set = set()
    for f in items:
        parts = f.items if isinstance(f, Or) else (f,)
        for p in parts:
            if p == TRUE:
                return TRUE
            if p != FALSE:
                out.add(p)
    if not out:
        return FALSE
    if len(out) == 1:
        return next(iter(out))
    return Or(frozenset(out))


def neg(f) -> Formula:
    if isinstance(f, Truth):
        return Truth(not f.value)
    if isinstance(f, Not):
        return f.item
    return Not(f)


def conjuncts(f) -> list:
    """The top-level conjuncts of a formula."""
    if f == TRUE:
        return []
    return list(f.items) if isinstance(f, And) else [f]


def atoms(f) -> Iterator[Atom]:
    if isinstance(f, (And, Or)):
        for i in f.items:
            yield from atoms(i)
    elif isinstance(f, Not):
        yield from atoms(f.item)
    else:
        yield f


def operands(a) -> tuple:
    if isinstance(a, Diff):
        return tuple(o for o in (a.left, a.right) if o is not None)
    if isinstance(a, Truth):
        return ()
    return (a.left, a.right)


def _leaves(o) -> Iterator:
    if isinstance(o, Coord):
        yield from _leaves(o.arg)
    else:
        yield o


def atom_leaves(a) -> Iterator:
    """Terms and variables an atom mentions, looking inside coordinates."""
    for o in operands(a):
        yield from _leaves(o)


def eliterals(f) -> set[ELiteral]:
    return {t for a in atoms(f) for t in atom_leaves(a) if isinstance(t, ELiteral)}


def variables(f) -> set[Variable]:
    return {t for a in atoms(f) for t in atom_leaves(a) if isinstance(t, Variable)}


def constants(f) -> set[CLiteral]:
    return {t for a in atoms(f) for t in atom_leaves(a) if isinstance(t, CLiteral)}


def is_ground(a) -> bool:
    return not any(isinstance(t, (ELiteral, Variable)) for t in atom_leaves(a))


def _subst_operand(o, mapping: dict):
    if isinstance(o, Coord):
        return Coord(o.fn, _subst_operand(o.arg, mapping))
    return mapping.get(o, o)


def map_atoms(f, fn: Callable) -> Formula:
    """Rebuild a formula, replacing every atom by ``fn(atom)``."""
    if isinstance(f, And):
        return conj(*(map_atoms(i, fn) for i in f.items))
    if isinstance(f, Or):
        return disj(*(map_atoms(i, fn) for i in f.items))
    if isinstance(f, Not):
        return neg(map_atoms(f.item, fn))
    return fn(f)


def substitute_atom(a, mapping: dict):
    if isinstance(a, Rel):
        return Rel(a.pred, _subst_operand(a.left, mapping), _subst_operand(a.right, mapping))
    if isinstance(a, Diff):
        right = None if a.right is None else _subst_operand(a.right, mapping)
        return Diff(a.op, _subst_operand(a.left, mapping), right, a.bound)
    return a


def substitute(f, mapping: dict) -> Formula:
    """Replace variables or e-literals according to ``mapping``."""
    if not mapping:
        return f
    return map_atoms(f, lambda a: substitute_atom(a, mapping))


def evaluate(f, holds: Callable[[Atom], bool]) -> bool:
    """Truth value of a ground formula given a truth function for atoms."""
    if isinstance(f, And):
        return all(evaluate(i, holds) for i in f.items)
    if isinstance(f, Or):
        return any(evaluate(i, holds) for i in f.items)
    if isinstance(f, Not):
        return not evaluate(f.item, holds)
    if isinstance(f, Truth):
        return f.value
    return holds(f)
