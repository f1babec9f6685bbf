"""Rectangle constraints, decided by lowering to rational difference constraints.

Each box e-literal ``r`` becomes four scalar nodes ``(r, "LLx")`` ... ``(r,
"URy")`` together with ``LLx(r) - URx(r) < 0`` and ``LLy(r) - URy(r) < 0``.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import LanguageMismatch
from ..formulas import COORD_FUNCTIONS, Coord, Diff, Rel, atom_leaves
from ..terms import CLiteral, ELiteral
from .base import Backend
from .difference import DiffConjunction, diff_model, diff_sat
from .geometry import Polygon

_NEGATION = {"<": [">="], "<=": [">"], ">=": ["<"], ">": ["<="], "=": ["<", ">"]}


def coordinate(box: Polygon, fn: str) -> Fraction:
    x1, y1, x2, y2 = box.bounds
    return {"LLx": x1, "LLy": y1, "URx": x2, "URy": y2}[fn]


def rcl_lower(atoms, boxes=()) -> DiffConjunction:
    """Lower a conjunction of box atoms to a rational difference conjunction."""
    cons = []
    declared = {t for a in atoms for t in atom_leaves(a) if isinstance(t, ELiteral)}
    declared |= set(boxes)
    for r in sorted(declared, key=lambda e: e.name):
        cons.append(((r, "LLx"), (r, "URx"), "<", 0))
        cons.append(((r, "LLy"), (r, "URy"), "<", 0))
    for a in atoms:
        cons.extend(_linear(a))
    return DiffConjunction.build(cons, integer=False)


def _scalar(o):
    if isinstance(o, Coord):
        if isinstance(o.arg, ELiteral):
            return (o.arg, o.fn), Fraction(0)
        if isinstance(o.arg, CLiteral):
            return None, coordinate(o.arg.value, o.fn)
    raise LanguageMismatch(f"{o} is not an rcl coordinate term")


def _linear(atom) -> list:
    if isinstance(atom, Rel):
        return [t for fn in COORD_FUNCTIONS
                for t in _linear(Diff("=", Coord(fn, atom.left), Coord(fn, atom.right), Fraction(0)))]
    u, cu = _scalar(atom.left)
    w, cw = (None, Fraction(0)) if atom.right is None else _scalar(atom.right)
    return [(u, w, atom.op, Fraction(atom.bound) - cu + cw)]


class RclBackend(Backend):
    language = "rcl"
    sort = "box"

    def valid_value(self, value) -> bool:
        return isinstance(value, Polygon) and value.is_rectangle

    def _check_coord(self, o) -> None:
        if not isinstance(o, Coord) or o.fn not in COORD_FUNCTIONS:
            raise LanguageMismatch(f"{o} is not an rcl coordinate term")
        self.check_operand(o.arg)

    def check_atom(self, atom) -> None:
        if isinstance(atom, Rel) and atom.pred == "EQ":
            self.check_operand(atom.left)
            self.check_operand(atom.right)
            return
        if isinstance(atom, Diff) and atom.op in _NEGATION:
            self._check_coord(atom.left)
            if atom.right is not None:
                self._check_coord(atom.right)
            return
        super().check_atom(atom)

    def negate(self, atom) -> list:
        if isinstance(atom, Rel) and atom.pred == "EQ":
            out = []
            for fn in COORD_FUNCTIONS:
                l, r = Coord(fn, atom.left), Coord(fn, atom.right)
                out += [Diff("<", l, r, Fraction(0)), Diff(">", l, r, Fraction(0))]
            return out
        if isinstance(atom, Diff):
            return [Diff(op, atom.left, atom.right, atom.bound) for op in _NEGATION[atom.op]]
        raise LanguageMismatch(f"{atom} is not an rcl constraint")

    def holds(self, atom) -> bool:
        return diff_sat(DiffConjunction.build(_linear(atom)))

    def conj_sat(self, atoms) -> bool:
        return diff_sat(rcl_lower(atoms))

    def model(self, atoms, lits) -> dict | None:
        values = diff_model(rcl_lower(atoms, lits))
        if values is None:
            return None
        return {r: self.constant(Polygon.rectangle(values[(r, "LLx")], values[(r, "LLy")],
                                                   values[(r, "URx")], values[(r, "URy")]))
                for r in lits}

