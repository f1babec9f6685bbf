"""Equality constraints over an infinite domain."""

from __future__ import annotations

from fractions import Fraction

from networkx.utils import UnionFind

from ..errors import LanguageMismatch
from ..formulas import Rel
from ..terms import CLiteral
from .base import Backend, rel_operands_ok


def ecl_sat(atoms) -> bool:
    """Union the EQ atoms, then look for constant clashes and violated NEQs."""
    return _classes(atoms) is not None


def _classes(atoms):
    uf = UnionFind()
    for a in atoms:
        uf[a.left], uf[a.right]
        if a.pred == "EQ":
            uf.union(a.left, a.right)
    pinned: dict = {}
    for t in list(uf.parents):
        if isinstance(t, CLiteral):
            root = uf[t]
            if pinned.setdefault(root, t) != t:
                return None
    for a in atoms:
        if a.pred == "NEQ" and uf[a.left] == uf[a.right]:
            return None
    return uf, pinned


class EclBackend(Backend):
    language = "ecl"
    sort = "const"

    def valid_value(self, value) -> bool:
        return isinstance(value, (int, Fraction))

    def check_atom(self, atom) -> None:
        if isinstance(atom, Rel) and atom.pred in ("EQ", "NEQ"):
            rel_operands_ok(self, atom)
            return
        super().check_atom(atom)

    def negate(self, atom) -> list:
        if isinstance(atom, Rel) and atom.pred in ("EQ", "NEQ"):
            return [Rel("NEQ" if atom.pred == "EQ" else "EQ", atom.left, atom.right)]
        raise LanguageMismatch(f"{atom} is not an ecl constraint")

    def holds(self, atom) -> bool:
        same = atom.left == atom.right
        return same if atom.pred == "EQ" else not same

    def conj_sat(self, atoms) -> bool:
        return ecl_sat(atoms)

    def model(self, atoms, lits) -> dict | None:
        found = _classes(atoms)
        if found is None:
            return None
        uf, pinned = found
        used = [t.value for t in uf.parents if isinstance(t, CLiteral)]
        fresh = int(max(used, default=0)) + 1
        values: dict = {}
        out = {}
        for lit in sorted(lits, key=lambda e: e.name):
            root = uf[lit] if lit in uf.parents else lit
            if root not in values:
                if root in pinned:
                    values[root] = pinned[root]
                else:
                    values[root] = self.constant(Fraction(fresh))
                    fresh += 1
            out[lit] = values[root]
        return out

    def constant(self, value) -> CLiteral:
        return CLiteral(Fraction(value), self.sort)

