"""Difference constraints over the integers and the rationals.

A conjunction is turned into a constraint graph whose edge ``w -> u`` with
weight ``(c, strict)`` stands for ``x_u - x_w <= c`` (``< c`` when strict).
Weights are compared lexicographically as ``(c, -strict_count)`` so that a
zero-weight cycle through a strict edge counts as negative, which settles
dense orders exactly.  Over the integers, ``x - y < c`` is first tightened to
``x - y <= c - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import LanguageMismatch
from ..formulas import Diff, Rel
from ..terms import CLiteral, ELiteral
from .base import Backend

ZERO = "<zero>"
_NEGATION = {"<": [">="], "<=": [">"], ">=": ["<"], ">": ["<="], "=": ["<", ">"]}


@dataclass(frozen=True)
class DiffConjunction:
    """Edges ``(u, w, c, strict)`` meaning ``x_u - x_w <= c`` (or ``<``)."""

    edges: tuple
    integer: bool = False
    infeasible: bool = False

    @classmethod
    def build(cls, constraints, integer: bool = False) -> "DiffConjunction":
        """Build from ``(u, w, op, c)`` tuples with ``u``/``w`` node keys or ``None``."""
        edges = []
        infeasible = False
        for u, w, op, c in constraints:
            u = ZERO if u is None else u
            w = ZERO if w is None else w
            c = Fraction(c)
            parts = {"<=": [(u, w, c, False)], "<": [(u, w, c, True)],
                     ">=": [(w, u, -c, False)], ">": [(w, u, -c, True)],
                     "=": [(u, w, c, False), (w, u, -c, False)]}[op]
            for a, b, k, strict in parts:
                if integer:
                    k = Fraction(math.ceil(k) - 1) if strict else Fraction(math.floor(k))
                    strict = False
                if a == b:
                    if k < 0 or (k == 0 and strict):
                        infeasible = True
                    continue
                edges.append((a, b, k, strict))
        return cls(tuple(edges), integer, infeasible)

    @property
    def nodes(self) -> list:
        seen = {ZERO: None}
        for u, w, _, _ in self.edges:
            seen.setdefault(u)
            seen.setdefault(w)
        return list(seen)


def _shortest(c: DiffConjunction):
    """All-pairs shortest paths; ``None`` if a negative cycle exists."""
    nodes = c.nodes
    pos = {n: i for i, n in enumerate(nodes)}
    n = len(nodes)
    dist: list[list] = [[None] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = (Fraction(0), 0)
    for u, w, k, strict in c.edges:
        wt = (k, -1 if strict else 0)
        i, j = pos[w], pos[u]
        if dist[i][j] is None or wt < dist[i][j]:
            dist[i][j] = wt
    for m in range(n):
        dm = dist[m]
        for i in range(n):
            dim = dist[i][m]
            if dim is None:
                continue
            di = dist[i]
            for j in range(n):
                dmj = dm[j]
                if dmj is None:
                    continue
                cand = (dim[0] + dmj[0], dim[1] + dmj[1])
                if di[j] is None or cand < di[j]:
                    di[j] = cand
        if dist[m][m] < (0, 0):
            return None
    if any(dist[i][i] < (0, 0) for i in range(n)):
        return None
    return nodes, dist


def diff_sat(c: DiffConjunction) -> bool:
    return not c.infeasible and _shortest(c) is not None


def diff_model(c: DiffConjunction) -> dict | None:
    """A satisfying assignment for every node, with ``ZERO`` fixed at 0."""
    if c.infeasible:
        return None
    found = _shortest(c)
    if found is None:
        return None
    nodes, dist = found
    n = len(nodes)
    pot = []
    for j in range(n):
        best = (Fraction(0), 0)
        for i in range(n):
            if dist[i][j] is not None and dist[i][j] < best:
                best = dist[i][j]
        pot.append(best)
    pos = {nd: i for i, nd in enumerate(nodes)}
    eps = Fraction(1)
    for u, w, k, strict in c.edges:
        (au, bu), (aw, bw) = pot[pos[u]], pot[pos[w]]
        da, db = au - aw, bu - bw  # value of x_u - x_w is da + db*eps
        if da < k and db > 0:
            eps = min(eps, (k - da) / db / 2)
    values = {nd: a + b * eps for nd, (a, b) in zip(nodes, pot)}
    base = values[ZERO]
    values = {nd: v - base for nd, v in values.items()}
    for u, w, k, strict in c.edges:
        gap = values[u] - values[w]
        assert gap < k if strict else gap <= k, "difference witness failed its self-check"
    return values


class DiffBackend(Backend):
    """dePCL (rationals) and diPCL (integers)."""

    def __init__(self, integer: bool):
        self.integer = integer
        self.language = "dipcl" if integer else "depcl"
        self.sort = "integer" if integer else "rational"

    def valid_value(self, value) -> bool:
        if not isinstance(value, (int, Fraction)):
            return False
        return not self.integer or Fraction(value).denominator == 1

    def check_atom(self, atom) -> None:
        if isinstance(atom, Rel) and atom.pred == "EQ":
            self.check_operand(atom.left)
            self.check_operand(atom.right)
            return
        if isinstance(atom, Diff) and atom.op in _NEGATION:
            self.check_operand(atom.left)
            if atom.right is not None:
                self.check_operand(atom.right)
            if self.integer and Fraction(atom.bound).denominator != 1:
                raise LanguageMismatch(f"{atom} uses a non-integer bound")
            return
        super().check_atom(atom)

    def negate(self, atom) -> list:
        if isinstance(atom, Rel) and atom.pred == "EQ":
            return [Diff("<", atom.left, atom.right, Fraction(0)),
                    Diff(">", atom.left, atom.right, Fraction(0))]
        if isinstance(atom, Diff):
            return [Diff(op, atom.left, atom.right, atom.bound) for op in _NEGATION[atom.op]]
        raise LanguageMismatch(f"{atom} is not a {self.language} constraint")

    # operands are e-literals (variables) or numeric constants
    def scalar(self, o):
        if isinstance(o, ELiteral):
            return o, Fraction(0)
        if isinstance(o, CLiteral):
            return None, Fraction(o.value)
        raise LanguageMismatch(f"{o} is not a {self.language} term")

    def linear(self, atom) -> list:
        """``(u, w, op, c)`` tuples; ``u``/``w`` are node keys or ``None``."""
        if isinstance(atom, Rel):
            atom = Diff("=", atom.left, atom.right, Fraction(0))
        u, cu = self.scalar(atom.left)
        w, cw = (None, Fraction(0)) if atom.right is None else self.scalar(atom.right)
        return [(u, w, atom.op, Fraction(atom.bound) - cu + cw)]

    def lower(self, atoms) -> DiffConjunction:
        cons = [t for a in atoms for t in self.linear(a)]
        return DiffConjunction.build(cons, self.integer)

    def holds(self, atom) -> bool:
        return diff_sat(self.lower([atom]))

    def conj_sat(self, atoms) -> bool:
        return diff_sat(self.lower(atoms))

    def model(self, atoms, lits) -> dict | None:
        values = diff_model(self.lower(atoms))
        if values is None:
            return None
        return {lit: self.constant(values.get(lit, Fraction(0))) for lit in lits}

    def constant(self, value) -> CLiteral:
        return CLiteral(Fraction(value), self.sort)
