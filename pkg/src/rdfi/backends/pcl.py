"""Topological constraints over polygons (PCL) and its constant-free part (TCL).

Satisfiability builds an RCC-8 network over the e-literals and the polygon
landmarks they mention, pins every landmark pair to its geometric relation,
and runs path consistency.  Witnesses are searched among axis-aligned
rectangles on a grid spanned by the landmark coordinates, refined when the
coarse grid has no model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import LanguageMismatch, SolverError
from ..formulas import RCC8_PREDICATES, Rel
from ..terms import CLiteral, ELiteral
from . import rcc8
from .base import Backend
from .geometry import Polygon, rcc8_relation, rect_relation

# surface predicate -> relation mask, read left to right
_PRED_MASK = {p: rcc8.BIT[p] for p in RCC8_PREDICATES}
_MAX_GRID = 14
_MAX_STEPS = 200_000


@dataclass(frozen=True)
class RelSet:
    """Solver-only atom: ``left`` stands in one of the relations of ``mask`` to ``right``."""

    mask: int
    left: object
    right: object

    def __str__(self) -> str:
        return f"{self.left} {{{','.join(rcc8.names(self.mask))}}} {self.right}"


def _atom_mask(a) -> int:
    return a.mask if isinstance(a, RelSet) else _PRED_MASK[a.pred]


def build_network(atoms) -> rcc8.Rcc8Network:
    net = rcc8.Rcc8Network()
    for a in atoms:
        net.constrain(a.left, a.right, _atom_mask(a))
    marks = [n for n in net.nodes if isinstance(n, CLiteral)]
    for p, q in combinations(marks, 2):
        net.constrain(p, q, rcc8.BIT[rcc8_relation(p.value, q.value)])
    return net


def pcl_sat(atoms) -> bool:
    """Path-consistency verdict for a conjunction of RCC-8 atoms."""
    return rcc8.rcc8_path_consistency(build_network(atoms))[0]


def _grid(values: set, level: int) -> list[Fraction]:
    pts = sorted(values) if values else [Fraction(0), Fraction(4)]
    span = max(pts[-1] - pts[0], Fraction(1))
    pts = [pts[0] - span / 4] + pts + [pts[-1] + span / 4]
    for _ in range(level):
        pts = sorted(set(pts) | {(a + b) / 2 for a, b in zip(pts, pts[1:])})
    return pts


def _rectangles(xs, ys) -> list[tuple]:
    return [(x1, y1, x2, y2) for x1, x2 in combinations(xs, 2) for y1, y2 in combinations(ys, 2)]


def _as_region(p):
    """Rectangles travel as bound tuples; other polygons as themselves."""
    if isinstance(p, Polygon) and p.is_rectangle:
        return p.bounds
    return p


def _relation_bit(p, q) -> int:
    p, q = _as_region(p), _as_region(q)
    if isinstance(p, tuple) and isinstance(q, tuple):
        return rcc8.BIT[rect_relation(p, q)]
    if isinstance(p, tuple):
        p = Polygon.rectangle(*p)
    if isinstance(q, tuple):
        q = Polygon.rectangle(*q)
    return rcc8.BIT[rcc8_relation(p, q)]


def pcl_model(atoms, lits) -> dict | None:
    """Polygons for ``lits`` satisfying ``atoms``; ``None`` if unsatisfiable.

    Raises ``SolverError`` when path consistency accepts the network but no
    rectangle model turns up on the searched grids.
    """
    ok, net = rcc8.rcc8_path_consistency(build_network(atoms))
    if not ok:
        return None
    nodes = net.nodes
    idx = {n: i for i, n in enumerate(nodes)}
    marks = [n for n in nodes if isinstance(n, CLiteral)]
    free = sorted({n for n in nodes if isinstance(n, ELiteral)}, key=lambda e: e.name)
    fixed: dict = {}
    for v in free:
        for m in marks:
            if net.edges[idx[v]][idx[m]] == rcc8.BIT["EQ"]:
                fixed[v] = m.value
                break
    rest = [v for v in free if v not in fixed]
    alias: dict = {}
    for i, v in enumerate(rest):
        for w in rest[:i]:
            if w not in alias and net.edges[idx[v]][idx[w]] == rcc8.BIT["EQ"]:
                alias[v] = w
                break
    search = [v for v in rest if v not in alias]
    xs = {c for m in marks for c in (m.value.bounds[0], m.value.bounds[2])}
    ys = {c for m in marks for c in (m.value.bounds[1], m.value.bounds[3])}
    for level in range(4):
        gx, gy = _grid(xs, level), _grid(ys, level)
        if len(gx) > _MAX_GRID or len(gy) > _MAX_GRID:
            break
        pool = _rectangles(gx, gy) + [m.value for m in marks]
        found = _backtrack(search, pool, net, idx, fixed)
        if found is not None:
            found = {v: Polygon.rectangle(*p) if isinstance(p, tuple) else p
                     for v, p in found.items()}
            found.update(fixed)
            for v, w in alias.items():
                found[v] = found[w]
            out = {v: CLiteral(found[v], "region") for v in free}
            _verify(atoms, out)
            default = CLiteral(Polygon.rectangle(0, 0, 1, 1), "region")
            return {lit: out.get(lit, default) for lit in lits}
        if not search:
            break
    raise SolverError("no witness found for a path-consistent RCC-8 network")


def _backtrack(search, pool, net, idx, fixed):
    cands = []
    for v in search:
        row = net.edges[idx[v]]
        keep = []
        for p in pool:
            if all(row[idx[m]] & _relation_bit(p, m.value) for m in idx if isinstance(m, CLiteral)) \
                    and all(row[idx[w]] & _relation_bit(p, val) for w, val in fixed.items()):
                keep.append(p)
        if not keep:
            return None
        cands.append(keep)
    order = sorted(range(len(search)), key=lambda i: len(cands[i]))
    assign: dict = {}
    steps = [0]

    def go(k: int) -> bool:
        if k == len(order):
            return True
        v = search[order[k]]
        row = net.edges[idx[v]]
        for p in cands[order[k]]:
            steps[0] += 1
            if steps[0] > _MAX_STEPS:
                return False
            if all(row[idx[w]] & _relation_bit(p, q) for w, q in assign.items()):
                assign[v] = p
                if go(k + 1):
                    return True
                del assign[v]
        return False

    return dict(assign) if go(0) else None


def _verify(atoms, values: dict) -> None:
    def val(o):
        return values[o].value if isinstance(o, ELiteral) else o.value
    for a in atoms:
        if not _atom_mask(a) & _relation_bit(val(a.left), val(a.right)):
            raise SolverError(f"rectangle witness violates {a}")


class PclBackend(Backend):
    language = "pcl"
    sort = "region"
    landmarks = True

    def valid_value(self, value) -> bool:
        return isinstance(value, Polygon)

    def check_atom(self, atom) -> None:
        if isinstance(atom, Rel) and atom.pred in RCC8_PREDICATES:
            self.check_operand(atom.left)
            self.check_operand(atom.right)
            if not self.landmarks and (isinstance(atom.left, CLiteral) or isinstance(atom.right, CLiteral)):
                raise LanguageMismatch(f"{atom} mentions a constant, which tcl does not allow")
            return
        super().check_atom(atom)

    def negate(self, atom) -> list:
        if not isinstance(atom, Rel) or atom.pred not in RCC8_PREDICATES:
            raise LanguageMismatch(f"{atom} is not a {self.language} constraint")
        out = []
        for name in rcc8.BASE:
            if name == atom.pred:
                continue
            if name in _PRED_MASK:
                out.append(Rel(name, atom.left, atom.right))
            else:
                out.append(Rel(rcc8.CONVERSE_NAME[name], atom.right, atom.left))
        return out

    def holds(self, atom) -> bool:
        return bool(_atom_mask(atom) & _relation_bit(atom.left.value, atom.right.value))

    def absorb(self, disjuncts):
        if len(disjuncts) < 2 or not all(isinstance(d, (Rel, RelSet)) for d in disjuncts):
            return None
        first = disjuncts[0]
        m = 0
        for d in disjuncts:
            if isinstance(d, Rel) and d.pred not in _PRED_MASK:
                return None
            if (d.left, d.right) == (first.left, first.right):
                m |= _atom_mask(d)
            elif (d.right, d.left) == (first.left, first.right):
                m |= rcc8.converse(_atom_mask(d))
            else:
                return None
        return RelSet(m, first.left, first.right)

    def conj_sat(self, atoms) -> bool:
        return pcl_sat(atoms)

    def model(self, atoms, lits) -> dict | None:
        return pcl_model(atoms, lits)


class TclBackend(PclBackend):
    language = "tcl"
    landmarks = False
