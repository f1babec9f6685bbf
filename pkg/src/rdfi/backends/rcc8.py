"""RCC-8 relation algebra: base relations, composition and path consistency.

Relation sets are 8-bit masks, one bit per base relation.  The inverse
relations ``TPPI`` and ``NTPPI`` exist only inside the solver; the surface
vocabulary expresses them by swapping arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

BASE = ("DC", "EC", "PO", "EQ", "TPP", "NTPP", "TPPI", "NTPPI")
BIT = {name: 1 << i for i, name in enumerate(BASE)}
ALL = (1 << len(BASE)) - 1
CONVERSE_NAME = {"DC": "DC", "EC": "EC", "PO": "PO", "EQ": "EQ",
                 "TPP": "TPPI", "NTPP": "NTPPI", "TPPI": "TPP", "NTPPI": "NTPP"}


def mask(*names: str) -> int:
    m = 0
    for n in names:
        m |= BIT[n]
    return m


def names(m: int) -> tuple[str, ...]:
    return tuple(n for n in BASE if m & BIT[n])


_U = ("DC", "EC", "PO", "EQ", "TPP", "NTPP", "TPPI", "NTPPI")
_DR_LEFT = ("DC", "EC", "PO", "TPP", "NTPP")
_DR_RIGHT = ("DC", "EC", "PO", "TPPI", "NTPPI")
_OVERLAP_DOWN = ("PO", "TPP", "NTPP")
_OVERLAP_UP = ("PO", "TPPI", "NTPPI")

# COMPOSITION[r1][r2]: possible relations of (a, c) given a r1 b and b r2 c.
COMPOSITION_NAMES: dict[str, dict[str, tuple[str, ...]]] = {
    "DC": {"DC": _U, "EC": _DR_LEFT, "PO": _DR_LEFT, "TPP": _DR_LEFT, "NTPP": _DR_LEFT,
           "TPPI": ("DC",), "NTPPI": ("DC",)},
    "EC": {"DC": _DR_RIGHT, "EC": ("DC", "EC", "PO", "TPP", "TPPI", "EQ"), "PO": _DR_LEFT,
           "TPP": ("EC", "PO", "TPP", "NTPP"), "NTPP": _OVERLAP_DOWN,
           "TPPI": ("DC", "EC"), "NTPPI": ("DC",)},
    "PO": {"DC": _DR_RIGHT, "EC": _DR_RIGHT, "PO": _U, "TPP": _OVERLAP_DOWN,
           "NTPP": _OVERLAP_DOWN, "TPPI": _DR_RIGHT, "NTPPI": _DR_RIGHT},
    "TPP": {"DC": ("DC",), "EC": ("DC", "EC"), "PO": _DR_LEFT, "TPP": ("TPP", "NTPP"),
            "NTPP": ("NTPP",), "TPPI": ("DC", "EC", "PO", "TPP", "TPPI", "EQ"),
            "NTPPI": _DR_RIGHT},
    "NTPP": {"DC": ("DC",), "EC": ("DC",), "PO": _DR_LEFT, "TPP": ("NTPP",),
             "NTPP": ("NTPP",), "TPPI": _DR_LEFT, "NTPPI": _U},
    "TPPI": {"DC": _DR_RIGHT, "EC": ("EC", "PO", "TPPI", "NTPPI"), "PO": _OVERLAP_UP,
             "TPP": ("PO", "EQ", "TPP", "TPPI"), "NTPP": _OVERLAP_DOWN,
             "TPPI": ("TPPI", "NTPPI"), "NTPPI": ("NTPPI",)},
    "NTPPI": {"DC": _DR_RIGHT, "EC": _OVERLAP_UP, "PO": _OVERLAP_UP, "TPP": _OVERLAP_UP,
              "NTPP": ("PO", "TPP", "NTPP", "TPPI", "NTPPI", "EQ"),
              "TPPI": ("NTPPI",), "NTPPI": ("NTPPI",)},
}
for _r in BASE:
    COMPOSITION_NAMES.setdefault("EQ", {})[_r] = (_r,)
    COMPOSITION_NAMES[_r]["EQ"] = (_r,)

_BASE_COMPOSE = {(BIT[a], BIT[b]): mask(*COMPOSITION_NAMES[a][b]) for a, b in product(BASE, BASE)}
_CONVERSE = [0] * (ALL + 1)
_COMPOSE = [[0] * (ALL + 1) for _ in range(ALL + 1)]
for _m in range(ALL + 1):
    _CONVERSE[_m] = mask(*(CONVERSE_NAME[n] for n in names(_m)))
_ROW = {ra: [0] * (ALL + 1) for ra in BASE}
for ra in BASE:
    for _b in range(1, ALL + 1):
        low = _b & -_b
        _ROW[ra][_b] = _ROW[ra][_b ^ low] | _BASE_COMPOSE[(BIT[ra], low)]
for _a in range(1, ALL + 1):
    rows = [_ROW[ra] for ra in BASE if _a & BIT[ra]]
    _COMPOSE[_a] = [0] * (ALL + 1)
    for _b in range(ALL + 1):
        out = 0
        for row in rows:
            out |= row[_b]
        _COMPOSE[_a][_b] = out


def converse(m: int) -> int:
    return _CONVERSE[m]


def compose(a: int, b: int) -> int:
    return _COMPOSE[a][b]


@dataclass
class Rcc8Network:
    """Nodes are arbitrary hashable keys; ``edges[i][j]`` is a relation mask."""

    nodes: list = field(default_factory=list)
    edges: list[list[int]] = field(default_factory=list)

    def index(self, node) -> int:
        try:
            return self.nodes.index(node)
        except ValueError:
            self.nodes.append(node)
            for row in self.edges:
                row.append(ALL)
            self.edges.append([ALL] * len(self.nodes))
            i = len(self.nodes) - 1
            self.edges[i][i] = BIT["EQ"]
            return i

    def constrain(self, a, b, m: int) -> None:
        i, j = self.index(a), self.index(b)
        self.edges[i][j] &= m
        self.edges[j][i] &= converse(m)

    def relation(self, a, b) -> int:
        return self.edges[self.nodes.index(a)][self.nodes.index(b)]

    def copy(self) -> "Rcc8Network":
        return Rcc8Network(list(self.nodes), [list(r) for r in self.edges])


def rcc8_path_consistency(net: Rcc8Network) -> tuple[bool, Rcc8Network]:
    """Refine every edge by composition until a fixpoint; report emptiness."""
    net = net.copy()
    e = net.edges
    n = len(net.nodes)
    if any(e[i][j] == 0 for i in range(n) for j in range(n)):
        return False, net
    queue = [(i, j) for i in range(n) for j in range(n) if i != j]
    pending = set(queue)
    while queue:
        i, j = queue.pop()
        pending.discard((i, j))
        rij = e[i][j]
        for k in range(n):
            if k == i or k == j:
                continue
            # tighten (i, k) through j and (k, j) through i
            ik = e[i][k] & _COMPOSE[rij][e[j][k]]
            if ik != e[i][k]:
                if not ik:
                    e[i][k] = 0
                    return False, net
                e[i][k] = ik
                e[k][i] = _CONVERSE[ik]
                for p in ((i, k), (k, i)):
                    if p not in pending:
                        pending.add(p)
                        queue.append(p)
            kj = e[k][j] & _COMPOSE[e[k][i]][rij]
            if kj != e[k][j]:
                if not kj:
                    e[k][j] = 0
                    return False, net
                e[k][j] = kj
                e[j][k] = _CONVERSE[kj]
                for p in ((k, j), (j, k)):
                    if p not in pending:
                        pending.add(p)
                        queue.append(p)
    return True, net
