"""The fire-monitoring databases and mappings used by many tests."""

from __future__ import annotations

from rdfi.algebra import ConditionalMapping, FilterPattern, AndPattern, TriplePattern
from rdfi.backends import Polygon
from rdfi.constraints import entails
from rdfi.formulas import TRUE, Rel, conj, disj
from rdfi.model import ETriple, mk_database
from rdfi.terms import CLiteral, ELiteral, Iri, Variable


def box(x1, y1, x2, y2) -> CLiteral:
    return CLiteral(Polygon.rectangle(x1, y1, x2, y2), "region")


R1 = ELiteral("R1", "region")
R2 = ELiteral("R2", "region")
F = Variable("F")
S = Variable("S", True)
R = Variable("R", True)
Zv = Variable("Z")

hotspot1, fire1, fire2 = Iri("hotspot1"), Iri("fire1"), Iri("fire2")
TYPE, OCCURRED, CORRESPONDS = Iri("type"), Iri("occurredIn"), Iri("correspondsTo")
Fire, Hotspot = Iri("Fire"), Iri("Hotspot")

OUTER = box(6, 8, 23, 19)
INNER = box(10, 12, 21, 17)
BIG = box(2, 4, 28, 22)
TINY = box(1, 1, 2, 2)
TEN = box(0, 0, 10, 10)

BASE_TRIPLES = [
    ETriple(hotspot1, TYPE, Hotspot),
    ETriple(fire1, TYPE, Fire),
    ETriple(hotspot1, CORRESPONDS, fire1),
    ETriple(fire1, OCCURRED, R1),
]


def fire_db():
    """A fire somewhere strictly inside the rectangle (6,8)-(23,19)."""
    return mk_database(BASE_TRIPLES, Rel("NTPP", R1, OUTER), "pcl")


def fire_db_disjunctive():
    phi = disj(conj(Rel("NTPP", R1, OUTER), Rel("NTPP", R1, INNER)), Rel("PO", R1, box(2, 4, 6, 8)))
    return mk_database(BASE_TRIPLES + [ETriple(fire2, OCCURRED, OUTER)], phi, "pcl")


def fire_pattern(region: CLiteral):
    """Fires that occurred in a region strictly inside ``region``."""
    return FilterPattern(AndPattern(TriplePattern(F, TYPE, Fire), TriplePattern(F, OCCURRED, R)),
                         Rel("NTPP", R, region))


# conditional mappings over ?F and ?S
MU1 = ConditionalMapping.of({F: fire1, S: TINY})
MU2 = ConditionalMapping.of({F: fire1, S: R1}, Rel("NTPP", R1, TEN))
MU3 = ConditionalMapping.of({F: fire1, S: R1}, conj(Rel("NTPP", R1, R2), Rel("DC", R2, box(0, 0, 1, 1))))
MU4 = ConditionalMapping.of({F: fire1, S: R1})

# the three-candidate domain for the fire database
DOM3 = {R1: [box(11, 13, 15, 15), INNER, box(0, 0, 1, 1)]}


def equivalent(a, b, lang: str = "pcl") -> bool:
    """Same condition up to reordering, or logically equivalent."""
    return a == b or (entails(a, b, lang) and entails(b, a, lang))


def same_mappings(got, expected, lang: str = "pcl") -> bool:
    """Equal sets of conditional mappings, conditions compared by equivalence."""
    got, expected = list(got), list(expected)
    if len(got) != len(expected):
        return False
    rest = list(got)
    for m in expected:
        match = next((g for g in rest if g.binding == m.binding
                      and equivalent(g.condition, m.condition, lang)), None)
        if match is None:
            return False
        rest.remove(match)
    return True


__all__ = [name for name in dir() if not name.startswith("_")] + ["TRUE"]
