from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rdfi.backends import (DiffConjunction, Polygon, Rcc8Network, diff_model, diff_sat, ecl_sat,
                           get_backend, pcl_model, pcl_sat, rcc8_path_consistency, rcc8_relation)
from rdfi.backends import rcc8
from rdfi.errors import IllFormedConstant, LanguageMismatch, UnknownDatatype
from rdfi.formulas import Coord, Diff, Rel
from rdfi.oracle import ground_holds
from rdfi.terms import CLiteral, ELiteral, Variable

rect = Polygon.rectangle


def region(*bounds):
    return CLiteral(rect(*bounds), "region")


# -- polygons --------------------------------------------------------------------

def test_polygon_from_halfplanes_is_canonical():
    tri = Polygon([(-1, 0, 0), (0, -1, 0), (1, 1, 4)])
    assert set(tri.vertices) == {(0, 0), (4, 0), (0, 4)}
    redundant = Polygon([(1, 1, 4), (-1, 0, 0), (0, -1, 0), (1, 0, 10)])
    assert tri == redundant and hash(tri) == hash(redundant)
    assert not tri.is_rectangle
    assert rect(0, 0, 2, 3) == Polygon([(1, 0, 2), (-1, 0, 0), (0, 1, 3), (0, -1, 0)])
    assert rect(0, 0, 2, 3).bounds == (0, 0, 2, 3)


@pytest.mark.parametrize("planes", [
    [(1, 0, 1), (0, 1, 1)],                      # unbounded
    [(1, 0, 0), (-1, 0, -1), (0, 1, 1), (0, -1, 0)],  # empty
    [(1, 0, 0), (-1, 0, 0), (0, 1, 1), (0, -1, 0)],   # a segment
    [(0, 0, 1), (1, 0, 1), (-1, 0, 1)],          # zero normal
])
def test_bad_polygons(planes):
    with pytest.raises(IllFormedConstant):
        Polygon(planes)


def test_bad_rectangle():
    with pytest.raises(IllFormedConstant):
        rect(1, 0, 1, 5)


def test_rectangle_text():
    assert rect(1, 2, 3, Fraction(9, 2)).to_text() == "x >= 1 && x <= 3 && y >= 2 && y <= 9/2"


@pytest.mark.parametrize("a, b, expected", [
    ((0, 0, 1, 1), (2, 2, 3, 3), "DC"),
    ((0, 0, 1, 1), (1, 0, 2, 1), "EC"),
    ((0, 0, 1, 1), (1, 1, 2, 2), "EC"),
    ((0, 0, 2, 2), (1, 1, 3, 3), "PO"),
    ((0, 0, 2, 2), (0, 0, 2, 2), "EQ"),
    ((0, 0, 1, 1), (0, 0, 2, 2), "TPP"),
    ((1, 1, 2, 2), (0, 0, 3, 3), "NTPP"),
    ((0, 0, 2, 2), (0, 0, 1, 1), "TPPI"),
    ((0, 0, 3, 3), (1, 1, 2, 2), "NTPPI"),
])
def test_rectangle_relations(a, b, expected):
    assert rcc8_relation(rect(*a), rect(*b)) == expected


def test_triangle_relations():
    tri = Polygon([(-1, 0, 0), (0, -1, 0), (1, 1, 4)])
    assert rcc8_relation(tri, rect(0, 0, 4, 4)) == "TPP"
    assert rcc8_relation(tri, rect(3, 3, 5, 5)) == "DC"
    assert rcc8_relation(tri, rect(2, 2, 5, 5)) == "EC"
    assert rcc8_relation(tri, rect(1, 1, 5, 5)) == "PO"
    assert rcc8_relation(Polygon([(-1, 0, -1), (0, -1, -1), (1, 1, 3)]), rect(-1, -1, 5, 5)) == "NTPP"


def _rotated(x1, y1, x2, y2):
    """The box under (x, y) -> (x - y, x + y): a diamond with the same topology."""
    return Polygon([(-1, -1, -2 * x1), (1, 1, 2 * x2), (1, -1, -2 * y1), (-1, 1, 2 * y2)])


boxes = st.tuples(st.integers(0, 5), st.integers(1, 4), st.integers(0, 5), st.integers(1, 4)).map(
    lambda t: (t[0], t[2], t[0] + t[1], t[2] + t[3]))


@given(boxes, boxes)
def test_general_polygon_route_agrees_with_boxes(a, b):
    ra, rb = _rotated(*a), _rotated(*b)
    assert not ra.is_rectangle
    assert rcc8_relation(ra, rb) == rcc8_relation(rect(*a), rect(*b))
    assert rcc8_relation(rb, ra) == rcc8.CONVERSE_NAME[rcc8_relation(ra, rb)]


# -- RCC-8 composition and path consistency ---------------------------------------------

def test_composition_table_shape():
    assert len(rcc8.COMPOSITION_NAMES) == 8
    assert all(len(row) == 8 for row in rcc8.COMPOSITION_NAMES.values())
    for r in rcc8.BASE:
        assert rcc8.compose(rcc8.BIT["EQ"], rcc8.BIT[r]) == rcc8.BIT[r]
        assert rcc8.converse(rcc8.converse(rcc8.BIT[r])) == rcc8.BIT[r]


def test_composition_respects_converse():
    for a in rcc8.BASE:
        for b in rcc8.BASE:
            lhs = rcc8.converse(rcc8.compose(rcc8.BIT[a], rcc8.BIT[b]))
            rhs = rcc8.compose(rcc8.converse(rcc8.BIT[b]), rcc8.converse(rcc8.BIT[a]))
            assert lhs == rhs, (a, b)


def test_path_consistency():
    net = Rcc8Network()
    net.constrain("a", "b", rcc8.BIT["NTPP"])
    net.constrain("b", "c", rcc8.BIT["NTPP"])
    ok, refined = rcc8_path_consistency(net)
    assert ok and refined.relation("a", "c") == rcc8.BIT["NTPP"]
    net.constrain("a", "c", rcc8.BIT["DC"])
    assert not rcc8_path_consistency(net)[0]


# -- per-language deciders --------------------------------------------------------------

def test_diff_conjunction_basics():
    assert diff_sat(DiffConjunction.build([("x", "y", "<", 1), ("y", "x", "<", 0)]))
    assert not diff_sat(DiffConjunction.build([("x", "y", "<", 1), ("y", "x", "<", 0)], True))
    assert not diff_sat(DiffConjunction.build([("x", None, "<", 0), ("x", None, ">", 0)]))
    assert not diff_sat(DiffConjunction.build([("x", "x", "<", 0)]))
    model = diff_model(DiffConjunction.build([("x", None, ">", Fraction(1, 2)), ("x", "y", "=", 2)]))
    assert model["x"] > Fraction(1, 2) and model["x"] - model["y"] == 2


diff_constraints = st.lists(st.tuples(st.sampled_from(["a", "b", "c"]),
                                      st.sampled_from(["a", "b", "c", None]),
                                      st.sampled_from(["<", "<=", "=", ">=", ">"]),
                                      st.fractions(-3, 3, max_denominator=2)), max_size=6)


@settings(max_examples=200)
@given(diff_constraints)
def test_diff_model_satisfies_constraints(cons):
    c = DiffConjunction.build(cons)
    model = diff_model(c)
    assert (model is not None) == diff_sat(c)
    if model is not None:
        for u, w, op, k in cons:
            lhs = model.get(u, 0) - (0 if w is None else model.get(w, 0))
            assert {"<": lhs < k, "<=": lhs <= k, "=": lhs == k, ">=": lhs >= k, ">": lhs > k}[op]


def test_ecl():
    a, b = ELiteral("a", "const"), ELiteral("b", "const")
    one, two = CLiteral(Fraction(1), "const"), CLiteral(Fraction(2), "const")
    assert ecl_sat([Rel("EQ", a, one), Rel("NEQ", b, one)])
    assert not ecl_sat([Rel("EQ", a, one), Rel("EQ", a, b), Rel("EQ", b, two)])
    assert not ecl_sat([Rel("EQ", a, b), Rel("NEQ", b, a)])
    backend = get_backend("ecl")
    model = backend.model([Rel("EQ", a, one), Rel("NEQ", b, one)], [a, b])
    assert model[a] == one and model[b] != one


def test_rcl_model_is_a_box():
    backend = get_backend("rcl")
    r = ELiteral("r", "box")
    fixed = CLiteral(rect(0, 0, 4, 4), "box")
    atoms = [Diff(">", Coord("LLx", r), Coord("URx", fixed), Fraction(0)),
             Diff("<=", Coord("URy", r), None, Fraction(1))]
    assert backend.conj_sat(atoms)
    model = backend.model(atoms, [r])
    assert all(ground_holds(Diff(a.op, Coord(a.left.fn, model[r]),
                                 None if a.right is None else a.right, a.bound)) for a in atoms)
    assert not backend.conj_sat(atoms + [Rel("EQ", r, fixed)])


def test_pcl_sat_and_model():
    r1, r2 = ELiteral("r1", "region"), ELiteral("r2", "region")
    outer, far = region(0, 0, 10, 10), region(20, 20, 30, 30)
    atoms = [Rel("NTPP", r1, outer), Rel("EC", r2, r1), Rel("TPP", r2, outer)]
    assert pcl_sat(atoms)
    model = pcl_model(atoms, [r1, r2])
    assert all(ground_holds(Rel(a.pred, model.get(a.left, a.left), model.get(a.right, a.right)))
               for a in atoms)
    assert not pcl_sat([Rel("NTPP", r1, outer), Rel("NTPP", r1, far)])


def test_negation_is_exhaustive():
    pcl = get_backend("pcl")
    r, c = ELiteral("r", "region"), region(0, 0, 1, 1)
    assert len(pcl.negate(Rel("NTPP", r, c))) == 7
    depcl = get_backend("depcl")
    x = ELiteral("x", "rational")
    ops = sorted(d.op for d in depcl.negate(Diff("=", x, None, Fraction(1))))
    assert ops == ["<", ">"]


def test_vocabulary_checks():
    with pytest.raises(LanguageMismatch):
        get_backend("nope")
    with pytest.raises(LanguageMismatch):
        get_backend("tcl").check_atom(Rel("DC", ELiteral("r", "region"), region(0, 0, 1, 1)))
    with pytest.raises(UnknownDatatype):
        get_backend("pcl").check_atom(Rel("DC", ELiteral("r", "box"), ELiteral("s", "region")))
    with pytest.raises(LanguageMismatch):
        get_backend("ecl").check_atom(Rel("EQ", Variable("x"), ELiteral("a", "const")))
    with pytest.raises(LanguageMismatch):
        get_backend("dipcl").check_atom(Diff("<", ELiteral("a", "integer"), None, Fraction(1, 2)))
    with pytest.raises(LanguageMismatch):
        get_backend("rcl").check_operand(CLiteral(Polygon([(-1, 0, 0), (0, -1, 0), (1, 1, 4)]), "box"))
    get_backend("tcl").check_atom(Rel("PO", ELiteral("r", "region"), ELiteral("s", "region")))
