import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import fixtures as fx
from gen import random_any_pattern, random_construct, random_database, random_select
from rdfi.errors import (IllFormedConstant, IllFormedTriple, LanguageMismatch, NotAfoFragment,
                         ParseError, UnknownDatatype, UnsupportedFragment)
from rdfi.formulas import Coord, Diff, Rel, conj, disj, neg
from rdfi.model import ETriple
from rdfi.query import ConstructQuery, SelectAnswer, eval_construct, eval_select, SelectQuery
from rdfi.syntax import (format_certain, parse_answers_json, parse_database, parse_domain,
                         parse_formula, parse_graph, parse_linear_conjunction, parse_query,
                         parse_term, serialize_answers, serialize_database, serialize_domain,
                         serialize_query, tokenize)
from rdfi.terms import CLiteral, ELiteral, Iri, PlainLiteral

ALL_LANGS = ("ecl", "dipcl", "depcl", "rcl", "pcl", "tcl")

FIRE = """#lang pcl
# a hotspot whose fire lies strictly inside a known rectangle
#global _e:R1 NTPP "x >= 6 && x <= 23 && y >= 8 && y <= 19" .
<hotspot1> <type> <Hotspot> .
<fire1> <type> <Fire> .
<hotspot1> <correspondsTo> <fire1> .
<fire1> <occurredIn> _e:R1 .
"""


def test_parse_fire_database():
    assert parse_database(FIRE) == fx.fire_db()


def test_unicode_connectives_and_short_eliterals():
    text = '#lang pcl\n#global _R1 NTPP "x ≥ 6 ∧ x ≤ 23 ∧ y ≥ 8 ∧ y ≤ 19" .\n<fire1> <occurredIn> _R1 .\n'
    db = parse_database(text)
    assert db.global_constraint == Rel("NTPP", fx.R1, fx.OUTER)


def test_linear_conjunctions():
    assert parse_linear_conjunction("x >= 0 && 2*x + y <= 4 && y >= 0") is not None
    assert parse_linear_conjunction("hello world") is None
    tri = parse_term('"x >= 0 && y >= 0 && x + y <= 4"', "pcl")
    assert isinstance(tri, CLiteral) and len(tri.value.vertices) == 3


def test_typed_strings_stay_plain():
    assert parse_term('"x >= 0 && x <= 1 && y >= 0 && y <= 1"^^<http://t>', "pcl") == \
        PlainLiteral("x >= 0 && x <= 1 && y >= 0 && y <= 1", "http://t")
    assert parse_term('"fire"', "pcl") == PlainLiteral("fire")


@pytest.mark.parametrize("lang, text, expected", [
    ("dipcl", "_e:a - _e:b <= 3", Diff("<=", ELiteral("a", "integer"), ELiteral("b", "integer"), Fraction(3))),
    ("dipcl", "_e:a < -2", Diff("<", ELiteral("a", "integer"), None, Fraction(-2))),
    ("depcl", "_e:a >= _e:b", Diff(">=", ELiteral("a", "rational"), ELiteral("b", "rational"), Fraction(0))),
    ("depcl", "_e:a = 1/2", Diff("=", ELiteral("a", "rational"), None, Fraction(1, 2))),
    ("rcl", "LLx(_e:r) - URx(_e:s) > 1",
     Diff(">", Coord("LLx", ELiteral("r", "box")), Coord("URx", ELiteral("s", "box")), Fraction(1))),
    ("ecl", "_e:a != 3", Rel("NEQ", ELiteral("a", "const"), CLiteral(Fraction(3), "const"))),
    ("ecl", "_e:a EQ _e:b", Rel("EQ", ELiteral("a", "const"), ELiteral("b", "const"))),
    ("pcl", "!(_e:R1 DC _e:R2)", neg(Rel("DC", fx.R1, fx.R2))),
])
def test_formulas(lang, text, expected):
    assert parse_formula(text, lang) == expected


def test_precedence():
    a = Rel("EQ", ELiteral("a", "const"), CLiteral(Fraction(1), "const"))
    b = Rel("EQ", ELiteral("b", "const"), CLiteral(Fraction(1), "const"))
    c = Rel("EQ", ELiteral("c", "const"), CLiteral(Fraction(1), "const"))
    assert parse_formula("_a EQ 1 || _b EQ 1 && _c EQ 1", "ecl") == disj(a, conj(b, c))
    assert parse_formula("(_a EQ 1 || _b EQ 1) && _c EQ 1", "ecl") == conj(disj(a, b), c)


@pytest.mark.parametrize("text, error", [
    ("#lang pcl\n<a> <b> <c>\n", ParseError),
    ("#lang foo\n", ParseError),
    ('#lang pcl\n<a> <b> "x >= 0 && y >= 0" .\n', IllFormedConstant),
    ('#lang rcl\n<a> <b> "x >= 0 && y >= 0 && x + y <= 1" .\n', IllFormedConstant),
    ("#lang dipcl\n<a> <b> 1/2 .\n", IllFormedConstant),
    ("#lang pcl\n<a> <b> 3 .\n", UnknownDatatype),
    ("#lang pcl\n<a> <b> _e:R1 { _e:R1 < 3 } .\n", LanguageMismatch),
    ("#lang pcl\n_e:R1 <b> <c> .\n", IllFormedTriple),
    ("#lang tcl\n#global _e:a DC \"x >= 0 && x <= 1 && y >= 0 && y <= 1\" .\n", LanguageMismatch),
])
def test_database_errors(text, error):
    with pytest.raises(error):
        parse_database(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_database("#lang pcl\n<a> <b> <c> .\n<a> <b> ^ .\n")
    assert "line 3" in str(info.value)


def test_tokenizer_skips_comments():
    kinds = [t.kind for t in tokenize("<a> # note\n?x!s _e:R1")]
    assert kinds == ["iri", "var", "elit"]


def test_query_forms():
    q = parse_query("(select (?F) (filter (and (triple ?F <type> <Fire>) (triple ?F <occurredIn> ?R!s))"
                    ' (?R!s NTPP "x >= 10 && x <= 21 && y >= 12 && y <= 17")))')
    assert q == SelectQuery((fx.F,), fx.fire_pattern(fx.INNER))
    c = parse_query("(construct ((?x <p> _:b)) (opt (triple ?x <p> ?y) (triple ?y <q> ?z)))")
    assert isinstance(c, ConstructQuery) and len(c.template) == 1


def test_require_well_designed():
    union = "(select (?x) (opt (triple ?x <p> ?y) (union (triple ?y <q> ?z) (triple ?y <r> ?z))))"
    other = "(select (?x) (and (opt (triple ?x <p> ?y) (triple ?y <q> ?z)) (triple ?x <q> ?z)))"
    parse_query(union)
    with pytest.raises(NotAfoFragment):
        parse_query(union, require_wd=True)
    with pytest.raises(UnsupportedFragment):
        parse_query(other, require_wd=True)


def test_graph_and_domain_files():
    g = parse_graph("(fire1, type, Fire)\n<a> <b> <c> .\n", "pcl")
    assert g == {ETriple(Iri("fire1"), Iri("type"), Iri("Fire")), ETriple(Iri("a"), Iri("b"), Iri("c"))}
    dom = parse_domain('_e:R1 = "x >= 0 && x <= 1 && y >= 0 && y <= 1" | "x >= 1 && x <= 2 && y >= 1 && y <= 2"\n',
                       "pcl")
    assert len(dom[fx.R1]) == 2
    assert parse_domain(serialize_domain(dom), "pcl") == dom
    with pytest.raises(ParseError):
        parse_domain("<a> = 1\n", "ecl")


def test_certain_triples_format():
    assert format_certain({ETriple(fx.fire1, fx.TYPE, fx.Fire)}) == ["(fire1, type, Fire)"]
    assert format_certain({ETriple(Iri("http://x/y"), fx.TYPE, Iri("NTPP"))}) == \
        ["(<http://x/y>, type, <NTPP>)"]


# -- round trips -------------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(ALL_LANGS))
def test_database_round_trip(seed, lang):
    db, _ = random_database(random.Random(seed), lang, max_lits=3, max_cands=3)
    assert parse_database(serialize_database(db)) == db


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(ALL_LANGS))
def test_query_round_trip(seed, lang):
    rng = random.Random(seed)
    q = random_construct(rng, lang) if rng.random() < 0.5 else \
        random_select(rng, lang, random_any_pattern(rng, lang))
    assert parse_query(serialize_query(q), lang) == q


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(ALL_LANGS))
def test_answer_json_round_trip(seed, lang):
    rng = random.Random(seed)
    db, _ = random_database(rng, lang, max_lits=2, max_cands=3)
    sel = random_select(rng, lang, random_any_pattern(rng, lang))
    ans = eval_select(sel, db)
    back = parse_answers_json(serialize_answers(ans, "json"))
    assert isinstance(back, SelectAnswer) and back == ans
    out = eval_construct(random_construct(rng, lang), db)
    assert parse_answers_json(serialize_answers(out, "json")) == out
    triples = frozenset(ct.triple for ct in out.graph if not isinstance(ct.triple.object, ELiteral))
    assert parse_answers_json(serialize_answers(triples, "json"), lang) == triples


def test_text_answers():
    db = fx.fire_db()
    text = serialize_answers(eval_select(SelectQuery((fx.F,), fx.fire_pattern(fx.INNER)), db))
    assert text.splitlines()[0].startswith("global: _R1 NTPP")
    assert text.splitlines()[1].startswith("{?F -> <fire1>} if _R1 NTPP")
