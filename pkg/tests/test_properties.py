"""Semantic invariants checked on randomly generated databases and queries."""

import random

from hypothesis import given, settings, strategies as st

from gen import (random_any_pattern, random_construct, random_database, random_ground_graph,
                 random_wd_pattern)
from rdfi.algebra import TriplePattern, eval_pattern, set_subsumed
from rdfi.model import ETriple, mk_database
from rdfi.oracle import (apply_valuation_graph, apply_valuation_mappings, coinitial,
                         enumerate_worlds, intersect_worlds, std_eval, std_eval_pattern, valuations)
from rdfi.query import ConstructQuery, eq_complete, eval_construct, normalize
from rdfi.terms import Blank, Iri, Variable

LANGS = st.sampled_from(["ecl", "dipcl", "depcl", "rcl", "pcl", "tcl"])
SEEDS = st.integers(0, 10**6)


def _case(seed, lang, closed=True):
    rng = random.Random(seed)
    db, dom = random_database(rng, lang, max_lits=3, max_cands=3, max_triples=8, closed=closed)
    return rng, db, dom


@settings(max_examples=60, deadline=None)
@given(SEEDS, LANGS, st.booleans())
def test_valuations_commute_with_patterns(seed, lang, closed):
    rng, db, dom = _case(seed, lang, closed)
    p = random_any_pattern(rng, lang)
    for v in list(valuations(db, dom))[:4]:
        world = apply_valuation_graph(v, db.graph)
        assert apply_valuation_mappings(v, eval_pattern(p, db)) == std_eval_pattern(p, world)


@settings(max_examples=60, deadline=None)
@given(SEEDS, LANGS)
def test_answer_database_represents_the_answers(seed, lang):
    rng, db, dom = _case(seed, lang)
    q = random_construct(rng, lang)
    answer = eval_construct(q, db)
    answered_worlds = [std_eval(q, w) for w in enumerate_worlds(db, dom)]
    assert coinitial(enumerate_worlds(answer, dom), answered_worlds)


@settings(max_examples=60, deadline=None)
@given(SEEDS, LANGS)
def test_completion_and_normalization_keep_the_worlds(seed, lang):
    _, db, dom = _case(seed, lang)
    assert enumerate_worlds(normalize(db), dom) == enumerate_worlds(db, dom)
    assert intersect_worlds(eq_complete(db), dom) == intersect_worlds(db, dom)


@settings(max_examples=80, deadline=None)
@given(SEEDS, LANGS)
def test_monotone_fragments(seed, lang):
    rng = random.Random(seed)
    g = random_ground_graph(rng, lang, rng.randint(0, 6))
    h = g | random_ground_graph(rng, lang, rng.randint(1, 6))
    q = random_construct(rng, lang)
    assert std_eval(q, g) <= std_eval(q, h)
    p = random_wd_pattern(rng, lang)
    assert set_subsumed(std_eval_pattern(p, g), std_eval_pattern(p, h))


@settings(max_examples=40, deadline=None)
@given(SEEDS, LANGS)
def test_construct_blanks_are_fresh(seed, lang):
    rng, db, _ = _case(seed, lang)
    x = Variable("x")
    labelled = mk_database(set(db.graph) | {ETriple(Blank("b_0"), Iri("p"), Iri("o1"))},
                           db.global_constraint, lang)
    q = ConstructQuery((TriplePattern(x, Iri("out"), Blank("b")),),
                       TriplePattern(x, rng.choice([Iri("p"), Iri("q")]), Variable("o")))
    out = eval_construct(q, labelled)
    old = {t for ct in labelled.graph for t in ct.triple if isinstance(t, Blank)}
    new = [ct.triple.object for ct in out.graph]
    assert not (set(new) & old)
    subjects = {ct.triple.subject for ct in out.graph}
    assert len(set(new)) == len(new) >= len(subjects)
