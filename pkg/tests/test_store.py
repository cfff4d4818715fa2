import random

import pytest
from hypothesis import given, settings, strategies as st

from fxkg.errors import InvalidTriple
from fxkg.store import Graph, TriplePattern, insert, match_pattern, remove
from fxkg.terms import Triple, literal
from oracles import fx, scan

NODES = [fx(f"n{i}") for i in range(6)]
PREDS = [fx("p"), fx("q")]
OBJS = NODES + [literal("a"), literal("b")]

triples_st = st.builds(Triple, st.sampled_from(NODES), st.sampled_from(PREDS), st.sampled_from(OBJS))
maybe = lambda xs: st.one_of(st.none(), st.sampled_from(xs))


def test_insert_reports_novelty():
    g = Graph()
    t = Triple(fx("PriyaSharma"), fx("hasExpertiseIn"), fx("QuantumMechanics"))
    assert insert(g, t) is True and len(g) == 1
    assert insert(g, t) is False and len(g) == 1


def test_insert_rejects_literal_subject():
    with pytest.raises(InvalidTriple):
        Graph().insert(Triple(literal("x"), fx("p"), fx("o")))


def test_remove():
    g = Graph()
    t = Triple(fx("a"), fx("p"), fx("b"))
    assert remove(g, t) is False
    g.insert(t)
    assert remove(g, t) is True and len(g) == 0 and _raw(g) == _raw(Graph())


def test_seed_expertise_lookup(seed_graph):
    got = match_pattern(seed_graph, TriplePattern(None, fx("hasExpertiseIn"), fx("QuantumMechanics")))
    assert got == [Triple(fx("PriyaSharma"), fx("hasExpertiseIn"), fx("QuantumMechanics"))]
    assert match_pattern(Graph(), TriplePattern()) == []


@settings(max_examples=200, deadline=None)
@given(st.lists(triples_st, max_size=200), maybe(NODES), maybe(PREDS), maybe(OBJS))
def test_match_equals_linear_scan(ts, s, p, o):
    g = Graph(ts)
    assert g.match_pattern(TriplePattern(s, p, o)) == scan(set(ts), s, p, o)
    assert g.count(s, p, o) == len(scan(set(ts), s, p, o))


def _index_sets(g):
    return g.index_views()


def _raw(g):
    # exact nested index contents, so leftover empty buckets would show up
    return [{a: {b: set(c) for b, c in d.items()} for a, d in ix.items()}
            for ix in (g._spo, g._pos, g._osp)]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.booleans(), triples_st), max_size=150))
def test_interleaved_updates_match_set_model(ops):
    g, model = Graph(), set()
    for add, t in ops:
        if add:
            assert g.insert(t) == (t not in model)
            model.add(t)
        else:
            assert g.remove(t) == (t in model)
            model.discard(t)
    assert len(g) == len(model) and set(g) == model
    a, b, c = _index_sets(g)
    assert a == b == c == model


def test_insert_then_remove_restores_state():
    rng = random.Random(1)
    g = Graph(Triple(rng.choice(NODES), rng.choice(PREDS), rng.choice(OBJS)) for _ in range(50))
    before = _raw(g)
    fresh = Triple(fx("fresh"), fx("p"), fx("n0"))
    g.insert(fresh)
    g.remove(fresh)
    assert _raw(g) == before
