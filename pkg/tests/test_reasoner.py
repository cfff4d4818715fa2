import random

import pytest

from fxkg.errors import CycleDetected
from fxkg.reasoner import RULES, materialize, subclass_closure
from fxkg.store import Graph
from fxkg.terms import RDF_TYPE, Triple, literal
from oracles import SCHEMA, ancestors_by_warshall, fx, naive_fixpoint, random_reasoner_graph

SUGGESTED = fx("suggestedCollaborator")


def test_rule_set_is_fixed():
    assert sorted(RULES) == ["R1", "R2", "R3", "R4", "R5"]


def test_closure_contains_documented_pairs():
    closure = subclass_closure(SCHEMA)
    assert (fx("ArtificialIntelligence"), fx("ComputerScience")) in closure
    assert (fx("QuantumMechanics"), fx("Thing")) in closure
    assert all((c, c) in closure for c in SCHEMA.classes)


def test_closure_matches_warshall_oracle():
    anc = ancestors_by_warshall(SCHEMA)
    assert subclass_closure(SCHEMA) == {(a, b) for a, bs in anc.items() for b in bs}


def test_closure_rejects_cycle():
    bad = SCHEMA.with_parents(fx("Physics"), {fx("SubjectArea"), fx("QuantumMechanics")})
    with pytest.raises(CycleDetected):
        subclass_closure(bad)
    with pytest.raises(CycleDetected):
        materialize(Graph(), bad)


def test_ai_expertise_lifts_to_computer_science():
    x = fx("x")
    mg = materialize(Graph([Triple(x, fx("hasExpertiseIn"), fx("ArtificialIntelligence"))]), SCHEMA)
    t = Triple(x, fx("hasExpertiseIn"), fx("ComputerScience"))
    assert t in mg.inferred and mg.provenance[t] == "R2"
    # full propagation to the root of the subject hierarchy
    assert Triple(x, fx("hasExpertiseIn"), fx("Thing")) in mg.inferred


def test_department_link_gives_inverse_and_type():
    t = Triple(fx("PriyaSharma"), fx("belongsToDepartment"), fx("MScPhysicsDept"))
    mg = materialize(Graph([t]), SCHEMA)
    inv = Triple(fx("MScPhysicsDept"), fx("hasFacultyMember"), fx("PriyaSharma"))
    typ = Triple(fx("PriyaSharma"), RDF_TYPE, fx("FacultyMember"))
    assert mg.provenance[inv] == "R4" and mg.provenance[typ] == "R3"


def test_empty_graph_infers_nothing():
    mg = materialize(Graph(), SCHEMA)
    assert len(mg.inferred) == 0 and mg.provenance == {}


def test_literals_get_no_range_type():
    mg = materialize(Graph([Triple(fx("x"), fx("hasName"), literal("X"))]), SCHEMA)
    assert not any(t.subject.is_literal for t in mg.inferred)


def test_teaches_in_is_not_propagated_and_top_classes_do_not_suggest():
    a, b = fx("a"), fx("b")
    g = Graph([Triple(a, fx("teachesIn"), fx("BTechCSE")), Triple(b, fx("teachesIn"), fx("BTechCSE")),
               Triple(a, fx("hasExpertiseIn"), fx("SubjectArea")),
               Triple(fx("c"), fx("hasExpertiseIn"), fx("SubjectArea"))])
    mg = materialize(g, SCHEMA)
    assert Triple(a, SUGGESTED, b) in mg.inferred and Triple(b, SUGGESTED, a) in mg.inferred
    assert Triple(a, SUGGESTED, fx("c")) not in mg.full
    assert mg.full.count(None, fx("teachesIn"), None) == 2


def test_seed_suggestions_are_symmetric_and_irreflexive(seed_mg):
    pairs = {(t.subject, t.object) for t in seed_mg.full.triples(None, SUGGESTED, None)}
    assert pairs and all((b, a) in pairs for a, b in pairs)
    assert all(a != b for a, b in pairs)


def test_asserted_and_inferred_are_disjoint(seed_mg):
    assert not set(seed_mg.asserted) & set(seed_mg.inferred)
    assert set(seed_mg.provenance) == set(seed_mg.inferred)


@pytest.mark.parametrize("seed", range(40))
def test_matches_naive_fixpoint(seed):
    g = random_reasoner_graph(random.Random(seed), 120)
    mg = materialize(Graph(g), SCHEMA)
    inferred, provenance = naive_fixpoint(g)
    assert set(mg.inferred) == inferred
    assert mg.provenance == provenance


@pytest.mark.parametrize("seed", range(20))
def test_idempotent_and_monotone(seed):
    rng = random.Random(1000 + seed)
    g = random_reasoner_graph(rng, 120)
    mg = materialize(Graph(g), SCHEMA)
    again = materialize(mg.full, SCHEMA)
    assert len(again.inferred) == 0
    sub = [t for t in g if rng.random() < 0.5]
    small = materialize(Graph(sub), SCHEMA)
    assert set(small.full) <= set(mg.full)
    # inferred triples of the subgraph are either inferred or asserted in the supergraph
    assert set(small.inferred) <= set(mg.inferred) | set(g)
