import pytest
from hypothesis import given, strategies as st

from fxkg.errors import InvalidTriple, MalformedIRI
from fxkg.reasoner import find_cycles
from fxkg.schema import DATA, OBJECT, builtin_faculty_schema, split_camel
from fxkg.terms import (RDF_TYPE, Term, Triple, blank, check_iri, escape_string, iri, literal,
                        make_iri, triple, unescape_string)
from oracles import BASE, fx


def test_make_iri_concatenates():
    assert make_iri(BASE, "QuantumMechanics") == iri("https://example.org/fx#QuantumMechanics")


@pytest.mark.parametrize("ns,local", [(BASE, "priya sharma"), ("", "X"), (BASE, "")])
def test_make_iri_rejects(ns, local):
    with pytest.raises(MalformedIRI):
        make_iri(ns, local)


@pytest.mark.parametrize("bad", ["", "no-scheme", "http://a b", "http://a<b", 'x:"q"', "x:\x01"])
def test_check_iri_rejects(bad):
    with pytest.raises(MalformedIRI):
        check_iri(bad)


def test_term_equality_is_by_all_fields():
    assert literal("a") == literal("a")
    assert literal("a") != literal("a", "http://www.w3.org/2001/XMLSchema#string")
    assert iri("x:a") != literal("x:a")
    assert blank("b1") == blank("b1")


def test_literal_never_subject_or_predicate():
    with pytest.raises(InvalidTriple):
        triple(literal("x"), RDF_TYPE, fx("A"))
    with pytest.raises(InvalidTriple):
        triple(fx("A"), blank("p"), fx("B"))
    assert triple(blank("s"), RDF_TYPE, literal("o")).subject == blank("s")


text_st = st.text(st.characters(blacklist_categories=("Cs",)), max_size=30)


@given(text_st)
def test_escape_round_trip(s):
    assert unescape_string(escape_string(s)) == s


@given(st.one_of(
    text_st.map(literal),
    st.tuples(text_st, st.sampled_from(["http://www.w3.org/2001/XMLSchema#date", BASE + "T"]))
      .map(lambda p: literal(*p)),
    st.from_regex(r"[A-Za-z][A-Za-z0-9_-]{0,8}", fullmatch=True).map(blank),
    st.from_regex(r"[a-z]+:[A-Za-z0-9/#._~-]{1,12}", fullmatch=True).map(iri),
))
def test_canonical_text_round_trip(t):
    assert Term.from_text(t.text) == t


def test_builtin_schema_shape():
    s = builtin_faculty_schema(BASE)
    roots = [c for c in s.classes.values() if c.level == "root"]
    assert [r.iri for r in roots] == [fx("Thing")]
    for top in ("FacultyMember", "Department", "AcademicProgram", "SubjectArea"):
        assert s.classes[fx(top)].parents == {fx("Thing")}
        assert s.classes[fx(top)].level == "top"
    for prog in ("BTech", "MTech", "BSc", "MSc"):
        assert s.classes[fx(prog)].parents == {fx("AcademicProgram")}
    assert s.classes[fx("ArtificialIntelligence")].parents == {fx("ComputerScience")}
    assert s.classes[fx("PlantGenetics")].parents == {fx("Biotechnology")}
    assert s.classes[fx("FluidMechanics")].parents == {fx("Physics")}
    assert find_cycles(s.parents_map()) == []


def test_fluid_mechanics_alternative_placement():
    s = builtin_faculty_schema(BASE, fluid_mechanics_parent="MechanicalEngineering")
    assert s.classes[fx("FluidMechanics")].parents == {fx("MechanicalEngineering")}


def test_properties_defined_once_with_cardinalities():
    s = builtin_faculty_schema(BASE)
    names = ["belongsToDepartment", "hasFacultyMember", "teachesIn", "hasExpertiseIn",
             "collaboratesWith", "teaches", "hasName", "hasEmail"]
    assert sorted(p.iri.local_name() for p in s.properties.values()) == sorted(names)
    p = {k.local_name(): v for k, v in s.properties.items()}
    assert p["hasFacultyMember"].inverse_of == fx("belongsToDepartment")
    assert (p["belongsToDepartment"].min_card, p["belongsToDepartment"].max_card) == (1, None)
    assert (p["hasName"].min_card, p["hasName"].max_card) == (1, 1)
    assert (p["hasEmail"].min_card, p["hasEmail"].max_card) == (0, 1)
    assert p["hasName"].kind == DATA and p["teaches"].kind == OBJECT
    assert p["hasExpertiseIn"].domain == fx("FacultyMember")
    assert p["hasExpertiseIn"].range == fx("SubjectArea")


def test_schema_is_idempotent_and_base_configurable(monkeypatch):
    assert builtin_faculty_schema(BASE) == builtin_faculty_schema(BASE)
    monkeypatch.setenv("FX_BASE_IRI", "urn:test:")
    s = builtin_faculty_schema()
    assert iri("urn:test:Thing") in s.classes


def test_split_camel_labels():
    assert split_camel("QuantumMechanics") == "Quantum Mechanics"
    assert builtin_faculty_schema(BASE).label(fx("QuantumMechanics")) == "Quantum Mechanics"
