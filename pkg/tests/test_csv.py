import random

import pytest

from fxkg.csv_ingest import CsvRowMapping, camel_local, ingest_csv, slugify
from fxkg.errors import DuplicateHeader, MissingColumn
from fxkg.terms import RDFS_LABEL, RDF_TYPE, Triple, literal
from oracles import fx

HEADER = "name,email,department,programs,expertise,teaches\n"


def test_slug_rules():
    assert slugify("Priya Sharma") == "priya-sharma"
    assert slugify("Md. Riaz") == "md-riaz"
    assert slugify("  Anne-Marie   O'Neil ") == "anne-marie-oneil"
    assert camel_local("MSc Physics") == "MScPhysics"


def test_example_row(schema):
    row = "Priya Sharma,priyash@university.edu,MSc Physics,,Quantum Mechanics,Quantum Mechanics\n"
    res = ingest_csv(HEADER + row, CsvRowMapping(), schema)
    p = fx("priya-sharma")
    assert len(res.triples) == 5
    assert Triple(p, fx("hasExpertiseIn"), fx("QuantumMechanics")) in res.triples
    assert Triple(p, fx("belongsToDepartment"), fx("MScPhysicsDept")) in res.triples
    assert Triple(p, fx("hasEmail"), literal("priyash@university.edu")) in res.triples
    assert res.warnings == []


def test_header_only(schema):
    assert ingest_csv(HEADER, CsvRowMapping(), schema).triples == []


def test_duplicate_names_merge_with_warning(schema):
    rows = ("Ann Lee,a@x.edu,CSE,,Cryptography,\n"
            "Ann Lee,,CSE,MTech CSE,Data Mining,\n")
    res = ingest_csv(HEADER + rows, CsvRowMapping(), schema)
    assert {t.subject for t in res.triples} == {fx("ann-lee")}
    assert Triple(fx("ann-lee"), fx("hasExpertiseIn"), fx("DataMining")) in res.triples
    assert any("duplicate name" in w for w in res.warnings)


def test_unknown_subject_is_minted(schema):
    res = ingest_csv(HEADER + "Bo Wu,,Physics,,Astro Biology,\n", CsvRowMapping(), schema)
    assert Triple(fx("AstroBiology"), RDF_TYPE, fx("SubjectArea")) in res.triples
    assert Triple(fx("AstroBiology"), RDFS_LABEL, literal("Astro Biology")) in res.triples
    assert len(res.warnings) == 1


def test_row_arity_mismatch_skips_row(schema):
    res = ingest_csv(HEADER + "A B,x,CSE\nC D,,CSE,,,\n", CsvRowMapping(), schema)
    assert {t.subject for t in res.triples} == {fx("c-d")}
    assert "row 2" in res.warnings[0] and "row-arity-mismatch" in res.warnings[0]


def test_header_errors(schema):
    with pytest.raises(DuplicateHeader):
        ingest_csv("name,name,department\n", CsvRowMapping(), schema)
    with pytest.raises(MissingColumn):
        ingest_csv("name,email\n", CsvRowMapping(), schema)
    with pytest.raises(MissingColumn):
        ingest_csv("", CsvRowMapping(), schema)
    with pytest.raises(MissingColumn):
        ingest_csv("name,department\n", CsvRowMapping(expertise_col="Areas"), schema)


def test_absent_default_optional_columns(schema):
    res = ingest_csv("name,department,expertise\nAda Lovelace,CSE,Cryptography\n",
                     CsvRowMapping(), schema)
    assert set(res) == {Triple(fx("ada-lovelace"), fx("hasName"), literal("Ada Lovelace")),
                        Triple(fx("ada-lovelace"), fx("belongsToDepartment"), fx("CSEDept")),
                        Triple(fx("ada-lovelace"), fx("hasExpertiseIn"), fx("Cryptography"))}
    assert res.warnings == []


def test_custom_mapping_and_separator(schema):
    m = CsvRowMapping.from_dict({"name_col": "Full Name", "department_col": "Dept",
                                 "email_col": None, "programs_col": None, "teaches_col": None,
                                 "expertise_col": "Areas", "list_separator": "|"})
    res = ingest_csv('Full Name,Dept,Areas\n"Sen, Amit",CSE,Calculus|Optics\n', m, schema)
    assert Triple(fx("sen-amit"), fx("hasExpertiseIn"), fx("Optics")) in res.triples
    assert Triple(fx("sen-amit"), fx("hasName"), literal("Sen, Amit")) in res.triples
    with pytest.raises(ValueError):
        CsvRowMapping(list_separator=";;")


def test_row_order_does_not_change_triple_set(schema):
    rows = ["Ann Lee,a@x.edu,CSE,MTech CSE,Cryptography;Data Mining,Cryptography",
            "Bo Wu,,Physics,,Optics,Optics",
            "Cy Ray,c@x.edu,Mathematics,BSc Mathematics,Calculus,Calculus;Applied Mathematics",
            "Ann Lee,,CSE,,Geo Stats,"]
    base = set(ingest_csv(HEADER + "\n".join(rows) + "\n", CsvRowMapping(), schema).triples)
    rng = random.Random(0)
    for _ in range(10):
        rng.shuffle(rows)
        assert set(ingest_csv(HEADER + "\n".join(rows) + "\n", CsvRowMapping(), schema).triples) == base
