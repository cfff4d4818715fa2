"""Competency questions as parameterised query templates, and the harness
that runs them against golden answers."""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from importlib import resources
from string import Template
from typing import Dict, List, Mapping, Optional

from .errors import BadParameter, UnknownCQ
from .query import evaluate, parse_query
from .reasoner import MaterializedGraph, materialize
from .schema import Schema
from .store import Graph
from .terms import RDF, RDFS, XSD, Term


@dataclass(frozen=True)
class CompetencyQuestion:
    id: str
    prose: str
    template: str
    params: Mapping[str, str] = field(default_factory=dict)
    needs_inference: bool = False
    expected_nonempty: bool = True
    note: str = ""


def _cq(n, prose, template, params=None, needs_inference=False, note=""):
    return CompetencyQuestion(f"CQ{n}", prose, template.strip() + "\n", params or {},
                              needs_inference, True, note)


QUESTIONS: Dict[str, CompetencyQuestion] = {q.id: q for q in [
    _cq(1, "Who are the faculty members in the Mathematics BSc department?", """
SELECT ?f ?name WHERE {
  ?f fx:belongsToDepartment $department ;
     fx:hasName ?name .
}""", {"department": "fx:BScMathematicsDept"}),

    _cq(2, "Who is responsible for teaching Calculus in the BSc Math program?", """
SELECT ?f ?name WHERE {
  ?f fx:teaches $subject ;
     fx:teachesIn $program ;
     fx:hasName ?name .
}""", {"subject": "fx:Calculus", "program": "fx:BScMathematics"}),

    _cq(3, "Which faculties are associated with the MTech CSE program?", """
SELECT ?f ?name WHERE {
  ?f fx:teachesIn $program ;
     fx:hasName ?name .
}""", {"program": "fx:MTechCSE"}),

    _cq(4, "Which CSE faculty members teach Data Structures?", """
SELECT ?f ?name WHERE {
  ?f fx:belongsToDepartment $department ;
     fx:teaches $subject ;
     fx:hasName ?name .
}""", {"department": "fx:CSEDept", "subject": "fx:DataStructures"}),

    _cq(5, "Which departments handle Cryptography?", """
SELECT DISTINCT ?d ?department WHERE {
  ?d fx:hasFacultyMember ?f ;
     rdfs:label ?department .
  ?f fx:hasExpertiseIn $subject .
}""", {"subject": "fx:Cryptography"}, True,
        "Departments are reached through hasFacultyMember, the inverse of the asserted "
        "belongsToDepartment links."),

    _cq(6, "What subjects does Yadav teach?", """
SELECT ?name ?subject WHERE {
  ?f fx:hasName ?name ;
     fx:teaches ?subject .
  FILTER(CONTAINS(?name, $surname))
  FILTER(?subject != fx:SubjectArea)
  FILTER(?subject != fx:Thing)
}""", {"surname": '"Yadav"'}),

    _cq(7, "Which faculty members have expertise in Environmental Science?", """
SELECT ?f ?name WHERE {
  ?f a fx:FacultyMember ;
     fx:hasExpertiseIn $subject ;
     fx:hasName ?name .
}""", {"subject": "fx:EnvironmentalScience"}, True,
        "Faculty membership is a derived type (domain typing)."),

    _cq(8, "Who among the staff are experts in physics and optics?", """
SELECT ?f ?name WHERE {
  ?f fx:hasExpertiseIn $discipline, $specialization ;
     fx:hasName ?name .
}""", {"discipline": "fx:Physics", "specialization": "fx:Optics"}, True,
        "Expertise in the discipline is derived from expertise in the specialisation."),

    _cq(9, "Which faculties are engaged in both Mathematics and Computer Science?", """
SELECT ?f ?name WHERE {
  ?f fx:hasExpertiseIn $first, $second ;
     fx:hasName ?name .
}""", {"first": "fx:Mathematics", "second": "fx:ComputerScience"}),

    _cq(10, "Who can be contacted regarding interdisciplinary studies in Environmental "
            "Science and Civil Engineering?", """
SELECT DISTINCT ?name ?email WHERE {
  { ?f fx:hasExpertiseIn $first, $second . }
  UNION
  { ?f fx:hasExpertiseIn $first ;
       fx:suggestedCollaborator ?g .
    ?g fx:hasExpertiseIn $second . }
  ?f fx:hasName ?name .
  OPTIONAL { ?f fx:hasEmail ?email }
}""", {"first": "fx:EnvironmentalScience", "second": "fx:CivilEngineering"},
        note="One person holding both expertises, or (with inference) an expert in the "
             "first area who is a suggested collaborator of an expert in the second."),

    _cq(11, "Does the department have faculty members with expertise in data "
            "science-related research?", """
SELECT DISTINCT ?f ?name WHERE {
  ?f a fx:FacultyMember ;
     fx:belongsToDepartment $department ;
     fx:hasName ?name .
  { ?f fx:hasExpertiseIn fx:DataScience . }
  UNION
  { ?f fx:hasExpertiseIn fx:DataMining . }
}""", {"department": "fx:CSEDept"}, True,
        "Interpretive: data-science-related means DataScience or DataMining expertise."),

    _cq(12, "Who handles applied mathematics relevant to structural analysis?", """
SELECT ?f ?name WHERE {
  ?f a fx:FacultyMember ;
     fx:hasExpertiseIn $subject ;
     rdfs:comment ?note ;
     fx:hasName ?name .
  FILTER(CONTAINS(?note, $keyword))
}""", {"subject": "fx:AppliedMathematics", "keyword": '"structural analysis"'}, True,
        "Interpretive: relevance is a keyword in the faculty member's rdfs:comment."),

    _cq(13, "What are the email addresses of all CSE faculty members?", """
SELECT ?name ?email WHERE {
  ?f fx:teachesIn $program ;
     fx:hasName ?name .
  OPTIONAL { ?f fx:hasEmail ?email }
}""", {"program": "fx:MTechCSE"},
        note="CSE faculty are those teaching in the MTech CSE programme; a missing "
             "address is reported as unbound."),

    _cq(14, "Which faculty members have their email addresses listed?", """
SELECT ?name ?email WHERE {
  ?f fx:hasEmail ?email ;
     fx:hasName ?name .
}"""),

    _cq(15, "Who should be consulted for guidance on Postgraduate Cryptography?", """
SELECT DISTINCT ?f ?name ?program WHERE {
  ?f fx:hasExpertiseIn $subject ;
     fx:teachesIn ?program ;
     fx:hasName ?name .
  { ?program a fx:MTech . } UNION { ?program a fx:MSc . }
}""", {"subject": "fx:Cryptography"}),

    _cq(16, "What topics are included in BTech CSE?", """
SELECT DISTINCT ?topic WHERE {
  ?f fx:teachesIn $program ;
     fx:teaches ?topic .
  FILTER(?topic != fx:SubjectArea)
  FILTER(?topic != fx:Thing)
}""", {"program": "fx:BTechCSE"}, True,
        "No direct programme-to-subject property exists: topics are the subjects taught "
        "by faculty who teach in the programme, including their broader disciplines."),

    _cq(17, "Who provided the data structures course in the Computer Science Department?", """
SELECT ?f ?name ?email WHERE {
  ?f fx:teaches $subject ;
     fx:belongsToDepartment $department ;
     fx:hasName ?name .
  OPTIONAL { ?f fx:hasEmail ?email }
}""", {"subject": "fx:DataStructures", "department": "fx:CSEDept"}),

    _cq(18, "How is the faculty member Md. Riaz is semantically connected in the model.", """
SELECT ?p ?o WHERE {
  $faculty ?p ?o .
}""", {"faculty": "fx:MdRiaz"},
        note="The full answer is the neighbourhood dump of `fx describe`; this template "
             "lists direct connections only."),

    _cq(19, "Which faculty members are listed in multiple departments for teaching "
            "mathematics?", """
SELECT DISTINCT ?f ?name WHERE {
  ?f fx:belongsToDepartment ?d1, ?d2 ;
     fx:teachesIn $program ;
     fx:hasName ?name .
  FILTER(?d1 != ?d2)
}""", {"program": "fx:BScMathematics"}),

    _cq(20, "Who are the instructors for the B. Tech. and M. Tech. courses?", """
SELECT DISTINCT ?f ?name WHERE {
  ?f fx:teachesIn ?p1, ?p2 ;
     fx:hasName ?name .
  ?p1 a fx:BTech .
  ?p2 a fx:MTech .
}"""),

    _cq(21, "Which faculty members have expertise in multiple disciplines?", """
SELECT DISTINCT ?f ?name WHERE {
  ?f fx:hasExpertiseIn ?a, ?b ;
     fx:hasName ?name .
  ?a rdfs:subClassOf fx:SubjectArea .
  ?b rdfs:subClassOf fx:SubjectArea .
  FILTER(?a != ?b)
}""", needs_inference=True,
        note="Disciplines are the classes registered directly under SubjectArea in the "
             "data; specialisations count through their discipline."),
]}

DESCRIBE_CQ = "CQ18"

_PARAM_VALUE = re.compile(
    r'(?:[A-Za-z][A-Za-z0-9_-]*)?:[A-Za-z0-9_][A-Za-z0-9_.-]*\Z'
    r'|<[^<>"{}|^`\\\s]+>\Z'
    r'|"(?:[^"\\\n]|\\.)*"\Z')


def get_question(cq_id: str) -> CompetencyQuestion:
    key = cq_id.upper()
    if not key.startswith("CQ"):
        key = "CQ" + key
    try:
        return QUESTIONS[key]
    except KeyError:
        raise UnknownCQ(f"unknown competency question {cq_id!r}") from None


def prefix_header(base: str) -> str:
    return (f"PREFIX fx: <{base}>\nPREFIX rdf: <{RDF}>\n"
            f"PREFIX rdfs: <{RDFS}>\nPREFIX xsd: <{XSD}>\n")


def competency_query(cq_id: str, params: Optional[Mapping[str, str]] = None,
                     base: Optional[str] = None) -> str:
    """Query text for a question with its defaults overridden by ``params``."""
    from .schema import default_base
    q = get_question(cq_id)
    values = dict(q.params)
    for k, val in (params or {}).items():
        if k not in q.params:
            raise BadParameter(f"{q.id} has no parameter {k!r}")
        if not isinstance(val, str) or not _PARAM_VALUE.match(val):
            raise BadParameter(f"bad value for {k}: {val!r} (use fx:Name, <iri> or \"text\")")
        values[k] = val
    return prefix_header(base or default_base()) + Template(q.template).substitute(values)


# --- golden answers -------------------------------------------------------

def compact(term: Optional[Term], base: str):
    """Base-independent text for golden files."""
    if term is None:
        return None
    if term.is_iri:
        for prefix, ns in (("fx", base), ("rdf", RDF), ("rdfs", RDFS), ("xsd", XSD)):
            if term.value.startswith(ns):
                return f"{prefix}:{term.value[len(ns):]}"
    return term.text


def rows_of(solutions, variables, base):
    return [[compact(s[v], base) for v in variables] for s in solutions]


def load_golden(cq_id: str) -> dict:
    path = resources.files("fxkg").joinpath("fixtures", "golden", f"{cq_id}.json")
    return json.loads(path.read_text(encoding="utf-8"))


@dataclass
class CqResult:
    id: str
    count: int
    passed: bool
    elapsed: float
    needs_inference: bool
    rows: list = field(default_factory=list)


@dataclass
class CqReport:
    results: List[CqResult]
    use_inference: bool = True

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def pass_rate(self) -> float:
        return self.passed / len(QUESTIONS)

    def to_dict(self, timing: bool = False):
        out = {"inference": self.use_inference, "passed": self.passed,
               "total": len(QUESTIONS), "pass_rate": round(self.pass_rate, 6),
               "questions": []}
        for r in self.results:
            entry = {"id": r.id, "solutions": r.count, "passed": r.passed,
                     "needs_inference": r.needs_inference}
            if timing:
                entry["elapsed_ms"] = round(r.elapsed * 1000, 3)
            out["questions"].append(entry)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    def summary(self) -> str:
        return f"{self.passed}/{len(QUESTIONS)} passed"


def run_question(q: CompetencyQuestion, mg: MaterializedGraph, base: str, use_inference=True):
    text = competency_query(q.id, base=base)
    ast = parse_query(text)
    start = time.perf_counter()
    sols = evaluate(ast, mg, use_inference)
    elapsed = time.perf_counter() - start
    return ast.variables, sols, elapsed


def run_all(g, schema: Schema, use_inference: bool = True) -> CqReport:
    """Materialize once, run every question, compare with the golden files."""
    mg = g if isinstance(g, MaterializedGraph) else materialize(g, schema)
    key = "with_inference" if use_inference else "without_inference"
    results = []
    for q in QUESTIONS.values():
        variables, sols, elapsed = run_question(q, mg, schema.base, use_inference)
        rows = rows_of(sols, variables, schema.base)
        golden = load_golden(q.id)
        ok = golden["variables"] == variables and golden[key] == rows
        if q.expected_nonempty and use_inference and not rows:
            ok = False
        results.append(CqResult(q.id, len(rows), ok, elapsed, q.needs_inference, rows))
    return CqReport(results, use_inference)
