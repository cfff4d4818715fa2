"""Schema metamodel and the built-in faculty-expertise schema."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional

from .terms import (RDFS_COMMENT, RDFS_LABEL, RDFS_SUBCLASS_OF, RDF_TYPE,
                    STANDARD_PREFIXES, XSD, XSD_STRING, Term, iri,
                    make_iri)

DEFAULT_BASE = "https://example.org/fx#"

LEVELS = ("root", "top", "middle", "bottom")
OBJECT = "object"
DATA = "data"

# predicates every graph may use without a property definition
ANNOTATION_PREDICATES = frozenset({RDF_TYPE, RDFS_LABEL, RDFS_COMMENT, RDFS_SUBCLASS_OF})


def default_base() -> str:
    return os.environ.get("FX_BASE_IRI") or DEFAULT_BASE


class Vocab:
    """Attribute access to IRIs in a namespace: ``Vocab(ns).hasName``."""

    def __init__(self, base: str = DEFAULT_BASE):
        self.base = base

    def __getattr__(self, local: str) -> Term:
        if local.startswith("_"):
            raise AttributeError(local)
        return make_iri(self.base, local)

    def __getitem__(self, local: str) -> Term:
        return make_iri(self.base, local)


@dataclass(frozen=True)
class ClassDef:
    iri: Term
    parents: FrozenSet[Term]
    level: str
    label: str = ""
    comment: str = ""

    def __post_init__(self):
        if self.level not in LEVELS:
            raise ValueError(f"bad class level {self.level!r}")


@dataclass(frozen=True)
class PropertyDef:
    iri: Term
    kind: str
    domain: Term
    range: Term
    min_card: int = 0
    max_card: Optional[int] = None  # None = unbounded
    inverse_of: Optional[Term] = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in (OBJECT, DATA):
            raise ValueError(f"bad property kind {self.kind!r}")
        if self.min_card < 0:
            raise ValueError("min_card must be non-negative")
        if self.max_card is not None and (self.max_card < 1 or self.min_card > self.max_card):
            raise ValueError(f"bad cardinality bounds for {self.iri}")


@dataclass(frozen=True)
class Schema:
    classes: Mapping[Term, ClassDef]
    properties: Mapping[Term, PropertyDef]
    prefixes: Mapping[str, str] = field(default_factory=dict)
    base: str = DEFAULT_BASE

    def __post_init__(self):
        problems = self.unresolved()
        if problems:
            raise ValueError("unresolved schema references: " + "; ".join(problems))
        roots = [c for c in self.classes.values() if c.level == "root"]
        if len(roots) != 1:
            raise ValueError(f"schema needs exactly one root class, found {len(roots)}")

    @property
    def root(self) -> Term:
        return next(c.iri for c in self.classes.values() if c.level == "root")

    def unresolved(self):
        out = []
        for c in self.classes.values():
            out += [f"{c.iri.text} parent {p.text}" for p in c.parents if p not in self.classes]
        for p in self.properties.values():
            if p.domain not in self.classes:
                out.append(f"{p.iri.text} domain {p.domain.text}")
            if p.kind == OBJECT and p.range not in self.classes:
                out.append(f"{p.iri.text} range {p.range.text}")
            if p.kind == DATA and not p.range.value.startswith(XSD):
                out.append(f"{p.iri.text} datatype {p.range.text}")
            if p.inverse_of is not None and p.inverse_of not in self.properties:
                out.append(f"{p.iri.text} inverse {p.inverse_of.text}")
        return out

    def parents_map(self) -> Dict[Term, FrozenSet[Term]]:
        return {c.iri: c.parents for c in self.classes.values()}

    def label(self, term: Term) -> Optional[str]:
        c = self.classes.get(term)
        if c is not None:
            return c.label
        p = self.properties.get(term)
        return p.label if p is not None else None

    def with_parents(self, cls: Term, parents) -> "Schema":
        """Copy of the schema with ``cls`` re-parented (used for what-if checks)."""
        classes = dict(self.classes)
        old = classes[cls]
        classes[cls] = ClassDef(old.iri, frozenset(parents), old.level, old.label, old.comment)
        return Schema(classes, dict(self.properties), dict(self.prefixes), self.base)


def split_camel(name: str) -> str:
    return re.sub(r"(?<=[a-z])(?=[A-Z])", " ", name)


_TOP = ("FacultyMember", "Department", "AcademicProgram", "SubjectArea")
_PROGRAMS = {"BTech": "B.Tech", "MTech": "M.Tech", "BSc": "B.Sc", "MSc": "M.Sc"}
_DISCIPLINES = ("ComputerScience", "Mathematics", "Physics", "Chemistry",
                "EnvironmentalScience", "CivilEngineering", "MechanicalEngineering",
                "Biotechnology")
_SPECIALIZATIONS = {
    "ArtificialIntelligence": "ComputerScience",
    "DataMining": "ComputerScience",
    "DataStructures": "ComputerScience",
    "Cryptography": "ComputerScience",
    "DataScience": "ComputerScience",
    "Calculus": "Mathematics",
    "AppliedMathematics": "Mathematics",
    "QuantumMechanics": "Physics",
    "Optics": "Physics",
    "Thermodynamics": "Physics",
    "FluidMechanics": "Physics",
    "OrganicChemistry": "Chemistry",
    "PlantGenetics": "Biotechnology",
}

_COMMENTS = {
    "Thing": "Universal class.",
    "FacultyMember": "A person who teaches or researches at the institution.",
    "Department": "An organisational unit that faculty members belong to.",
    "AcademicProgram": "A degree programme in which faculty members teach.",
    "SubjectArea": "A discipline or specialisation in which expertise is held.",
}


def builtin_faculty_schema(base: Optional[str] = None,
                           fluid_mechanics_parent: str = "Physics") -> Schema:
    """Build the faculty-expertise schema in namespace ``base``.

    ``fluid_mechanics_parent`` may be set to ``"MechanicalEngineering"``;
    both placements are defensible.
    """
    base = base or default_base()
    v = Vocab(base)
    classes = {}

    def add(local, parents, level, label=None):
        classes[v[local]] = ClassDef(v[local], frozenset(v[p] for p in parents), level,
                                     label or split_camel(local), _COMMENTS.get(local, ""))

    add("Thing", (), "root")
    for local in _TOP:
        add(local, ("Thing",), "top")
    for local, label in _PROGRAMS.items():
        add(local, ("AcademicProgram",), "middle", label)
    for local in _DISCIPLINES:
        add(local, ("SubjectArea",), "middle")
    specs = dict(_SPECIALIZATIONS, FluidMechanics=fluid_mechanics_parent)
    for local, parent in specs.items():
        add(local, (parent,), "bottom")

    xsd_string = iri(XSD_STRING)
    props = [
        PropertyDef(v.belongsToDepartment, OBJECT, v.FacultyMember, v.Department, 1, None,
                    label="belongs to department"),
        PropertyDef(v.hasFacultyMember, OBJECT, v.Department, v.FacultyMember,
                    inverse_of=v.belongsToDepartment, label="has faculty member"),
        PropertyDef(v.teachesIn, OBJECT, v.FacultyMember, v.AcademicProgram,
                    label="teaches in"),
        PropertyDef(v.hasExpertiseIn, OBJECT, v.FacultyMember, v.SubjectArea,
                    label="has expertise in"),
        PropertyDef(v.collaboratesWith, OBJECT, v.FacultyMember, v.FacultyMember,
                    label="collaborates with"),
        PropertyDef(v.teaches, OBJECT, v.FacultyMember, v.SubjectArea, label="teaches"),
        PropertyDef(v.hasName, DATA, v.FacultyMember, xsd_string, 1, 1, label="has name"),
        PropertyDef(v.hasEmail, DATA, v.FacultyMember, xsd_string, 0, 1, label="has email"),
    ]
    prefixes = dict(STANDARD_PREFIXES, fx=base)
    return Schema(classes, {p.iri: p for p in props}, prefixes, base)


# predicate the reasoner derives; never part of the asserted schema
def suggested_collaborator(base: str) -> Term:
    return make_iri(base, "suggestedCollaborator")


PREDICATE_ALIASES = {"teachesInProgram": "teachesIn"}
