"""Faculty-directory CSV ingestion."""

from __future__ import annotations

import csv
import io
import logging
import re
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import DuplicateHeader, MissingColumn
from .schema import Schema
from .terms import RDFS_LABEL, RDF_TYPE, Triple, literal, make_iri

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CsvRowMapping:
    name_col: str = "name"
    department_col: str = "department"
    email_col: Optional[str] = "email"
    programs_col: Optional[str] = "programs"
    expertise_col: Optional[str] = "expertise"
    teaches_col: Optional[str] = "teaches"
    list_separator: str = ";"

    def __post_init__(self):
        if not self.name_col or not self.department_col:
            raise ValueError("name_col and department_col are required")
        if len(self.list_separator) != 1:
            raise ValueError("list_separator must be a single character")

    @classmethod
    def from_dict(cls, data: dict) -> "CsvRowMapping":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown mapping keys: {sorted(unknown)}")
        return cls(**data)


@dataclass
class IngestResult:
    triples: List[Triple] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.triples)

    def __len__(self):
        return len(self.triples)


def slugify(name: str) -> str:
    """``"Md. Riaz"`` -> ``"md-riaz"``: lowercase, punctuation dropped,
    whitespace runs become single hyphens."""
    kept = "".join(ch for ch in name.lower() if ch.isalnum() or ch.isspace() or ch == "-")
    return re.sub(r"[\s-]+", "-", kept.strip()).strip("-")


def camel_local(label: str) -> str:
    """``"MSc Physics"`` -> ``"MScPhysics"``; ``"quantum mechanics"`` -> ``"QuantumMechanics"``."""
    words = re.findall(r"[A-Za-z0-9]+", label)
    return "".join(w[0].upper() + w[1:] for w in words)


def _split(cell: str, sep: str) -> List[str]:
    return [x.strip() for x in cell.split(sep) if x.strip()]


def _subject_index(schema: Schema):
    index = {}
    for c in schema.classes.values():
        index[c.iri.local_name().casefold()] = c.iri
        if c.label:
            index[c.label.casefold()] = c.iri
    return index


def ingest_csv(text: str, mapping: CsvRowMapping, schema: Schema) -> IngestResult:
    """Turn directory rows into triples.

    Each row mints a faculty IRI from the slug of the name.  Subject values
    are matched to schema classes by label or local name (case-insensitive);
    unmatched values mint new ``SubjectArea`` individuals with a warning.
    Rows with the wrong number of cells are skipped and reported.
    """
    if text.startswith("﻿"):
        text = text[1:]
    base = schema.base
    v = lambda local: make_iri(base, local)
    result = IngestResult()
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None:
        raise MissingColumn("CSV has no header row")
    header = [h.strip() for h in header]
    dupes = sorted({h for h in header if header.count(h) > 1})
    if dupes:
        raise DuplicateHeader(f"duplicate header(s): {', '.join(dupes)}")
    cols = {h: i for i, h in enumerate(header)}
    wanted = {
        "name_col": mapping.name_col, "department_col": mapping.department_col,
        "email_col": mapping.email_col, "programs_col": mapping.programs_col,
        "expertise_col": mapping.expertise_col, "teaches_col": mapping.teaches_col,
    }
    for key in ("name_col", "department_col"):
        if wanted[key] not in cols:
            raise MissingColumn(f"required column {wanted[key]!r} ({key}) not in header")
    defaults = CsvRowMapping()
    for key, col in wanted.items():
        if col is None or col in cols or key in ("name_col", "department_col"):
            continue
        # an optional column left at its default name may simply be absent
        if col == getattr(defaults, key):
            wanted[key] = None
        else:
            raise MissingColumn(f"mapped column {col!r} ({key}) not in header")

    subjects = _subject_index(schema)
    seen_names = {}
    emitted = set()

    def emit(t):
        if t not in emitted:
            emitted.add(t)
            result.triples.append(t)

    def warn(msg):
        log.warning(msg)
        result.warnings.append(msg)

    def cell(row, key):
        col = wanted[key]
        return row[cols[col]].strip() if col is not None else ""

    def subject_term(label):
        found = subjects.get(label.casefold()) or subjects.get(camel_local(label).casefold())
        if found is not None:
            return found
        term = v(camel_local(label))
        warn(f"unknown subject {label!r}; minted {term.local_name()} as a SubjectArea")
        subjects[label.casefold()] = term
        emit(Triple(term, RDF_TYPE, v("SubjectArea")))
        emit(Triple(term, RDFS_LABEL, literal(label)))
        return term

    for rowno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(header):
            warn(f"row {rowno}: row-arity-mismatch: expected {len(header)} cells, got {len(row)}; skipped")
            continue
        name = cell(row, "name_col")
        dept = cell(row, "department_col")
        if not name or not camel_local(dept):
            warn(f"row {rowno}: missing name or department; skipped")
            continue
        slug = slugify(name)
        if not slug:
            warn(f"row {rowno}: name {name!r} has no usable characters; skipped")
            continue
        if slug in seen_names:
            warn(f"row {rowno}: duplicate name {name!r} (first seen on row {seen_names[slug]}); merged")
        else:
            seen_names[slug] = rowno
        f = v(slug)
        emit(Triple(f, v("hasName"), literal(name)))
        emit(Triple(f, v("belongsToDepartment"), v(camel_local(dept) + "Dept")))
        email = cell(row, "email_col")
        if email:
            emit(Triple(f, v("hasEmail"), literal(email)))
        sep = mapping.list_separator
        for prog in _split(cell(row, "programs_col"), sep):
            emit(Triple(f, v("teachesIn"), v(camel_local(prog))))
        for area in _split(cell(row, "expertise_col"), sep):
            emit(Triple(f, v("hasExpertiseIn"), subject_term(area)))
        for area in _split(cell(row, "teaches_col"), sep):
            emit(Triple(f, v("teaches"), subject_term(area)))
    return result
