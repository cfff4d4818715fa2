"""Faculty-expertise knowledge graph toolkit."""

from .errors import FxError
from .reasoner import MaterializedGraph, materialize
from .schema import Schema, builtin_faculty_schema
from .seed import build_seed_dataset
from .store import Graph

__version__ = "0.1.0"

__all__ = ["FxError", "Graph", "MaterializedGraph", "Schema", "build_seed_dataset",
           "builtin_faculty_schema", "materialize", "__version__"]
