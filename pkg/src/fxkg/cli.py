"""The ``fx`` command.

Exit codes: 0 success; 1 validation errors under ``--strict`` or a failing
competency-question run; 2 usage, parse, lookup and file errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__, api
from .cq import QUESTIONS, competency_query, get_question, run_all
from .csv_ingest import CsvRowMapping, ingest_csv
from .errors import FxError
from .schema import builtin_faculty_schema
from .terms import Term
from .turtle import write_turtle
from .validate import validate

log = logging.getLogger("fxkg")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _global_options(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--data", action="append", metavar="FILE", default=d([]),
                   help="Turtle file to load (repeatable); default is the built-in seed dataset")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=d(False), help="JSON output")
    fmt.add_argument("--csv", action="store_true", default=d(False), help="CSV output")
    p.add_argument("--base-iri", metavar="IRI", default=d(None),
                   help="namespace for fx: names (default $FX_BASE_IRI or https://example.org/fx#)")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)

    parser = _Parser(prog="fx", description="Faculty-expertise knowledge graph toolkit.")
    parser.add_argument("--version", action="version", version=f"fx {__version__}")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def cmd(name, help_text):
        return sub.add_parser(name, help=help_text, description=help_text, parents=[common])

    p = cmd("load", "merge Turtle files and write the result")
    p.add_argument("files", nargs="*")
    p.add_argument("--out", metavar="FILE")

    p = cmd("ingest-csv", "convert a faculty-directory CSV to Turtle")
    p.add_argument("file")
    p.add_argument("--map", metavar="MAPPING_JSON", help="column mapping (JSON object)")
    p.add_argument("--out", metavar="FILE")

    p = cmd("validate", "check data against the schema")
    p.add_argument("files", nargs="*")
    p.add_argument("--strict", action="store_true", help="exit 1 when any error is found")
    p.add_argument("--asserted-only", action="store_true",
                   help="check cardinality on asserted triples only")

    p = cmd("infer", "materialize inferred triples")
    p.add_argument("files", nargs="*")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--provenance", action="store_true",
                   help="list inferred triples with the rule that produced each")

    p = cmd("query", "run a SELECT query")
    p.add_argument("files", nargs="*")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--query-file", metavar="FILE")
    src.add_argument("-q", "--query", metavar="TEXT")
    p.add_argument("--no-inference", action="store_true")

    p = cmd("experts", "find faculty with expertise in a subject")
    p.add_argument("subject")
    p.add_argument("--no-inference", action="store_true")

    p = cmd("collaborators", "list recorded or suggested collaborators")
    p.add_argument("name")
    p.add_argument("--suggested", action="store_true")

    p = cmd("describe", "dump a faculty member's neighbourhood")
    p.add_argument("name")
    p.add_argument("--radius", type=int, default=2)

    p = cmd("cq", "competency questions")
    cq_sub = p.add_subparsers(dest="cq_command", metavar="ACTION", parser_class=_Parser)
    cq_sub.required = True
    cq_sub.add_parser("list", help="list the questions", parents=[common])
    r = cq_sub.add_parser("run", help="run all questions against golden answers", parents=[common])
    r.add_argument("--no-inference", action="store_true")
    r.add_argument("--timing", action="store_true", help="include timings in JSON output")
    s = cq_sub.add_parser("show", help="show one question and its query", parents=[common])
    s.add_argument("id")
    s.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")

    p = cmd("export", "export the graph for plotting")
    p.add_argument("format", choices=["dot"])
    p.add_argument("files", nargs="*")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--inferred", action="store_true", help="include inferred triples")

    p = cmd("serve", "serve the read-only HTTP API")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    return parser


# --- output helpers --------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        return ", ".join(v)
    return str(v)


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [" | ".join(header)]
    lines += [" | ".join(_cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else ";".join(v) if isinstance(v, list) else v for v in row])
    return buf.getvalue()


def _records(args, payload, columns, titles=None) -> str:
    if args.json:
        return api.dumps(payload)
    rows = [[r[c] for c in columns] for r in payload]
    if args.csv:
        return _csv(columns, rows)
    return _table(titles or columns, rows)


def _short(t: Optional[Term], prefixes) -> str:
    if t is None:
        return "-"
    if t.is_iri:
        for p, ns in prefixes:
            if t.value.startswith(ns) and len(t.value) > len(ns):
                return f"{p}:{t.value[len(ns):]}"
    return t.text


def _prefix_list(schema):
    return sorted(schema.prefixes.items(), key=lambda kv: -len(kv[1]))


def _write(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text, encoding="utf-8")
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------------

def _files(args) -> List[str]:
    return list(getattr(args, "files", []) or []) + list(args.data or [])


def _dataset(args) -> api.Dataset:
    return api.load_dataset(_files(args), args.base_iri)


def cmd_load(args):
    ds = _dataset(args)
    text = write_turtle(ds.graph, ds.schema.prefixes)
    if args.json:
        if args.out:
            _write(text, args.out)
        sys.stdout.write(api.dumps({"files": _files(args), "triples": len(ds.graph),
                                    "out": args.out}))
    else:
        _write(text, args.out)
    return 0


def cmd_ingest_csv(args):
    schema = builtin_faculty_schema(args.base_iri)
    mapping = CsvRowMapping()
    if args.map:
        mapping = CsvRowMapping.from_dict(json.loads(Path(args.map).read_text(encoding="utf-8")))
    result = ingest_csv(Path(args.file).read_text(encoding="utf-8-sig"), mapping, schema)
    text = write_turtle(result.triples, schema.prefixes)
    if args.json:
        if args.out:
            _write(text, args.out)
        sys.stdout.write(api.dumps({"triples": len(result.triples), "warnings": result.warnings,
                                    "out": args.out}))
    else:
        _write(text, args.out)
    return 0


def cmd_validate(args):
    ds = _dataset(args)
    report = validate(ds.graph, ds.schema, asserted_only=args.asserted_only)
    if args.json:
        sys.stdout.write(report.to_json())
    elif args.csv:
        rows = [[f.severity, f.code, f.to_dict()["subject"], f.detail] for f in report.findings]
        sys.stdout.write(_csv(["severity", "code", "subject", "detail"], rows))
    else:
        sys.stdout.write(report.to_text())
    return 1 if args.strict and report.errors else 0


def cmd_infer(args):
    ds = _dataset(args)
    mg = ds.materialized
    if args.json:
        payload = {"asserted": len(mg.asserted), "inferred": len(mg.inferred),
                   "by_rule": dict(sorted(Counter(mg.provenance.values()).items()))}
        if args.provenance:
            payload["provenance"] = [
                {"subject": t.subject.value, "predicate": t.predicate.value,
                 "object": api.term_json(t.object), "rule": mg.provenance[t]}
                for t in sorted(mg.provenance, key=lambda t: t.sort_key)]
        if args.out:
            _write(write_turtle(mg.full, ds.schema.prefixes), args.out)
        sys.stdout.write(api.dumps(payload))
    elif args.provenance:
        # N-Triples lines are valid Turtle, so this output re-loads
        lines = [f"{t.subject.text} {t.predicate.text} {t.object.text} .  # {mg.provenance[t]}"
                 for t in sorted(mg.provenance, key=lambda t: t.sort_key)]
        _write("\n".join(lines) + ("\n" if lines else ""), args.out)
    else:
        _write(write_turtle(mg.full, ds.schema.prefixes), args.out)
    return 0


def cmd_query(args):
    text = args.query if args.query is not None else \
        Path(args.query_file).read_text(encoding="utf-8-sig")
    ds = _dataset(args)
    use_inference = not args.no_inference
    if args.json:
        sys.stdout.write(api.dumps(api.query_payload(ds, text, use_inference)))
        return 0
    ast, sols = ds.run(text, use_inference)
    names = ast.variables
    if args.csv:
        rows = [["" if s[n] is None else s[n].value for n in names] for s in sols]
        sys.stdout.write(_csv(names, rows))
    else:
        prefixes = _prefix_list(ds.schema)
        rows = [[_short(s[n], prefixes) for n in names] for s in sols]
        sys.stdout.write(_table(["?" + n for n in names], rows))
    return 0


def cmd_experts(args):
    ds = _dataset(args)
    payload = api.experts(ds, args.subject, not args.no_inference)
    sys.stdout.write(_records(args, payload, ["name", "department", "email", "specializations"],
                              ["Name", "Department", "Email", "Specialization"]))
    return 0


def cmd_collaborators(args):
    ds = _dataset(args)
    payload = api.collaborators(ds, args.name, args.suggested)
    sys.stdout.write(_records(args, payload, ["name", "slug", "email"],
                              ["Name", "Slug", "Email"]))
    return 0


def cmd_describe(args):
    ds = _dataset(args)
    payload = api.describe(ds, args.name, args.radius)
    if args.json:
        sys.stdout.write(api.dumps(payload))
        return 0
    prefixes = _prefix_list(ds.schema)
    short = lambda v: _short(Term("iri", v), prefixes)
    obj = lambda o: short(o["value"]) if o["type"] == "iri" else Term(
        o["type"], o["value"], o.get("datatype")).text
    rows = [[short(e["subject"]), short(e["predicate"]), obj(e["object"]),
             "inferred" if e["inferred"] else "asserted"] for e in payload["edges"]]
    if args.csv:
        sys.stdout.write(_csv(["subject", "predicate", "object", "status"], rows))
    else:
        sys.stdout.write(f"{short(payload['root'])} (radius {payload['radius']}): "
                         f"{len(payload['nodes'])} nodes, {len(rows)} edges\n")
        sys.stdout.write(_table(["Subject", "Predicate", "Object", "Status"], rows))
    return 0


def cmd_cq(args):
    if args.cq_command == "list":
        payload = [{"id": q.id, "prose": q.prose, "params": dict(q.params),
                    "needs_inference": q.needs_inference} for q in QUESTIONS.values()]
        sys.stdout.write(_records(args, payload, ["id", "needs_inference", "prose"],
                                  ["ID", "Inference", "Question"]))
        return 0
    if args.cq_command == "show":
        q = get_question(args.id)
        params = {}
        for item in args.param:
            k, sep, v = item.partition("=")
            if not sep:
                raise UsageError(f"fx cq show: error: --param expects NAME=VALUE, got {item!r}")
            params[k] = v
        ds_base = builtin_faculty_schema(args.base_iri).base
        text = competency_query(q.id, params, ds_base)
        if args.json:
            sys.stdout.write(api.dumps({"id": q.id, "prose": q.prose, "params": dict(q.params),
                                        "needs_inference": q.needs_inference,
                                        "note": q.note, "query": text}))
        else:
            sys.stdout.write(f"{q.id}: {q.prose}\n")
            if q.note:
                sys.stdout.write(f"note: {q.note}\n")
            sys.stdout.write("\n" + text)
        return 0
    ds = _dataset(args)
    report = run_all(ds.materialized, ds.schema, not args.no_inference)
    if args.json:
        sys.stdout.write(report.to_json(timing=args.timing))
    else:
        for r in report.results:
            status = "PASS" if r.passed else "FAIL"
            sys.stdout.write(f"{r.id:<5} {status} {r.count:>3} solution(s) "
                             f"{r.elapsed * 1000:7.2f} ms\n")
        sys.stdout.write(report.summary() + "\n")
    return 0 if report.passed == len(QUESTIONS) else 1


def cmd_export(args):
    ds = _dataset(args)
    triples = ds.materialized.full if args.inferred else ds.graph
    _write(api.export_dot(triples, ds.schema), args.out)
    return 0


def cmd_serve(args):
    from .service import serve
    ds = _dataset(args)
    handle = serve(ds.graph, ds.schema, args.port, host=args.host)
    print(f"fx: serving {len(ds.graph)} triples on {handle.url}", file=sys.stderr)
    try:
        handle.wait()
    except KeyboardInterrupt:
        pass
    finally:
        handle.shutdown()
    return 0


COMMANDS = {
    "load": cmd_load, "ingest-csv": cmd_ingest_csv, "validate": cmd_validate,
    "infer": cmd_infer, "query": cmd_query, "experts": cmd_experts,
    "collaborators": cmd_collaborators, "describe": cmd_describe, "cq": cmd_cq,
    "export": cmd_export, "serve": cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="fx: %(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"fx: error: file-not-found: {exc.filename}", file=sys.stderr)
        return 2
    except FxError as exc:
        print(f"fx: error: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"fx: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
