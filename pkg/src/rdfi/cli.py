"""Command-line interface: ``rdfi <command> ...``.

Exit codes: 0 success or "true", 1 "false", 2 usage error, 3 malformed
input, 4 the solver or the requested operation failed.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (EmptyWorldSet, IllFormedConstant, IllFormedTriple, LanguageMismatch,
                     NotAfoFragment, ParseError, RdfiError, UnknownDatatype)
from .oracle import enumerate_worlds, oracle_certain
from .query import (SelectQuery, certain_answer, certainty, check_well_designed, eq_complete,
                    eval_construct, eval_select, fragment, normalize)
from .syntax import (format_certain, parse_database, parse_domain, parse_graph, parse_query,
                     serialize_answers, serialize_database)

_INPUT_ERRORS = (ParseError, IllFormedTriple, LanguageMismatch, UnknownDatatype, IllFormedConstant,
                 NotAfoFragment)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _db(path: str):
    return parse_database(_read(path))


def _query(args, language: str):
    return parse_query(_read(args.query), language, getattr(args, "require_wd", False))


def cmd_validate(args, out) -> int:
    from .constraints import satisfiable
    db = _db(args.db)
    sat = satisfiable(db.global_constraint, db.language)
    out.write(f"ok: {len(db.graph)} conditional triples, language {db.language}, "
              f"global constraint {'satisfiable' if sat else 'unsatisfiable'}\n")
    return 0 if sat else 4


def cmd_query(args, out) -> int:
    db = _db(args.db)
    q = _query(args, db.language)
    answer = eval_select(q, db) if isinstance(q, SelectQuery) else eval_construct(q, db)
    out.write(serialize_answers(answer, args.format))
    return 0


def cmd_certain(args, out) -> int:
    db = _db(args.db)
    q = _query(args, db.language)
    out.write(serialize_answers(certain_answer(q, db), args.format))
    return 0


def cmd_cert(args, out) -> int:
    db = _db(args.db)
    q = _query(args, db.language)
    graph = parse_graph(_read(args.graph), db.language)
    verdict = certainty(q, graph, db)
    out.write("true\n" if verdict else "false\n")
    return 0 if verdict else 1


def cmd_worlds(args, out) -> int:
    db = _db(args.db)
    worlds = enumerate_worlds(db, parse_domain(_read(args.domain), db.language))
    out.write(f"{len(worlds)} worlds\n")
    for i, w in enumerate(worlds, 1):
        out.write(f"world {i}:\n")
        for line in format_certain(w):
            out.write(f"  {line}\n")
    return 0


def cmd_oracle_certain(args, out) -> int:
    db = _db(args.db)
    q = _query(args, db.language)
    answer = oracle_certain(q, db, parse_domain(_read(args.domain), db.language))
    if isinstance(q, SelectQuery):
        lines = sorted("{" + ", ".join(f"{v} -> {t}" for v, t in
                                       sorted(m, key=lambda vt: str(vt[0]))) + "}" for m in answer)
        out.write("".join(line + "\n" for line in lines))
    else:
        out.write(serialize_answers(answer, "text"))
    return 0


def cmd_check_wd(args, out) -> int:
    q = parse_query(_read(args.query), args.lang)
    try:
        ok = check_well_designed(q.pattern)
    except NotAfoFragment as exc:
        out.write(f"not well-designed: {exc}\n")
        return 1
    out.write(f"{fragment(q.pattern)}\n" if ok else "not well-designed\n")
    return 0 if ok else 1


def cmd_normalize(args, out) -> int:
    out.write(serialize_database(normalize(_db(args.db))))
    return 0


def cmd_eq_complete(args, out) -> int:
    out.write(serialize_database(eq_complete(_db(args.db))))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rdfi", description="Query RDF databases with incomplete information.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, *, query=False, fmt=False, wd=False):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        if name != "check-wd":
            sp.add_argument("db", help="database document, or - for stdin")
        if query:
            sp.add_argument("query", help="query file, or - for stdin")
        if fmt:
            sp.add_argument("--format", choices=("text", "json"), default="text")
        if wd:
            sp.add_argument("--require-wd", action="store_true",
                            help="reject patterns outside the union-free or well-designed fragments")
        return sp

    add("validate", cmd_validate, "parse a database and check its global constraint")
    add("query", cmd_query, "evaluate a SELECT or CONSTRUCT query", query=True, fmt=True, wd=True)
    add("certain", cmd_certain, "certain answer of a CONSTRUCT query", query=True, fmt=True, wd=True)
    cert = add("cert", cmd_cert, "decide whether a set of triples is certain", query=True, wd=True)
    cert.add_argument("graph", help="ground triples, or - for stdin")
    worlds = add("worlds", cmd_worlds, "list possible graphs over a finite domain")
    worlds.add_argument("--domain", required=True)
    oc = add("oracle-certain", cmd_oracle_certain, "certain answer by enumerating worlds",
             query=True, wd=True)
    oc.add_argument("--domain", required=True)
    wdp = add("check-wd", cmd_check_wd, "check that a query pattern is well-designed")
    wdp.add_argument("query", help="query file, or - for stdin")
    wdp.add_argument("--lang", default="pcl", help="constraint language for constants")
    add("normalize", cmd_normalize, "merge conditions of identical triples")
    add("eq-complete", cmd_eq_complete, "replace e-literals forced to a constant")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except _INPUT_ERRORS as exc:
        print(f"rdfi: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"rdfi: {exc}", file=sys.stderr)
        return 2
    except (RdfiError, ValueError) as exc:
        kind = "no world" if isinstance(exc, EmptyWorldSet) else type(exc).__name__
        print(f"rdfi: {kind}: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
