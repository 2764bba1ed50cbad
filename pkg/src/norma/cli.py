"""Command-line front end for the full analysis workflow.

Subcommands mirror the pipeline: ``extract`` English to a clause table,
``convert`` the table to a contract model, ``show`` the model as
controlled natural language or shorthand, ``query`` it, ``translate`` it
to verifier XML, ``check`` a semantic query with a printed trace, and
``serve`` the HTTP API. ``-`` means stdin/stdout everywhere; ``check``
exits 0 when satisfied, 1 when not satisfied, 2 on errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import queries as qs
from .cnl import default_lexicon, verbalize
from .codsh import print_codsh
from .coml import emit_coml, parse_coml
from .errors import NormaError
from .extract import DEFAULT_RULES, extract, load_rules
from .nta import emit_uppaal_xml, encode_property, render_query, translate
from .tsv import parse_tsv, rows_to_model, emit_tsv


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text("utf-8")


def _write(path: str, payload: str) -> None:
    if path == "-":
        sys.stdout.write(payload)
        sys.stdout.flush()
    else:
        Path(path).write_text(payload, "utf-8")


def _bindings(pairs: list[str]) -> dict[str, str]:
    out = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep:
            raise NormaError("BAD_BINDING", f"--bind takes key=value, got {pair!r}")
        out[key] = value
    return out


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="norma", description="Analyse normative documents in English."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract a clause table from English text")
    p.add_argument("input")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--rules", help="rule override file (pattern<TAB>code lines)")

    p = sub.add_parser("convert", help="convert a clause table to a contract model")
    p.add_argument("input")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--title", default="")

    p = sub.add_parser("show", help="render a model as CNL or shorthand")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--cnl", action="store_true")
    group.add_argument("--codsh", action="store_true")
    p.add_argument("input")

    p = sub.add_parser("query", help="list or run query templates")
    qsub = p.add_subparsers(dest="query_command", required=True)
    ql = qsub.add_parser("list", help="list templates with slot completions")
    ql.add_argument("input")
    qr = qsub.add_parser("run", help="run one template against a model")
    qr.add_argument("input")
    qr.add_argument("--template", type=int, required=True)
    qr.add_argument("--bind", action="append", default=[])
    qr.add_argument("--horizon", type=int)

    p = sub.add_parser("translate", help="translate a model to verifier XML")
    p.add_argument("input")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--props", help="also write a query sidecar file")
    p.add_argument("--template", type=int)
    p.add_argument("--bind", action="append", default=[])

    p = sub.add_parser("check", help="check a semantic query, printing the trace")
    p.add_argument("input")
    p.add_argument("--template", type=int, required=True)
    p.add_argument("--bind", action="append", default=[])
    p.add_argument("--horizon", type=int)
    p.add_argument("--state-limit", type=int)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--addr", default=os.environ.get("NORMA_ADDR", "127.0.0.1:5446"))
    p.add_argument("--store", default=os.environ.get("NORMA_STORE", "norma-store"))
    return parser


def _run(args) -> int:
    if args.command == "extract":
        rules = load_rules(_read(args.rules)) if args.rules else DEFAULT_RULES
        _write(args.output, emit_tsv(extract(_read(args.input), rules)))
        return 0

    if args.command == "convert":
        model = rows_to_model(parse_tsv(_read(args.input)), title=args.title)
        _write(args.output, emit_coml(model))
        return 0

    if args.command == "show":
        model = parse_coml(_read(args.input))
        if args.codsh:
            _write("-", print_codsh(model))
        else:
            result = verbalize(model, default_lexicon())
            _write("-", result.text)
            for miss in result.misses:
                print(f"warning: LEXICON_MISS {miss.token!r} in clause {miss.clause}",
                      file=sys.stderr)
        return 0

    if args.command == "query" and args.query_command == "list":
        model = parse_coml(_read(args.input))
        listing = []
        for template in qs.list_templates():
            entry = {
                "id": template.id,
                "kind": template.kind,
                "sentence": template.sentence,
                "completions": qs.complete_slots(model, template),
            }
            listing.append(entry)
        _write("-", qs.dumps(listing))
        return 0

    if args.command == "query" and args.query_command == "run":
        model = parse_coml(_read(args.input))
        instance = qs.QueryInstance(args.template, _bindings(args.bind))
        template = qs.get_template(args.template)
        if template.kind == "syntactic":
            payload = qs.result_payload(qs.run_syntactic(model, instance))
        else:
            payload = qs.verdict_payload(
                qs.run_semantic(model, instance, horizon=args.horizon)
            )
        _write("-", qs.dumps(payload))
        return 0

    if args.command == "translate":
        model = parse_coml(_read(args.input))
        network = translate(model)
        _write(args.output, emit_uppaal_xml(network))
        if args.props:
            if args.template is None:
                raise NormaError("BAD_QUERY", "--props needs --template and --bind")
            prop = encode_property(args.template, _bindings(args.bind), network)
            _write(args.props, render_query(prop) + "\n")
        return 0

    if args.command == "check":
        model = parse_coml(_read(args.input))
        instance = qs.QueryInstance(args.template, _bindings(args.bind))
        verdict = qs.run_semantic(
            model, instance, horizon=args.horizon, state_limit=args.state_limit
        )
        if verdict.outcome == "Satisfied":
            print("Satisfied")
            return 0
        print("NOT Satisfied")
        for step in verdict.trace or ():
            print(f"- {step.agent} {step.action} at time {step.time}")
        return 1

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        host, _, port = args.addr.rpartition(":")
        app = create_app(store_dir=args.store)
        uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
        return 0

    raise AssertionError("unreachable")


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _run(args)
    except NormaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
