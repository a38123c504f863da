"""
Command Line Module

``python main.py <command> ...`` front end for the command runners.

Dependencies:
    - argparse: sub-commands and options
    - src.services.commands: the shared runners
    - src.services.documents: reading inputs and writing ``-o`` outputs

Exit codes: 0 when the property holds or the command succeeded, 1 when the property
fails, 2 when the input is invalid. The report goes to stdout as JSON; ``-o`` receives
the output document (the report itself for ``decompose``) and ``--dot`` the DOT text.

"""
import argparse
import logging
import sys
from typing import Optional, Sequence

import uvicorn

from src.conf import config
from src.services import commands
from src.services.documents import read_document, read_valuation, to_json, write_document
from src.utils.errors import SepsysError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sepsys", description="Finite separation systems and lattices")
    parser.add_argument("--no-size-limit", action="store_true", help="switch off the size guards")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check every structural law")
    p.add_argument("file")

    p = sub.add_parser("check", help="submodularity reports")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--local", dest="mode", action="store_const", const="local")
    mode.add_argument("--in-host", dest="mode", action="store_const", const="in-host")
    mode.add_argument("--order-induced", dest="mode", action="store_const", const="order-induced")
    p.add_argument("--symmetric", action="store_true", help="require an order function (with --order-induced)")
    p.set_defaults(mode="in-host")

    p = sub.add_parser("depgraph", help="dependency digraph as DOT")
    p.add_argument("file")
    p.add_argument("--dot", required=True, help="DOT output file")
    p.add_argument("--find-cycle", action="store_true")

    for name, text in (
        ("dm-complete", "Dedekind-MacNeille completion"),
        ("birkhoff", "Birkhoff representation"),
        ("double", "the doubled universe L + L^op"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("-o", "--output")

    p = sub.add_parser("extend", help="extend a submodular function from an interval")
    p.add_argument("file")
    p.add_argument("--interval", nargs=2, metavar=("X", "Y"), required=True)
    p.add_argument("--valuation", help="JSON object of label -> \"p/q\"; defaults to the document's valuation")
    p.add_argument("--symmetric", action="store_true", help="extend an order function from [x, x*]")
    p.add_argument("-o", "--output")

    p = sub.add_parser("sublattice-fn", help="submodular function cutting out a sublattice")
    p.add_argument("file")
    p.add_argument("--sub", nargs="+", required=True, metavar="LABEL")
    p.add_argument("--subuniverse", action="store_true", help="build a symmetric order function")
    p.add_argument("-o", "--output")

    p = sub.add_parser("decompose", help="corner-closed decompositions")
    p.add_argument("file")
    p.add_argument("--mode", choices=("triple", "classes"), default="triple")
    p.add_argument("--require-triple", action="store_true")
    p.add_argument("-o", "--output")

    sub.add_parser("paper-demo", help="run the six-point bipartition example end to end")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="0.0.0.0")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _run(args: argparse.Namespace) -> commands.Outcome:
    if args.command == "paper-demo":
        return commands.run_paper_demo()
    document = read_document(args.file)
    if args.command == "validate":
        return commands.run_validate(document)
    if args.command == "check":
        return commands.run_check(document, args.mode, args.symmetric)
    if args.command == "depgraph":
        return commands.run_depgraph(document, args.find_cycle)
    if args.command == "dm-complete":
        return commands.run_dm_complete(document)
    if args.command == "birkhoff":
        return commands.run_birkhoff(document)
    if args.command == "double":
        return commands.run_double(document)
    if args.command == "extend":
        valuation = read_valuation(args.valuation) if args.valuation else None
        x, y = args.interval
        return commands.run_extend(document, x, y, valuation, args.symmetric)
    if args.command == "sublattice-fn":
        return commands.run_sublattice_fn(document, args.sub, args.subuniverse)
    return commands.run_decompose(document, args.mode, args.require_triple)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def serve(host: str, port: int) -> int:
    uvicorn.run("main:app", host=host, port=port)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv`` and run one command.

    :param argv: Arguments without the program name; ``sys.argv[1:]`` when omitted.
    :type argv: Optional[Sequence[str]]
    :return: The exit code.
    :rtype: int
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.symmetric and args.mode != "order-induced":
        parser.error("--symmetric requires --order-induced")
    if args.no_size_limit:
        config.ENFORCE_LIMITS = False
    if args.command == "serve":
        return serve(args.host, args.port)
    try:
        outcome = _run(args)
        output = getattr(args, "output", None)
        if output and args.command == "decompose":
            _write(output, to_json(outcome.report))
        elif output and outcome.document is not None:
            write_document(outcome.document, output)
        if getattr(args, "dot", None) and outcome.dot is not None:
            _write(args.dot, outcome.dot)
    except SepsysError as e:
        logger.error(f"{args.command} failed: {e}")
        print(commands.describe(e), file=sys.stderr)
        return commands.INVALID
    except OSError as e:
        logger.error(f"{args.command} could not write its output: {e}")
        print(f"cannot write output: {e.strerror}", file=sys.stderr)
        return commands.INVALID
    sys.stdout.write(to_json(outcome.report))
    return outcome.code
