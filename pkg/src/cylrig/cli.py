"""Command-line front end: `cylrig <command> --input FILE`.

Exit codes: 0 when a verdict was computed (negative verdicts included), 1 for bad input or
an unsupported group, 2 when an internal invariant breaks.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, catalog
from .characters import CharacterMismatch, necessary_conditions
from .construction import (Certificate, InternalExhaustion, InternalInvariantError, NotTight, StepError,
                           certify, replay, verify_certificate)
from .geometry import graph_is_gamma_isostatic
from .graph import GraphError, natural_key
from .groups import CERTIFIABLE
from .io import DocumentError, read_graph, to_document
from .sparsity import check_22, gamma_tight
from .trees import DecompositionError, coloring_to_json, decompose

COMMANDS = ("check", "isostatic", "certify", "replay", "trees", "characters", "basegraphs")


class InputError(Exception):
    pass


def _read_json(path):
    try:
        with open(path, "rb") as fh:
            return json.loads(fh.read().decode("utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def _graph(args):
    if not args.input:
        raise InputError(f"{args.command} needs --input PATH")
    try:
        return read_graph(args.input)
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    except (DocumentError, GraphError) as exc:
        raise InputError(str(exc)) from None


def _certificate(path):
    try:
        return Certificate.from_json(_read_json(path))
    except StepError as exc:
        raise InputError(str(exc)) from None


def _need_certifiable(graph):
    if graph.group in ("C2v", "C2h"):
        raise InputError("necessary conditions only; see characters")
    if graph.group not in CERTIFIABLE:
        raise InputError(f"no recursive construction for group {graph.group}")


# ---------------------------------------------------------------------------------
# handlers return the "result" part of the report

def cmd_check(args):
    g = _graph(args)
    sp = check_22(g)
    gt = gamma_tight(g)
    nc = necessary_conditions(g)
    return {"vertices": len(g.vertices), "edges": len(g.edges), **sp.as_dict(),
            "gamma_tight": gt.ok, "reasons": gt.reasons, "necessary_only": gt.necessary_only,
            "counts": gt.counts, "characters_pass": nc.passes, "residuals": nc.residuals}


def cmd_isostatic(args):
    g = _graph(args)
    return graph_is_gamma_isostatic(g, seed=args.seed, retries=args.retries).as_dict()


def cmd_certify(args):
    g = _graph(args)
    _need_certifiable(g)
    try:
        cert = certify(g)
    except NotTight as exc:
        rep = exc.verdict.report if exc.verdict is not None else check_22(g)
        wit = sorted(rep.witness, key=natural_key) if rep.witness else None
        return {"certified": False, "error": "NotTight", "message": str(exc), "witness": wit,
                "reasons": exc.verdict.reasons if exc.verdict is not None else []}
    return {"certified": True, "steps": cert.size(), "certificate": cert.to_json()}


def cmd_replay(args):
    if not args.input:
        raise InputError("replay needs --input PATH (a certificate)")
    cert = _certificate(args.input)
    try:
        g = replay(cert)
    except StepError as exc:
        raise InputError(f"certificate does not replay: {exc}") from None
    out = {"graph": to_document(g), "vertices": len(g.vertices), "edges": len(g.edges)}
    if args.graph:
        target = read_graph(args.graph)
        out["matches_graph"] = verify_certificate(target, cert)
    return out


def cmd_trees(args):
    g = _graph(args)
    _need_certifiable(g)
    cert = _certificate(args.certificate) if args.certificate else None
    if cert is not None and not verify_certificate(g, cert):
        raise InputError("certificate does not replay to the input graph")
    try:
        col = decompose(g, cert)
    except NotTight as exc:
        return {"decomposed": False, "error": "NotTight", "message": str(exc)}
    return {"decomposed": True, "coloring": coloring_to_json(col)}


def cmd_characters(args):
    g = _graph(args)
    return necessary_conditions(g).as_dict()


def cmd_basegraphs(args):
    report = catalog.verify_catalog()
    out = {}
    for key in catalog.ENTRIES:
        g = catalog.base_graph(key)
        out[key] = {**report[key], "document": to_document(g),
                    "coloring": coloring_to_json(catalog.base_coloring(key))}
    return {"entries": out, "all_ok": all(r["gamma_tight"] and r["coloring_ok"] for r in report.values())}


HANDLERS = {"check": cmd_check, "isostatic": cmd_isostatic, "certify": cmd_certify,
            "replay": cmd_replay, "trees": cmd_trees, "characters": cmd_characters,
            "basegraphs": cmd_basegraphs}


def build_parser():
    p = argparse.ArgumentParser(prog="cylrig", description="Symmetric rigidity on the cylinder.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--input", metavar="PATH")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--retries", type=int, default=3)
        s.add_argument("--format", choices=("json", "text"), default="json")
        if name == "trees":
            s.add_argument("--certificate", metavar="PATH", help="certificate to propagate colourings along")
        if name == "replay":
            s.add_argument("--graph", metavar="PATH", help="compare the replayed graph with this document")
    return p


def _text(report):
    lines = [f"command: {report['command']}", f"seed: {report['seed']}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
    for k, v in report.get("result", {}).items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        lines.append(f"{k}: {v}")
    lines.append(f"elapsed: {report['elapsed_s']:.3f}s")
    return "\n".join(lines)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if args.seed < 0 or args.seed >= 2 ** 64:
        args.seed %= 2 ** 64
    report = {"command": args.command, "input": args.input, "seed": args.seed, "version": __version__}
    t0 = time.perf_counter()
    code = 0
    try:
        report["result"] = HANDLERS[args.command](args)
    except InputError as exc:
        report["error"], code = str(exc), 1
    except (DocumentError, GraphError) as exc:
        report["error"], code = str(exc), 1
    except (InternalInvariantError, InternalExhaustion, DecompositionError, CharacterMismatch) as exc:
        report["error"], code = f"internal invariant breach: {exc}", 2
    report["elapsed_s"] = round(time.perf_counter() - t0, 4)
    if args.format == "json":
        text = json.dumps(report, indent=1, sort_keys=False)
    else:
        text = _text(report)
    out.write(text + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
