"""Command-line driver: ``epg-rainbow {group,invariants,rc,sweep}``.

Exit codes: 0 success, 2 input error, 3 prediction/oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Optional, Sequence

from .awning import DEFAULT_AWNING_BUDGET, awning_order_probe
from .catalog import DEFAULT_CATALOG, load_catalog
from .colorings import realizes_two_coloring
from .classifier import (MISMATCH, awning_verdict, cross_validate, invariant_summary,
                         sweep)
from .cyclic import ics_report, maximal_cyclic_subgroups
from .graphs import enhanced_power_graph, export_dot, power_graph
from .groups import (DEFAULT_SIZE_CAP, FiniteGroup, GroupError, construct, element_order,
                     read_cayley_file, serialize)
from .rainbow import EXHAUSTIVE_EDGE_GATE, default_budget, rc_exact

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 2, 3
UNBOUNDED_CAP = 10**9


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_group(args) -> FiniteGroup:
    cap = UNBOUNDED_CAP if args.override_size_cap else DEFAULT_SIZE_CAP
    if args.input:
        return read_cayley_file(args.input)
    if args.spec:
        return construct(args.spec, cap)
    raise GroupError("one of --spec or --input is required")


def _add_group_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--spec", help='group spec, e.g. "DIHEDRAL 4" or "DIRECT_PRODUCT(CYCLIC 2, CYCLIC 4)"')
    src.add_argument("--input", metavar="FILE", help="Cayley table file")
    p.add_argument("--override-size-cap", action="store_true",
                   help=f"allow groups larger than {DEFAULT_SIZE_CAP} elements")


def _add_budgets(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rc-budget", type=_positive, default=None,
                   help="search nodes per rc computation (default: $EPG_RAINBOW_BUDGET or built-in)")
    p.add_argument("--awning-budget", type=_positive, default=DEFAULT_AWNING_BUDGET)
    p.add_argument("--override-gate", action="store_true",
                   help=f"run exhaustive search even above {EXHAUSTIVE_EDGE_GATE} edges")


def _add_output(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
    p.add_argument("--format", choices=formats, default="json")
    p.add_argument("--out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="epg-rainbow",
                                 description="Rainbow connection of enhanced power graphs of finite groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="construct a group and write its Cayley table")
    _add_group_source(p)
    p.add_argument("--out", metavar="PATH", help="Cayley file to write (default: stdout)")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="format of the summary")

    p = sub.add_parser("invariants", help="maximal cyclic subgroups, ics, InvMax, awning")
    _add_group_source(p)
    _add_output(p, ("json", "text"))
    p.add_argument("--awning-budget", type=_positive, default=DEFAULT_AWNING_BUDGET)
    p.add_argument("--probe-orders", type=_positive, nargs="?", const=720, default=None,
                   metavar="N", help="also search awnings under up to N orders of the subgroups")

    p = sub.add_parser("rc", help="rainbow connection number with certificate")
    _add_group_source(p)
    _add_output(p, ("json", "text", "dot"))
    _add_budgets(p)
    p.add_argument("--which", choices=("enhanced", "power", "both"), default="enhanced")
    p.add_argument("--probe-orders", type=_positive, nargs="?", const=720, default=None, metavar="N")

    p = sub.add_parser("sweep", help="cross-validate every group in a catalog")
    p.add_argument("catalog", nargs="?", default=None,
                   help=f"catalog file (default: {DEFAULT_CATALOG.name})")
    _add_output(p, ("json", "text"))
    _add_budgets(p)
    p.add_argument("--strict", action="store_true", help="fail on malformed catalog lines")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--power", action="store_true", help="also run the power-graph oracle")
    p.add_argument("--probe-orders", type=_positive, nargs="?", const=720, default=None, metavar="N")
    p.add_argument("--timing", action="store_true",
                   help="include elapsed times (output is then not byte-reproducible)")
    return ap


def cmd_group(args) -> int:
    G = _load_group(args)
    text = serialize(G)
    hist = Counter(element_order(G, g) for g in range(G.order))
    summary = {"name": G.name, "order": G.order,
               "element_orders": {str(k): hist[k] for k in sorted(hist)}}
    if args.out:
        Path(args.out).write_text(text)
        summary_stream = sys.stdout
    else:
        sys.stdout.write(text)
        summary_stream = sys.stderr
    if args.format == "json":
        summary_stream.write(_dump(summary))
    else:
        orders = ", ".join(f"{k}:{v}" for k, v in summary["element_orders"].items())
        summary_stream.write(f"{G.name}: order {G.order}; element orders {orders}\n")
    return EXIT_OK


def cmd_invariants(args) -> int:
    G = _load_group(args)
    d = maximal_cyclic_subgroups(G)
    rep = ics_report(d)
    g = enhanced_power_graph(G, d)
    literal = awning_verdict(d, args.awning_budget)
    realized = awning_verdict(d, args.awning_budget, g)
    report = {"name": G.name, "order": G.order, **invariant_summary(G, d, rep),
              "invmax_elements": [G.labels[d.generator(i)] for i in rep.invmax_indices],
              "awning_literal": literal.to_json(), "awning": realized.to_json()}
    if args.probe_orders:
        report["order_probe"] = {
            "literal": awning_order_probe(d, args.probe_orders, args.awning_budget).to_json(),
            "realized": awning_order_probe(d, args.probe_orders, args.awning_budget,
                                           realizes_two_coloring(d, g)).to_json()}
    if args.format == "json":
        _emit(_dump(report), args.out)
        return EXIT_OK
    lines = [f"{G.name}: order {G.order}", f"m = {d.m}",
             "Max_G generators: " + ", ".join(report["generators"]),
             "subgroup sizes: " + " ".join(map(str, report["subgroup_sizes"])),
             "intersection sizes:"]
    lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in report["intersection_sizes"]]
    lines += [f"icn = {rep.icn}; ics: " + (", ".join(report["ics"]) or "-"),
              f"|InvMax| = {rep.invmax}; " + (", ".join(report["invmax_elements"]) or "-"),
              f"awning (conditions only) = {literal.status}",
              f"awning (realizes a 2-coloring) = {realized.status}"]
    if realized.certificate is not None:
        lines.append("certificate: " + json.dumps(realized.certificate.to_json()))
    if "order_probe" in report:
        lines.append("order probe: " + json.dumps(report["order_probe"]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_rc(args) -> int:
    G = _load_group(args)
    budget = args.rc_budget or default_budget()
    gate = dict(edge_gate=EXHAUSTIVE_EDGE_GATE, override_gate=args.override_gate)
    report: dict = {"name": G.name, "order": G.order}
    status = EXIT_OK
    graphs = {}
    if args.which in ("enhanced", "both"):
        rec = cross_validate(G, budget, include_power=False, probe_orders=args.probe_orders or 0,
                             **gate)
        report["enhanced"] = rec.to_json()
        d = maximal_cyclic_subgroups(G)
        graphs["enhanced"] = (enhanced_power_graph(G, d), rec.oracle)
        if rec.agreement == MISMATCH:
            status = EXIT_MISMATCH
    if args.which in ("power", "both"):
        pg = power_graph(G)
        res = rc_exact(pg, budget, (), **gate)
        report["power"] = {"graph_edges": pg.m, "oracle": res.to_json(pg)}
        graphs["power"] = (pg, res)
    if args.which == "both":
        e, p = graphs["enhanced"][1], graphs["power"][1]
        report["enhanced_le_power"] = (e.value <= p.value if e.kind == p.kind == "EXACT"
                                       else e.lb <= p.ub)

    if args.format == "json":
        _emit(_dump(report), args.out)
    elif args.format == "dot":
        _emit("".join(export_dot(g, G.labels, res.certificate, f"{G.name} {kind}")
                      for kind, (g, res) in graphs.items()), args.out)
    else:
        lines = [f"{G.name}: order {G.order}"]
        for kind, (g, res) in graphs.items():
            val = str(res.value) if res.kind == "EXACT" else f"in [{res.lb}, {res.ub}]"
            lines.append(f"{kind}: {g.m} edges, rc {val} (lower bound: {res.lower_bound_source}, "
                         f"certificate: {res.certificate_source})")
        if "enhanced" in report:
            pr = report["enhanced"]["prediction"]
            lines.append(f"prediction: {pr['verdict']} {pr['value']} via {pr['rule']}; "
                         f"agreement {report['enhanced']['agreement']}")
        _emit("\n".join(lines) + "\n", args.out)
    return status


def cmd_sweep(args) -> int:
    specs, warnings = load_catalog(args.catalog, strict=args.strict)  # warnings are also logged
    rep = sweep(specs, args.rc_budget or default_budget(), args.awning_budget, jobs=args.jobs,
                include_power=args.power, probe_orders=args.probe_orders or 0,
                edge_gate=EXHAUSTIVE_EDGE_GATE, override_gate=args.override_gate)
    rep.warnings = warnings
    _emit(rep.dumps(args.timing) if args.format == "json" else rep.text_table(), args.out)
    return EXIT_MISMATCH if rep.has_mismatch else EXIT_OK


COMMANDS = {"group": cmd_group, "invariants": cmd_invariants, "rc": cmd_rc, "sweep": cmd_sweep}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GroupError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
