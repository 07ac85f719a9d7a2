"""Command-line interface.

    qnetcontrol check NETWORK.json
    qnetcontrol infect NETWORK.json --seed-set 1,3
    qnetcontrol propagate --coupling '{"kind": "heisenberg", "c": 1, "delta": 1}' --sweep 0,0.5,1
    qnetcontrol closure NETWORK.json --format json
    qnetcontrol figure3

Exit status: 0 success, 1 invalid input or other error, 3 indeterminate rank
decision, 4 figure3 mismatch, 5 capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .closure import DEFAULT_TOL, IndeterminateError
from .control import DEFAULT_CAP, CapacityError, DirectVerdict, check, direct_closure
from .figure3 import figure3_table
from .infection import infect
from .network import Network, NetworkError, graph_of, model_from_dict, model_to_dict, parse_network
from .propagation import propagation_check
from .reports import ClosureSummary, PropagationEntry, PropagationTable, dumps, render

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INDETERMINATE = 3
EXIT_MISMATCH = 4
EXIT_CAPACITY = 5

COMMANDS = ("check", "infect", "propagate", "closure", "figure3")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None = None
    tol: float = DEFAULT_TOL
    cap: int = DEFAULT_CAP
    sweep: tuple[float, ...] | None = None
    output_format: str = "text"
    seed_set: tuple | None = None
    representation: str = "auto"
    coupling: str | None = None
    dims: tuple[int, int] = (2, 2)
    param: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.cap < 4:
            raise ValueError("cap must be at least 4")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")


def _node_list(text: str) -> tuple:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(int(tok))
        except ValueError:
            out.append(tok)
    return tuple(out)


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _dims(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}") from None
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative rank tolerance (default %(default)g)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="largest total Hilbert dimension for direct closures (default %(default)d)")
    common.add_argument("--format", dest="output_format", choices=("text", "json", "structured"), default="text")
    common.add_argument("--representation", choices=("auto", "dense", "pauli"), default="auto")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="qnetcontrol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="sufficient criterion and direct closure test")
    p.add_argument("input_path")
    p.add_argument("--seed-set", type=_node_list, help="control set overriding the file's control_set")

    p = sub.add_parser("infect", parents=[common], help="graph infection with certificate")
    p.add_argument("input_path")
    p.add_argument("--seed-set", type=_node_list)

    p = sub.add_parser("propagate", parents=[common], help="two-site propagation test")
    p.add_argument("input_path", nargs="?", help="network file; every edge is tested from both ends")
    p.add_argument("--coupling", help="coupling document, e.g. '{\"kind\": \"xx\", \"c\": 1}'")
    p.add_argument("--dims", type=_dims, default=(2, 2), help="site dimensions for --coupling (default 2,2)")
    p.add_argument("--sweep", type=_floats, help="comma-separated values for --param")
    p.add_argument("--param", help="swept parameter (default: delta, A for aklt, c otherwise)")

    p = sub.add_parser("closure", parents=[common], help="direct Lie closure dimension")
    p.add_argument("input_path")
    p.add_argument("--seed-set", type=_node_list)

    sub.add_parser("figure3", parents=[common], help="reproduce the built-in example table")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fmt = "json" if args.output_format == "structured" else args.output_format
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input_path", None),
        tol=args.tol,
        cap=args.cap,
        sweep=getattr(args, "sweep", None),
        output_format=fmt,
        seed_set=getattr(args, "seed_set", None),
        representation=args.representation,
        coupling=getattr(args, "coupling", None),
        dims=getattr(args, "dims", (2, 2)),
        param=getattr(args, "param", None),
    )


def _load(cfg: RunConfig) -> Network:
    if not cfg.input_path:
        raise NetworkError("a network file is required")
    net = parse_network(Path(cfg.input_path).read_text(encoding="utf-8"))
    if cfg.seed_set is not None:
        net = net.with_control(cfg.seed_set)
    return net


def _default_param(model_doc: dict) -> str:
    return {"heisenberg": "delta", "aklt": "A"}.get(model_doc["kind"], "c")


def _propagation_table(cfg: RunConfig) -> PropagationTable:
    jobs = []  # (label, model document, d_n, d_m, sides)
    if cfg.coupling is not None:
        try:
            doc = json.loads(cfg.coupling)
        except json.JSONDecodeError as err:
            raise NetworkError(f"malformed coupling JSON: {err}") from None
        if not cfg.sweep:
            model_from_dict(doc)
        jobs.append((doc["kind"], doc, cfg.dims[0], cfg.dims[1], ("n", "m")))
    elif cfg.input_path:
        net = _load(cfg)
        for e in net.edges:
            jobs.append((f"{e.a}-{e.b}", model_to_dict(e.model), net.nodes[e.a], net.nodes[e.b], ("n", "m")))
    else:
        raise NetworkError("propagate needs a network file or --coupling")
    entries = []
    for label, doc, dn, dm, sides in jobs:
        variants = [(label, doc)]
        if cfg.sweep:
            param = cfg.param or _default_param(doc)
            if doc["kind"] == "custom":
                raise NetworkError("custom couplings cannot be swept")
            variants = [(f"{label} {param}={v:g}", {**doc, param: v}) for v in cfg.sweep]
        for vlabel, vdoc in variants:
            model = model_from_dict(vdoc)
            for side in sides:
                rep = propagation_check(model, dn, dm, cfg.tol, side)
                entries.append(PropagationEntry(vlabel, vdoc, dn, dm, rep, cfg.tol))
    return PropagationTable(tuple(entries))


def run(cfg: RunConfig) -> tuple[int, object]:
    """Execute one command; return ``(exit status, report object)``."""
    if cfg.command == "check":
        net = _load(cfg)
        report = check(net, cfg.tol, cfg.cap, cfg.representation)
        status = EXIT_INDETERMINATE if report.direct_verdict is DirectVerdict.INDETERMINATE else EXIT_OK
        return status, report
    if cfg.command == "infect":
        net = _load(cfg)
        return EXIT_OK, infect(graph_of(net), net.control_set)
    if cfg.command == "propagate":
        return EXIT_OK, _propagation_table(cfg)
    if cfg.command == "closure":
        net = _load(cfg)
        res = direct_closure(net, cfg.tol, cfg.cap, cfg.representation)
        return EXIT_OK, ClosureSummary.from_result(res, net.name, net.control_set, cfg.cap)
    table = figure3_table(cfg.tol, cfg.cap, cfg.representation)
    return (EXIT_OK if table.all_match else EXIT_MISMATCH), table


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        status, report = run(cfg)
    except IndeterminateError as err:
        print(f"indeterminate: {err}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except CapacityError as err:
        print(f"capacity exceeded: {err}", file=sys.stderr)
        return EXIT_CAPACITY
    except (NetworkError, ValueError, KeyError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    print(dumps(report) if cfg.output_format == "json" else render(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
