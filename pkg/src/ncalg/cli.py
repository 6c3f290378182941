"""Command-line front end.

Subcommands: ``eval`` (state + expression to a moment), ``normal-order``
(relations + expression to the canonical form), ``positivity`` (moment
matrix eigenvalue check), ``gns`` (truncated GNS export), ``continuum``
(lattice continuum-limit experiment), ``catalog`` (built-in generator
families).  Exit status 0 on success, 1 on a domain error, 2 on a usage or
configuration error, with a one-line diagnostic on stderr.

All numeric output is deterministic for a fixed config: JSON is emitted
with sorted keys and 17-significant-digit floats, CSV with a header row and
LF line endings.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra, gns, lattice, rewrite, states
from .algebra import C0, Conjugation
from .errors import ConfigError, ExpressionSyntaxError, NcalgError
from .expr import parse_expression

USAGE_ERROR = 2
DOMAIN_ERROR = 1


def _format_json(value, indent=0):
    """Canonical JSON text: sorted keys, floats with 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = (
            f"{inner}{json.dumps(str(k))}: {_format_json(value[k], indent + 1)}"
            for k in sorted(value, key=str)
        )
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = (f"{inner}{_format_json(v, indent + 1)}" for v in value)
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError("non-finite float in JSON output")
        text = format(value, ".17g")
        return text if any(c in text for c in ".eE") else text + ".0"
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _write_output(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc


def _check_keys(data, allowed, where):
    unknown = set(data) - set(allowed)
    if unknown:
        raise ConfigError(
            f"unknown key(s) in {where}: {', '.join(sorted(unknown))}"
        )


def _expression_from_args(args):
    if args.expr is not None:
        return args.expr
    with open(args.expr_file) as fh:
        return fh.read()


# -- subcommands ---------------------------------------------------------------

def _cmd_eval(args):
    state = states.state_from_json(_load_json(args.state))
    element = parse_expression(_expression_from_args(args))
    value = state.evaluate(element)
    doc = {
        "value": [value.real, value.imag],
        "text": algebra.format_scalar(value),
    }
    _write_output(_format_json(doc), args.output)
    return 0


def _cmd_normal_order(args):
    relations = rewrite.RelationSet.from_json_dict(_load_json(args.relations))
    element = parse_expression(_expression_from_args(args))
    order = None
    if args.order:
        order = tuple(int(t) for t in args.order.split(","))
    result, steps = rewrite.normal_order_stats(
        element, relations, order=order, strategy=args.strategy
    )
    doc = {"element": algebra.to_text(result), "max_steps": steps}
    _write_output(_format_json(doc), args.output)
    return 0


def _cmd_positivity(args):
    state = states.state_from_json(_load_json(args.state))
    block = args.block_dim if args.block_dim else state.block_dim
    if block is None:
        raise ConfigError("state has no block dim; pass --block-dim")
    report = states.positivity_check(
        state,
        block_dim=block,
        max_degree=args.max_degree,
        tol=args.tol,
        conjugation=_load_conjugation(args.conjugation),
    )
    doc = {
        "min_eigenvalue": report.min_eigenvalue,
        "positive": report.positive,
        "matrix_dim": report.matrix_dim,
    }
    _write_output(_format_json(doc), args.output)
    return 0 if report.positive else DOMAIN_ERROR


def _load_conjugation(path):
    if path is None:
        return C0
    data = _load_json(path)
    _check_keys(data, ("kind", "matrix"), "conjugation spec")
    if data.get("kind", "matrix") == "coordinate":
        return C0
    matrix = [[complex(v[0], v[1]) for v in row] for row in data["matrix"]]
    try:
        return Conjugation("matrix", matrix)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _cmd_gns(args):
    state = states.state_from_json(_load_json(args.state))
    block = args.block_dim if args.block_dim else state.block_dim
    if block is None:
        raise ConfigError("state has no block dim; pass --block-dim")
    conjugation = _load_conjugation(args.conjugation)
    rep = gns.build_gns(
        state, block_dim=block, inner_degree=args.degree, conjugation=conjugation
    )
    doc = rep.to_json_dict()
    if args.op:
        M = rep.represent(parse_expression(args.op, conjugation))
        doc["operator_matrix"] = [[[z.real, z.imag] for z in row] for row in M]
        if args.format == "csv":
            lines = ["row,col,re,im"]
            for r, row in enumerate(M):
                for c, z in enumerate(row):
                    lines.append(
                        f"{r},{c},{format(z.real, '.17g')},{format(z.imag, '.17g')}"
                    )
            _write_output("\n".join(lines) + "\n", args.output)
            return 0
    _write_output(_format_json(doc), args.output)
    return 0


_CONTINUUM_KEYS = ("L", "m", "sizes", "probes", "dmax", "eps")


def continuum_report_from_config(config):
    """Validate an experiment config document and run the pipeline."""
    _check_keys(config, _CONTINUUM_KEYS, "experiment config")
    for key in ("L", "m", "sizes", "probes"):
        if key not in config:
            raise ConfigError(f"experiment config is missing {key!r}")
    probes = []
    for k, p in enumerate(config["probes"]):
        _check_keys(p, ("breakpoints", "values"), f"probes[{k}]")
        probes.append(
            lattice.Probe(tuple(p["breakpoints"]), tuple(p["values"]))
        )
    return lattice.continuum_experiment(
        length=float(config["L"]),
        mass=float(config["m"]),
        sizes=[int(n) for n in config["sizes"]],
        probes=probes,
        dmax=int(config.get("dmax", 4)),
        eps=float(config.get("eps", 1e-6)),
    )


def _cmd_continuum(args):
    report = continuum_report_from_config(_load_json(args.config))
    if args.format == "csv":
        _write_output(report.to_csv_text(), args.output)
    else:
        _write_output(_format_json(report.to_json_dict()), args.output)
    if args.csv:
        _write_output(report.to_csv_text(), args.csv)
    return 0


def _cmd_catalog(args):
    if args.family == "phi6":
        gmap, rel = rewrite.catalog_phi6(args.m, args.n)
    else:
        gmap, rel = rewrite.catalog_phi7(args.k, args.cutoff, args.dims)
    doc = {
        "family": args.family,
        "labels": gmap.labels,
        "relations": rel.to_json_dict(),
    }
    _write_output(_format_json(doc), args.output)
    return 0


# -- argument parsing ----------------------------------------------------------

class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        # route argparse failures through the usage-error exit code
        self.print_usage(sys.stderr)
        raise SystemExit(self.prog + ": error: " + message)


def _add_expression_args(p):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--expr", help="expression text")
    group.add_argument("--expr-file", help="file containing the expression")


def build_parser():
    parser = _ArgumentParser(
        prog="ncalg",
        description="free *-algebra toolkit: evaluation, normal ordering, "
        "positivity, GNS, and continuum-limit experiments",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("eval", help="evaluate a state on an expression")
    p.add_argument("--state", required=True, help="state JSON file")
    _add_expression_args(p)
    p.add_argument("--output", help="output path (default stdout)")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("normal-order", help="normal-order an expression")
    p.add_argument("--relations", required=True, help="relation-set JSON file")
    _add_expression_args(p)
    p.add_argument("--order", help="comma-separated generator precedence")
    p.add_argument(
        "--strategy", choices=("leftmost", "rightmost"), default="leftmost"
    )
    p.add_argument("--output", help="output path (default stdout)")
    p.set_defaults(func=_cmd_normal_order)

    p = sub.add_parser("positivity", help="moment-matrix positivity check")
    p.add_argument("--state", required=True, help="state JSON file")
    p.add_argument("--block-dim", type=int, help="generator block dimension")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--tol", type=float, default=states.PSD_TOL)
    p.add_argument(
        "--conjugation",
        help="JSON file with the generator-block conjugation matrix",
    )
    p.add_argument("--output", help="output path (default stdout)")
    p.set_defaults(func=_cmd_positivity)

    p = sub.add_parser("gns", help="truncated GNS construction export")
    p.add_argument("--state", required=True, help="state JSON file")
    p.add_argument("--block-dim", type=int, help="generator block dimension")
    p.add_argument("--degree", type=int, default=3, help="inner degree window")
    p.add_argument(
        "--conjugation",
        help="JSON file with the generator-block conjugation matrix",
    )
    p.add_argument("--op", help="expression whose represented matrix to export")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", help="output path (default stdout)")
    p.set_defaults(func=_cmd_gns)

    p = sub.add_parser("continuum", help="lattice continuum-limit experiment")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--csv", help="also write the delta table CSV here")
    p.add_argument("--output", help="output path (default stdout)")
    p.set_defaults(func=_cmd_continuum)

    p = sub.add_parser("catalog", help="built-in generator families")
    fam = p.add_subparsers(dest="family", required=True)
    q = fam.add_parser("phi6", help="mixed CCR/CAR pairs")
    q.add_argument("--m", type=int, default=1, help="symmetric pairs")
    q.add_argument("--n", type=int, default=0, help="antisymmetric pairs")
    q.add_argument("--output", help="output path (default stdout)")
    q.set_defaults(func=_cmd_catalog)
    q = fam.add_parser("phi7", help="truncated oscillator families")
    q.add_argument("--k", type=int, choices=(4, 6), default=4)
    q.add_argument("--cutoff", type=int, default=1, help="mode cutoff")
    q.add_argument("--dims", type=int, default=1, help="target-space directions")
    q.add_argument("--output", help="output path (default stdout)")
    q.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return USAGE_ERROR
        return exc.code if exc.code in (0, None) else USAGE_ERROR
    try:
        return args.func(args)
    except (ConfigError, ExpressionSyntaxError) as exc:
        print(f"ncalg: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (NcalgError, ValueError) as exc:
        print(f"ncalg: {exc}", file=sys.stderr)
        return DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
