"""Command-line front end.

Subcommands
-----------
construct   build a graph family and emit its edge list
spectrum    top-of-spectrum summary (lambda1, lambda2, gaps)
ratio       principal eigenvector ratio report
perturb     run the eigenvector-perturbation certificate for one edge edit
verify      evaluate named inequality checks, emit a CSV of BoundCheck rows
sweep       run a parameter sweep driven by a flat key=value config file

Exit codes: 0 success, 1 usage error or failed precondition, 2 at least
one checked inequality did not hold.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from string import Template

import numpy as np

from . import bounds
from .errors import (
    DistanceTooLarge,
    InvalidParameters,
    NonRegularRequired,
    NotRegular,
    ParametersTooSmall,
    ParseError,
    PerronLabError,
)
from .families import FamilySpec, build_family, canonical_name, parse_family
from .graph import Graph, add_edge, distance, format_edge_list, is_bridge, remove_edge
from .perturbation import certify_ratio
from .spectral import ratio, spectrum_summary

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; remap to the error code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _json_dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _parse_edge_arg(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"edge must be 'u,v', got {text!r}")
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"edge endpoints must be integers, got {text!r}") from None
    return u, v


_SIGN_WORDS = {"+": 1, "plus": 1, "-": -1, "minus": -1}


def _parse_sign(text: str) -> int:
    try:
        return _SIGN_WORDS[text]
    except KeyError:
        raise ParseError(f"sign must be one of +, -, plus, minus; got {text!r}") from None


# ---------------------------------------------------------------------------
# construct / spectrum / ratio / perturb


def _cmd_construct(args) -> int:
    built = build_family(args.family)
    _write_output(format_edge_list(built.graph), args.output)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    built = build_family(args.family)
    summary = spectrum_summary(built.graph)
    payload = {
        "family": canonical_name(built.spec),
        "n": built.graph.n,
        "m": built.graph.m,
        **asdict(summary),
    }
    _write_output(_json_dumps(payload), args.output)
    return EXIT_OK


def _ratio_spec(args) -> FamilySpec:
    spec = parse_family(args.family)
    if getattr(args, "plus_e", False):
        if spec.kind != "ring":
            raise InvalidParameters("--plus-e only applies to ring: specs")
        spec = FamilySpec("ringplus", spec.params)
    return spec


def _cmd_ratio(args) -> int:
    spec = _ratio_spec(args)
    built = build_family(spec)
    rep = ratio(built.graph)
    payload = {
        "family": canonical_name(built.spec),
        "n": built.graph.n,
        "m": built.graph.m,
        **asdict(rep),
    }
    _write_output(_json_dumps(payload), args.output)
    return EXIT_OK


def _cmd_perturb(args) -> int:
    built = build_family(args.family)
    edge = _parse_edge_arg(args.edge)
    sign = _parse_sign(args.sign)
    rep = certify_ratio(built.graph, edge, sign, args.c)
    payload = {"family": canonical_name(built.spec), **asdict(rep)}
    _write_output(_json_dumps(payload), args.output)
    return EXIT_OK if rep.holds else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# verify

_EDGE_CHECKS = {"diameter_change", "expander_corollary", "removal_poly"}


def _pick_removable_edge(g: Graph) -> tuple[int, int]:
    for e in g.edges():
        if not is_bridge(g, e):
            return (e.u, e.v)
    raise InvalidParameters("graph has no removable (non-bridge) edge")


def _pick_missing_edge(g: Graph) -> tuple[int, int]:
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                return (u, v)
    raise InvalidParameters("graph is complete; no edge can be added")


def _sample_pairs(n: int, samples: int, seed: int) -> list[tuple[int, int]]:
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(samples):
        i = int(rng.integers(n))
        j = int(rng.integers(n - 1))
        if j >= i:
            j += 1
        pairs.append((i, j))
    return pairs


def _run_checks(
    built,
    names: list[str],
    *,
    strict: bool,
    samples: int,
    seed: int,
    edge_op: str | None,
    edge: tuple[int, int] | None,
    c_dist: int | None,
    notes: list[str],
) -> list[bounds.BoundCheck]:
    """Evaluate the requested checks.

    strict=False (the "all" mode) silently skips checks whose preconditions
    the instance cannot meet, recording a note; strict=True lets the
    precondition error propagate.
    """
    g = built.graph
    edited = None
    if edge_op == "minus":
        if edge is None:
            edge = _pick_removable_edge(g)
        edited = remove_edge(g, edge)
    elif edge_op == "plus":
        if edge is None:
            edge = _pick_missing_edge(g)
        edited = add_edge(g, edge)

    # checks that only need a connected graph run on the edited graph when an
    # edge operation is in play, so the whole row describes the same object
    target = edited if edited is not None else g

    def skip(name: str, reason: str) -> None:
        notes.append(f"skipped {name}: {reason}")

    rows: list[bounds.BoundCheck] = []
    for name in names:
        try:
            if name == "ratio_diameter":
                rows.append(bounds.check_ratio_diameter(target))
            elif name == "distance_ratio":
                for i, j in _sample_pairs(target.n, samples, seed):
                    rows.append(bounds.check_distance_ratio(target, i, j))
            elif name == "regular_diameter":
                # the base graph is the regular one; an edge edit breaks
                # regularity, so this check always addresses g itself
                rows.append(bounds.check_regular_diameter(g))
            elif name == "alon_milman":
                rows.append(bounds.check_alon_milman(target))
            elif name == "cgn":
                rows.append(bounds.check_cgn(target))
            elif name == "diameter_change":
                if edge_op == "minus":
                    # edge was removed from g; adding it back to `edited`
                    # recovers g, which is the diameter comparison we want
                    rows.append(bounds.check_diameter_change(edited, edge))
                elif edge_op == "plus":
                    rows.append(bounds.check_diameter_change(g, edge))
                elif strict:
                    raise InvalidParameters("diameter_change needs --edge-op")
                else:
                    skip(name, "no edge operation requested")
                    continue
            elif name == "expander_corollary":
                if edge_op is None:
                    if strict:
                        raise InvalidParameters("expander_corollary needs --edge-op")
                    skip(name, "no edge operation requested")
                    continue
                rows.append(bounds.check_expander_corollary(g, edge))
            elif name == "removal_poly":
                if edge_op != "minus":
                    if strict:
                        raise InvalidParameters("removal_poly needs --edge-op minus")
                    skip(name, "requires an edge removal")
                    continue
                cd = c_dist
                if cd is None:
                    cd = distance(edited, edge[0], edge[1])
                rows.append(bounds.check_removal_poly(g, edge, cd))
            elif name == "exponential_ring":
                if built.spec.kind not in ("ring", "ringplus"):
                    if strict:
                        raise InvalidParameters("exponential_ring needs a ring: family")
                    skip(name, "not a ring family")
                    continue
                r, d = built.spec.params
                rows.append(bounds.check_exponential_ring(r, d))
            else:
                raise ParseError(f"unknown check {name!r}")
        except (NotRegular, NonRegularRequired, ParametersTooSmall, DistanceTooLarge) as exc:
            if strict:
                raise
            skip(name, str(exc))
    return rows


def _checks_csv(rows: list[bounds.BoundCheck]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(bounds.CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_row())
    return buf.getvalue()


def _cmd_verify(args) -> int:
    built = build_family(args.family)
    if args.check == "all":
        names = list(bounds.CHECK_NAMES)
        strict = False
    else:
        if args.check not in bounds.CHECK_NAMES:
            raise ParseError(
                f"unknown check {args.check!r}; choose from "
                + ", ".join(bounds.CHECK_NAMES)
                + ", all"
            )
        names = [args.check]
        strict = True
    edge = _parse_edge_arg(args.edge) if args.edge else None
    notes: list[str] = []
    rows = _run_checks(
        built,
        names,
        strict=strict,
        samples=args.samples,
        seed=args.seed,
        edge_op=args.edge_op,
        edge=edge,
        c_dist=args.c_dist,
        notes=notes,
    )
    for note in notes:
        print(f"note: {note}", file=sys.stderr)
    _write_output(_checks_csv(rows), args.output)
    if not rows:
        raise InvalidParameters("no applicable checks for this instance")
    return EXIT_VIOLATION if any(not r.holds for r in rows) else EXIT_OK


# ---------------------------------------------------------------------------
# sweep

_SWEEP_ANALYSES = ("ratio", "spectrum", "perturb") + tuple(
    n for n in bounds.CHECK_NAMES if n != "distance_ratio"
)

_ANALYSIS_COLUMNS = {
    "ratio": ("gamma", "log_gamma", "lambda1"),
    "spectrum": ("lambda1", "lambda2", "additive_gap", "multiplicative_gap"),
    "perturb": ("gamma_observed", "gamma_certificate", "p_norm", "p_bound", "holds"),
}


def _check_columns(name: str) -> tuple[str, ...]:
    return ("lhs", "rhs", "holds", "slack")


def _parse_range(text: str, key: str) -> list[int]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ParseError(f"{key}: range must be start:stop or start:stop:step")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"{key}: range bounds must be integers") from None
    start, stop = vals[0], vals[1]
    step = vals[2] if len(vals) == 3 else 1
    if step <= 0:
        raise ParseError(f"{key}: step must be positive")
    if stop < start:
        raise ParseError(f"{key}: empty range {text!r}")
    return list(range(start, stop + 1, step))


def _parse_sweep_config(text: str) -> dict:
    cfg: dict[str, str] = {}
    order: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ParseError(f"config line {lineno}: empty key or value")
        if key in cfg:
            raise ParseError(f"config line {lineno}: duplicate key {key!r}")
        cfg[key] = value
        order.append(key)

    if "family" not in cfg:
        raise ParseError("config is missing the family template")
    params: list[tuple[str, list[int]]] = []
    for key in order:
        if key.startswith("sweep."):
            name = key[len("sweep.") :]
            if not name.isidentifier():
                raise ParseError(f"bad sweep parameter name {name!r}")
            params.append((name, _parse_range(cfg[key], key)))
    if not params:
        raise ParseError("config declares no sweep.<name> range")
    if len(params) > 2:
        raise ParseError("at most two swept parameters are supported")
    template = cfg["family"]
    for name, _ in params:
        if f"${name}" not in template and "${" + name + "}" not in template:
            raise ParseError(f"sweep parameter {name!r} does not appear in family template")

    analyses = [a.strip() for a in cfg.get("analyses", "").split(",") if a.strip()]
    if not analyses:
        raise ParseError("config must list at least one analysis")
    for a in analyses:
        if a not in _SWEEP_ANALYSES:
            raise ParseError(
                f"unknown analysis {a!r}; choose from " + ", ".join(_SWEEP_ANALYSES)
            )

    out = {
        "template": template,
        "params": params,
        "analyses": analyses,
        "format": cfg.get("format", "csv"),
        "output": cfg.get("output"),
        "seed": int(cfg.get("seed", "0")),
        "samples": int(cfg.get("samples", "50")),
        "edge_op": cfg.get("edge_op"),
        "edge": _parse_edge_arg(cfg["edge"]) if "edge" in cfg else None,
        "c_dist": int(cfg["c_dist"]) if "c_dist" in cfg else None,
        "perturb_c": float(cfg["perturb.c"]) if "perturb.c" in cfg else None,
        "perturb_sign": _parse_sign(cfg["perturb.sign"]) if "perturb.sign" in cfg else None,
        "perturb_edge": _parse_edge_arg(cfg["perturb.edge"]) if "perturb.edge" in cfg else None,
    }
    if out["format"] not in ("csv", "json"):
        raise ParseError("format must be csv or json")
    if out["edge_op"] not in (None, "plus", "minus"):
        raise ParseError("edge_op must be plus or minus")
    if "perturb" in analyses:
        if out["perturb_c"] is None:
            raise ParseError("perturb analysis needs perturb.c")
        if out["perturb_sign"] is None:
            raise ParseError("perturb analysis needs perturb.sign (+ or -)")
    return out


def _sweep_columns(cfg: dict) -> list[str]:
    cols = ["family"] + [name for name, _ in cfg["params"]] + ["n", "m"]
    for a in cfg["analyses"]:
        fields = _ANALYSIS_COLUMNS.get(a, _check_columns(a))
        cols.extend(f"{a}.{f}" for f in fields)
    cols.append("error")
    return cols


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _perturb_edge_for(g: Graph, cfg: dict) -> tuple[int, int]:
    if cfg["perturb_edge"] is not None:
        return cfg["perturb_edge"]
    if cfg["perturb_sign"] < 0:
        return _pick_removable_edge(g)
    return _pick_missing_edge(g)


def _run_sweep_row(cfg: dict, assignment: dict[str, int]) -> dict:
    row: dict[str, object] = {name: val for name, val in assignment.items()}
    row["error"] = ""
    try:
        family_str = Template(cfg["template"]).substitute(assignment)
        spec = parse_family(family_str)
        built = build_family(spec)
        g = built.graph
        row["family"] = canonical_name(spec)
        row["n"] = g.n
        row["m"] = g.m
        for a in cfg["analyses"]:
            if a == "ratio":
                rep = ratio(g)
                row["ratio.gamma"] = rep.gamma
                row["ratio.log_gamma"] = rep.log_gamma
                row["ratio.lambda1"] = rep.lambda1
            elif a == "spectrum":
                summ = spectrum_summary(g)
                row["spectrum.lambda1"] = summ.lambda1
                row["spectrum.lambda2"] = summ.lambda2
                row["spectrum.additive_gap"] = summ.additive_gap
                row["spectrum.multiplicative_gap"] = summ.multiplicative_gap
            elif a == "perturb":
                edge = _perturb_edge_for(g, cfg)
                rep = certify_ratio(g, edge, cfg["perturb_sign"], cfg["perturb_c"])
                row["perturb.gamma_observed"] = rep.gamma_observed
                row["perturb.gamma_certificate"] = rep.gamma_certificate
                row["perturb.p_norm"] = rep.p_norm
                row["perturb.p_bound"] = rep.p_bound
                row["perturb.holds"] = rep.holds
            else:
                notes: list[str] = []
                checks = _run_checks(
                    built,
                    [a],
                    strict=True,
                    samples=cfg["samples"],
                    seed=cfg["seed"],
                    edge_op=cfg["edge_op"],
                    edge=cfg["edge"],
                    c_dist=cfg["c_dist"],
                    notes=notes,
                )
                chk = checks[0]
                row[f"{a}.lhs"] = chk.lhs
                row[f"{a}.rhs"] = chk.rhs
                row[f"{a}.holds"] = chk.holds
                row[f"{a}.slack"] = chk.slack
    except PerronLabError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _cmd_sweep(args) -> int:
    with open(args.config) as fh:
        cfg = _parse_sweep_config(fh.read())
    if args.output is not None:
        cfg["output"] = args.output

    columns = _sweep_columns(cfg)
    names = [name for name, _ in cfg["params"]]
    grids = [vals for _, vals in cfg["params"]]

    assignments: list[dict[str, int]] = []
    if len(grids) == 1:
        assignments = [{names[0]: v} for v in grids[0]]
    else:
        assignments = [
            {names[0]: v0, names[1]: v1} for v0 in grids[0] for v1 in grids[1]
        ]

    rows = [_run_sweep_row(cfg, asg) for asg in assignments]

    if cfg["format"] == "json":
        payload = [{c: r.get(c) for c in columns} for r in rows]
        text = _json_dumps(payload)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_format_cell(r.get(c)) for c in columns])
        text = buf.getvalue()
    _write_output(text, cfg["output"])

    violated = any(r.get(f"{a}.holds") is False for r in rows for a in cfg["analyses"])
    return EXIT_VIOLATION if violated else EXIT_OK


# ---------------------------------------------------------------------------
# parser wiring


def _build_parser() -> _Parser:
    parser = _Parser(prog="perronlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a family and print its edge list")
    p.add_argument("family", help="family spec, e.g. cycle:24 or ring:r=10,d=3")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("spectrum", help="lambda1/lambda2 summary as JSON")
    p.add_argument("family")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("ratio", help="principal eigenvector ratio report as JSON")
    p.add_argument("family")
    p.add_argument("--plus-e", action="store_true", help="for ring specs: add the distinguished edge")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_ratio)

    p = sub.add_parser("perturb", help="certify the ratio of a graph after one edge edit")
    p.add_argument("family")
    p.add_argument("--edge", required=True, help="edge endpoints as u,v")
    p.add_argument("--sign", required=True, help="+ to add the edge, - to remove it")
    p.add_argument("--c", type=float, required=True, help="certificate parameter in (0,1)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_perturb)

    p = sub.add_parser("verify", help="evaluate inequality checks, print CSV rows")
    p.add_argument("check", help="a check name or 'all'")
    p.add_argument("family")
    p.add_argument("--samples", type=int, default=50, help="vertex pairs for distance_ratio")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edge-op", choices=("plus", "minus"), default=None)
    p.add_argument("--edge", default=None, help="edge endpoints as u,v (default: first valid)")
    p.add_argument("--c-dist", type=int, default=None, help="distance parameter for removal_poly")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="run a parameter sweep from a config file")
    p.add_argument("config", help="flat key=value config file")
    p.add_argument("-o", "--output", default=None, help="override the config output path")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PerronLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
