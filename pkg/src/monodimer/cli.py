"""Command-line interface.

Every run prints a JSON manifest (command, parameters, version, seed,
outputs, timing).  Numeric output uses 12 significant digits.  Exit
codes: 0 success, 1 failed verification, 2 parse/usage error, 3 size
cap exceeded.
"""

from __future__ import annotations

import csv
import importlib.metadata
import io
import json
import sys
import time

import click

from .asymptotics import rho_3, rho_d_x
from .closed_forms import z3_grid, zd_grid
from .errors import MonodimerError, SizeCapError
from .model import build_K, partition_bruteforce
from .plane_graph import canonical_orientation, is_pfaffian, load_graph_json, \
    pfaffian_orientation
from .poly import det_fraction_free, det_numeric
from .products import GridSpec, boustrophedon_grid
from .verify import run_suite

EXACT_VERTEX_CAP = 64
NUMERIC_VERTEX_CAP = 4096

try:
    VERSION = importlib.metadata.version("monodimer")
except importlib.metadata.PackageNotFoundError:  # running from a checkout
    VERSION = "0+unknown"


def _sig(v):
    """12-significant-digit float formatting."""
    return float(f"{float(v):.12g}")


def _manifest(command, params, outputs, t0, seed=None):
    return {
        "command": command,
        "params": params,
        "version": VERSION,
        "seed": seed,
        "outputs": outputs,
        "timing_s": round(time.time() - t0, 3),
    }


def _emit(manifest):
    click.echo(json.dumps(manifest, indent=2))


def _parse_dims(text):
    try:
        dims = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise click.UsageError(f"cannot parse dims {text!r}")
    if not dims or any(m < 1 for m in dims):
        raise click.UsageError(f"dims must be positive integers, got {text!r}")
    return dims


def _parse_at(text, d=None):
    """Parse ``x=1,a=1,b=2`` assignments; a/b/c alias a1/a2/a3 for grids."""
    alias = {"a": "a1", "b": "a2", "c": "a3"} if d is not None else {}
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise click.UsageError(f"bad assignment {part!r} in --at")
        name, _, val = part.partition("=")
        name = name.strip()
        name = alias.get(name, name)
        try:
            out[name] = float(val)
        except ValueError:
            raise click.UsageError(f"bad value in assignment {part!r}")
    return out


def _parse_weights(text, d):
    try:
        w = [float(p) for p in text.split(",")]
    except ValueError:
        raise click.UsageError(f"cannot parse weights {text!r}")
    if len(w) != d:
        raise click.UsageError(f"expected {d} weights, got {len(w)}")
    return w


@click.group()
@click.version_option(VERSION)
def main():
    """Monopole-dimer model computations on products of plane graphs."""


@main.command("pf")
@click.option("--graph", "graph_path", type=click.Path(exists=True),
              help="Graph JSON file ({n, coords, edges[, orientation]}).")
@click.option("--dims", "dims_text",
              help="Grid dimensions, e.g. 2,2,2 (weights a1..ad, x).")
@click.option("--exact", is_flag=True, help="Print the exact polynomial.")
@click.option("--at", "at_text",
              help="Evaluate numerically, e.g. x=1,a=1,b=1.")
@click.option("--brute", is_flag=True,
              help="Use exhaustive enumeration instead of the determinant.")
def cmd_pf(graph_path, dims_text, exact, at_text, brute):
    """Signed partition function of a graph or grid."""
    t0 = time.time()
    if (graph_path is None) == (dims_text is None):
        raise click.UsageError("give exactly one of --graph or --dims")
    if not exact and at_text is None:
        exact = True

    if dims_text is not None:
        dims = _parse_dims(dims_text)
        host = boustrophedon_grid(GridSpec(dims))
        n = host.n
        orientation = None
        d = len(dims)
        params = {"dims": list(dims)}
    else:
        try:
            g, orientation = load_graph_json(graph_path)
        except (MonodimerError, ValueError, OSError, KeyError) as exc:
            raise click.UsageError(f"cannot load graph: {exc}")
        if orientation is None:
            orientation = canonical_orientation(g)
            if not is_pfaffian(g, orientation):
                orientation = pfaffian_orientation(g)
        host, n, d = g, g.n, None
        params = {"graph": graph_path}

    try:
        outputs = {}
        if brute:
            poly = partition_bruteforce(host, orientation)
        else:
            if n > (EXACT_VERTEX_CAP if exact else NUMERIC_VERTEX_CAP):
                raise SizeCapError(
                    f"{n} vertices exceeds the cap "
                    f"({EXACT_VERTEX_CAP} exact / {NUMERIC_VERTEX_CAP} "
                    "numeric); use closed-form for large grids"
                )
            K = build_K(host, orientation)
            poly = None
            if exact:
                poly = det_fraction_free(K)
        if poly is not None:
            outputs["polynomial"] = str(poly)
            outputs["num_terms"] = poly.num_terms()
        if at_text is not None:
            assignment = _parse_at(at_text, d)
            if poly is not None:
                value = poly.evaluate(assignment)
            else:
                value = det_numeric(build_K(host, orientation), assignment)
            outputs["value"] = _sig(value)
            outputs["at"] = {k: _sig(v) for k, v in assignment.items()}
    except SizeCapError as exc:
        click.echo(f"size cap: {exc}", err=True)
        sys.exit(3)
    except (MonodimerError, KeyError) as exc:
        raise click.UsageError(str(exc))
    _emit(_manifest("pf", params, outputs, t0))


@main.command("verify")
@click.option("--suite", default="all",
              type=click.Choice(["grids", "signs", "asymptotics", "all"]))
@click.option("--max-dim", default=4, show_default=True)
@click.option("--trials", default=200, show_default=True)
@click.option("--seed", default=7, show_default=True)
def cmd_verify(suite, max_dim, trials, seed):
    """Run the cross-check suites; exit 1 if any check fails."""
    t0 = time.time()
    checks = run_suite(suite, max_dim=max_dim, trials=trials, seed=seed)
    for c in checks:
        c["max_residual"] = _sig(c["max_residual"])
    all_pass = all(c["status"] == "pass" for c in checks)
    _emit(_manifest(
        "verify",
        {"suite": suite, "max_dim": max_dim, "trials": trials},
        {"checks": checks, "all_pass": all_pass},
        t0, seed=seed,
    ))
    if not all_pass:
        sys.exit(1)


@main.command("closed-form")
@click.option("--dims", "dims_text", required=True,
              help="Grid dimensions, e.g. 10,10,10.")
@click.option("--weights", "weights_text",
              help="Edge weights per dimension (default all 1).")
@click.option("--x", default=1.0, show_default=True)
@click.option("--log", "log_only", is_flag=True,
              help="Report only the log value (never overflows).")
def cmd_closed_form(dims_text, weights_text, x, log_only):
    """Evaluate the grid partition function by its product formula."""
    t0 = time.time()
    dims = _parse_dims(dims_text)
    d = len(dims)
    weights = [1.0] * d if weights_text is None \
        else _parse_weights(weights_text, d)
    try:
        res = zd_grid(dims, weights, x)
        if d == 3:
            res3 = z3_grid(*dims, *weights, x)
            if abs(res3.log_value - res.log_value) \
                    > 1e-9 * max(1.0, abs(res.log_value)):
                raise MonodimerError("3D and general formulas disagree")
    except MonodimerError as exc:
        raise click.UsageError(str(exc))
    outputs = {
        "log_value": _sig(res.log_value),
        "log_space": True,
        "parity_case": res.parity_case,
    }
    if not log_only:
        outputs["value"] = _sig(res.value)
    _emit(_manifest(
        "closed-form",
        {"dims": list(dims), "weights": [_sig(w) for w in weights],
         "x": _sig(x)},
        outputs, t0,
    ))


def _density_row(report):
    row = {"d": report.d, "rho_x": _sig(report.rho_x)}
    for i, r in enumerate(report.rho_edges, 1):
        row[f"rho_a{i}"] = _sig(r)
    row["phi"] = _sig(report.phi)
    row["est_error"] = _sig(report.est_error)
    return row


def _write_csv(path, rows):
    with open(path, "w", newline="\n") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


@main.command("density")
@click.option("--dim", default=3, show_default=True)
@click.option("--weights", "weights_text",
              help="Edge weights per dimension (default all 1).")
@click.option("--x", default=1.0, show_default=True)
@click.option("--nodes", default=64, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(),
              help="Also write a one-row CSV.")
def cmd_density(dim, weights_text, x, nodes, csv_path):
    """Limiting monopole and edge densities of a d-dimensional grid."""
    t0 = time.time()
    weights = None if weights_text is None \
        else _parse_weights(weights_text, dim)
    try:
        if dim == 3:
            w = weights or [1.0, 1.0, 1.0]
            report = rho_3(*w, x, nodes=nodes)
        else:
            report = rho_d_x(dim, weights, x, nodes=nodes)
    except MonodimerError as exc:
        raise click.UsageError(str(exc))
    row = _density_row(report)
    if csv_path:
        _write_csv(csv_path, [row])
    _emit(_manifest(
        "density",
        {"dim": dim, "weights": weights, "x": _sig(x), "nodes": nodes},
        {"report": row, "method": report.method,
         "csv": csv_path},
        t0,
    ))


@main.command("density-sweep")
@click.option("--dims", "range_text", default="3..8", show_default=True,
              help="Dimension range, e.g. 3..11.")
@click.option("--x", default=1.0, show_default=True)
@click.option("--nodes", default=64, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(),
              help="Write (d, rho_x, est_error) rows.")
def cmd_density_sweep(range_text, x, nodes, csv_path):
    """Monopole density at unit weights across a range of dimensions."""
    t0 = time.time()
    try:
        lo, hi = (int(p) for p in range_text.split(".."))
    except ValueError:
        raise click.UsageError(f"cannot parse range {range_text!r}")
    if lo < 3 or hi < lo:
        raise click.UsageError("range must be within 3..N, increasing")
    rows = []
    for d in range(lo, hi + 1):
        report = rho_d_x(d, None, x, nodes=nodes)
        rows.append({"d": d, "rho_x": _sig(report.rho_x),
                     "est_error": _sig(report.est_error)})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["d", "rho_x", "est_error"],
                       lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    if csv_path:
        with open(csv_path, "w", newline="\n") as fh:
            fh.write(buf.getvalue())
    _emit(_manifest(
        "density-sweep",
        {"dims": range_text, "x": _sig(x), "nodes": nodes},
        {"rows": rows, "csv": csv_path},
        t0,
    ))


if __name__ == "__main__":
    main()
