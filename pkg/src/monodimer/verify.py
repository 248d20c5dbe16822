"""Self-check suites: each check returns a status and a max residual.

These back the ``verify`` CLI subcommand and double as integration
tests.  Every check compares two independent routes to the same
quantity (enumeration vs determinant, closed form vs determinant,
orientation A vs orientation B, elliptic vs direct quadrature).
"""

from __future__ import annotations

import itertools
import math
import random

import numpy as np

from .asymptotics import heuman_lambda, rho_3, rho_d_x
from .closed_forms import kasteleyn_2d_dimers, z3_grid, zd_grid
from .fixtures import example_plane_graph
from .model import (
    _as_host,
    build_K,
    enumerate_even_loops,
    loop_sign_from_orientation,
    partition_bruteforce,
    sign_of_loop_projections,
)
from .plane_graph import canonical_orientation, path_graph, pfaffian_orientation
from .poly import det_fraction_free, det_numeric, nth_root_poly
from .products import GridSpec, boustrophedon_grid, oriented_cartesian_product

__all__ = ["run_suite", "SUITES"]


def _check(name, residual, tol):
    ok = residual <= tol
    return {"check": name, "status": "pass" if ok else "fail",
            "max_residual": residual}


def _bool_check(name, ok):
    return {"check": name, "status": "pass" if ok else "fail",
            "max_residual": 0.0 if ok else 1.0}


# -- grids suite -----------------------------------------------------------


def _suite_grids(max_dim=4, **_):
    out = []

    # enumeration vs determinant, example graph and small grids
    g = example_plane_graph()
    o = canonical_orientation(g)
    ok = partition_bruteforce(g, o) == det_fraction_free(build_K(g, o))
    dims_list = [d for r in range(1, min(max_dim, 3) + 1)
                 for d in itertools.product([1, 2, 3], repeat=r)
                 if math.prod(d) <= 12]
    for dims in dims_list:
        p = boustrophedon_grid(GridSpec(dims))
        ok = ok and partition_bruteforce(p) == det_fraction_free(build_K(p))
    out.append(_bool_check("enumeration equals determinant", ok))

    # closed forms vs numeric determinant
    rng = random.Random(0)
    resid = 0.0
    for r in range(1, max_dim + 1):
        for dims in itertools.product([2, 3], repeat=r):
            if math.prod(dims) > 64:
                continue
            w = [rng.uniform(0.5, 1.5) for _ in dims]
            x = rng.uniform(0.5, 1.5)
            p = boustrophedon_grid(GridSpec(dims))
            vals = {f"a{i}": w[i - 1] for i in range(1, r + 1)}
            vals["x"] = x
            dv = det_numeric(build_K(p), vals)
            zv = zd_grid(dims, w, x).value
            resid = max(resid, abs(dv - zv) / abs(dv))
            if r == 3:
                z3 = z3_grid(*dims, *w, x).value
                resid = max(resid, abs(dv - z3) / abs(dv))
    out.append(_check("closed form equals determinant", resid, 1e-8))

    # associativity of the oriented product
    p2, p3 = path_graph(2), path_graph(3)
    o2, o3 = canonical_orientation(p2), canonical_orientation(p3)
    left = boustrophedon_grid(GridSpec((2, 3, 2)))
    right = oriented_cartesian_product([(p2, o2), (p3, o3), (p2, o2)])
    da = det_fraction_free(build_K(left))
    db = det_fraction_free(build_K(right))
    out.append(_bool_check("oriented product associativity", da == db))

    # hypercube perfect power
    q3 = boustrophedon_grid(GridSpec((2, 2, 2)))
    z = det_fraction_free(build_K(q3))
    out.append(_bool_check("hypercube fourth power",
                           nth_root_poly(z, 4) is not None))

    # dimer count of the 4x4 grid
    resid = abs(kasteleyn_2d_dimers(4, 4).value - 36.0)
    out.append(_check("dimer product formula 4x4", resid, 1e-6))
    return out


# -- signs suite -----------------------------------------------------------


def _suite_signs(trials=200, seed=7, **_):
    out = []
    rng = random.Random(seed)
    nprng = np.random.default_rng(seed)

    # the two sign routes agree on every even loop (exhaustive, small)
    ok = True
    for dims in [(2, 2), (3, 2), (2, 2, 2)]:
        p = boustrophedon_grid(GridSpec(dims))
        host = _as_host(p)
        lab2t = {lab: t for t, lab in p.label.items()}
        for loop in enumerate_even_loops(host):
            tl = [lab2t[v] for v in loop]
            if sign_of_loop_projections(p, tl) \
                    != loop_sign_from_orientation(p, tl):
                ok = False
    out.append(_bool_check("projection sign equals orientation sign", ok))

    # random Pfaffian factor orientations leave the determinant unchanged
    resid = 0.0
    pool = [(3, 3), (2, 3, 2), (2, 2, 3)]
    for _ in range(trials):
        dims = rng.choice(pool)
        factors = [path_graph(m) for m in dims]
        orients = [pfaffian_orientation(g, rng=nprng) for g in factors]
        p = boustrophedon_grid(GridSpec(dims))
        q = oriented_cartesian_product(list(zip(factors, orients)))
        vals = {f"a{i}": rng.uniform(0.5, 1.5)
                for i in range(1, len(dims) + 1)}
        vals["x"] = rng.uniform(0.5, 1.5)
        dp = det_numeric(build_K(p), vals)
        dq = det_numeric(build_K(q), vals)
        resid = max(resid, abs(dp - dq) / abs(dp))
    out.append(_check("orientation independence", resid, 1e-9))
    return out


# -- asymptotics suite -----------------------------------------------------


def _suite_asymptotics(**_):
    out = []
    r3 = rho_3(1, 1, 1, 1)
    out.append(_check("rho3x matches 0.1705", abs(r3.rho_x - 0.1705), 1e-3))
    resid = abs(r3.rho_x + sum(r3.rho_edges) - 1.0)
    r4 = rho_d_x(4)
    resid = max(resid, abs(r4.rho_x + sum(r4.rho_edges) - 1.0))
    out.append(_check("density sum rule", resid, 1e-5))
    resid = max(abs(float(heuman_lambda(math.pi / 2, y)) - 1.0)
                for y in (0.2, 0.7, 1.2, 1.5))
    out.append(_check("heuman lambda at full amplitude", resid, 1e-10))
    return out


SUITES = {
    "grids": _suite_grids,
    "signs": _suite_signs,
    "asymptotics": _suite_asymptotics,
}


def run_suite(name, **kwargs):
    """Run one suite (or ``all``); returns a list of check dicts."""
    if name == "all":
        results = []
        for fn in SUITES.values():
            results.extend(fn(**kwargs))
        return results
    try:
        fn = SUITES[name]
    except KeyError as exc:
        raise ValueError(f"unknown suite {name!r}; "
                         f"one of {sorted(SUITES)} or 'all'") from exc
    return fn(**kwargs)
