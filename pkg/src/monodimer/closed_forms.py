"""Product formulas for grid partition functions.

Everything is evaluated in log space so that large grids do not
overflow; results carry both the value and its natural log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .poly import MPoly

__all__ = [
    "FormulaResult",
    "kasteleyn_2d_dimers",
    "S_factor",
    "T_factor",
    "z2_grid",
    "z3_grid",
    "zd_grid",
    "hypercube_pf",
]


@dataclass(frozen=True)
class FormulaResult:
    """Value of a product formula, with its log and a case tag."""

    log_value: float
    parity_case: str = ""
    factor_logs: tuple = ()

    @property
    def value(self):
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf


def _check_positive(**kw):
    for name, v in kw.items():
        if v <= 0:
            raise DomainError(f"{name} must be positive, got {v}")


def kasteleyn_2d_dimers(m, n, a=1.0, b=1.0):
    """Number (weighted) of dimer covers of an m x n grid, both sides even."""
    m, n = int(m), int(n)
    if m < 2 or n < 2 or m % 2 or n % 2:
        raise DomainError("both grid sides must be even and at least 2")
    log = (m * n / 2) * math.log(2.0)
    for i in range(1, m // 2 + 1):
        ci = math.cos(i * math.pi / (m + 1)) ** 2
        for j in range(1, n // 2 + 1):
            cj = math.cos(j * math.pi / (n + 1)) ** 2
            log += math.log(a * a * ci + b * b * cj)
    return FormulaResult(log)


def _log_S(n, c, x):
    """log of the half-spectrum path factor of length n."""
    s = 0.0
    for k in range(1, n // 2 + 1):
        s += math.log(x * x + 4 * c * c * math.cos(k * math.pi / (n + 1)) ** 2)
    return s


def _log_T(n, l, c, a, x):
    """log of the double half-spectrum factor over an n x l block."""
    s = 0.0
    for j in range(1, n // 2 + 1):
        cj = math.cos(j * math.pi / (n + 1)) ** 2
        for k in range(1, l // 2 + 1):
            ck = math.cos(k * math.pi / (l + 1)) ** 2
            s += math.log(x * x + 4 * a * a * ck + 4 * c * c * cj)
    return s


def S_factor(n, c, x):
    """Half-spectrum path factor: product over k <= n//2 of
    x^2 + 4 c^2 cos^2(k pi / (n+1))."""
    return math.exp(_log_S(n, c, x))


def T_factor(n, l, a, b, x):
    """Product over j <= n//2, k <= l//2 of
    x^2 + 4 a^2 cos^2(k pi/(l+1)) + 4 b^2 cos^2(j pi/(n+1))."""
    return math.exp(_log_T(n, l, b, a, x))


def z2_grid(l, m, a=1.0, b=1.0, x=1.0):
    """Partition function of the l x m grid (2D specialisation)."""
    return zd_grid((l, m), (a, b), x)


def z3_grid(l, m, n, a=1.0, b=1.0, c=1.0, x=1.0):
    """Partition function of the l x m x n grid via the explicit
    eight-case spectral product."""
    l, m, n = int(l), int(m), int(n)
    _check_positive(l=l, m=m, n=n)
    if a < 0 or b < 0 or c < 0:
        raise DomainError("edge weights must be nonnegative")

    main = 0.0
    for k in range(1, l // 2 + 1):
        ck = math.cos(k * math.pi / (l + 1)) ** 2
        for s in range(1, m // 2 + 1):
            cs = math.cos(s * math.pi / (m + 1)) ** 2
            for j in range(1, n // 2 + 1):
                cj = math.cos(j * math.pi / (n + 1)) ** 2
                main += math.log(
                    x * x + 4 * a * a * ck + 4 * b * b * cs + 4 * c * c * cj
                )
    log = 4.0 * main

    case = ("o" if l % 2 else "e") + ("o" if m % 2 else "e") \
        + ("o" if n % 2 else "e")
    extra = 0.0
    if case == "eee":
        pass
    elif case == "oee":
        extra = 2 * _log_T(n, m, c, b, x)
    elif case == "eoe":
        extra = 2 * _log_T(n, l, c, a, x)
    elif case == "ooe":
        extra = 2 * _log_T(n, m, c, b, x) + 2 * _log_T(n, l, c, a, x) \
            + _log_S(n, c, x)
    elif case == "eeo":
        extra = 2 * _log_T(m, l, b, a, x)
    elif case == "oeo":
        extra = 2 * _log_T(n, m, c, b, x) + 2 * _log_T(m, l, b, a, x) \
            + _log_S(m, b, x)
    elif case == "eoo":
        extra = 2 * _log_T(n, l, c, a, x) + 2 * _log_T(m, l, b, a, x) \
            + _log_S(l, a, x)
    else:  # ooo
        if x <= 0:
            raise DomainError("x must be positive for all-odd dimensions")
        extra = math.log(x) \
            + 2 * _log_T(n, m, c, b, x) + 2 * _log_T(n, l, c, a, x) \
            + 2 * _log_T(m, l, b, a, x) \
            + _log_S(n, c, x) + _log_S(m, b, x) + _log_S(l, a, x)
    return FormulaResult(log + extra, parity_case=case, factor_logs=(log, extra))


def zd_grid(dims, weights=None, x=1.0):
    """Partition function of a d-dimensional grid by the general
    subset-product formula.

    ``dims`` are the side lengths, ``weights`` the per-direction edge
    weights (default all 1).  Odd sides are handled by the half-spectrum
    subset products; each subset factor enters with multiplicity
    2^(d-1-|S|).
    """
    dims = [int(m) for m in dims]
    d = len(dims)
    if d < 1 or any(m < 1 for m in dims):
        raise DomainError(f"invalid grid dims {dims}")
    if weights is None:
        weights = [1.0] * d
    weights = [float(w) for w in weights]
    if len(weights) != d:
        raise DomainError("one edge weight per dimension")
    if any(w < 0 for w in weights):
        raise DomainError("edge weights must be nonnegative")

    # odd dimensions first; the formula's subsets range over them
    order = sorted(range(d), key=lambda i: (dims[i] % 2 == 0, i))
    dims = [dims[i] for i in order]
    weights = [weights[i] for i in order]
    n_odd = sum(1 for m in dims if m % 2)

    def axis_terms(i):
        m = dims[i]
        w = weights[i]
        return [4 * w * w * math.cos(k * math.pi / (m + 1)) ** 2
                for k in range(1, m // 2 + 1)]

    spectra = [axis_terms(i) for i in range(d)]
    log = 0.0
    factor_logs = []
    for mask in range(1 << n_odd):
        active = [i for i in range(d)
                  if i >= n_odd or not (mask >> i) & 1]
        if not active:
            # the all-odd-dimensions subset contributes a bare x
            if x <= 0:
                raise DomainError("x must be positive for all-odd dimensions")
            t = math.log(x)
            mult = 1
        elif any(not spectra[i] for i in active):
            # a side of length 1 has an empty half-spectrum, so the whole
            # subset product is empty
            t = 0.0
            mult = 2 ** (d - 1 - bin(mask).count("1"))
        else:
            t = 0.0
            idx = [0] * len(active)
            while True:
                s = x * x
                for pos, i in enumerate(active):
                    s += spectra[i][idx[pos]]
                t += math.log(s)
                pos = len(active) - 1
                while pos >= 0:
                    idx[pos] += 1
                    if idx[pos] < len(spectra[active[pos]]):
                        break
                    idx[pos] = 0
                    pos -= 1
                if pos < 0:
                    break
            mult = 2 ** (d - 1 - bin(mask).count("1"))
        log += mult * t
        factor_logs.append(mult * t)
    case = "".join("o" if m % 2 else "e" for m in dims)
    return FormulaResult(log, parity_case=case, factor_logs=tuple(factor_logs))


def hypercube_pf(d, weights=None, vertex_weight="x"):
    """Exact polynomial partition function of the d-dimensional hypercube:
    (x^2 + a1^2 + ... + ad^2)^(2^(d-1))."""
    d = int(d)
    if d < 1:
        raise DomainError("dimension must be at least 1")
    if weights is None:
        weights = [f"a{i}" for i in range(1, d + 1)]
    if len(weights) != d:
        raise DomainError("one edge weight per dimension")
    base = MPoly.var(vertex_weight) ** 2
    for w in weights:
        p = MPoly.var(w) if isinstance(w, str) else MPoly.const(w)
        base = base + p * p
    return base ** (2 ** (d - 1))
