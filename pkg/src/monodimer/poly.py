"""Sparse multivariate polynomials over arbitrary-precision integers.

Monomials are packed into a single int, 16 bits per variable, with the
first variable in the highest field so that comparing packed keys is the
same as comparing exponent tuples lexicographically.  Term order is
graded lex: total degree first, then the packed key.
"""

from __future__ import annotations

import heapq
import json
from fractions import Fraction

import numpy as np

from .errors import ExactArithmeticError

_SHIFT = 16
_FIELD = (1 << _SHIFT) - 1


def _pack(exps):
    key = 0
    for e in exps:
        if e < 0 or e > _FIELD:
            raise OverflowError("exponent out of range")
        key = (key << _SHIFT) | e
    return key


def _unpack(key, nvars):
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & _FIELD
        key >>= _SHIFT
    return tuple(out)


def _degree(key, nvars):
    d = 0
    for _ in range(nvars):
        d += key & _FIELD
        key >>= _SHIFT
    return d


class MPoly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms):
        # terms: dict packed-key -> nonzero int coefficient
        object.__setattr__(self, "vars", tuple(variables))
        object.__setattr__(self, "terms", dict(terms))

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c):
        c = int(c)
        return cls((), {0: c} if c else {})

    @classmethod
    def zero(cls):
        return cls.const(0)

    @classmethod
    def one(cls):
        return cls.const(1)

    @classmethod
    def var(cls, name):
        return cls((name,), {1: 1})

    @classmethod
    def monomial(cls, coeff, powers):
        """Build coeff * prod(v**e) from a {name: exponent} mapping."""
        coeff = int(coeff)
        names = tuple(sorted(n for n, e in powers.items() if e))
        if coeff == 0:
            return cls.zero()
        key = _pack(tuple(powers[n] for n in names))
        return cls(names, {key: coeff})

    @classmethod
    def from_terms(cls, variables, terms):
        """terms: {exponent tuple: coefficient}, variables need not be sorted."""
        order = sorted(range(len(variables)), key=lambda i: variables[i])
        names = tuple(variables[i] for i in order)
        packed = {}
        for exps, c in terms.items():
            c = int(c)
            if c == 0:
                continue
            key = _pack(tuple(exps[i] for i in order))
            packed[key] = packed.get(key, 0) + c
        return cls(names, {k: c for k, c in packed.items() if c})

    # -- variable alignment ------------------------------------------------

    def _remap(self, newvars):
        if newvars == self.vars:
            return self.terms
        pos = {v: i for i, v in enumerate(newvars)}
        n_old, n_new = len(self.vars), len(newvars)
        shifts = [(n_new - 1 - pos[v]) * _SHIFT for v in self.vars]
        out = {}
        for key, c in self.terms.items():
            exps = _unpack(key, n_old)
            nk = 0
            for e, s in zip(exps, shifts):
                nk |= e << s
            out[nk] = c
        return out

    @staticmethod
    def _aligned(a, b):
        if a.vars == b.vars:
            return a.vars, a.terms, b.terms
        newvars = tuple(sorted(set(a.vars) | set(b.vars)))
        return newvars, a._remap(newvars), b._remap(newvars)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = MPoly.const(other)
        elif not isinstance(other, MPoly):
            return NotImplemented
        nv, ta, tb = MPoly._aligned(self, other)
        out = dict(ta)
        for k, c in tb.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return MPoly(nv, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = MPoly.const(other)
        elif not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return MPoly.const(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MPoly.zero()
            return MPoly(self.vars, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        nv, ta, tb = MPoly._aligned(self, other)
        if len(ta) > len(tb):
            ta, tb = tb, ta
        out = {}
        get = out.get
        for ka, ca in ta.items():
            for kb, cb in tb.items():
                k = ka + kb
                s = get(k, 0) + ca * cb
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return MPoly(nv, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        _, ta, tb = MPoly._aligned(self, other)
        return ta == tb

    def __hash__(self):
        # hash on support restricted to used variables for alignment-safety
        used = self._used_vars()
        terms = self._project(used)
        return hash((used, tuple(sorted(terms.items()))))

    def _used_vars(self):
        nv = len(self.vars)
        used = [False] * nv
        for key in self.terms:
            for i, e in enumerate(_unpack(key, nv)):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def _project(self, names):
        pos = [self.vars.index(v) for v in names]
        nv = len(self.vars)
        out = {}
        for key, c in self.terms.items():
            exps = _unpack(key, nv)
            out[_pack(tuple(exps[i] for i in pos))] = c
        return out

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def total_degree(self):
        nv = len(self.vars)
        return max((_degree(k, nv) for k in self.terms), default=0)

    def num_terms(self):
        return len(self.terms)

    def terms_dict(self):
        """{exponent tuple: coefficient} over self.vars."""
        nv = len(self.vars)
        return {_unpack(k, nv): c for k, c in self.terms.items()}

    def leading(self):
        """(packed key, coeff) of the graded-lex leading term."""
        nv = len(self.vars)
        key = max(self.terms, key=lambda k: (_degree(k, nv), k))
        return key, self.terms[key]

    def evaluate(self, assignment):
        """Evaluate at {name: value}. Exact for int values, float otherwise."""
        nv = len(self.vars)
        vals = [assignment[v] for v in self.vars]
        total = 0
        for key, c in self.terms.items():
            term = c
            for v, e in zip(vals, _unpack(key, nv)):
                if e:
                    term *= v ** e
            total += term
        return total

    # -- printing / serialization -----------------------------------------

    def _sorted_keys(self):
        nv = len(self.vars)
        return sorted(self.terms, key=lambda k: (_degree(k, nv), k), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        nv = len(self.vars)
        parts = []
        for key in self._sorted_keys():
            c = self.terms[key]
            factors = []
            for v, e in zip(self.vars, _unpack(key, nv)):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MPoly({self})"

    def to_json(self):
        nv = len(self.vars)
        terms = [[self.terms[k], list(_unpack(k, nv))] for k in self._sorted_keys()]
        return {"vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json(cls, data):
        return cls.from_terms(
            tuple(data["vars"]), {tuple(e): c for c, e in data["terms"]}
        )

    def dumps(self):
        return json.dumps(self.to_json())


# -- exact division --------------------------------------------------------


def _leading_heap(terms, nvars):
    return [(-_degree(k, nvars), -k) for k in terms]


def exact_div(a: MPoly, b: MPoly) -> MPoly:
    """Exact quotient a / b; raises ExactArithmeticError if not exact."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero:
        return MPoly.zero()
    nv_names, ta, tb = MPoly._aligned(a, b)
    nv = len(nv_names)
    bkey, bc = max(((k, c) for k, c in tb.items()),
                   key=lambda kc: (_degree(kc[0], nv), kc[0]))
    bexp = _unpack(bkey, nv)
    rem = dict(ta)
    quo = {}
    heap = _leading_heap(rem, nv)
    heapq.heapify(heap)
    while rem:
        while heap:
            nd, nk = heap[0]
            k = -nk
            if k in rem:
                break
            heapq.heappop(heap)
        else:  # pragma: no cover - rem nonempty implies heap nonempty
            raise ExactArithmeticError("heap exhausted")
        c = rem[k]
        kexp = _unpack(k, nv)
        if any(e < f for e, f in zip(kexp, bexp)):
            raise ExactArithmeticError("division not exact (monomial)")
        qc, r = divmod(c, bc)
        if r:
            raise ExactArithmeticError("division not exact (coefficient)")
        qk = k - bkey
        quo[qk] = quo.get(qk, 0) + qc
        for k2, c2 in tb.items():
            kk = qk + k2
            s = rem.get(kk, 0) - qc * c2
            if s:
                if kk not in rem:
                    heapq.heappush(heap, (-_degree(kk, nv), -kk))
                rem[kk] = s
            elif kk in rem:
                del rem[kk]
    return MPoly(nv_names, quo)


# -- polynomial matrices ---------------------------------------------------


class PolyMatrix:
    """Square matrix of MPoly entries sharing one variable universe."""

    def __init__(self, entries):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("matrix must be square")
        names = sorted(set().union(*(set(e.vars) for row in entries for e in row))) \
            if n else []
        names = tuple(names)
        self.n = n
        self.vars = names
        self.entries = [
            [MPoly(names, e._remap(names)) for e in row] for row in entries
        ]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def map_entries(self, fn):
        return [[fn(e) for e in row] for row in self.entries]


def det_fraction_free(m: PolyMatrix) -> MPoly:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = m.n
    if n == 0:
        return MPoly.one()
    a = [[MPoly(m.vars, e.terms) for e in row] for row in m.entries]
    sign = 1
    prev = MPoly.one()
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero()
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = pivot * a[i][j] - aik * a[k][j]
                a[i][j] = exact_div(num, prev)
            a[i][k] = MPoly.zero()
        prev = pivot
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_numeric(m: PolyMatrix, assignment) -> float:
    """Floating-point determinant of the matrix evaluated at a point.

    Returns 0.0 for matrices singular to working precision.
    """
    arr = np.array(
        [[float(e.evaluate(assignment)) for e in row] for row in m.entries],
        dtype=float,
    )
    if m.n == 0:
        return 1.0
    return float(np.linalg.det(arr))


# -- perfect-power extraction ---------------------------------------------


def _int_nth_root(c, r):
    """Exact integer r-th root of c, or None."""
    if c == 0:
        return 0
    neg = c < 0
    if neg and r % 2 == 0:
        return None
    m = -c if neg else c
    root = round(m ** (1.0 / r))
    for cand in (root - 1, root, root + 1):
        if cand >= 0 and cand ** r == m:
            return -cand if neg else cand
    return None


def _frac_pow(terms, r, nv):
    """Power of a Fraction-coefficient packed dict by repeated squaring."""
    def mul(ta, tb):
        out = {}
        for ka, ca in ta.items():
            for kb, cb in tb.items():
                k = ka + kb
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return out

    result = {0: Fraction(1)}
    base = dict(terms)
    while r:
        if r & 1:
            result = mul(result, base)
        r >>= 1
        if r:
            base = mul(base, base)
    return result


def _prime_root(terms, r, nv):
    """r-th root of a Fraction-coefficient packed dict, or None."""
    if not terms:
        return {}

    def lead(t):
        return max(t, key=lambda k: (_degree(k, nv), k))

    lk = lead(terms)
    lc = terms[lk]
    exps = _unpack(lk, nv)
    if any(e % r for e in exps):
        return None
    num = _int_nth_root(lc.numerator, r)
    den = _int_nth_root(lc.denominator, r)
    if num is None or den is None:
        return None
    qlk = _pack(tuple(e // r for e in exps))
    q = {qlk: Fraction(num, den)}
    head_c = r * q[qlk] ** (r - 1)
    head_k = qlk * (r - 1)
    max_steps = 8 * len(terms) + 16
    for _ in range(max_steps):
        qr = _frac_pow(q, r, nv)
        rem = dict(terms)
        for k, c in qr.items():
            s = rem.get(k, 0) - c
            if s:
                rem[k] = s
            elif k in rem:
                del rem[k]
        if not rem:
            return q
        mk = lead(rem)
        mexp = _unpack(mk, nv)
        hexp = _unpack(head_k, nv)
        if any(e < f for e, f in zip(mexp, hexp)):
            return None
        tk = mk - head_k
        if (_degree(tk, nv), tk) >= (_degree(qlk, nv), qlk):
            return None
        q[tk] = q.get(tk, 0) + rem[mk] / head_c
        if q[tk] == 0:
            del q[tk]
    return None


def nth_root_poly(p: MPoly, r: int):
    """Return q with q**r == p if one exists with rational coefficients.

    Returns None when p is not a perfect r-th power.  The result is only
    representable (and returned) when its coefficients are integers.
    """
    r = int(r)
    if r < 1:
        raise ValueError("root order must be positive")
    if r == 1:
        return p
    nv = len(p.vars)
    terms = {k: Fraction(c) for k, c in p.terms.items()}
    remaining = r
    f = 2
    while remaining > 1:
        while remaining % f == 0:
            terms = _prime_root(terms, f, nv)
            if terms is None:
                return None
            remaining //= f
        f += 1 if f == 2 else 2
    out = {}
    for k, c in terms.items():
        if c.denominator != 1:
            return None
        out[k] = c.numerator
    q = MPoly(p.vars, out)
    if q ** r == p:
        return q
    return None
