"""Jones polynomial by a frontier state sum, and the Conway polynomial.

The Kauffman bracket is evaluated by adding crossings one at a time and
tracking, for every partial smoothing, how the open edge ends are matched
up.  Cables of small knots keep the frontier narrow enough that this is far
cheaper than the 2^c expansion.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from fractions import Fraction

from .errors import ConsistencyError, DiagramError
from .linkdiag import LinkDiagram, smooth_crossing, switch_crossing
from .poly import HalfLaurent

__all__ = [
    "bracket",
    "jones_std",
    "jones_paper",
    "conway_std",
    "conway_paper",
    "conway_skein",
    "alexander",
    "crossing_order",
    "bracket_states",
    "jones_states",
]

IntPoly = dict  # A-exponent -> int


def _padd(acc: IntPoly, p: IntPoly, shift: int, sign: int = 1) -> None:
    for e, c in p.items():
        k = e + shift
        v = acc.get(k, 0) + sign * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _times_delta(p: IntPoly, k: int) -> IntPoly:
    # multiply by (-A^2 - A^-2)^k
    for _ in range(k):
        q: IntPoly = {}
        _padd(q, p, 2, -1)
        _padd(q, p, -2, -1)
        p = q
    return p


def crossing_order(L: LinkDiagram) -> list[int]:
    """Greedy sweep order: next crossing shares the most labels with the frontier."""
    n = len(L.crossings)
    if not n:
        return []
    where: dict[int, list[int]] = defaultdict(list)
    for k, x in enumerate(L.crossings):
        for e in x.labels:
            where[e].append(k)
    shared = [0] * n
    done = [False] * n
    order = []
    openl: set[int] = set()
    for _ in range(n):
        best = -1
        for k in range(n):
            if not done[k] and (best < 0 or shared[k] > shared[best]):
                best = k
        done[best] = True
        order.append(best)
        for e in L.crossings[best].labels:
            if e in openl:
                openl.discard(e)
            else:
                openl.add(e)
            for j in where[e]:
                if j != best:
                    shared[j] += 1
    return order


def _bracket_raw(L: LinkDiagram) -> IntPoly:
    """Sum over states of A^(#A - #B) * delta^(#loops), loops counted in full."""
    states: dict[tuple, IntPoly] = {(): {0: 1}}
    for k in crossing_order(L):
        x = L.crossings[k]
        new: dict[tuple, IntPoly] = {}
        smoothings = (((x.a, x.b), (x.c, x.d)), 1), (((x.a, x.d), (x.b, x.c)), -1)
        for state, poly in states.items():
            partner = {}
            for u, v in state:
                partner[u] = v
                partner[v] = u
            for pairs, wt in smoothings:
                p = dict(partner)
                loops = 0
                for u, v in pairs:
                    # join the open ends u and v through the new arc
                    if u == v:
                        # both slots carry the same edge: a kink closes on itself
                        loops += 1
                        continue
                    pu = p.pop(u, None)
                    pv = p.pop(v, None)
                    if pu is None and pv is None:
                        p[u] = v
                        p[v] = u
                    elif pu is None:
                        if pv == u:
                            loops += 1
                        else:
                            p[u] = pv
                            p[pv] = u
                    elif pv is None:
                        p[v] = pu
                        p[pu] = v
                    elif pu == v:
                        loops += 1
                    else:
                        p[pu] = pv
                        p[pv] = pu
                key = tuple(sorted((a, b) for a, b in p.items() if a < b))
                acc = new.setdefault(key, {})
                _padd(acc, _times_delta(poly, loops), wt)
        states = {s: q for s, q in new.items() if q}
    total = states.get((), {})
    if len(states) > 1 or (states and () not in states):
        raise ConsistencyError("open edges left after the sweep")
    return _times_delta(total, L.loops)


def _div_delta(p: IntPoly) -> IntPoly:
    # p / (-A^2 - A^-2) = -A^2 p / (1 + A^4)
    r = {e + 2: -c for e, c in p.items()}
    q: IntPoly = {}
    while r:
        e = min(r)
        c = r[e]
        q[e] = c
        _padd(r, {0: c}, e, -1)
        _padd(r, {0: c}, e + 4, -1)
    return q


def bracket(L: LinkDiagram) -> dict[int, int]:
    """Normalized Kauffman bracket (unknot = 1) as an A-exponent map."""
    if L.num_components == 0:
        raise DiagramError("the bracket of the empty link is not a Laurent polynomial")
    raw = _bracket_raw(L)
    q = _div_delta(raw)
    return q


def bracket_states(L: LinkDiagram) -> dict[int, int]:
    """Normalized bracket by summing all 2^c smoothings (slow reference)."""
    from itertools import product as _product

    if L.num_components == 0:
        raise DiagramError("the bracket of the empty link is not a Laurent polynomial")
    labels = sorted({e for x in L.crossings for e in x.labels})
    raw: IntPoly = {}
    for choice in _product((0, 1), repeat=len(L.crossings)):
        parent = {e: e for e in labels}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        def join(u, v):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv

        for x, ch in zip(L.crossings, choice):
            if ch == 0:
                join(x.a, x.b)
                join(x.c, x.d)
            else:
                join(x.a, x.d)
                join(x.b, x.c)
        loops = len({find(e) for e in labels}) + L.loops
        _padd(raw, _times_delta({0: 1}, loops), choice.count(0) - choice.count(1))
    return _div_delta(raw)


def jones_states(L: LinkDiagram) -> HalfLaurent:
    """Usual Jones polynomial from :func:`bracket_states`."""
    return _normalize(bracket_states(L), L.writhe)


def _normalize(br: dict[int, int], w: int) -> HalfLaurent:
    sign = -1 if w % 2 else 1
    terms = {}
    for e, c in br.items():
        k = e - 3 * w
        if k % 2:
            raise ConsistencyError("odd A-exponent in the normalized bracket")
        terms[-k // 2] = Fraction(sign * c)
    return HalfLaurent(terms)


_jones_cache: dict[str, HalfLaurent] = {}
_jones_lock = threading.Lock()


def jones_std(L: LinkDiagram) -> HalfLaurent:
    """The usual Jones polynomial, (-A^3)^(-w) <L> at A = t^(-1/4)."""
    key = L.key()
    with _jones_lock:
        hit = _jones_cache.get(key)
    if hit is not None:
        return hit
    V = _normalize(bracket(L), L.writhe)
    with _jones_lock:
        _jones_cache[key] = V
    return V


def jones_paper(L: LinkDiagram) -> HalfLaurent:
    """Jones polynomial in the t -> 1/t, (-1)^(#L-1) normalization used for X and Phi."""
    V = jones_std(L).invert_variable()
    return V if L.num_components % 2 else -V


# ---------------------------------------------------------------------------
# Conway polynomial


def _z_power(k: int) -> HalfLaurent:
    return (HalfLaurent.t(1) - HalfLaurent.t(-1)) ** k


def _alexander_to_conway(delta: dict[int, int]) -> dict[int, int]:
    """Symmetrize an Alexander polynomial and rewrite it in z = t^1/2 - t^-1/2.

    Returns z-degree -> coefficient.
    """
    lo, hi = min(delta), max(delta)
    p = HalfLaurent({2 * e - (lo + hi): Fraction(c) for e, c in delta.items()})
    out = {}
    while not p.is_zero():
        top = p.max_exp()
        if top < 0:
            raise ConsistencyError("Alexander polynomial is not symmetric")
        c = p.coeff(top)
        if c.denominator != 1:
            raise ConsistencyError("non-integral Conway coefficient")
        out[top] = int(c)
        p = p - _z_power(top) * HalfLaurent.const(c)
    return out


def _fox_matrix(L: LinkDiagram):
    uf_parent: dict[int, int] = {}

    def find(x):
        while uf_parent.get(x, x) != x:
            x = uf_parent[x]
        return x

    for x in L.crossings:
        ra, rb = find(x.over_in), find(x.over_out)
        if ra != rb:
            uf_parent[max(ra, rb)] = min(ra, rb)
    arcs = sorted({find(e) for comp in L.components for e in comp})
    col = {a: i for i, a in enumerate(arcs)}
    rows = []
    for x in L.crossings:
        row = defaultdict(lambda: defaultdict(int))
        a, o, c = col[find(x.a)], col[find(x.over_in)], col[find(x.c)]
        if x.sign > 0:
            row[a][1] += 1
            row[o][0] += 1
            row[o][1] -= 1
            row[c][0] -= 1
        else:
            row[a][0] += 1
            row[o][1] += 1
            row[o][0] -= 1
            row[c][1] -= 1
        rows.append(row)
    return rows, len(arcs)


def alexander(L: LinkDiagram) -> dict[int, int]:
    """An Alexander polynomial (t-exponent -> int), up to sign and powers of t; {} if zero."""
    from sympy import Poly, symbols
    from sympy.polys.domains import ZZ
    from sympy.polys.matrices import DomainMatrix

    if L.num_components == 0:
        return {}
    if L.loops and L.num_components > 1:
        return {}
    if not L.crossings:
        return {0: 1}
    rows, ncols = _fox_matrix(L)
    nrows = len(rows)
    drop_rows = nrows - (ncols - 1)
    if drop_rows < 0:
        return {}
    t = symbols("t")
    R = ZZ[t]
    keep_rows = rows[drop_rows:]
    mat = []
    for row in keep_rows:
        line = []
        for j in range(1, ncols):
            coeffs = row.get(j, {})
            expr = sum(c * t**e for e, c in coeffs.items()) if coeffs else 0
            line.append(R.from_sympy(expr) if expr != 0 else R.zero)
        mat.append(line)
    n = ncols - 1
    if n == 0:
        return {0: 1}
    det = DomainMatrix(mat, (n, n), R).det()
    poly = Poly(R.to_sympy(det), t)
    if poly.is_zero:
        return {}
    return {m[0]: int(c) for m, c in zip(poly.monoms(), poly.coeffs())}


def _eval_conway_at_minus_2i(conway: dict[int, int]) -> complex:
    # z = -2i, exact over the Gaussian integers as a (re, im) pair
    re, im = 0, 0
    for e, c in conway.items():
        mag = c * (2**e)
        r = e % 4  # (-i)^e
        vals = {0: (1, 0), 1: (0, -1), 2: (-1, 0), 3: (0, 1)}[r]
        re += mag * vals[0]
        im += mag * vals[1]
    return (re, im)


def _eval_jones_at_minus_1(V: HalfLaurent) -> tuple:
    # t^(1/2) = i
    re, im = Fraction(0), Fraction(0)
    for e, c in V.items():
        vals = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}[e % 4]
        re += c * vals[0]
        im += c * vals[1]
    return (re, im)


_conway_cache: dict[str, HalfLaurent] = {}


def conway_std(L: LinkDiagram) -> HalfLaurent:
    """Usual Conway polynomial (z-exponent stored in half-units) via Fox calculus."""
    key = L.key()
    if key in _conway_cache:
        return _conway_cache[key]
    delta = alexander(L)
    if not delta:
        out = HalfLaurent({})
    else:
        cw = _alexander_to_conway(delta)
        if L.num_components == 1:
            sign = 1 if cw.get(0, 0) > 0 else -1
        else:
            gz = _eval_conway_at_minus_2i(cw)
            gv = _eval_jones_at_minus_1(jones_std(L))
            if gz == (0, 0) or gv == (0, 0):
                out = conway_skein(L)
                _conway_cache[key] = out
                return out
            if gz == gv:
                sign = 1
            elif gz == (-gv[0], -gv[1]):
                sign = -1
            else:
                raise ConsistencyError("Conway and Jones disagree at t = -1")
        out = HalfLaurent({2 * k: Fraction(sign * c) for k, c in cw.items()})
        if L.num_components == 1 and out.coeff(0) != 1:
            raise ConsistencyError("knot Conway polynomial without constant term 1")
    _conway_cache[key] = out
    return out


def conway_paper(L: LinkDiagram) -> HalfLaurent:
    """Conway polynomial in the z -> -z normalization."""
    return _negate_z(conway_std(L))


def _negate_z(p: HalfLaurent) -> HalfLaurent:
    return HalfLaurent({k: (c if (k // 2) % 2 == 0 else -c) for k, c in p.items()})


def _first_bad_crossing(L: LinkDiagram) -> int | None:
    head = {}
    for k, x in enumerate(L.crossings):
        head.setdefault(x.a, []).append((k, "under"))
        head.setdefault(x.over_in, []).append((k, "over"))
    seen: set[int] = set()
    for comp in L.components:
        for e in comp:
            for k, role in head.get(e, ()):
                if k in seen:
                    continue
                seen.add(k)
                if role == "under":
                    return k
    return None


def conway_skein(L: LinkDiagram, _memo=None) -> HalfLaurent:
    """Usual Conway polynomial by the skein relation on descending diagrams (oracle)."""
    memo = {} if _memo is None else _memo
    key = L.key()
    if key in memo:
        return memo[key]
    k = _first_bad_crossing(L)
    if k is None:
        out = HalfLaurent.const(1) if L.num_components == 1 else HalfLaurent({})
    else:
        s = L.crossings[k].sign
        z = HalfLaurent.t(2)
        rest = conway_skein(switch_crossing(L, k), memo)
        sm = conway_skein(smooth_crossing(L, k), memo)
        out = rest + z * sm if s > 0 else rest - z * sm
    memo[key] = out
    return out
