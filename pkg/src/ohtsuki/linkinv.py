"""Normalized Jones invariants X, Phi and their Taylor data at t = 1."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .errors import ConsistencyError, DiagramError
from .jones import jones_paper
from .linkdiag import LinkDiagram, cable, delete_components, smooth_crossing, switch_crossing
from .poly import HalfLaurent, SeriesU, expand_at_one, expand_in_h, series_inv

__all__ = [
    "PhiExpansion",
    "x_norm",
    "phi_series",
    "phi_i",
    "small_phi",
    "v_i",
    "DCCReport",
    "double_crossing_check",
    "CableFamily",
]

_TWO = HalfLaurent.t(1) + HalfLaurent.t(-1)  # t^1/2 + t^-1/2
_x_cache: dict[tuple[str, int], SeriesU] = {}


def _inv_two_power(k: int, N: int) -> SeriesU:
    return series_inv(expand_at_one(_TWO, N)) ** k if k else SeriesU.const(1, N)


def x_norm(L: LinkDiagram, N: int) -> SeriesU:
    """X = V / (t^1/2 + t^-1/2)^(#L-1) expanded at t = 1; X(empty) = 1."""
    if L.num_components == 0:
        return SeriesU.const(1, N)
    key = (L.key(), N)
    hit = _x_cache.get(key)
    if hit is not None:
        return hit
    V = expand_at_one(jones_paper(L), N)
    X = (V * _inv_two_power(L.num_components - 1, N)).truncate(N)
    _x_cache[key] = X
    return X


def _alternating_sum(xs: dict[frozenset, SeriesU], full: frozenset, N: int) -> SeriesU:
    total = SeriesU.zero(N)
    n = len(full)
    for S, X in xs.items():
        total = total + X if (n - len(S)) % 2 == 0 else total - X
    return total.truncate(N)


@dataclass
class PhiExpansion:
    link: LinkDiagram
    series: SeriesU
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return self.series.order

    def Phi(self, i: int) -> Fraction:
        if i not in self._cache:
            self._cache[i] = factorial(i) * self.series.coeff(i)
        return self._cache[i]


def phi_series(L: LinkDiagram, N: int) -> PhiExpansion:
    """Phi(L) = sum over sublinks L' of (-1)^(#L - #L') X(L'), to order N."""
    comps = range(L.num_components)
    xs = {}
    for r in range(L.num_components + 1):
        for S in combinations(comps, r):
            xs[frozenset(S)] = x_norm(delete_components(L, S), N)
    return PhiExpansion(L, _alternating_sum(xs, frozenset(comps), N))


def phi_i(L: LinkDiagram, i: int, N: int | None = None) -> Fraction:
    """i-th derivative of Phi at t = 1."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    return phi_series(L, max(i, N or 0)).Phi(i)


def _small_phi_from_series(S: SeriesU, mu: int, i: int) -> Fraction:
    return (-2) ** mu * S.coeff(mu + i)


def small_phi(L: LinkDiagram, i: int) -> Fraction:
    """phi_i = (-2)^#L / (#L+i)! * Phi_{#L+i}."""
    mu = L.num_components
    return _small_phi_from_series(phi_series(L, mu + i).series, mu, i)


def v_i(L: LinkDiagram, i: int) -> Fraction:
    """i-th h-derivative of V(L; e^h) at h = 0."""
    if L.num_components == 0:
        raise DiagramError("V of the empty link is not a Laurent polynomial")
    return expand_in_h(jones_paper(L), i).derivative_at_zero(i)


# ---------------------------------------------------------------------------
# double crossing change


@dataclass
class DCCReport:
    passed: bool
    order: int
    first_failing_order: int | None
    series_lhs: SeriesU
    series_rhs: SeriesU
    coefficient_checks: list[tuple[int, bool]]
    plus: int
    minus: int

    def summary(self) -> str:
        state = "pass" if self.passed else f"FAIL at order {self.first_failing_order}"
        return f"double crossing change at crossings ({self.plus},{self.minus}) to order {self.order}: {state}"


def double_crossing_check(L: LinkDiagram, c1: int, c2: int, N: int = 8) -> DCCReport:
    """Check the double crossing change identities on ``L`` at crossings ``c1``, ``c2``.

    The two crossings must join the same two distinct components and have
    opposite signs.  With L = L_{+-} (the positive one listed first),
    (t^2+t)[Phi(L+-) - Phi(L-+)] = (t-1)[Phi(L0-) - Phi(L-0)] is checked
    as a series identity, together with its coefficientwise consequence
    for phi_i.
    """
    n = len(L.crossings)
    if not (0 <= c1 < n and 0 <= c2 < n) or c1 == c2:
        raise DiagramError("two distinct crossing indices are required")
    x1, x2 = L.crossings[c1], L.crossings[c2]
    if x1.sign == x2.sign:
        raise DiagramError("the two crossings must have opposite signs")
    p1, p2 = sorted(L.crossing_components(c1)), sorted(L.crossing_components(c2))
    if p1 != p2 or p1[0] == p1[1]:
        raise DiagramError("both crossings must be between the same two distinct components")
    plus, minus = (c1, c2) if x1.sign > 0 else (c2, c1)

    L_pm = L
    L_mp = switch_crossing(switch_crossing(L, plus), minus)
    L_0m = smooth_crossing(L, plus)
    L_m0 = smooth_crossing(switch_crossing(L, plus), minus)

    M = N + 2
    P = {name: phi_series(D, M).series for name, D in
         (("pm", L_pm), ("mp", L_mp), ("0m", L_0m), ("m0", L_m0))}
    u = SeriesU.monomial(1, M)
    t2t = SeriesU({0: 2, 1: 3, 2: 1}, order=M)  # t^2 + t with t = 1 + u
    lhs = (t2t * (P["pm"] - P["mp"])).truncate(N)
    rhs = (u * (P["0m"] - P["m0"])).truncate(N)
    first = None
    for k in range(N + 1):
        if lhs.coeff(k) != rhs.coeff(k):
            first = k
            break

    # coefficientwise form for phi
    mu_pm = L_pm.num_components
    mu_0 = L_0m.num_components
    if L_m0.num_components != mu_0 or mu_0 != mu_pm - 1:
        raise ConsistencyError("smoothing a mixed crossing must merge two components")

    def ph(S, mu, i):
        return (-2) ** mu * S.coeff(mu + i) if mu + i >= 0 else Fraction(0)

    def dl(i):
        return ph(P["pm"], mu_pm, i) - ph(P["mp"], mu_pm, i)

    checks = []
    for i in range(1, N - mu_pm + 1):
        d0 = ph(P["0m"], mu_0, i) - ph(P["m0"], mu_0, i)
        rhs_i = -d0 - Fraction(3, 2) * dl(i - 1) - Fraction(1, 2) * dl(i - 2)
        checks.append((i, dl(i) == rhs_i))
    ok = first is None and all(c for _, c in checks)
    return DCCReport(ok, N, first, lhs, rhs, checks, plus, minus)


# ---------------------------------------------------------------------------
# sublinks of cables


class CableFamily:
    """Phi series of the sublinks of ``L^m`` with X memoized per selected component set."""

    def __init__(self, L: LinkDiagram, m: int, N: int):
        self.base = L
        self.m = m
        self.N = N
        self.cable = cable(L, m)
        self._x: dict[frozenset, SeriesU] = {}
        self._phi: dict[tuple, SeriesU] = {}

    def components(self, idx: Sequence[int]) -> frozenset:
        return frozenset(xi * self.m + p for xi, i in enumerate(idx) for p in range(i))

    def x(self, S: frozenset) -> SeriesU:
        if S not in self._x:
            self._x[S] = x_norm(delete_components(self.cable, S), self.N)
        return self._x[S]

    def phi(self, idx: Sequence[int]) -> SeriesU:
        idx = tuple(idx)
        if idx not in self._phi:
            full = self.components(idx)
            members = sorted(full)
            xs = {}
            for r in range(len(members) + 1):
                for S in combinations(members, r):
                    fs = frozenset(S)
                    xs[fs] = self.x(fs)
            self._phi[idx] = _alternating_sum(xs, full, self.N)
        return self._phi[idx]

    def small_phi(self, idx: Sequence[int], i: int) -> Fraction:
        return _small_phi_from_series(self.phi(idx), sum(idx), i)
