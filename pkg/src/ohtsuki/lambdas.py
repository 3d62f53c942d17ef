"""Ohtsuki's invariants lambda_n from unit-framed algebraically split surgery links."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator

from .errors import ConsistencyError, DiagramError, ResourceLimitError
from .linkdiag import (
    LinkDiagram,
    SurgeryPresentation,
    cable_crossing_count,
    kirby_knot_surgery,
    mirror,
)
from .linkinv import CableFamily, phi_series, v_i
from .residues import tables

__all__ = [
    "LambdaResult",
    "DEFAULT_MAX_CROSSINGS",
    "crossing_budget",
    "lambda1",
    "lambda2",
    "lambda_n",
    "lambda2_knot_surgery",
    "knot_surgery_report",
    "reverse_orientation_lambda2",
    "distinguish",
]

DEFAULT_MAX_CROSSINGS = 64
BUDGET_ENV = "OHTSUKI_MAX_CROSSINGS"


def crossing_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DiagramError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_CROSSINGS


def _guard(L: LinkDiagram, m: int, budget: int | None) -> None:
    need = cable_crossing_count(L, m)
    limit = crossing_budget(budget)
    if need > limit:
        raise ResourceLimitError(
            f"the {m}-cable needs {need} crossings, over the budget of {limit} "
            f"(raise it with {BUDGET_ENV} or max_crossings)")


@dataclass
class LambdaResult:
    n: int
    value: Fraction
    presentation: str = ""
    terms: dict = field(default_factory=dict)

    @property
    def casson(self) -> Fraction | None:
        """lambda_1 / 6, the Casson invariant, when n = 1."""
        return self.value / 6 if self.n == 1 else None

    def to_json(self) -> dict:
        from .poly import format_rational

        return {
            "n": self.n,
            "value": format_rational(self.value),
            "presentation": self.presentation,
            "terms": {",".join(map(str, k)): format_rational(v) for k, v in self.terms.items()},
        }


def _as_presentation(P) -> SurgeryPresentation:
    if isinstance(P, SurgeryPresentation):
        return P
    if isinstance(P, LinkDiagram):
        return SurgeryPresentation(P)
    raise TypeError("expected a SurgeryPresentation or LinkDiagram")


def _f(framings, idx) -> int:
    out = 1
    for fx, i in zip(framings, idx):
        out *= fx**i
    return out


def _indices(mu: int, m: int) -> Iterator[tuple[int, ...]]:
    return product(range(m + 1), repeat=mu)


def lambda1(P, detail: bool = False):
    """Sum over sublinks L' of f_L' * phi_1(L')."""
    P = _as_presentation(P)
    D = P.diagram
    fam = CableFamily(D, 1, D.num_components + 1)
    total = Fraction(0)
    terms = {}
    for idx in _indices(D.num_components, 1):
        if not any(idx):
            continue
        c = _f(D.framings, idx) * fam.small_phi(idx, 1)
        if c:
            terms[idx] = c
        total += c
    res = LambdaResult(1, total, P.name, terms)
    return res if detail else total


def lambda2(P, detail: bool = False, max_crossings: int | None = None):
    """Two-term formula: sublinks of L weighted by #L'/2, sublinks of L^2 by 2^-s2."""
    P = _as_presentation(P)
    D = P.diagram
    mu = D.num_components
    _guard(D, 2, max_crossings)
    terms = {}
    total = Fraction(0)
    fam1 = CableFamily(D, 1, mu + 1)
    for idx in _indices(mu, 1):
        if not any(idx):
            continue
        c = fam1.small_phi(idx, 1) * _f(D.framings, idx) * Fraction(sum(idx), 2)
        if c:
            terms[("L",) + idx] = c
        total += c
    fam2 = CableFamily(D, 2, 2 * mu + 2)
    for idx in _indices(mu, 2):
        if not any(idx):
            continue
        s2 = sum(1 for i in idx if i == 2)
        c = fam2.small_phi(idx, 2) * _f(D.framings, idx) / 2**s2
        if c:
            terms[("L2",) + idx] = c
        total += c
    res = LambdaResult(2, total, P.name, terms)
    return res if detail else total


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def lambda_n(P, n: int, detail: bool = False, max_crossings: int | None = None):
    """General formula through the surgery constants nu_{f,i,m} and cables up to L^n."""
    if n < 1:
        if n == 0:
            return LambdaResult(0, Fraction(1)) if detail else Fraction(1)
        raise ValueError("n must be nonnegative")
    P = _as_presentation(P)
    D = P.diagram
    mu = D.num_components
    fr = D.framings
    _guard(D, n, max_crossings)
    sign_prod = 1
    for fx in fr:
        sign_prod *= -fx
    total = Fraction(0)
    terms = {}
    for l in range(1, n + 1):
        fam = CableFamily(D, l, mu * l + l)
        for idx in _indices(mu, l):
            if not any(idx):
                continue
            conv = Fraction(0)
            for ms in _compositions(n - l, mu):
                prod = Fraction(1)
                for fx, i, m in zip(fr, idx, ms):
                    prod *= tables.nu(fx, i, m)
                    if not prod:
                        break
                conv += prod
            if not conv:
                continue
            ph = fam.small_phi(idx, l)
            c = ph / Fraction(-2) ** sum(idx) * sign_prod * conv
            if c:
                terms[(l,) + idx] = c
            total += c
    res = LambdaResult(n, total, P.name, terms)
    return res if detail else total


# ---------------------------------------------------------------------------
# 1/n surgery on a knot


def _knot_vs(K: LinkDiagram) -> tuple[Fraction, Fraction, Fraction]:
    if K.num_components != 1:
        raise DiagramError("a knot diagram is required")
    return v_i(K, 2), v_i(K, 3), v_i(K, 4)


def lambda2_knot_surgery(K: LinkDiagram, n: int, check: bool = False) -> Fraction:
    """lambda_2 of 1/n surgery on K from v_2, v_3, v_4.

    This closed form rests on Phi_4(K^2) = -2v_2 - 2v_4 + 8v_2^2, which holds
    for torus knots but not for every knot (the figure-eight is a
    counterexample).  With ``check`` the value is compared against the same
    quantity written through Phi_2(K), Phi_3(K) and Phi_4(K^2), and a
    mismatch raises ConsistencyError.  knot_surgery_report gives every route.
    """
    if n == 0:
        return Fraction(0)
    v2, v3, v4 = _knot_vs(K)
    val = Fraction(n, 2) * v2 - Fraction(n, 3) * v3 - Fraction(n * n, 6) * (v2 + v4 - 4 * v2 * v2)
    if check:
        alt = _lambda2_knot_via_phi(K, n)
        if alt != val:
            raise ConsistencyError(f"knot surgery lambda_2 mismatch: {val} vs {alt}")
    return val


def _lambda2_knot_via_phi(K: LinkDiagram, n: int) -> Fraction:
    from .linkdiag import cable

    P1 = phi_series(K, 3)
    P2 = phi_series(cable(K, 2), 4)
    return -Fraction(n, 2) * P1.Phi(2) - Fraction(n, 3) * P1.Phi(3) + Fraction(n * n, 12) * P2.Phi(4)


def knot_surgery_report(K: LinkDiagram, n: int, max_crossings: int | None = None) -> dict:
    """lambda_1, lambda_2 of 1/n surgery by every available route."""
    out = {"n": n}
    if n == 0:
        out.update(lambda1=Fraction(0), lambda2=Fraction(0), lambda2_phi=Fraction(0), lambda2_surgery=Fraction(0))
        return out
    v2, _, _ = _knot_vs(K)
    out["lambda1"] = -n * v2
    out["lambda2"] = lambda2_knot_surgery(K, n, check=False)
    out["lambda2_phi"] = _lambda2_knot_via_phi(K, n)
    try:
        out["lambda2_surgery"] = lambda2(kirby_knot_surgery(K, n), max_crossings=max_crossings)
    except ResourceLimitError as exc:
        out["lambda2_surgery"] = None
        out["skipped"] = str(exc)
    return out


def reverse_orientation_lambda2(P, max_crossings: int | None = None) -> Fraction:
    """lambda_2 of the orientation-reversed manifold, checked against lambda_2 + lambda_1."""
    P = _as_presentation(P)
    rev = lambda2(P.mirror(), max_crossings=max_crossings)
    expect = lambda2(P, max_crossings=max_crossings) + lambda1(P)
    if rev != expect:
        raise ConsistencyError(f"orientation reversal: lambda_2 = {rev}, expected {expect}")
    return rev


def distinguish(K: LinkDiagram, ns) -> dict:
    """Tabulate (lambda_1, lambda_2) of 1/n surgery on K and on its mirror.

    Two manifolds are reported as distinct (as unoriented manifolds) when
    their pair differs both from the other's pair and from the pair of its
    orientation reversal, (-lambda_1, lambda_2 + lambda_1).
    """
    Ks = mirror(K)
    v2, v3, v4 = _knot_vs(K)
    v2s = v_i(Ks, 2)
    rows = []
    for n in ns:
        if n == 0:
            continue
        # the Phi route is exact for every knot, the v-closed form is not
        a = (-n * v2, _lambda2_knot_via_phi(K, n))
        b = (-n * v2s, _lambda2_knot_via_phi(Ks, n))
        rows.append({"n": n, "K": a, "mirror": b})

    def differ(p, q):
        rq = (-q[0], q[1] + q[0])
        if p == q or p == rq:
            return None
        if p[0] != q[0] and p[0] != rq[0]:
            return "lambda1"
        return "lambda2"

    pairs = []
    for r in rows:
        pairs.append({"pair": (f"K,1/{r['n']}", f"K*,1/{r['n']}"), "separated_by": differ(r["K"], r["mirror"])})
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            pairs.append({
                "pair": (f"K,1/{rows[i]['n']}", f"K,1/{rows[j]['n']}"),
                "separated_by": differ(rows[i]["K"], rows[j]["K"]),
            })
    return {"v2": v2, "v3": v3, "v4": v4, "rows": rows, "pairs": pairs}
