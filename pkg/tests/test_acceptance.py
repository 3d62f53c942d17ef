"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

All comparisons are exact (Fractions, integers, residues mod r); the only
pinned tolerances are the wall-clock limits below.  Run directly with
``python3 tests/test_acceptance.py`` to see the lines without pytest, or
look at the "acceptance" section of the pytest terminal summary.
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import product

import pytest

from ohtsuki.corpus import corpus
from ohtsuki.fermatlab import DEFAULT_PRIMES, check_gauss, check_srfi
from ohtsuki.lambdas import lambda1, lambda2, lambda2_knot_surgery, lambda_n, reverse_orientation_lambda2
from ohtsuki.linkdiag import cable, linking_matrix
from ohtsuki.linkinv import CableFamily, double_crossing_check, phi_series, small_phi, v_i
from ohtsuki.residues import ResidueTables

# wall-clock limits in seconds, per criterion
RUNTIME_LIMIT = {1: 60, 2: 60, 3: 600, 4: 60, 5: 900, 6: 900, 7: 300, 8: 600}
EXACT = 0  # every value comparison below is exact equality; no numeric slack
LAMBDA3_BUDGET = 64
FERMAT_PRIMES = [p for p in DEFAULT_PRIMES if 11 <= p <= 101]

RESULTS: dict[int, str] = {}


def report(k: int, ok: bool, detail: str, started: float) -> None:
    elapsed = time.perf_counter() - started
    within = elapsed < RUNTIME_LIMIT[k]
    state = "PASS" if ok and within else "FAIL"
    line = f"criterion {k}: {state}  {detail}  [{elapsed:.1f}s / limit {RUNTIME_LIMIT[k]}s]"
    RESULTS[k] = line
    print(line)
    assert ok, line
    assert within, line


_C = None


def C():
    global _C
    if _C is None:
        _C = corpus()
    return _C


def knot_names():
    return [n for n, fx in C().items() if fx.kind == "knot"]


def presentation_names():
    return [n for n, fx in C().items() if fx.kind == "presentation"]


def is_asl(D) -> bool:
    lk = linking_matrix(D)
    return all(lk[i][j] == 0 for i in range(len(lk)) for j in range(len(lk)) if i != j)


def test_criterion_1_poincare_sphere():
    t0 = time.perf_counter()
    direct = lambda2(C()["trefoil_plus1"].presentation())
    closed = lambda2_knot_surgery(C()["trefoil_right"].diagram(), 1)
    report(1, direct == 39 and closed == 39, f"lambda2 sublink formula = {direct}, v-closed form = {closed}", t0)


def test_criterion_2_sigma_237():
    t0 = time.perf_counter()
    direct = lambda2(C()["trefoil_left_plus1"].presentation())
    closed = lambda2_knot_surgery(C()["trefoil_left"].diagram(), 1)
    report(2, direct == 63 and closed == 63, f"lambda2 sublink formula = {direct}, v-closed form = {closed}", t0)


def test_criterion_3_cross_formula():
    t0 = time.perf_counter()
    bad, n3 = [], 0
    names = presentation_names()
    for name in names:
        fx = C()[name]
        P = fx.presentation()
        if P.diagram.num_components >= 3:
            n3 += 1
        if lambda_n(P, 1) != lambda1(P):
            bad.append(f"{name}:n=1")
        if lambda_n(P, 2, max_crossings=fx.budget) != lambda2(P, max_crossings=fx.budget):
            bad.append(f"{name}:n=2")
    ok = not bad and len(names) >= 6 and n3 >= 1
    report(3, ok, f"{len(names)} presentations ({n3} with 3 components), mismatches: {bad or 'none'}", t0)


def test_criterion_4_nu_table():
    t0 = time.perf_counter()
    T = ResidueTables()
    problems = []
    for f in (1, -1):
        if [T.nu(f, 0, m) for m in range(4)] != [-f, 0, 0, 0]:
            problems.append(f"nu_{f},0")
        if [T.nu(f, 1, m) for m in range(4)] != [2, 1, 0, 0]:
            problems.append(f"nu_{f},1")
        if T.nu(f, 2, 0) != -2 * f:
            problems.append(f"nu_{f},2,0")
        for i in range(6):
            try:
                T.nu_series(f, i, 4)
            except Exception as exc:  # ConsistencyError on a failed cancellation
                problems.append(f"cancel f={f} i={i}: {exc}")
    report(4, not problems, f"rows and negative-order cancellation for i <= 5: {problems or 'ok'}", t0)


def test_criterion_5_divisibility():
    t0 = time.perf_counter()
    bad = []
    knots = knot_names()
    for name in knots:
        K = C()[name].diagram()
        v2, v3, v4 = (v_i(K, i) for i in (2, 3, 4))
        if v2 % 6 or v3 % 9 or v4 % 6 or (v2 + v4) % 18:
            bad.append(f"{name}: v2={v2} v3={v3} v4={v4}")
    asls = {n: C()[n].diagram() for n, fx in C().items() if fx.kind == "link" and is_asl(fx.diagram())}
    for name in ("trefoil_right", "figure_eight"):
        asls[f"{name}^2"] = cable(C()[name].diagram(), 2)
    for name, D in asls.items():
        p1, p2 = small_phi(D, 1), small_phi(D, 2)
        if p1 % 6 or p2 % 3:
            bad.append(f"{name}: phi1={p1} phi2={p2}")
    pres = presentation_names()
    for name in pres:
        fx = C()[name]
        l1, l2 = lambda1(fx.presentation()), lambda2(fx.presentation(), max_crossings=fx.budget)
        if l1 % 6 or l2 % 3:
            bad.append(f"{name}: lambda1={l1} lambda2={l2}")
    doubled = 0
    for name in ("whitehead", "borromean"):
        D = C()[name].diagram()
        mu = D.num_components
        fam = CableFamily(D, 2, 2 * mu + 3)
        for m in (1, 2):
            val = fam.small_phi([2] * m + [1] * (mu - m), 2)
            doubled += 1
            if val % 2**m:
                bad.append(f"{name} doubled m={m}: phi2={val}")
    ok = not bad and len(knots) >= 10 and len(asls) >= 6
    report(5, ok, f"{len(knots)} knots, {len(asls)} ASLs, {len(pres)} presentations, "
                  f"{doubled} doubled ASLs; failures: {bad or 'none'}", t0)


def _dcc_pairs(D):
    xs = D.crossings
    out = []
    for i, j in product(range(len(xs)), repeat=2):
        if i != j and xs[i].sign == 1 and xs[j].sign == -1:
            ci, cj = D.crossing_components(i), D.crossing_components(j)
            if ci[0] != ci[1] and set(ci) == set(cj):
                out.append((i, j))
    return out


def test_criterion_6_identities():
    t0 = time.perf_counter()
    sub = {}
    # Phi_2, Phi_3 and Phi_4(K^2) in terms of v_i, on every corpus knot
    ident_bad = []
    knots = knot_names()
    for name in knots:
        K = C()[name].diagram()
        v2, v3, v4 = (v_i(K, i) for i in (2, 3, 4))
        P = phi_series(K, 4)
        P2 = phi_series(cable(K, 2), 4)
        if P.Phi(2) != v2:
            ident_bad.append(f"{name}: Phi2")
        if P.Phi(3) != v3 - 3 * v2:
            ident_bad.append(f"{name}: Phi3")
        want = -2 * v2 - 2 * v4 + 8 * v2 * v2
        if P2.Phi(4) != want:
            ident_bad.append(f"{name}: Phi4(K^2)={P2.Phi(4)} vs {want}")
    sub["Phi identities"] = (not ident_bad and len(knots) >= 5, f"{len(knots)} knots; {ident_bad or 'ok'}")

    dcc, dcc_bad = 0, []
    for name in ("whitehead", "borromean", "asl7_a", "asl7_b"):
        D = C()[name].diagram()
        for c1, c2 in _dcc_pairs(D)[:2]:
            rep = double_crossing_check(D, c1, c2, 8)
            dcc += 1
            if not rep.passed:
                dcc_bad.append(f"{name}({c1},{c2})")
    sub["double crossing change"] = (dcc >= 3 and not dcc_bad, f"{dcc} quadruples to order 8; {dcc_bad or 'ok'}")

    van_bad = []
    for name, fx in C().items():
        if fx.kind not in ("knot", "link") or not is_asl(fx.diagram()):
            continue
        D = fx.diagram()
        P = phi_series(D, D.num_components + 1)
        if any(P.Phi(i) for i in range(D.num_components + 1)):
            van_bad.append(f"{name}: Phi_i(L) for i <= #L")
    for name, m in (("trefoil_right", 2), ("figure_eight", 2), ("whitehead", 2), ("borromean", 2), ("trefoil_right", 3)):
        D = C()[name].diagram()
        mu = D.num_components
        fam = CableFamily(D, m, mu + m + 1)
        for idx in product(range(m + 1), repeat=mu):
            if m in idx and any(fam.phi(idx).coeff(i) for i in range(mu + m)):
                van_bad.append(f"{name}^{m} {idx}")
    sub["Phi vanishing"] = (not van_bad, van_bad or "ok")

    rev_bad = []
    for name in presentation_names():
        fx = C()[name]
        try:
            reverse_orientation_lambda2(fx.presentation(), max_crossings=fx.budget)
        except Exception as exc:
            rev_bad.append(f"{name}: {exc}")
    sub["orientation reversal"] = (not rev_bad, rev_bad or "ok")

    for key, (ok, detail) in sub.items():
        print(f"  criterion 6 / {key}: {'PASS' if ok else 'FAIL'}  {detail}")
    ok = all(v[0] for v in sub.values())
    failed = [k for k, v in sub.items() if not v[0]]
    report(6, ok, f"sub-suites failing: {failed or 'none'}", t0)


def test_criterion_7_fermat_limits():
    t0 = time.perf_counter()
    g = check_gauss(FERMAT_PRIMES, 2, 3)
    s = check_srfi(FERMAT_PRIMES, 3, 3)
    bad = [r for r in g + s if not r["ok"]]
    report(7, not bad, f"{len(FERMAT_PRIMES)} primes, {len(g)} Gauss rows, {len(s)} s_rfi rows, "
                       f"{len(bad)} mismatches", t0)


def test_criterion_8_lambda3_stretch():
    t0 = time.perf_counter()
    v = lambda_n(C()["trefoil_plus1"].presentation(), 3, max_crossings=LAMBDA3_BUDGET)
    d = v.denominator
    for p in (2, 3):
        while d % p == 0:
            d //= p
    six = (6 * v) % 6 == 0
    report(8, d == 1, f"lambda3 = {v}; 3!*lambda3 in 6Z: {six} (reported, not asserted)", t0)


if __name__ == "__main__":
    import sys

    for fn in (test_criterion_1_poincare_sphere, test_criterion_2_sigma_237, test_criterion_3_cross_formula,
               test_criterion_4_nu_table, test_criterion_5_divisibility, test_criterion_6_identities,
               test_criterion_7_fermat_limits, test_criterion_8_lambda3_stretch):
        try:
            fn()
        except AssertionError:
            pass
    sys.exit(0 if all(" PASS " in line for line in RESULTS.values()) else 1)
