import json
from fractions import Fraction

import pytest

from ohtsuki.errors import ResourceLimitError
from ohtsuki.lambdas import (
    BUDGET_ENV,
    crossing_budget,
    distinguish,
    knot_surgery_report,
    lambda1,
    lambda2,
    lambda2_knot_surgery,
    lambda_n,
    reverse_orientation_lambda2,
)
from ohtsuki.linkdiag import SurgeryPresentation, disjoint_union, from_braid, kirby_knot_surgery
from ohtsuki.linkinv import v_i

TORUS = ["trefoil_right", "trefoil_left", "knot_5_1", "knot_7_1"]


def test_poincare_sphere(fixtures):
    P = fixtures["trefoil_plus1"].presentation()
    assert lambda1(P) == 6
    assert lambda2(P) == 39
    res = lambda2(P, detail=True)
    assert res.value == 39 and json.loads(json.dumps(res.to_json()))["value"] == "39"
    assert lambda1(P, detail=True).casson == 1


def test_stored_values(fixtures, presentations):
    for name, P in presentations.items():
        fx = fixtures[name]
        assert lambda1(P) == fx.value("lambda1"), name
        assert lambda2(P, max_crossings=fx.budget) == fx.value("lambda2"), name


def test_integrality(presentations, fixtures):
    for name, P in presentations.items():
        l1, l2 = lambda1(P), lambda2(P, max_crossings=fixtures[name].budget)
        assert l1.denominator == 1 and l1 % 6 == 0, name
        assert l2.denominator == 1 and l2 % 3 == 0, name


def test_general_formula_agrees(presentations):
    for name, P in presentations.items():
        if name == "trefoil_half":
            continue
        assert lambda_n(P, 1) == lambda1(P), name
        assert lambda_n(P, 2) == lambda2(P), name


def test_diagram_independence(presentations):
    vals = {lambda2(presentations[n]) for n in ("trefoil_plus1", "trefoil_kinked_plus1", "trefoil_b3_plus1")}
    assert vals == {39}


def test_orientation_reversal(presentations):
    for name, P in presentations.items():
        if name == "trefoil_half":
            continue
        assert reverse_orientation_lambda2(P) == lambda2(P) + lambda1(P)


def test_split_union_adds_lambda1(presentations):
    A = presentations["trefoil_plus1"].diagram
    B = presentations["figure_eight_plus1"].diagram
    U = SurgeryPresentation(disjoint_union(A, B))
    assert lambda1(U) == lambda1(A) + lambda1(B)


def test_knot_surgery_routes_on_torus_knots(knots):
    for name in TORUS:
        K = knots[name]
        for n in (1, -1):
            rep = knot_surgery_report(K, n)
            assert rep["lambda2"] == rep["lambda2_phi"] == rep["lambda2_surgery"], (name, n)
            assert rep["lambda1"] == lambda1(kirby_knot_surgery(K, n))


def test_knot_surgery_phi_route_matches_surgery(knots):
    # the Phi_4(K^2) route is exact for every knot
    for name in ("figure_eight", "knot_5_2", "knot_6_1", "knot_6_2"):
        rep = knot_surgery_report(knots[name], 1)
        assert rep["lambda2_phi"] == rep["lambda2_surgery"], name


def test_half_surgery(knots, fixtures):
    rep = knot_surgery_report(knots["trefoil_right"], 2, max_crossings=100)
    assert rep["lambda2_surgery"] == rep["lambda2_phi"] == fixtures["trefoil_half"].value("lambda2")


def test_mirror_difference(knots):
    for name in ("trefoil_right", "figure_eight", "knot_5_2", "knot_8_20"):
        rep = distinguish(knots[name], [-2, -1, 1, 2])
        v3 = rep["v3"]
        for row in rep["rows"]:
            n = row["n"]
            assert row["K"][1] - row["mirror"][1] == -Fraction(2 * n, 3) * v3


def test_distinguish_trefoil(knots):
    rep = distinguish(knots["trefoil_right"], [1, -1])
    first = rep["pairs"][0]
    assert first["separated_by"] == "lambda2"
    rep8 = distinguish(knots["figure_eight"], [1])
    assert rep8["pairs"][0]["separated_by"] is None


def test_budget(knots, monkeypatch):
    P = kirby_knot_surgery(knots["trefoil_right"], 2)
    with pytest.raises(ResourceLimitError):
        lambda2(P)
    monkeypatch.setenv(BUDGET_ENV, "100")
    assert crossing_budget() == 100
    assert lambda2(P) % 3 == 0


def test_lambda3_denominator(presentations):
    v = lambda_n(presentations["trefoil_plus1"], 3)
    d = v.denominator
    for p in (2, 3):
        while d % p == 0:
            d //= p
    assert d == 1


def test_unknot_trivial(presentations):
    P = presentations["unknot_plus1"]
    assert lambda1(P) == lambda2(P) == lambda_n(P, 3) == 0


@pytest.mark.slow
def test_third_surgery_on_trefoil(knots):
    rep = knot_surgery_report(knots["trefoil_right"], 3, max_crossings=200)
    assert rep["lambda2_surgery"] == rep["lambda2_phi"] == rep["lambda2"]


KNOT_SURGERIES = [("trefoil_plus1", "trefoil_right", 1), ("trefoil_minus1", "trefoil_right", -1),
                  ("trefoil_left_plus1", "trefoil_left", 1), ("trefoil_half", "trefoil_right", 2),
                  ("figure_eight_plus1", "figure_eight", 1), ("knot_5_2_minus1", "knot_5_2", -1)]


@pytest.mark.parametrize("pres,knot,n", KNOT_SURGERIES)
def test_closed_form_matches_sublink_formula(fixtures, knots, pres, knot, n):
    # Stated as holding for every corpus knot surgery.  It does for torus
    # knots and 5_2; for the figure-eight the closed form gives 21 while the
    # sublink formula gives 69, so that case fails.
    direct = fixtures[pres].value("lambda2")
    assert lambda2_knot_surgery(knots[knot], n) == direct
