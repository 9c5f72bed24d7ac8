from fractions import Fraction

import pytest

from speclab.covers import CubicCover, quad_cover
from speclab.poly import ProjectivePoint, parse_poly
from speclab.ramify import (
    branch_orbits,
    consistency_check,
    exceptional_superset,
    intersection_number,
    predict,
)


def P(text):
    return parse_poly(text)


def cubic_ttY():
    t = P("T")
    return CubicCover(P("0"), t, t)


def test_exceptional_supersets_cover_known_bad_primes():
    assert {2} <= exceptional_superset(quad_cover(P("T^2 - 2")))
    assert {2, 3} <= exceptional_superset(quad_cover(P("3*T^2 - 2")))
    assert {2, 3} <= exceptional_superset(cubic_ttY())


def test_intersection_numbers():
    cov = quad_cover(P("T^2 - 2"))
    (orbit,) = branch_orbits(cov)
    # t0 = 3: t^2 - 2 = 7, so I_7 = 1 and I_5 = 0
    assert intersection_number(orbit, ProjectivePoint(3, 1), 7) == 1
    assert intersection_number(orbit, ProjectivePoint(3, 1), 5) == 0
    # higher contact: 108^2 - 2 = 11662 = 2 * 7^3 * 17
    assert intersection_number(orbit, ProjectivePoint(108, 1), 7) == 3


def test_intersection_rejects_branch_point():
    cov = quad_cover(P("T^2 - 4"))
    orbit = next(o for o in branch_orbits(cov) if o.form.eval_proj(ProjectivePoint(2, 1)) == 0)
    with pytest.raises(ValueError):
        intersection_number(orbit, ProjectivePoint(2, 1), 5)


def test_predict_matches_specialization_quadratic():
    cov = quad_cover(P("T^2 - 2"))
    rep = consistency_check(cov, n_samples=120, height=200, seed=11)
    assert rep.ok
    assert rep.mismatches == ()


def test_predict_matches_specialization_cubic():
    rep = consistency_check(cubic_ttY(), n_samples=60, height=60, seed=3)
    assert rep.ok


def test_predict_report_shape():
    cov = quad_cover(P("T^2 - 2"))
    rep = predict(cov, ProjectivePoint(3, 1))
    ps = rep.primes()
    assert 7 in ps
    assert rep.predicted_order(7) == 2
    assert rep.predicted_order(5) == 1


def test_cubic_inertia_orders():
    cov = cubic_ttY()
    rep = predict(cov, ProjectivePoint(1, 1))
    # t0 = 1: delta = -31: 31 meets the conjugate-pair orbit 4U + 27V at order 1
    assert rep.predicted_order(31) == 2
