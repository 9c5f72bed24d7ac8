from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speclab.covers import quad_cover
from speclab.poly import parse_poly
from speclab.twists import (
    INSOLUBLE,
    SOLUBLE,
    UNKNOWN,
    ConsistencyError,
    CurvePoint,
    SuperellipticCurve,
    TwistedCurve,
    admissible_prime_scan,
    everywhere_locally_soluble,
    hasse_failure_candidates,
    local_solubility,
    map_twist_point,
    obstruction_certificate,
    search_points,
)
from speclab.twists import LocalSolver, _is_nth_power_qp


def P(text):
    return parse_poly(text)


PINNED8 = P("T^2+1") * P("T^2+2") * P("T^4+2")


class TestModels:
    def test_degrees_and_genus(self):
        c = SuperellipticCurve(2, P("T^3 - 2"))
        assert (c.N, c.model_degree, c.weight, c.genus) == (3, 4, 2, 1)
        c2 = SuperellipticCurve(2, PINNED8)
        assert (c2.model_degree, c2.genus) == (8, 3)
        c3 = SuperellipticCurve(3, P("T^4 + 1"))
        assert c3.model_degree == 6 and c3.genus == 3

    def test_rejects_high_multiplicity(self):
        with pytest.raises(ValueError):
            SuperellipticCurve(2, P("T^2 - 2*T + 1"))

    def test_twist_must_be_nfree(self):
        base = SuperellipticCurve(2, P("T^3 - 2"))
        with pytest.raises(ValueError):
            base.twist(4)
        with pytest.raises(ValueError):
            base.twist(0)


class TestSearch:
    def test_known_point(self):
        pts = search_points(SuperellipticCurve(2, P("T^3 - 2")), 10)
        assert any((pt.u, pt.v) == (3, 1) for pt in pts)
        assert all(not pt.trivial for pt in pts)

    def test_z_zero_point(self):
        # y^2 = 4 T^2 + 1: above z = 0 the value is the leading coefficient 4
        pts = search_points(SuperellipticCurve(2, P("4*T^2 + 1")), 3)
        zs = [pt for pt in pts if pt.z_zero]
        assert len(zs) == 1 and zs[0].y == 2

    def test_lind_has_no_small_points(self):
        tw = SuperellipticCurve(2, P("T^4 - 17")).twist(2)
        assert search_points(tw, 150) == []


class TestCertificate:
    def test_certificate_value(self):
        cert = obstruction_certificate(SuperellipticCurve(2, P("T^4 + 1")).twist(3))
        assert cert is not None and cert.p == 3 and cert.v_p_d == 1
        assert "impossible" in cert.explain()

    def test_no_certificate_for_lind(self):
        assert obstruction_certificate(SuperellipticCurve(2, P("T^4 - 17")).twist(2)) is None

    def test_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            obstruction_certificate(SuperellipticCurve(2, P("T^3 - 2")).twist(3))
        with pytest.raises(ValueError):
            obstruction_certificate(SuperellipticCurve(2, P("T^4 - 1")).twist(3))


class TestLocal:
    def test_qp_nth_power_membership(self):
        assert _is_nth_power_qp(49, 7, 2)
        assert not _is_nth_power_qp(7, 7, 2)
        assert not _is_nth_power_qp(2, 7, 3)  # 2^((7-1)/3) = 4 mod 7
        assert _is_nth_power_qp(6, 7, 3)  # 6^2 = 1 mod 7
        assert _is_nth_power_qp(17, 2, 2)  # 17 = 1 mod 16
        assert not _is_nth_power_qp(3, 2, 2)
        assert _is_nth_power_qp(10, 3, 3) == any(
            pow(x, 3, 27) == 10 % 27 for x in range(27) if x % 3)

    def test_real_place(self):
        assert local_solubility(SuperellipticCurve(2, P("T^2+1")).twist(-1), "infinity") == INSOLUBLE
        assert local_solubility(SuperellipticCurve(3, P("T^2+1")).twist(-1), "infinity") == SOLUBLE

    def test_els_statuses(self):
        st_, _ = everywhere_locally_soluble(SuperellipticCurve(2, P("T^4+1")).twist(3))
        assert st_ == INSOLUBLE
        st2, detail = everywhere_locally_soluble(SuperellipticCurve(2, P("T^4-17")).twist(2))
        assert st2 == SOLUBLE and all(v == SOLUBLE for v in detail.values())

    def test_odd_degree_fullness_sample(self):
        base = SuperellipticCurve(2, P("T^3 - 2"))
        for d in (-1, 2, 3, -5, 6, 7, -10, 11, 13, -14):
            st_, _ = everywhere_locally_soluble(base.twist(d))
            assert st_ == SOLUBLE

    def test_shortcut_agrees_with_bfs(self):
        base = SuperellipticCurve(2, PINNED8)
        solver = LocalSolver(base)
        checked = 0
        for p in (101, 103, 107, 109, 113):
            if solver._good_reduction_shortcut(5, p):
                assert solver.at_prime(5, p, allow_shortcut=False) == SOLUBLE
                checked += 1
        assert checked >= 3

    def test_cache_consistency_between_class_mates(self):
        base = SuperellipticCurve(2, P("T^3 - 2"))
        solver = LocalSolver(base)
        # 5 and 45 = 5 * 9 sit in the same class of Q_3^* modulo squares
        assert solver.at_prime(5, 3) == solver.at_prime(45, 3)


class TestMapping:
    def test_push_down(self):
        src = SuperellipticCurve(4, P("T^4 + 71")).twist(18)
        pts = search_points(src, 3)
        tgt, q = map_twist_point(src, 3, [pt for pt in pts if pt.u == 1][0])
        assert tgt.d == 2 and q.y == 12 and (q.u, q.v) == (1, 1)
        assert q.y**2 == 2 * (1**4 + 71)

    def test_rejects_wrong_alpha(self):
        src = SuperellipticCurve(4, P("T^4 + 71")).twist(18)
        pt = search_points(src, 3)[0]
        with pytest.raises(ValueError):
            map_twist_point(src, 5, pt)

    def test_rejects_prime_exponent(self):
        src = SuperellipticCurve(3, P("T^4 + 1")).twist(2)
        with pytest.raises(ValueError):
            map_twist_point(src, 1, CurvePoint(1, 0, 1))


class TestScans:
    def test_admissible_scan_pinned(self):
        cov = quad_cover(PINNED8)
        rows = admissible_prime_scan(cov, 1, 1200)
        assert [(p, d) for p, d, _ in rows][:3] == [(193, 386), (337, 674), (457, 914)]
        assert all(st_ == SOLUBLE for _, _, st_ in rows)

    def test_admissible_scan_empty_below_least(self):
        cov = quad_cover(PINNED8)
        assert admissible_prime_scan(cov, 1, 190) == []

    def test_scan_rejects_odd_degree(self):
        with pytest.raises(ValueError):
            admissible_prime_scan(quad_cover(P("T^3 - 2")), 1, 100)

    def test_scan_rejects_rational_branch_point(self):
        with pytest.raises(ValueError):
            admissible_prime_scan(quad_cover(P("T^4 - 1")), 2, 100)

    def test_hasse_scan_finds_candidates(self):
        cov = quad_cover(PINNED8)
        res = hasse_failure_candidates(cov, 40, 300)
        assert res.x == 40 and res.H == 300
        assert len(res.candidates) >= 1
        assert res.locally_obstructed >= 1


@given(st.integers(min_value=-60, max_value=60).filter(lambda d: d != 0))
@settings(max_examples=25, deadline=None)
def test_found_point_implies_soluble_everywhere(d):
    from speclab.intutil import squarefree_part

    d = squarefree_part(d)
    if d == 1:
        d = -1
    base = SuperellipticCurve(2, P("T^3 - 2"))
    tw = base.twist(d)
    pts = search_points(tw, 25)
    if pts:
        st_, _ = everywhere_locally_soluble(tw)
        assert st_ == SOLUBLE
