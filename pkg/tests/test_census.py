import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from speclab.census import (
    DensitySeries,
    count_poly_sets,
    fit_log_exponent,
    fundamental_discriminant,
    local_global_ratio_series,
    quad_field_census,
    s3_survey,
    twist_density_series,
)
from speclab.covers import quad_cover
from speclab.poly import parse_poly


def P(text):
    return parse_poly(text)


P6 = P("T^2+1") * P("T^4+2")


def brute_count_sets(n, N, H):
    """Independent enumeration of the population counters with sympy only.

    Returns (|P|, |P2|): degree exactly N with every factor multiplicity < n,
    and the subset whose content is n-free."""
    T = sympy.Symbol("T")
    box = range(-H, H + 1)
    n_P = n_P2 = 0
    for coeffs in _tuples(N + 1, box):
        if coeffs[0] == 0:
            continue
        poly = sympy.Poly(list(coeffs), T)
        fl = sympy.factor_list(poly.as_expr())[1]
        if any(m >= n for _, m in fl):
            continue
        n_P += 1
        content = math.gcd(*[abs(c) for c in coeffs])
        if content <= 1 or _nfree(content, n):
            n_P2 += 1
    return n_P, n_P2


def _tuples(k, box):
    if k == 0:
        yield ()
        return
    for rest in _tuples(k - 1, box):
        for c in box:
            yield (c,) + rest


def _nfree(m, n):
    for p, e in sympy.factorint(m).items():
        if e >= n:
            return False
    return True


class TestDensitySeries:
    def test_bounds(self):
        s = DensitySeries(grid=(10, 100), numerator=(1, 3), denominator=(4, 10), unknown=(1, 0))
        assert s.lower() == (Fraction(1, 4), Fraction(3, 10))
        assert s.upper() == (Fraction(1, 2), Fraction(3, 10))

    def test_rejects_overflow(self):
        with pytest.raises(ValueError):
            DensitySeries(grid=(10,), numerator=(5,), denominator=(4,), unknown=(0,))
        with pytest.raises(ValueError):
            DensitySeries(grid=(10,), numerator=(2,), denominator=(4,), unknown=(3,))

    @given(
        st.lists(
            st.tuples(st.integers(0, 50), st.integers(0, 50), st.integers(1, 100)),
            min_size=1,
            max_size=6,
        )
    )
    @settings(max_examples=50, deadline=None)
    def test_invariant_random(self, rows):
        rows = [(min(a, d), min(b, d - min(a, d)), d) for a, b, d in rows]
        grid = tuple(range(1, len(rows) + 1))
        s = DensitySeries(
            grid=grid,
            numerator=tuple(a for a, _, _ in rows),
            denominator=tuple(d for _, _, d in rows),
            unknown=tuple(b for _, b, _ in rows),
        )
        for lo, hi in zip(s.lower(), s.upper()):
            assert 0 <= lo <= hi <= 1


class TestCounts:
    def test_pinned_small_counts(self):
        assert count_poly_sets(2, 2, 2) == {"P": 92, "P2": 92, "P2_lower": 20, "E_forms": 112}
        assert count_poly_sets(2, 2, 3) == {"P": 284, "P2": 284, "P2_lower": 42, "E_forms": 326}

    def test_against_independent_enumeration(self):
        n_P, n_P2 = brute_count_sets(2, 2, 2)
        got = count_poly_sets(2, 2, 2)
        assert (got["P"], got["P2"]) == (n_P, n_P2)
        # the lower stratum is linear polynomials with squarefree content
        _, low = brute_count_sets(2, 1, 2)
        assert got["P2_lower"] == low

    def test_forms_identity(self):
        # |E(2, H)| = |P2(2, 2, H)| + |P2(2, 1, H)| by splitting on a = 0
        for H in range(1, 6):
            lhs = count_poly_sets(2, 2, H)["E_forms"]
            rhs = count_poly_sets(2, 2, H)["P2"] + count_poly_sets(2, 1, H)["P2"]
            assert lhs == rhs

    def test_squarefree_proportion(self):
        got = count_poly_sets(2, 2, 100)
        ratio = got["P2"] / got["P"]
        # squarefree-content proportion tends to prod_p (1 - p^-6) = 1/zeta(6)
        assert abs(ratio - 1 / float(sympy.zeta(6))) < 0.005


class TestFields:
    def test_fundamental_discriminant(self):
        assert fundamental_discriminant(5) == 5
        assert fundamental_discriminant(-3) == -3
        assert fundamental_discriminant(2) == 8
        assert fundamental_discriminant(-1) == -4
        assert fundamental_discriminant(23) == 92

    def test_census_pins(self):
        assert quad_field_census(10) == [-3, -4, 5, -7, -8, 8]
        assert quad_field_census(4) == [-3, -4]
        assert quad_field_census(1) == []


class TestFit:
    def test_recovers_exact_powers(self):
        grid = (10**2, 10**3, 10**4, 10**5)
        den = tuple(10**6 for _ in grid)
        num = tuple(int(10**6 / math.log(x)) for x in grid)
        s = DensitySeries(grid=grid, numerator=num, denominator=den, unknown=(0,) * 4)
        fit = fit_log_exponent(s)
        assert abs(fit.alpha - 1.0) < 1e-3
        flat = DensitySeries(grid=grid, numerator=(500,) * 4, denominator=(1000,) * 4, unknown=(0,) * 4)
        assert abs(fit_log_exponent(flat).alpha) < 1e-9

    def test_rejects_short_series(self):
        s = DensitySeries(grid=(10, 100), numerator=(1, 1), denominator=(2, 2), unknown=(0, 0))
        with pytest.raises(ValueError):
            fit_log_exponent(s)


class TestSurvey:
    def test_deterministic(self):
        a = s3_survey(1, 8, sample_size=500, seed=7)
        b = s3_survey(1, 8, sample_size=500, seed=7)
        assert a.counts == b.counts and a.total == b.total

    def test_small_exhaustive(self):
        # D = 1: three degree-<=1 coefficients, six integers in [-3, 3]
        res = s3_survey(1, 2, sample_size=10**5, seed=0)
        assert res.exhaustive
        assert res.total == 5**6
        for flag, prop in res.proportions.items():
            assert 0 <= prop[0] <= 1

    def test_flag_monotone_keys(self):
        res = s3_survey(1, 5, sample_size=2000, seed=0)
        assert "all" in res.proportions


class TestTwistSeries:
    def test_direct_regression(self):
        cov = quad_cover(P6)
        s = twist_density_series(cov, (50, 200))
        assert s.grid == (50, 200)
        assert s.denominator[0] > 0
        up = s.upper()
        assert up[1] <= up[0]

    def test_empty_grid(self):
        s = twist_density_series(quad_cover(P6), ())
        assert s.grid == () and s.lower() == ()

    def test_local_global_odd_degree(self):
        cov = quad_cover(P("T^3 - 2"))
        g, l = local_global_ratio_series(cov, (30,), 40)
        # odd degree: every twist is everywhere locally soluble
        assert l.numerator[0] == l.denominator[0] and l.unknown[0] == 0
        assert g.numerator[0] <= l.numerator[0]
