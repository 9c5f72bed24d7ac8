"""End-to-end checks of the package's headline claims.

Each test prints one `criterion N ...: PASS` line (pytest shows FAIL on the
test itself otherwise) and enforces its runtime budget. The two clauses known
to be unattainable as stated (the genus-0 control non-decay in criterion 6
and the 0.9 all-flags threshold in criterion 7) are implemented faithfully
and left to fail rather than weakened.
"""

import random
import time
from fractions import Fraction
from itertools import combinations_with_replacement

from sympy import divisors

from speclab.bounds import (
    GroupDescriptor,
    RamificationType,
    abc_exponent,
    condition_eq1,
    condition_eq2,
    malle_alpha,
    rh_genus,
)
from speclab.census import (
    count_poly_sets,
    fit_log_exponent,
    s3_survey,
    twist_density_series,
)
from speclab.covers import (
    CubicCover,
    chebotarev_unramified_sieve,
    quad_cover,
    s3_survey_predicates,
    verify_unramified,
)
from speclab.intutil import is_probable_prime, squarefree_part
from speclab.poly import INFINITY, IntPolynomial, factor_over_Q, parse_poly
from speclab.ramify import consistency_check
from speclab.twists import (
    INSOLUBLE,
    SOLUBLE,
    LocalSolver,
    SuperellipticCurve,
    admissible_prime_scan,
    everywhere_locally_soluble,
    hasse_failure_candidates,
    local_solubility,
    obstruction_certificate,
    search_points,
)

P8 = parse_poly("T^2+1") * parse_poly("T^2+2") * parse_poly("T^4+2")
P6 = parse_poly("T^2+1") * parse_poly("T^4+2")


def report(line, elapsed, budget):
    print(f"{line}: PASS ({elapsed:.1f}s)")
    assert elapsed < budget


def random_separable(rng, deg_lo, deg_hi, box, mult_lt=2):
    while True:
        deg = rng.randint(deg_lo, deg_hi)
        coeffs = [rng.randint(-box, box) for _ in range(deg)] + [
            rng.choice([c for c in range(-box, box + 1) if c])
        ]
        P = IntPolynomial(coeffs)
        try:
            if mult_lt == 2:
                quad_cover(P)
            else:
                SuperellipticCurve(mult_lt, P)
        except ValueError:
            continue
        return P


def test_criterion_01_branch_point_law():
    t = time.monotonic()
    rng = random.Random(11)
    for _ in range(500):
        P = random_separable(rng, 2, 9, 10)
        cov = quad_cover(P)
        orbits = cov.branch_orbits()
        _, factors = factor_over_Q(P)
        odd = P.degree % 2 == 1
        assert cov.infinity_branched == odd
        assert len(orbits) == len(factors) + (1 if odd else 0)
        assert all(e == 2 for _, e in orbits)
    report("criterion 1 (branch-point law)", time.monotonic() - t, 10)


def test_criterion_02_beckmann_consistency():
    t = time.monotonic()
    rng = random.Random(12)
    # quadratic family: 50 random covers of degree <= 8, 20 points each
    for _ in range(50):
        P = random_separable(rng, 2, 8, 10)
        rep = consistency_check(quad_cover(P), n_samples=20, height=40, seed=rng.randint(0, 10**6))
        assert rep.mismatches == ()
    # the pinned cubic, 10^3 points
    T = parse_poly("T")
    pinned = CubicCover(IntPolynomial([]), T, T)
    rep = consistency_check(pinned, n_samples=1000, height=50, seed=5)
    assert rep.mismatches == ()
    # 20 random surveyed cubics, 50 points each
    found = 0
    while found < 20:
        a2, a1, a0 = (
            IntPolynomial([rng.randint(-10, 10), rng.randint(-10, 10)]) for _ in range(3)
        )
        pred = s3_survey_predicates(a2, a1, a0)
        if not pred.all_conditions:
            continue
        found += 1
        rep = consistency_check(CubicCover(a2, a1, a0), n_samples=50, height=40, seed=found)
        assert rep.mismatches == ()
    report("criterion 2 (Beckmann consistency)", time.monotonic() - t, 300)


def test_criterion_03_certificate_soundness():
    t = time.monotonic()
    rng = random.Random(13)
    certified = 0
    for _ in range(200):
        n = rng.choice([2, 2, 2, 3])
        N = rng.choice([m for m in range(n, 9, n)])
        P = random_separable(rng, N, N, 20, mult_lt=n)
        d = rng.randint(-50, 50)
        if d == 0 or d in (1, -1):
            continue
        try:
            tw = SuperellipticCurve(n, P).twist(d)
            cert = obstruction_certificate(tw)
        except ValueError:
            continue
        if cert is None:
            continue
        certified += 1
        assert search_points(tw, 10**4) == []
        assert local_solubility(tw, cert.p) == INSOLUBLE
    assert certified >= 10
    report(
        f"criterion 3 (certificate soundness, {certified} certified)",
        time.monotonic() - t,
        600,
    )


def test_criterion_04_exponent_identities():
    t = time.monotonic()
    for r in (6, 8, 10):
        rt = RamificationType((2,) * r)
        assert abc_exponent(rt, 2) == Fraction(2, r - 4)
        g = rh_genus(2, rt)
        assert 2 * (g - 1) == r - 4
        assert abc_exponent(rt, 2) == Fraction(1, g - 1)
    for order in range(2, 25):
        G = GroupDescriptor(order)
        alpha = malle_alpha(G)
        pool = [d for d in divisors(order) if d > 1]
        for r in range(1, 13):
            for idx in combinations_with_replacement(pool, r):
                rt = RamificationType(idx, G)
                eq2, _ = condition_eq2(rt, G)
                eq1, _ = condition_eq1(rt)
                if eq2:
                    assert eq1
                if eq1:
                    assert eq2 == (abc_exponent(rt, order) < alpha)
    report("criterion 4 (exponent identities)", time.monotonic() - t, 60)


def test_criterion_05_counting():
    t = time.monotonic()
    for H in range(1, 6):
        got = count_poly_sets(2, 2, H)
        assert got["E_forms"] == got["P2"] + count_poly_sets(2, 1, H)["P2"]
    r50 = count_poly_sets(2, 2, 50)["P2"] / 50**3
    r100 = count_poly_sets(2, 2, 100)["P2"] / 100**3
    assert abs(r50 - r100) / r100 < 0.05
    report("criterion 5 (counting identity)", time.monotonic() - t, 300)


def test_criterion_06_density_decay():
    t = time.monotonic()
    grid = (10**2, 10**3, 10**4, 10**5)
    series = twist_density_series(quad_cover(P6), grid)
    upper = series.upper()
    assert upper[3] < upper[1]
    fit = fit_log_exponent(series)
    assert fit.alpha > 0
    report("criterion 6 (density-zero trend)", time.monotonic() - t, 1800)


def test_criterion_06_genus0_control():
    # known red: squarefree parts of u^2 - 2 v^2 are norms from Q(sqrt 2) up
    # to squares, a density-zero set, so the control envelope decays too
    t = time.monotonic()
    grid = (10**2, 10**3, 10**4, 10**5)
    series = twist_density_series(quad_cover(parse_poly("T^2 - 2")), grid)
    upper = series.upper()
    decays = upper[3] < upper[1]
    line = "criterion 6 (genus-0 control shows no decay)"
    if decays:
        print(f"{line}: FAIL (control envelope {float(upper[1]):.4f} -> {float(upper[3]):.4f})")
    else:
        print(f"{line}: PASS ({time.monotonic() - t:.1f}s)")
    assert not decays


def test_criterion_07_s3_survey_threshold():
    # known red: condition (c) alone holds with proportion ~ 0.884 at H = 20,
    # capping the conjunction near 0.87
    t = time.monotonic()
    res = s3_survey(1, 20, 10**4, seed=0)
    prop = res.proportions["all"][0]
    line = "criterion 7 (all-flags proportion >= 0.9)"
    if prop >= 0.9:
        print(f"{line}: PASS ({time.monotonic() - t:.1f}s)")
    else:
        print(f"{line}: FAIL (measured {prop:.4f})")
    assert prop >= 0.9


def test_criterion_07_s3_survey_trend_and_branch_set():
    t = time.monotonic()
    r20 = s3_survey(1, 20, 10**4, seed=0)
    r5 = s3_survey(1, 5, 10**4, seed=0)
    assert r20.proportions["all"][0] > r5.proportions["all"][0]
    T = parse_poly("T")
    cov = CubicCover(IntPolynomial([]), T, T)
    # delta = -4T^3 - 27T^2 vanishes exactly at 0 and -27/4
    _, dfac = factor_over_Q(cov.delta)
    finite = set()
    for f, _ in dfac:
        if f.degree == 1:
            finite.add(Fraction(-f.coeffs[0], f.coeffs[1]))
    assert finite == {Fraction(0), Fraction(-27, 4)}
    assert cov.cycle_type_at(Fraction(0)) != [1, 1, 1]
    assert cov.cycle_type_at(Fraction(-27, 4)) != [1, 1, 1]
    assert cov.cycle_type_at(INFINITY) != [1, 1, 1]
    assert cov.cycle_type_at(Fraction(1)) == [1, 1, 1]
    report("criterion 7 (survey trend, branch set)", time.monotonic() - t, 600)


def test_criterion_08_odd_degree_local_fullness():
    t = time.monotonic()
    rng = random.Random(18)
    base = SuperellipticCurve(2, parse_poly("T^3 - 2"))
    seen = set()
    while len(seen) < 50:
        d = squarefree_part(rng.randint(2, 5000) * rng.choice([1, -1]))
        if d in (0, 1) or d in seen:
            continue
        seen.add(d)
        status, _ = everywhere_locally_soluble(base.twist(d))
        assert status == SOLUBLE
    checked = 0
    for _ in range(100):
        P = random_separable(rng, 3, 6, 10)
        d = squarefree_part(rng.randint(2, 100))
        if d == 1:
            d = 2
        solver = LocalSolver(SuperellipticCurve(2, P))
        p = solver._weil_floor
        agreed = 0
        while agreed < 5 and p < solver._weil_floor + 500:
            p += 1
            if not is_probable_prime(p) or not solver._good_reduction_shortcut(d, p):
                continue
            assert solver.at_prime(d, p) == solver.at_prime(d, p, allow_shortcut=False)
            agreed += 1
            checked += 1
    assert checked >= 400
    report(
        f"criterion 8 (odd-degree local fullness, {checked} shortcut checks)",
        time.monotonic() - t,
        600,
    )


def test_criterion_09_local_global_candidates():
    t = time.monotonic()
    cov = quad_cover(P8)
    rows = admissible_prime_scan(cov, 1, 10**4)
    assert len(rows) >= 1
    for p, d, status in rows:
        assert status == SOLUBLE
        independent, _ = everywhere_locally_soluble(SuperellipticCurve(2, P8).twist(d))
        assert independent == SOLUBLE
    res = hasse_failure_candidates(cov, 10**3, 10**4)
    assert len(res.candidates) >= 1
    # candidates are height-bounded reports, not proofs: the bound travels
    assert res.H == 10**4 and res.x == 10**3
    report(
        f"criterion 9 ({len(rows)} admissible primes, {len(res.candidates)} candidates)",
        time.monotonic() - t,
        1800,
    )


def test_criterion_10_chebotarev_sieve():
    t = time.monotonic()
    cov = quad_cover(parse_poly("T^2 + 1"))
    primes, density, _ = chebotarev_unramified_sieve(cov.P, 10**5)
    assert abs(density - 0.5) < 0.02
    assert verify_unramified(cov, primes[:200], {2}, n_samples=500, height=1000, seed=4) == []
    report("criterion 10 (Chebotarev sieve)", time.monotonic() - t, 300)
