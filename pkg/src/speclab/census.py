"""Census experiments: polynomial counting, quadratic-field enumeration,
twist-density series, S3 survey proportions, local-global ratios.

Counts are exact integers throughout; ratios are published as exact
[lower, upper] envelope pairs with height-bounded unknowns tracked
separately, never folded into either side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, log, sqrt

import numpy as np

from .covers import QuadraticCover, _rootless_mod_p, s3_survey_predicates
from .intutil import factorize, nfree_sieve, primes_up_to, squarefree_part
from .poly import IntPolynomial, factor_over_Q
from .twists import (
    INSOLUBLE,
    SOLUBLE,
    UNKNOWN,
    SuperellipticCurve,
    everywhere_locally_soluble,
    search_points,
)

__all__ = [
    "DensitySeries",
    "count_poly_sets",
    "quad_field_census",
    "fundamental_discriminant",
    "twist_density_series",
    "fit_log_exponent",
    "LogFit",
    "s3_survey",
    "SurveyResult",
    "local_global_ratio_series",
]


@dataclass(frozen=True)
class DensitySeries:
    """Counts over an increasing grid: numerator, denominator, and unknowns
    from height-bounded searches (kept apart from both sides)."""

    grid: tuple[int, ...]
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    unknown: tuple[int, ...]

    def __post_init__(self):
        k = len(self.grid)
        if not (len(self.numerator) == len(self.denominator) == len(self.unknown) == k):
            raise ValueError("field lengths differ")
        if any(self.grid[i] >= self.grid[i + 1] for i in range(k - 1)):
            raise ValueError("grid must be strictly increasing")
        for n, d, u in zip(self.numerator, self.denominator, self.unknown):
            if n < 0 or u < 0 or n + u > d:
                raise ValueError("need 0 <= numerator + unknown <= denominator")

    def lower(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(n, d) if d else Fraction(0)
            for n, d in zip(self.numerator, self.denominator)
        )

    def upper(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(n + u, d) if d else Fraction(0)
            for n, u, d in zip(self.numerator, self.unknown, self.denominator)
        )

    def csv_rows(self) -> list[tuple]:
        return [
            (x, float(lo), float(hi), u)
            for x, lo, hi, u in zip(self.grid, self.lower(), self.upper(), self.unknown)
        ]


# ---------------------------------------------------------------------------
# Polynomial counting


def _mult_lt(P: IntPolynomial, n: int) -> bool:
    _, factors = factor_over_Q(P)
    return all(m < n for _, m in factors)


def _sf_table(H: int) -> np.ndarray:
    sf = np.ones(H + 1, dtype=bool)
    for p in primes_up_to(int(H**0.5) + 1):
        sf[p * p :: p * p] = False
    return sf


def _count_quadratics_fast(H: int, forms: bool = False) -> tuple[int, int]:
    """Vectorized counts over |a|, |b|, |c| <= H of a T^2 + b T + c with
    b^2 - 4ac != 0, and the squarefree-content subset. With forms, a = 0 is
    allowed: the same discriminant condition decides squarefreeness of the
    binary form a T^2 + b T Z + c Z^2 (a = b = 0 gives c Z^2, disc 0)."""
    r = np.arange(-H, H + 1, dtype=np.int64)
    a = (r if forms else r[r != 0])[:, None, None]
    b = r[None, :, None]
    c = r[None, None, :]
    sep = b * b - 4 * a * c != 0
    total = int(sep.sum())
    g = np.gcd(np.gcd(np.abs(a), np.abs(b)), np.abs(c))
    total2 = int((sep & _sf_table(H)[g]).sum())
    return total, total2


def count_poly_sets(n: int, N: int, H: int) -> dict:
    """Exact exhaustive counts over coefficient boxes |a_i| <= H.

    P: degree exactly N, every irreducible factor of multiplicity < n.
    P2: the subset with n-free content.
    E_forms (n = 2 only): separable binary degree-N forms with squarefree
    content, counted directly; equals P2(2,N,H) + P2(2,N-1,H) since a form is
    either prime to Z or has Z exactly once.
    """
    if n < 2 or N < 1 or H < 1:
        raise ValueError("need n >= 2, N >= 1, H >= 1")
    if n == 2 and N == 2:
        cP, cP2 = _count_quadratics_fast(H)
    else:
        cP = cP2 = 0
        for coeffs in product(range(-H, H + 1), repeat=N + 1):
            if coeffs[-1] == 0:
                continue
            P = IntPolynomial(coeffs)
            if not _mult_lt(P, n):
                continue
            cP += 1
            g = 0
            for c in coeffs:
                g = gcd(g, c)
            if _is_nfree_small(g, n):
                cP2 += 1
    out = {"P": cP, "P2": cP2}
    if n == 2:
        lower = _count_P2(2, N - 1, H) if N >= 2 else 0
        out["P2_lower"] = lower
        out["E_forms"] = _count_forms(N, H)
    return out


def _is_nfree_small(g: int, n: int) -> bool:
    from .intutil import is_nfree

    return is_nfree(g, n)


def _count_P2(n: int, N: int, H: int) -> int:
    if N < 1:
        return 0
    if n == 2 and N == 2:
        return _count_quadratics_fast(H)[1]
    if N == 1:
        # linear polys are always separable; count squarefree-content pairs
        sf = _sf_table(H)
        r = np.arange(-H, H + 1, dtype=np.int64)
        c1 = r[r != 0][:, None]
        c0 = r[None, :]
        return int(sf[np.gcd(np.abs(c1), np.abs(c0))].sum())
    c = 0
    for coeffs in product(range(-H, H + 1), repeat=N + 1):
        if coeffs[-1] == 0:
            continue
        P = IntPolynomial(coeffs)
        if _mult_lt(P, n):
            g = 0
            for x in coeffs:
                g = gcd(g, x)
            if _is_nfree_small(g, n):
                c += 1
    return c


def _count_forms(N: int, H: int) -> int:
    """Binary degree-N forms, |coeffs| <= H, squarefree as forms (no repeated
    factor, Z at most once) with squarefree content."""
    if N == 2:
        return _count_quadratics_fast(H, forms=True)[1]
    c = 0
    for coeffs in product(range(-H, H + 1), repeat=N + 1):
        if all(x == 0 for x in coeffs):
            continue
        # strip Z powers: coeffs[j] multiplies T^j Z^(N-j), low T first
        hi = max(j for j, x in enumerate(coeffs) if x != 0)
        if hi < N - 1:
            continue  # Z^2 divides the form
        P = IntPolynomial(coeffs[: hi + 1])
        if P.degree >= 1 and not _mult_lt(P, 2):
            continue
        g = 0
        for x in coeffs:
            g = gcd(g, x)
        if _is_nfree_small(g, 2):
            c += 1
    return c


# ---------------------------------------------------------------------------
# Quadratic fields


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt d) for squarefree d != 1."""
    if d == 1 or d != squarefree_part(d):
        raise ValueError("need squarefree d != 1")
    return d if d % 4 == 1 else 4 * d


def quad_field_census(x: int) -> list[int]:
    """Fundamental discriminants with absolute value <= x, ascending by
    absolute value (negative first on ties)."""
    out = []
    for d in nfree_sieve(2, x):
        dF = fundamental_discriminant(d)
        if abs(dF) <= x:
            out.append(dF)
    out.sort(key=lambda v: (abs(v), v))
    return out


# ---------------------------------------------------------------------------
# Twist-density series


def _found_twists(cover: QuadraticCover, H: int, x: int) -> set[int]:
    """Squarefree parts of the cover's values over coprime pairs of height
    <= H (plus the fiber above infinity for even degree), clipped to twists
    whose field discriminant has absolute value <= x."""
    found: set[int] = set()

    def note(val: int):
        if val == 0:
            return
        m = squarefree_part(val)
        if m != 1 and abs(fundamental_discriminant(m)) <= x:
            found.add(m)

    if cover.degree % 2 == 0:
        note(cover.P.lc)
    N = cover.degree + (cover.degree % 2)  # even homogenization degree
    cs = list(cover.P.coeffs) + [0] * (N + 1 - len(cover.P.coeffs))
    for v in range(1, H + 1):
        vp = [v ** (N - j) for j in range(N + 1)]
        for u in range(-H, H + 1):
            if gcd(u, v) == 1:
                acc = 0
                up = 1
                for j in range(N + 1):
                    acc += cs[j] * up * vp[j]
                    up *= u
                note(acc)
    return found


def _absence_certifier(cover: QuadraticCover):
    """Cheap per-twist certificate of emptiness: some p | d with P rootless
    mod p and p prime to the leading/trailing/content data (valuation
    argument). Only sound for even degree without rational roots; otherwise
    returns a certifier that never certifies."""
    P = cover.P
    if cover.degree % 2:
        return lambda d: False
    _, factors = factor_over_Q(P)
    if any(f.degree == 1 for f, _ in factors) or any(m > 1 for _, m in factors):
        return lambda d: False
    bad = set(factorize(2 * P.lc * P.trailing * P.content))
    cache: dict[int, bool] = {}

    def certifies(d: int) -> bool:
        for p in factorize(d):
            if p in bad:
                continue
            hit = cache.get(p)
            if hit is None:
                hit = cache[p] = _rootless_mod_p(P, p)
            if hit:
                return True
        return False

    return certifies


def twist_density_series(
    cover: QuadraticCover,
    grid: list[int],
    schedule: list[int] | None = None,
) -> DensitySeries:
    """Proportion of quadratic fields of discriminant up to x arising as
    specializations of the cover: found by point search over an escalating
    height schedule, certified absent by the rootless-prime valuation
    argument, unknown otherwise."""
    if not grid:
        return DensitySeries((), (), (), ())
    if schedule is None:
        schedule = [16, 64, 256]
    x_max = max(grid)
    found = _found_twists(cover, max(schedule), x_max)
    certifies = _absence_certifier(cover)
    num = []
    den = []
    unk = []
    d_by_absdF = sorted(
        ((abs(fundamental_discriminant(d)), d) for d in nfree_sieve(2, x_max)
         if abs(fundamental_discriminant(d)) <= x_max)
    )
    statuses = []
    for _, d in d_by_absdF:
        if d in found:
            statuses.append(SOLUBLE)
        elif certifies(d):
            statuses.append(INSOLUBLE)
        else:
            statuses.append(UNKNOWN)
    for x in grid:
        n = d = u = 0
        for (adF, _), st in zip(d_by_absdF, statuses):
            if adF > x:
                break
            d += 1
            if st == SOLUBLE:
                n += 1
            elif st == UNKNOWN:
                u += 1
        num.append(n)
        den.append(d)
        unk.append(u)
    return DensitySeries(tuple(grid), tuple(num), tuple(den), tuple(unk))


# ---------------------------------------------------------------------------
# Log-power fit


@dataclass(frozen=True)
class LogFit:
    alpha: float
    intercept: float
    residual: float  # RMS of log-ratio residuals


def fit_log_exponent(series: DensitySeries, envelope: str = "upper") -> LogFit:
    """Least-squares slope of log(ratio) against log(log x): the model
    ratio ~ C * log(x)^-alpha. A fit, not a proof of the asymptotic."""
    ratios = series.upper() if envelope == "upper" else series.lower()
    if len(series.grid) < 4:
        raise ValueError("need at least 4 grid points")
    if any(r <= 0 for r in ratios):
        raise ValueError("ratios must be positive to fit")
    if any(x <= 1 for x in series.grid):
        raise ValueError("grid values must exceed 1")
    xs = np.array([log(log(x)) for x in series.grid])
    ys = np.array([log(float(r)) for r in ratios])
    A = np.vstack([xs, np.ones_like(xs)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, ys, rcond=None)
    resid = ys - A @ np.array([slope, intercept])
    return LogFit(float(-slope), float(intercept), float(sqrt(float(np.mean(resid**2)))))


# ---------------------------------------------------------------------------
# S3 survey


@dataclass(frozen=True)
class SurveyResult:
    total: int
    exhaustive: bool
    counts: dict
    proportions: dict  # flag -> (proportion, 95% binomial radius)


_S3_FLAGS = (
    "separable",
    "galois_S3",
    "delta_irreducible",
    "leading_form_ok",
    "infinity_unbranched",
    "branch_conjugate",
    "regular",
    "all",
)


def s3_survey(D: int, H: int, sample_size: int = 10**4, seed: int = 0) -> SurveyResult:
    """Proportions of the survey flags over monic cubic covers whose
    coefficients have degree <= D and coefficient height <= H.

    Exhaustive when the space is no larger than sample_size; else uniform
    sampling, reproducible per index from (seed, index)."""
    if D < 0 or H < 1:
        raise ValueError("need D >= 0 and H >= 1")
    width = 2 * H + 1
    space = width ** (3 * (D + 1))
    exhaustive = space <= sample_size
    counts = {f: 0 for f in _S3_FLAGS}

    def tally(coeff_ints: list[int]):
        a2, a1, a0 = (
            IntPolynomial(coeff_ints[i * (D + 1) : (i + 1) * (D + 1)] or [0])
            for i in range(3)
        )
        pred = s3_survey_predicates(a2, a1, a0)
        counts["separable"] += pred.separable
        counts["galois_S3"] += pred.galois_S3
        counts["delta_irreducible"] += pred.delta_irreducible
        counts["leading_form_ok"] += pred.leading_form_ok
        counts["infinity_unbranched"] += pred.infinity_unbranched
        counts["branch_conjugate"] += pred.branch_conjugate
        counts["regular"] += pred.regular
        counts["all"] += pred.all_conditions

    if exhaustive:
        total = 0
        for tup in product(range(-H, H + 1), repeat=3 * (D + 1)):
            total += 1
            tally(list(tup))
    else:
        total = sample_size
        for i in range(sample_size):
            rng = random.Random(f"{seed},{i}")
            tally([rng.randint(-H, H) for _ in range(3 * (D + 1))])
    props = {}
    for f in _S3_FLAGS:
        p = counts[f] / total
        props[f] = (p, 1.96 * sqrt(max(p * (1 - p), 1e-12) / total))
    return SurveyResult(total, exhaustive, counts, props)


# ---------------------------------------------------------------------------
# Local-global ratio series


def local_global_ratio_series(
    cover: QuadraticCover,
    grid: list[int],
    H: int,
    quick_height: int = 32,
) -> tuple[DensitySeries, DensitySeries]:
    """Counts of twists with a global point (height-bounded trichotomy) and
    of everywhere-locally-soluble twists, over the same field grid.

    Returns (global series, local series); local unknowns come from solver
    precision caps, global unknowns from the height bound."""
    if not grid:
        empty = DensitySeries((), (), (), ())
        return empty, empty
    x_max = max(grid)
    base = SuperellipticCurve(2, cover.P)
    found = _found_twists(cover, H, x_max)
    certifies = _absence_certifier(cover)
    rows = []
    for d in nfree_sieve(2, x_max):
        adF = abs(fundamental_discriminant(d))
        if adF > x_max:
            continue
        loc, _ = everywhere_locally_soluble(base.twist(d))
        if d in found:
            glob = SOLUBLE
        elif loc == INSOLUBLE or certifies(d):
            glob = INSOLUBLE
        else:
            glob = UNKNOWN
        rows.append((adF, glob, loc))
    rows.sort()
    gnum, gunk, lnum, lunk, dens = [], [], [], [], []
    for x in grid:
        gn = gu = ln = lu = dd = 0
        for adF, glob, loc in rows:
            if adF > x:
                break
            dd += 1
            gn += glob == SOLUBLE
            gu += glob == UNKNOWN
            ln += loc == SOLUBLE
            lu += loc == UNKNOWN
        gnum.append(gn)
        gunk.append(gu)
        lnum.append(ln)
        lunk.append(lu)
        dens.append(dd)
    g = DensitySeries(tuple(grid), tuple(gnum), tuple(dens), tuple(gunk))
    l = DensitySeries(tuple(grid), tuple(lnum), tuple(dens), tuple(lunk))
    return g, l
