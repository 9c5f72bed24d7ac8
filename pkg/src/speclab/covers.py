"""Covers of the projective line over Q and their specializations.

Two families are modeled exactly: quadratic covers y^2 = P(t) and cubic covers
P(t, y) = y^3 + a2(t) y^2 + a1(t) y + a0(t), monic in y. Branch points,
ramification indices (via Newton polygons over the branch point's field),
specialization fields with exact discriminants, and the unramified-prime
sieve all live here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, prod

from .intutil import (
    factorize,
    is_nth_power,
    primes_up_to,
    squarefree_part,
    valuation,
)
from .poly import (
    INFINITY,
    HomogPolynomial,
    IntPolynomial,
    ProjectivePoint,
    discriminant,
    discriminant_y,
    factor_mod_p,
    factor_over_Q,
    format_poly,
    homogenize_minpoly,
    resultant,
)

__all__ = [
    "QuadraticCover",
    "CubicCover",
    "SpecializationReport",
    "quad_cover",
    "quad_specialize",
    "cubic_specialize",
    "cubic_field_disc",
    "cubic_field_fingerprint",
    "s3_survey_predicates",
    "SurveyPredicates",
    "chebotarev_unramified_sieve",
    "verify_unramified",
]


# ---------------------------------------------------------------------------
# Arithmetic in a number field K = Q[x]/(m), just enough for Newton polygons.


class _NF:
    """Q[x]/(m) with m monic over Q; elements are coefficient tuples."""

    def __init__(self, minpoly: list[Fraction]):
        assert minpoly[-1] == 1
        self.m = [Fraction(c) for c in minpoly]
        self.deg = len(minpoly) - 1

    def elt(self, *coeffs) -> tuple:
        cs = [Fraction(c) for c in coeffs][: self.deg]
        return tuple(cs + [Fraction(0)] * (self.deg - len(cs)))

    @property
    def zero(self):
        return self.elt()

    @property
    def one(self):
        return self.elt(1)

    @property
    def gen(self):
        return self.elt(0, 1)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scal(self, c, a):
        return tuple(Fraction(c) * x for x in a)

    def mul(self, a, b):
        out = [Fraction(0)] * (2 * self.deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        # reduce mod m
        for k in range(len(out) - 1, self.deg - 1, -1):
            c = out[k]
            if c:
                out[k] = Fraction(0)
                for j in range(self.deg + 1):
                    out[k - self.deg + j] -= c * self.m[j]
        return tuple(out[: self.deg])

    def is_zero(self, a) -> bool:
        return all(x == 0 for x in a)

    def inv(self, a):
        # extended Euclid of a(x) against m(x) over Q
        if self.is_zero(a):
            raise ZeroDivisionError

        def trim(v):
            v = list(v)
            while v and v[-1] == 0:
                v.pop()
            return v

        def divmod_q(num, den):
            num = trim(num)
            q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
            while len(num) >= len(den):
                c = num[-1] / den[-1]
                k = len(num) - len(den)
                q[k] = c
                for j in range(len(den)):
                    num[k + j] -= c * den[j]
                num = trim(num)
            return q, num

        r0, r1 = trim(self.m), trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = divmod_q(r0, r1)
            snew = s0[:] + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        snew[i + j] -= qc * sc
            r0, s0 = r1, s1
            r1, s1 = (r if r else [Fraction(0)]), trim(snew) or [Fraction(0)]
        if not r1 or r1[0] == 0:
            raise ZeroDivisionError("element not invertible (minpoly not irreducible?)")
        out = [sc / r1[0] for sc in s1]
        out += [Fraction(0)] * (self.deg - len(out))
        return tuple(out[: self.deg])


def _kp_trim(a: list) -> list:
    while a and all(x == 0 for x in a[-1]):
        a.pop()
    return a


def _kp_val(a: list) -> int | None:
    """s-valuation of a K[s] polynomial (None for 0)."""
    for i, c in enumerate(a):
        if any(x != 0 for x in c):
            return i
    return None


def _kp_mul(K: _NF, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not K.is_zero(x):
            for j, y in enumerate(b):
                out[i + j] = K.add(out[i + j], K.mul(x, y))
    return _kp_trim(out)


def _kp_add(K: _NF, a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [K.zero] * (n - len(a))
    b = b + [K.zero] * (n - len(b))
    return _kp_trim([K.add(x, y) for x, y in zip(a, b)])


def _kp_shift(K: _NF, a: list, k: int) -> list:
    """Multiply by s^k (k >= 0)."""
    return [K.zero] * k + a if a else []


# Newton-polygon branch analysis. F is a list over Y-powers of K[s] polys.


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(points)
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _k_poly_roots(K: _NF, phi: list) -> list[tuple[tuple, int]]:
    """Roots in K of a K-polynomial of degree <= 3 with their multiplicities.

    Only repeated roots must be found exactly (simple roots are merely
    counted); for degree <= 3 a repeated root is always K-rational, read off
    gcd(phi, phi'). Returns [(root, multiplicity)] for K-rational repeated
    roots plus a count of the remaining simple-root mass under key None.
    """
    # derivative
    d = [K.scal(i, c) for i, c in enumerate(phi)][1:]
    d = _kp_trimK(K, d)
    phi = _kp_trimK(K, phi[:])
    g = _k_gcd(K, phi, d)
    deg_g = len(g) - 1
    out: list[tuple[tuple, int]] = []
    if deg_g == 0:
        return out  # all roots simple
    if deg_g == 1:
        # single repeated root c = -g0/g1, multiplicity from phi
        c = K.mul(K.sub(K.zero, g[0]), K.inv(g[1]))
        mult = _root_multiplicity(K, phi, c)
        out.append((c, mult))
        return out
    if deg_g == 2:
        # phi = (x-c)^3 (deg phi 3): c from phi' ~ 3(x-c)^2: c = root of gcd
        # gcd itself is (x-c)^2 up to scalar: c = -g1/(2 g2)
        c = K.mul(K.sub(K.zero, g[1]), K.inv(K.scal(2, g[2])))
        mult = _root_multiplicity(K, phi, c)
        if mult < 2:
            raise NotImplementedError("repeated factor of degree >= 2")
        out.append((c, mult))
        return out
    raise NotImplementedError("residual degree > 3")


def _kp_trimK(K: _NF, a: list) -> list:
    while a and K.is_zero(a[-1]):
        a.pop()
    return a


def _k_gcd(K: _NF, a: list, b: list) -> list:
    a, b = _kp_trimK(K, a[:]), _kp_trimK(K, b[:])
    while b:
        # a mod b
        r = a[:]
        inv = K.inv(b[-1])
        while len(r) >= len(b):
            c = K.mul(r[-1], inv)
            k = len(r) - len(b)
            for j in range(len(b)):
                r[k + j] = K.sub(r[k + j], K.mul(c, b[j]))
            r = _kp_trimK(K, r)
            if not r:
                break
        a, b = b, r
    if a:
        inv = K.inv(a[-1])
        a = [K.mul(c, inv) for c in a]
    return a if a else [K.zero]


def _root_multiplicity(K: _NF, phi: list, c) -> int:
    m = 0
    cur = phi[:]
    while cur:
        val = K.zero
        for co in reversed(cur):
            val = K.add(K.mul(val, c), co)
        if not K.is_zero(val):
            break
        # synthetic division by (x - c)
        q = [K.zero] * (len(cur) - 1)
        acc = cur[-1]
        for i in range(len(cur) - 2, -1, -1):
            q[i] = acc
            acc = K.add(cur[i], K.mul(acc, c))
        cur = _kp_trimK(K, q)
        m += 1
    return m


_MAX_PUISEUX_DEPTH = 64


def _branch_indices(K: _NF, F: list, only_positive: bool, depth: int = 0) -> list[int]:
    """Ramification indices of the places of F(s, Y) = 0 over s = 0.

    F: list over Y-powers of K[s] polynomials; separable in Y over K(s).
    With only_positive, only branches with val(y) > 0 are reported (used in
    recursion after recentering); otherwise every root of F is accounted for,
    so the returned indices sum to deg_Y F.
    """
    if depth > _MAX_PUISEUX_DEPTH:
        raise RuntimeError("Newton-Puiseux recursion too deep")
    F = [f[:] for f in F]
    while F and not F[-1]:
        F.pop()
    out: list[int] = []
    # strip an exact Y-factor: the branch y = 0, valuation +infinity
    if F and (not F[0] or _kp_val(F[0]) is None):
        out.append(1)
        F = F[1:]
    pts = []
    for j, c in enumerate(F):
        v = _kp_val(c)
        if v is not None:
            pts.append((j, v))
    if len(pts) <= 1:
        return out
    hull = _lower_hull(pts)
    for (j1, v1), (j2, v2) in zip(hull, hull[1:]):
        lam = Fraction(v1 - v2, j2 - j1)  # root valuation
        if only_positive and lam <= 0:
            continue
        b = lam.denominator
        ell = j2 - j1
        if b > 1:
            k = ell // b
            if k > 1:
                # residual of degree > 1 with a fractional slope: cannot occur
                # for deg_Y <= 3, which is all this engine serves.
                raise NotImplementedError("wide fractional segment")
            out.append(b)
            continue
        # integer slope: residual polynomial of degree ell
        phi = [K.zero] * (ell + 1)
        for j, v in pts:
            if j1 <= j <= j2 and v == v1 - (j - j1) * lam:
                phi[j - j1] = F[j][v]
        phi = _kp_trimK(K, phi)
        rep = _k_poly_roots(K, phi)
        reps_mass = sum(m for _, m in rep)
        out.extend([1] * (ell - reps_mass))
        for c, mult in rep:
            # recenter: y = s^lam (c + y'), isolate the mult continuing roots
            G = _recenter(K, F, int(lam), c)
            sub = _branch_indices(K, G, only_positive=True, depth=depth + 1)
            if sum(sub) != mult:
                raise AssertionError("branch recursion lost roots")
            out.extend(sub)
    return out


def _recenter(K: _NF, F: list, lam: int, c) -> list:
    """G(s, Y) ~ F(s, s^lam (c + Y)) cleared to K[s][Y]."""
    n = len(F) - 1
    # binomial expansion: coefficient of Y^m is sum_j F_j s^(j lam) C(j,m) c^(j-m)
    from math import comb

    G: list[list] = [[] for _ in range(n + 1)]
    cpows = [K.one]
    for _ in range(n):
        cpows.append(K.mul(cpows[-1], c))
    shift = min(lam * j for j in range(n + 1)) if lam < 0 else 0
    for j, Fj in enumerate(F):
        if not Fj:
            continue
        for m in range(j + 1):
            coef = K.scal(comb(j, m), cpows[j - m])
            if K.is_zero(coef):
                continue
            term = [K.mul(x, coef) for x in Fj]
            term = _kp_shift(K, term, lam * j - shift)
            G[m] = _kp_add(K, G[m], term)
    return G


# ---------------------------------------------------------------------------
# Quadratic covers


@dataclass(frozen=True)
class QuadraticCover:
    """y^2 = P(t) with P separable of squarefree content."""

    P: IntPolynomial

    def __post_init__(self):
        if self.P.degree < 1:
            raise ValueError("P must be nonconstant")
        if not _squarefree_over_Q(self.P):
            raise ValueError("P must be separable")
        if not _is_squarefree_int(self.P.content):
            raise ValueError("content of P must be squarefree")

    @property
    def degree(self) -> int:
        return self.P.degree

    @property
    def infinity_branched(self) -> bool:
        return self.P.degree % 2 == 1

    @property
    def branch_count(self) -> int:
        return self.P.degree + (1 if self.infinity_branched else 0)

    @property
    def group_order(self) -> int:
        return 2

    def branch_orbits(self) -> list[tuple[HomogPolynomial, int]]:
        """(minimal binary form, ramification index) per Galois orbit."""
        out = []
        _, factors = factor_over_Q(self.P)
        for f, m in factors:
            assert m == 1
            out.append((homogenize_minpoly(f) if f.degree > 1 else homogenize_minpoly(Fraction(-f.coeffs[0], f.coeffs[1])), 2))
        if self.infinity_branched:
            out.append((homogenize_minpoly(INFINITY), 2))
        return out

    def hom_value(self, pt: ProjectivePoint) -> int:
        """P_hom(u, v) * v^(deg P mod 2): d with E_t0 = Q(sqrt d) up to squares."""
        form = HomogPolynomial.from_poly(self.P)
        val = form.eval_proj(pt)
        if self.P.degree % 2 == 1:
            val *= pt.v
        return val


def _squarefree_over_Q(p: IntPolynomial) -> bool:
    if p.degree < 1:
        return False
    return resultant(p, p.derivative()) != 0


def _is_squarefree_int(n: int) -> bool:
    if n == 0:
        return False
    return all(e < 2 for e in factorize(n).values())


def quad_cover(P: IntPolynomial) -> QuadraticCover:
    return QuadraticCover(P)


@dataclass(frozen=True)
class SpecializationReport:
    """Invariants of the residue field of a cover at a rational point."""

    kind: str  # "quadratic" | "cubic"
    t0: ProjectivePoint
    group: str  # "C1", "C2", "C3", "S3"
    m: int | None = None  # squarefree twist class (quadratic kind)
    d_K: int | None = None  # cubic subfield discriminant (cubic kind)
    d_k: int | None = None  # quadratic resolvent discriminant (S3)
    disc_field: int = 1  # discriminant of the specialization field (signed)
    ramified_primes: tuple[int, ...] = ()

    def inertia_order(self, p: int) -> int:
        """Order of (tame) inertia at p in the Galois group of the
        specialization; 1 when p is unramified."""
        if self.kind == "quadratic":
            return 2 if self.disc_field % p == 0 else 1
        if self.group in ("S3", "C3") and self.d_K is not None:
            v = valuation(self.d_K, p) if self.d_K % p == 0 else 0
            if v >= 2:
                return 3
            if v == 1:
                return 2
            if self.d_k is not None and self.d_k % p == 0:
                return 2
            return 1
        if self.group == "C2":
            return 2 if self.disc_field % p == 0 else 1
        return 1


def _quad_field_disc(m: int) -> int:
    return m if m % 4 == 1 else 4 * m


def quad_specialize(cover: QuadraticCover, t0) -> SpecializationReport:
    """Residue field Q(sqrt(P(t0))) data. t0 may be rational or [1:0] when
    deg P is even. Branch points (P(t0) = 0, or infinity for odd degree) raise."""
    pt = t0 if isinstance(t0, ProjectivePoint) else ProjectivePoint.from_rational(t0)
    val = cover.hom_value(pt)
    if val == 0:
        raise ValueError(f"t0 = {pt} is a branch point")
    m = squarefree_part(val)
    if m == 1:
        return SpecializationReport("quadratic", pt, "C1", m=1, disc_field=1)
    d = _quad_field_disc(m)
    ram = tuple(sorted(factorize(d)))
    return SpecializationReport(
        "quadratic", pt, "C2", m=m, disc_field=d, ramified_primes=ram
    )


# ---------------------------------------------------------------------------
# Cubic covers


@dataclass(frozen=True)
class CubicCover:
    """P(t, y) = y^3 + a2(t) y^2 + a1(t) y + a0(t), separable over Q(t)."""

    a2: IntPolynomial
    a1: IntPolynomial
    a0: IntPolynomial
    delta: IntPolynomial = field(init=False)

    def __post_init__(self):
        d = discriminant_y([self.a0, self.a1, self.a2, IntPolynomial([1])])
        if d.degree < 0:
            raise ValueError("cover is not separable over Q(t)")
        object.__setattr__(self, "delta", d)

    @property
    def coeff_degree(self) -> int:
        return max(self.a2.degree, self.a1.degree, self.a0.degree, 0)

    def generic_group(self) -> str:
        """Galois group of the splitting field over Q(T): S3, C3, C2 or C1."""
        if self._reducible_over_QT():
            # a Q(T)-root exists; quotient is the quadratic cofactor
            return "C2" if not _is_square_in_QT(self.delta) else "C1"
        return "C3" if _is_square_in_QT(self.delta) else "S3"

    @property
    def group_order(self) -> int:
        return {"S3": 6, "C3": 3, "C2": 2, "C1": 1}[self.generic_group()]

    def _reducible_over_QT(self) -> bool:
        import sympy

        T, Y = sympy.symbols("T Y")
        expr = Y**3 + _to_sympy(self.a2, T) * Y**2 + _to_sympy(self.a1, T) * Y + _to_sympy(
            self.a0, T
        )
        _, factors = sympy.Poly(expr, Y, T, domain=sympy.ZZ).factor_list()
        return len(factors) > 1 or any(m > 1 for _, m in factors)

    def cycle_type_at(self, tau) -> list[int]:
        """Cycle type of monodromy on the three sheets above tau; tau is a
        rational number, INFINITY, or an irreducible IntPolynomial minpoly."""
        if tau is INFINITY:
            K = _NF([Fraction(0), Fraction(1)])
            D = self.coeff_degree
            F = []
            for a in (self.a0, self.a1, self.a2):
                rev = a.reverse(D) if a.degree >= 0 else IntPolynomial([])
                F.append([K.elt(c) for c in rev.coeffs])
            F.append([K.zero] * D + [K.one])  # Y^3 coefficient s^D
            return sorted(_branch_indices(K, F, only_positive=False))
        if isinstance(tau, IntPolynomial):
            if tau.degree == 1:
                tau = Fraction(-tau.coeffs[0], tau.coeffs[1])
            else:
                mon = [Fraction(c, tau.lc) for c in tau.coeffs]
                K = _NF(mon)
                g = K.gen
                F = [_compose_shift(K, a, g) for a in (self.a0, self.a1, self.a2)]
                F.append([K.one])
                return sorted(_branch_indices(K, F, only_positive=False))
        tau = Fraction(tau)
        K = _NF([Fraction(0), Fraction(1)])
        F = [_compose_shift(K, a, K.elt(tau)) for a in (self.a0, self.a1, self.a2)]
        F.append([K.one])
        return sorted(_branch_indices(K, F, only_positive=False))

    def branch_orbits(self) -> list[tuple[HomogPolynomial, int]]:
        """(minimal binary form, inertia order) per branch orbit, including
        infinity when it is branched. Roots of delta where the fiber merely
        degenerates without ramification (nodes) are excluded."""
        out = []
        _, factors = factor_over_Q(self.delta)
        for f, _m in factors:
            ct = self.cycle_type_at(f)
            e = lcm(*ct)
            if e > 1:
                out.append((homogenize_minpoly(f) if f.degree > 1 else homogenize_minpoly(Fraction(-f.coeffs[0], f.coeffs[1])), e))
        ct = self.cycle_type_at(INFINITY)
        e = lcm(*ct)
        if e > 1:
            out.append((homogenize_minpoly(INFINITY), e))
        return out

    @property
    def branch_count(self) -> int:
        r = 0
        for form, _ in self.branch_orbits():
            r += form.degree
        return r

    def specialized_cubic(self, pt: ProjectivePoint) -> IntPolynomial:
        """Monic integer cubic with root v^D * y(t0), t0 = u/v (v != 0)."""
        if pt.is_infinity:
            raise ValueError("cubic specialization at infinity is unsupported")
        D = self.coeff_degree
        u, v = pt.u, pt.v
        A = []
        for i, a in enumerate((self.a0, self.a1, self.a2)):
            if a.degree < 0:
                A.append(0)
                continue
            hom = HomogPolynomial.from_poly(a, D)
            A.append(hom.eval_proj(pt) * v ** ((2 - i) * D))
        return IntPolynomial([A[0], A[1], A[2], 1])


def _to_sympy(p: IntPolynomial, T):
    return sum(int(c) * T**i for i, c in enumerate(p.coeffs))


def _is_square_in_QT(p: IntPolynomial) -> bool:
    if p.degree < 0:
        raise ValueError("zero polynomial")
    cont, factors = factor_over_Q(p)
    if any(m % 2 for _, m in factors):
        return False
    return cont > 0 and is_nth_power(cont, 2)


def _compose_shift(K: _NF, a: IntPolynomial, tau) -> list:
    """a(tau + s) as a K[s] polynomial."""
    if a.degree < 0:
        return []
    # Horner in (tau + s)
    out: list = []
    lin = [tau, K.one]  # tau + s
    for c in reversed(a.coeffs):
        out = _kp_mul(K, out, lin) if out else []
        out = _kp_add(K, out, [K.elt(Fraction(c))])
    return out


def cubic_field_disc(f: IntPolynomial) -> int:
    """Field discriminant of Q[x]/(f) for an irreducible monic integer cubic.

    Primary route: Round 2 maximal order. Independent cross-check: the
    Dedekind criterion at every prime whose square divides disc(f) must agree
    on p-maximality of Z[x]/(f); a disagreement raises.
    """
    if f.degree != 3 or f.lc != 1:
        raise ValueError("need a monic cubic")
    import sympy

    x = sympy.Symbol("x")
    sp = sympy.Poly([int(c) for c in f.coeffs[::-1]], x, domain=sympy.ZZ)
    if not sp.is_irreducible:
        raise ValueError("cubic is reducible")
    _, dK = __import__("sympy.polys.numberfields.basis", fromlist=["round_two"]).round_two(sp)
    dK = int(dK)
    df = discriminant(f)
    for p in sorted(factorize(df)):
        if df % (p * p):
            continue
        maximal = _dedekind_p_maximal(f, p)
        v_f, v_K = valuation(df, p), (valuation(dK, p) if dK % p == 0 else 0)
        if maximal and v_K != v_f:
            raise AssertionError(f"Dedekind says Z[x]/(f) {p}-maximal but v_{p} drops")
        if not maximal and v_K >= v_f:
            raise AssertionError(f"Dedekind says Z[x]/(f) not {p}-maximal but v_{p} kept")
    return dK


def _dedekind_p_maximal(f: IntPolynomial, p: int) -> bool:
    """Dedekind's criterion: is Z[x]/(f) maximal at p? (f monic.)"""
    _, factors = factor_mod_p(f, p, seed=0)
    g_bar = IntPolynomial([1])
    h_bar = IntPolynomial([1])
    for fac, m in factors:
        g_bar = _mod_poly(g_bar * fac, p)
        for _ in range(m - 1):
            h_bar = _mod_poly(h_bar * fac, p)
    g, h = g_bar, h_bar  # lifts with coefficients in [0, p)
    T = g * h - f
    assert all(c % p == 0 for c in T.coeffs)
    T = IntPolynomial([c // p for c in T.coeffs])
    d = _gcd_mod(_gcd_mod(T, g_bar, p), h_bar, p)
    return d.degree == 0


def _mod_poly(q: IntPolynomial, p: int) -> IntPolynomial:
    return IntPolynomial([c % p for c in q.coeffs])


def _gcd_mod(a: IntPolynomial, b: IntPolynomial, p: int) -> IntPolynomial:
    from .poly import _gf_gcd, _gf_trim  # reuse the F_p helpers

    g = _gf_gcd(_gf_trim([c % p for c in a.coeffs]), _gf_trim([c % p for c in b.coeffs]), p)
    return IntPolynomial(g if g else [0])


def cubic_specialize(cover: CubicCover, t0) -> SpecializationReport:
    """Splitting field data of P(t0, y) over Q at a rational t0."""
    pt = t0 if isinstance(t0, ProjectivePoint) else ProjectivePoint.from_rational(t0)
    spec = cover.specialized_cubic(pt)
    disc = discriminant(spec)
    if disc == 0:
        raise ValueError(f"t0 = {pt} is a branch point of the discriminant locus")
    _, factors = factor_over_Q(spec)
    degrees = sorted(f.degree for f, m in factors for _ in range(m))
    if degrees == [1, 1, 1]:
        return SpecializationReport("cubic", pt, "C1", disc_field=1)
    if degrees == [1, 2]:
        quad = next(f for f, _ in factors if f.degree == 2)
        mq = squarefree_part(discriminant(quad))
        d = _quad_field_disc(mq)
        return SpecializationReport(
            "cubic", pt, "C2", disc_field=d,
            ramified_primes=tuple(sorted(factorize(d))) if d != 1 else (),
        )
    dK = cubic_field_disc(spec)
    if is_nth_power(disc, 2):
        ram = tuple(sorted(factorize(dK))) if abs(dK) != 1 else ()
        return SpecializationReport(
            "cubic", pt, "C3", d_K=dK, disc_field=dK, ramified_primes=ram
        )
    mq = squarefree_part(disc)
    dk = _quad_field_disc(mq)
    dF = abs(dk) * dK * dK
    ram = tuple(sorted(set(factorize(dK)) | set(factorize(dk))))
    return SpecializationReport(
        "cubic", pt, "S3", d_K=dK, d_k=dk, disc_field=dF, ramified_primes=ram
    )


def cubic_field_fingerprint(f: IntPolynomial, nprimes: int = 50) -> tuple:
    """Heuristic identity key for the cubic field Q[x]/(f): the field
    discriminant plus residue degree patterns at the nprimes smallest primes
    not dividing disc(f). NOT certifying: equal fingerprints do not prove an
    isomorphism (they merely make distinctness overwhelmingly likely)."""
    dK = cubic_field_disc(f)
    df = discriminant(f)
    pats = []
    p = 2
    from .intutil import is_probable_prime

    while len(pats) < nprimes:
        if is_probable_prime(p) and df % p != 0:
            _, facs = factor_mod_p(f, p, seed=0)
            pats.append(tuple(sorted(g.degree for g, m in facs for _ in range(m))))
        p += 1
    return (dK, tuple(pats))


# ---------------------------------------------------------------------------
# The cubic survey predicates


@dataclass(frozen=True)
class SurveyPredicates:
    separable: bool
    galois_S3: bool
    s3_witness: int | None
    delta_irreducible: bool
    leading_form_ok: bool
    infinity_unbranched: bool
    branch_conjugate: bool
    regular: bool

    @property
    def all_conditions(self) -> bool:
        return (
            self.separable
            and self.galois_S3
            and self.delta_irreducible
            and self.leading_form_ok
        )


def s3_survey_predicates(
    a2: IntPolynomial, a1: IntPolynomial, a0: IntPolynomial, witness_range: int = 12
) -> SurveyPredicates:
    """Decide the survey conditions for y^3 + a2 y^2 + a1 y + a0.

    galois_S3 is decided exactly (specialization witness fast path, bivariate
    factorization + discriminant-square fallback). leading_form_ok asks the
    degree-D leading coefficients to form an irreducible quadratic, which
    forces the fiber above infinity to be unbranched; infinity_unbranched
    itself is computed exactly from the Newton polygon at infinity.
    """
    try:
        cover = CubicCover(a2, a1, a0)
    except ValueError:
        false = False
        return SurveyPredicates(false, false, None, false, false, false, false, false)
    delta = cover.delta

    witness = None
    for t0 in _witness_points(witness_range):
        try:
            spec = cover.specialized_cubic(ProjectivePoint.from_rational(t0))
        except ValueError:
            continue
        disc = discriminant(spec)
        if disc == 0 or is_nth_power(disc, 2):
            continue
        if _monic_cubic_irreducible(spec):
            witness = t0
            break
    if witness is not None:
        galois_S3 = True
    else:
        galois_S3 = (not cover._reducible_over_QT()) and not _is_square_in_QT(delta)

    cont, dfac = factor_over_Q(delta)
    delta_irred = len(dfac) == 1 and dfac[0][1] == 1 and dfac[0][0].degree >= 1

    D = cover.coeff_degree
    lead = [0, 0, 0]
    for i, a in enumerate((cover.a0, cover.a1, cover.a2)):
        lead[i] = a.coeffs[D] if a.degree == D else 0
    lf_ok = lead[2] != 0 and not is_nth_power(lead[1] ** 2 - 4 * lead[2] * lead[0], 2)

    inf_unbranched = cover.cycle_type_at(INFINITY) == [1, 1, 1]
    branch_conj = delta_irred and inf_unbranched
    regular = galois_S3 and any(m % 2 and f.degree >= 1 for f, m in dfac)
    return SurveyPredicates(
        True, galois_S3, witness, delta_irred, lf_ok, inf_unbranched, branch_conj, regular
    )


def _witness_points(rng: int):
    for k in range(rng + 1):
        if k == 0:
            yield 0
        else:
            yield k
            yield -k


def _monic_cubic_irreducible(f: IntPolynomial) -> bool:
    """Monic integer cubic: reducible iff it has an integer root dividing f(0)."""
    c0 = f.coeffs[0]
    if c0 == 0:
        return False
    divisors = [1]
    for p, e in factorize(c0).items():
        divisors = [d * p**k for d in divisors for k in range(e + 1)]
    for d in divisors:
        if f(d) == 0 or f(-d) == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Chebotarev unramified sieve


def chebotarev_unramified_sieve(
    R: IntPolynomial, bound: int
) -> tuple[list[int], float, float]:
    """Primes p <= bound (p not dividing lc(R)*content) where R has no root
    mod p. Returns (primes, density among considered primes, derangement
    estimate = that density; Chebotarev's theorem makes it converge to
    |C_sigma| / |G| for the fixed-point-free classes)."""
    if R.degree < 1:
        raise ValueError("R must be nonconstant")
    out = []
    considered = 0
    for p in primes_up_to(bound):
        if R.lc % p == 0 or R.content % p == 0:
            continue
        considered += 1
        if _rootless_mod_p(R, p):
            out.append(p)
    density = len(out) / considered if considered else 0.0
    return out, density, density


def _rootless_mod_p(R: IntPolynomial, p: int) -> bool:
    """No root in F_p: gcd(x^p - x, R) is constant. Assumes p prime."""
    from .poly import _gf_gcd, _gf_pow_mod, _gf_trim

    a = _gf_trim([c % p for c in R.coeffs])
    if not a:
        raise ValueError("R vanishes mod p")
    if len(a) == 1:
        return True
    if p <= len(a):
        return all(_eval_mod(a, t, p) for t in range(p))
    xp = _gf_pow_mod([0, 1], p, a, p)
    diff = xp[:]
    while len(diff) < 2:
        diff = diff + [0]
    diff = _gf_trim([(c - (1 if i == 1 else 0)) % p for i, c in enumerate(diff)])
    if not diff:
        return False  # x^p == x mod R: R splits completely, has roots
    return len(_gf_gcd(diff, a, p)) == 1


def _eval_mod(coeffs: list[int], t: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * t + c) % p
    return acc


def splits_completely(R: IntPolynomial, p: int) -> bool:
    """R factors into distinct linear factors mod p (and p keeps the degree)."""
    if R.lc % p == 0:
        return False
    _, facs = factor_mod_p(R, p, seed=0)
    return all(f.degree == 1 and m == 1 for f, m in facs) and sum(
        f.degree * m for f, m in facs
    ) == R.degree


def verify_unramified(
    cover,
    sieve_primes: list[int],
    exceptional: set[int],
    n_samples: int = 200,
    height: int = 1000,
    seed: int = 0,
) -> list[tuple[ProjectivePoint, int]]:
    """Empirical check that no sampled specialization ramifies at a sieve
    prime outside the exceptional set. Returns the violations (want: none)."""
    rng = random.Random(seed)
    bad: list[tuple[ProjectivePoint, int]] = []
    pset = [p for p in sieve_primes if p not in exceptional]
    done = 0
    while done < n_samples:
        u = rng.randint(-height, height)
        v = rng.randint(1, height)
        if gcd(u, v) != 1:
            continue
        pt = ProjectivePoint(u, v)
        try:
            if isinstance(cover, QuadraticCover):
                rep = quad_specialize(cover, pt)
            else:
                rep = cubic_specialize(cover, pt)
        except ValueError:
            continue
        done += 1
        for p in pset:
            if p in rep.ramified_primes:
                bad.append((pt, p))
    return bad
