"""Prediction of ramification in specializations from branch intersection data.

For a cover with branch orbits t_1, ..., t_s and a rational point t0, the
intersection number I_p(t0, t_i) is the p-valuation of the orbit's minimal
binary form evaluated at t0. Outside a finite exceptional set of primes,
p ramifies in the specialization exactly when some (then unique) orbit has
I_p > 0, with inertia of order e_i / gcd(e_i, I_p). The consistency check
compares these predictions against exact specialization discriminants and
must see zero mismatches.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, prod

from .covers import (
    CubicCover,
    QuadraticCover,
    SpecializationReport,
    cubic_specialize,
    quad_specialize,
)
from .intutil import factorize, valuation
from .poly import (
    HomogPolynomial,
    IntPolynomial,
    ProjectivePoint,
    discriminant,
    resultant_forms,
)

__all__ = [
    "BranchOrbit",
    "RamificationReport",
    "ConsistencyReport",
    "branch_orbits",
    "exceptional_superset",
    "intersection_number",
    "predict",
    "consistency_check",
]


@dataclass(frozen=True)
class BranchOrbit:
    """A Galois orbit of branch points: minimal binary form and the order of
    the distinguished inertia generator above it."""

    form: HomogPolynomial
    e: int

    def inertia_order(self, intersection: int) -> int:
        """Order of inertia predicted by intersection number k: e / gcd(e, k)."""
        return self.e // gcd(self.e, intersection)


def branch_orbits(cover) -> list[BranchOrbit]:
    return [BranchOrbit(form, e) for form, e in cover.branch_orbits()]


def intersection_number(orbit: BranchOrbit, t0: ProjectivePoint, p: int) -> int:
    """I_p(t0, orbit) = v_p of the orbit form at t0.

    Requires the orbit to be p-integral: p must divide neither the leading
    U-coefficient nor the leading V-coefficient of the form.
    """
    # Forms like U or V have one edge coefficient equal to 0 (the orbit sits
    # at 0 or infinity); only a prime dividing a nonzero edge coefficient
    # breaks p-integrality.
    if (orbit.form.lead_u != 0 and orbit.form.lead_u % p == 0) or (
        orbit.form.lead_v != 0 and orbit.form.lead_v % p == 0
    ):
        raise ValueError(f"orbit not {p}-integral")
    val = orbit.form.eval_proj(t0)
    if val == 0:
        raise ValueError(f"t0 = {t0} lies on the branch orbit")
    return valuation(val, p)


def exceptional_superset(cover) -> set[int]:
    """A finite, guaranteed superset of the exceptional primes: primes
    dividing the group order, the content/leading/trailing coefficients and
    discriminant of the branch polynomial, the discriminants of the orbit
    forms, and the pairwise resultants of distinct orbit forms."""
    nums: set[int] = set()

    def absorb(n: int):
        if n not in (0,):
            nums.update(factorize(n))

    absorb(cover.group_order)
    if isinstance(cover, QuadraticCover):
        base = cover.P
    elif isinstance(cover, CubicCover):
        base = cover.delta
        for a in (cover.a0, cover.a1, cover.a2):
            if a.degree >= 0:
                absorb(a.content)
                absorb(a.lc)
    else:
        raise TypeError("unsupported cover")
    absorb(base.content)
    absorb(base.lc)
    absorb(base.trailing)
    sqf = _squarefree_part_poly(base)
    if sqf.degree >= 1:
        absorb(discriminant(sqf))
    orbits = branch_orbits(cover)
    for i, oi in enumerate(orbits):
        if oi.form.lead_u:
            absorb(oi.form.lead_u)
        if oi.form.lead_v:
            absorb(oi.form.lead_v)
        deh = oi.form.dehomogenize()
        if deh.degree >= 2:
            absorb(discriminant(deh))
        for oj in orbits[i + 1 :]:
            absorb(resultant_forms(oi.form, oj.form))
    return nums


def _squarefree_part_poly(p: IntPolynomial) -> IntPolynomial:
    from .poly import factor_over_Q

    _, factors = factor_over_Q(p)
    out = IntPolynomial([1])
    for f, _ in factors:
        out = out * f
    return out


@dataclass(frozen=True)
class RamificationReport:
    """Predicted ramification of the specialization at t0."""

    t0: ProjectivePoint
    entries: tuple  # of (p, orbit_index | None, I_p, predicted_order)

    def predicted_order(self, p: int) -> int:
        for q, _idx, _ip, order in self.entries:
            if q == p:
                return order
        return 1

    def primes(self) -> list[int]:
        return [p for p, _, _, _ in self.entries]


def predict(cover, t0) -> RamificationReport:
    """Beckmann-style prediction at every prime meeting some branch orbit.

    For each prime dividing an orbit value, the orbit with positive
    intersection is recorded with the predicted inertia order
    e / gcd(e, I_p). A prime meeting several orbits is recorded with
    orbit_index None and order 0 (undetermined; such primes are exceptional).
    """
    pt = t0 if isinstance(t0, ProjectivePoint) else ProjectivePoint.from_rational(t0)
    orbits = branch_orbits(cover)
    vals = []
    for ob in orbits:
        v = ob.form.eval_proj(pt)
        if v == 0:
            raise ValueError(f"t0 = {pt} is a branch point")
        vals.append(v)
    primeset: set[int] = set()
    for v in vals:
        primeset.update(factorize(v))
    entries = []
    for p in sorted(primeset):
        hits = [
            (i, valuation(vals[i], p))
            for i in range(len(orbits))
            if vals[i] % p == 0
        ]
        if len(hits) == 1:
            i, ip = hits[0]
            entries.append((p, i, ip, orbits[i].inertia_order(ip)))
        else:
            entries.append((p, None, sum(ip for _, ip in hits), 0))
    return RamificationReport(pt, tuple(entries))


@dataclass(frozen=True)
class ConsistencyReport:
    samples: int
    checked_primes: int
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches


def consistency_check(
    cover,
    n_samples: int = 200,
    height: int = 50,
    seed: int = 0,
) -> ConsistencyReport:
    """Predictions vs exact specializations over random t0 of bounded height.

    At every prime outside the exceptional superset the predicted inertia
    order must equal the exact one, in both directions (predicted ramified
    primes must carry ramification, actual ramified primes must be
    predicted). Also asserts the discriminant lower bound: the product of odd
    non-exceptional primes with intersection number exactly 1 divides the
    specialization discriminant, hence bounds it from below.
    """
    rng = random.Random(seed)
    exc = exceptional_superset(cover)
    mismatches = []
    checked = 0
    done = 0
    is_quad = isinstance(cover, QuadraticCover)
    while done < n_samples:
        u = rng.randint(-height, height)
        v = rng.randint(1, height)
        if gcd(u, v) != 1:
            continue
        pt = ProjectivePoint(u, v)
        try:
            rep: SpecializationReport = (
                quad_specialize(cover, pt) if is_quad else cubic_specialize(cover, pt)
            )
            pred = predict(cover, pt)
        except ValueError:
            continue
        done += 1
        relevant = set(pred.primes()) | set(rep.ramified_primes)
        bound = 1
        for p in sorted(relevant):
            if p in exc:
                continue
            checked += 1
            want = pred.predicted_order(p)
            got = rep.inertia_order(p)
            if want != got:
                mismatches.append((pt, p, want, got))
            ip = next((e[2] for e in pred.entries if e[0] == p), 0)
            if p != 2 and ip == 1:
                bound *= p
        if abs(rep.disc_field) < bound:
            mismatches.append((pt, 0, bound, rep.disc_field))
    return ConsistencyReport(done, checked, tuple(mismatches))
