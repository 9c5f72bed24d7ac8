"""Exact integer arithmetic: valuations, radicals, n-free parts, power residues.

All functions are deterministic and exact. Integers are arbitrary-precision
Python ints; rationals are fractions.Fraction. Randomized subroutines
(Miller-Rabin, Brent rho) draw from a PRNG seeded per call, so results are
reproducible and independent of global random state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod

__all__ = [
    "valuation",
    "is_probable_prime",
    "factorize",
    "radical",
    "nfree_part",
    "is_nfree",
    "nfree_sieve",
    "squarefree_part",
    "is_nth_power",
    "nth_root",
    "ValuationProfile",
    "bm_decomposition",
    "legendre",
    "is_qth_power_mod",
    "primes_up_to",
]

_SMALL_PRIME_BOUND = 10**6
_small_primes_cache: list[int] | None = None


def primes_up_to(bound: int) -> list[int]:
    """Primes <= bound by a byte sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, bound + 1) if sieve[i]]


def _small_primes() -> list[int]:
    global _small_primes_cache
    if _small_primes_cache is None:
        _small_primes_cache = primes_up_to(_SMALL_PRIME_BOUND)
    return _small_primes_cache


def valuation(n: int | Fraction, p: int) -> int:
    """p-adic valuation. Raises on n == 0 (valuation is infinite)."""
    if p < 2:
        raise ValueError("p must be >= 2")
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_probable_prime(n: int, rounds: int = 64, seed: int = 0) -> bool:
    """Miller-Rabin with deterministic small bases plus seeded random rounds.

    Deterministic (correct, not merely probable) below 3.3*10^24 via the known
    base set; beyond that the error probability is <= 4^-rounds.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    def witness(a: int) -> bool:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    bases = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
    if n >= 3317044064679887385961981:
        rng = random.Random(f"{seed},{n}")
        bases += [rng.randrange(2, n - 1) for _ in range(rounds)]
    return not any(witness(a) for a in bases)


def _brent_rho(n: int, seed: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    rng = random.Random(f"{seed},{n}")
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: e}. n must be nonzero; units give {}."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            v = 0
            while n % p == 0:
                n //= p
                v += 1
            out[p] = v
    if n == 1:
        return out
    if n < _SMALL_PRIME_BOUND * _SMALL_PRIME_BOUND or is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        d = _brent_rho(m, seed=len(stack))
        stack += [d, m // d]
    return out


def radical(n: int) -> int:
    """Product of the distinct primes dividing n; always positive. rad(+-1)=1."""
    return prod(factorize(n))


def nfree_part(n: int, k: int) -> int:
    """n divided by its largest k-th power divisor. Carries the sign of n."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if n == 0:
        raise ValueError("0 has no k-free part")
    sign = -1 if n < 0 else 1
    core = 1
    for p, e in factorize(n).items():
        core *= p ** (e % k)
    return sign * core


def squarefree_part(n: int) -> int:
    return nfree_part(n, 2)


def is_nfree(n: int, k: int) -> bool:
    """True when no prime p has p^k | n. 0 is not k-free by convention;
    the units +1 and -1 are."""
    if n == 0:
        return False
    if abs(n) == 1:
        return True
    return all(e < k for e in factorize(n).values())


def nfree_sieve(k: int, x: int) -> list[int]:
    """All k-free d with |d| <= x, both signs, excluding 0 and +1.

    These are exactly the twisting integers: -1 is included, 1 is the trivial
    twist and is excluded. Sorted ascending.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if x < 1:
        return []
    import numpy as np

    free = np.ones(x + 1, dtype=bool)
    free[0] = False
    p = 2
    while p**k <= x:
        if is_probable_prime(p):
            free[p**k :: p**k] = False
        p += 1
    pos = np.nonzero(free)[0]
    out = [-int(d) for d in pos[::-1]] + [int(d) for d in pos if d != 1]
    return out


def is_nth_power(n: int, k: int) -> bool:
    """Exact test for n being a perfect k-th power of an integer."""
    return nth_root(n, k) is not None


def nth_root(n: int, k: int) -> int | None:
    """Integer y with y^k == n, or None. For even k only y >= 0 is returned."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        if k % 2 == 0:
            return None
        y = nth_root(-n, k)
        return None if y is None else -y
    if n in (0, 1):
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**k == n else None


@dataclass(frozen=True)
class ValuationProfile:
    """Decomposition of |n| by valuation bands: n = +-prod_m B_m where B_m is
    the product of p^v over primes with v_p(n) = m."""

    value: int
    bands: dict[int, int]  # m -> B_m (only m with B_m != 1)

    def band(self, m: int) -> int:
        return self.bands.get(m, 1)

    def band_at_least(self, q0: int) -> int:
        return prod(b for m, b in self.bands.items() if m >= q0)


def bm_decomposition(n: int, q0: int = 2) -> ValuationProfile:
    """Valuation-band decomposition of n with the radical bound checked.

    Verifies rad(n) <= |n| / B_{>=q0}^((q0-1)/q0) ... concretely the exact
    integer form: rad(n)^q0 * B_{>=q0}^(q0-1) <= |n|^q0, which holds because
    every prime in a band m >= q0 contributes p to the radical but p^m >= p^q0
    to |n|.
    """
    if n == 0:
        raise ValueError("cannot decompose 0")
    if q0 < 2:
        raise ValueError("q0 must be >= 2")
    fac = factorize(n)
    bands: dict[int, int] = {}
    for p, e in fac.items():
        bands[e] = bands.get(e, 1) * p**e
    prof = ValuationProfile(value=n, bands=bands)
    rad = prod(fac)
    bq = prof.band_at_least(q0)
    assert rad**q0 * bq ** (q0 - 1) <= abs(n) ** q0
    return prof


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p; values in {-1, 0, 1}."""
    if p == 2 or not is_probable_prime(p):
        raise ValueError("p must be an odd prime")
    a %= p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return 1 if s == 1 else -1


def is_qth_power_mod(a: int, q: int, p: int) -> bool:
    """Whether a is a q-th power residue mod the prime p, for prime q | p-1.

    Requires p == 1 (mod q); other p make every unit a q-th power and the
    caller almost certainly holds a wrong hypothesis, so that is an error.
    """
    if not is_probable_prime(p):
        raise ValueError("p must be prime")
    if (p - 1) % q != 0:
        raise ValueError("need p == 1 (mod q)")
    a %= p
    if a == 0:
        return True
    return pow(a, (p - 1) // q, p) == 1
