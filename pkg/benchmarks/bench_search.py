"""Compare the compiled sieve kernel against the pure numpy fallback.

Usage: python benchmarks/bench_search.py [--height 3000] [--repeat 3]
"""

import argparse
import time

from speclab.kernels import available_backends, backend_name, search_pairs
from speclab.poly import parse_poly

CASES = [
    ("y^2 = t^3 - 2", 2, "T^3 - 2", 1),
    ("y^2 = 2(t^4 - 17)", 2, "T^4 - 17", 2),
    ("y^2 = (t^2+1)(t^2+2)(t^4+2)", 2, "T^2+1", None),  # product below
    ("y^3 = 3(t^4 + 1)", 3, "T^4 + 1", 3),
]


def curve_coeffs(label, text):
    P = parse_poly(text)
    if label.startswith("y^2 = (t^2+1)"):
        P = parse_poly("T^2+1") * parse_poly("T^2+2") * parse_poly("T^4+2")
    M = P.degree + (P.degree % 2)
    coeffs = list(P.coeffs) + [0] * (M + 1 - len(P.coeffs))
    return coeffs, M


def run(force_pure, H, repeat):
    rows = []
    for label, n, text, d in CASES:
        d = d or 3
        coeffs, M = curve_coeffs(label, text)
        best = float("inf")
        pts = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            pts = search_pairs(coeffs, M, n, d, H, force_pure=force_pure)
            best = min(best, time.perf_counter() - t0)
        rows.append((label, len(pts), best))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--height", type=int, default=3000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    print(f"available backends: {', '.join(backends)}")
    fast_rows = run(False, args.height, args.repeat) if backend_name() != "purepy" else None
    pure_rows = run(True, args.height, args.repeat)

    print(f"\nheight {args.height}, best of {args.repeat}")
    print(f"{'curve':40} {'points':>6} {'purepy':>9}" + (f" {'fastcore':>9} {'speedup':>8}" if fast_rows else ""))
    for i, (label, npts, tp) in enumerate(pure_rows):
        line = f"{label:40} {npts:>6} {tp:>8.3f}s"
        if fast_rows:
            tf = fast_rows[i][2]
            assert fast_rows[i][1] == npts, "backends disagree on point count"
            line += f" {tf:>8.3f}s {tp / tf:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
