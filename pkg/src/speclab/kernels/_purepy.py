"""numpy fallback for the residue sieve. Same contract as _fastcore.survivors."""

from __future__ import annotations

import numpy as np


def survivors(tables: dict[int, np.ndarray], H: int) -> np.ndarray:
    """Pairs (u, v) passing every residue table, as an array of shape (k, 2),
    sorted by v then u. tables[p] is boolean with [v % p][u % p] indexing."""
    # Most selective prime first, then filter a shrinking candidate set.
    primes = sorted(tables, key=lambda p: tables[p].sum() / tables[p].size)
    u_arr = np.arange(-H, H + 1, dtype=np.int64)
    umod = {p: (u_arr % p).astype(np.intp) for p in primes}
    out_u: list[np.ndarray] = []
    out_v: list[np.ndarray] = []
    for v in range(1, H + 1):
        p0 = primes[0]
        idx = np.nonzero(tables[p0][v % p0][umod[p0]])[0]
        for p in primes[1:]:
            if not idx.size:
                break
            idx = idx[tables[p][v % p][umod[p][idx]]]
        if idx.size:
            out_u.append(u_arr[idx])
            out_v.append(np.full(idx.size, v, dtype=np.int64))
    if not out_u:
        return np.empty((0, 2), dtype=np.int64)
    return np.stack([np.concatenate(out_u), np.concatenate(out_v)], axis=1)
