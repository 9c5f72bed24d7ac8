# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled residue sieve: packed 64-bit masks, one word per 64 values of u.

For each prime p the allowed u-residues (given v mod p) are precomputed as
p rotation words indexed by the word's starting u modulo p, so the inner loop
is pure table lookups and ANDs.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t


def survivors(tables, long H):
    """Same contract as _purepy.survivors."""
    cdef list prime_list = sorted(tables, key=lambda q: tables[q].sum() / tables[q].size)
    cdef int nprimes = len(prime_list)
    cdef long npairs = 2 * H + 1
    cdef long nwords = (npairs + 63) // 64

    cdef cnp.ndarray[cnp.int64_t, ndim=1] ps = np.array(prime_list, dtype=np.int64)
    # rot[k][vmod][u0mod] = word of 64 allowed-bits for u = u0 .. u0+63
    cdef long total = 0
    cdef int k
    cdef long p
    for k in range(nprimes):
        total += ps[k] * ps[k]
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] rot = np.zeros(total, dtype=np.uint64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] offs = np.zeros(nprimes, dtype=np.int64)
    cdef long off = 0
    cdef long b
    for k in range(nprimes):
        p = ps[k]
        offs[k] = off
        tab = np.ascontiguousarray(tables[prime_list[k]], dtype=np.uint8)
        _build_rot(rot, off, tab, p)
        off += p * p

    # tail mask for the last word
    cdef uint64_t tail = 0
    cdef long valid = npairs - (nwords - 1) * 64
    for b in range(valid):
        tail |= (<uint64_t> 1) << b

    cdef list out_u = []
    cdef list out_v = []
    cdef long v, wi, base_u, u
    cdef uint64_t acc
    cdef long[64] vmods
    cdef long[64] umods
    cdef long[64] step64
    for k in range(nprimes):
        step64[k] = 64 % ps[k]
    cdef int kk
    cdef long idx
    cdef uint64_t* rotp = <uint64_t*> cnp.PyArray_DATA(rot)
    cdef int64_t* psp = <int64_t*> cnp.PyArray_DATA(ps)
    cdef int64_t* offp = <int64_t*> cnp.PyArray_DATA(offs)

    for v in range(1, H + 1):
        for k in range(nprimes):
            vmods[k] = v % psp[k]
            # starting u of word 0 is -H
            umods[k] = (-H) % psp[k]
            if umods[k] < 0:
                umods[k] += psp[k]
        for wi in range(nwords):
            acc = rotp[offp[0] + vmods[0] * psp[0] + umods[0]]
            for k in range(1, nprimes):
                if acc == 0:
                    break
                acc &= rotp[offp[k] + vmods[k] * psp[k] + umods[k]]
            if wi == nwords - 1:
                acc &= tail
            if acc != 0:
                base_u = wi * 64 - H
                for b in range(64):
                    if (acc >> b) & 1:
                        out_u.append(base_u + b)
                        out_v.append(v)
            for k in range(nprimes):
                umods[k] += step64[k]
                if umods[k] >= psp[k]:
                    umods[k] -= psp[k]
    if not out_u:
        return np.empty((0, 2), dtype=np.int64)
    return np.stack(
        [np.array(out_u, dtype=np.int64), np.array(out_v, dtype=np.int64)], axis=1
    )


cdef void _build_rot(cnp.ndarray[cnp.uint64_t, ndim=1] rot, long off,
                     cnp.ndarray[cnp.uint8_t, ndim=2] tab, long p):
    cdef long vm, u0m, b, r
    cdef uint64_t w
    for vm in range(p):
        for u0m in range(p):
            w = 0
            r = u0m
            for b in range(64):
                if tab[vm, r]:
                    w |= (<uint64_t> 1) << b
                r += 1
                if r == p:
                    r = 0
            rot[off + vm * p + u0m] = w
