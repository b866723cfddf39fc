# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled keystream and modular-exponentiation kernels.

Same contracts as the pure backend; per-byte loops run in C.
"""

import numpy as np

BACKEND = "compiled"

ctypedef unsigned char u8
ctypedef unsigned int u32
ctypedef unsigned long long u64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

cdef u64 LCG_A = 6364136223846793005ULL
cdef u64 LCG_C = 1442695040888963407ULL


cdef u64 _fill(u8[::1] out, u64 state) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(out.shape[0]):
        state = state * LCG_A + LCG_C
        out[i] = <u8>(state >> 56)
    return state


def keystream_advance(state, count):
    """Produce `count` keystream bytes from `state`; return (bytes, new state)."""
    out = np.empty(count, dtype=np.uint8)
    cdef u64 s = state
    cdef u8[::1] view = out
    if count > 0:
        s = _fill(view, s)
    return out, int(s)


def keystream_bytes(seed, count):
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    data, _ = keystream_advance(int(seed) % (1 << 64), count)
    return data


def xor_with_keystream(data, seed):
    """XOR a uint8 array with the keystream for `seed`, elementwise."""
    flat = np.ascontiguousarray(data, dtype=np.uint8).ravel()
    out = np.empty(flat.size, dtype=np.uint8)
    cdef u64 s = int(seed) % (1 << 64)
    cdef const u8[::1] src = flat
    cdef u8[::1] dst = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(src.shape[0]):
            s = s * LCG_A + LCG_C
            dst[i] = src[i] ^ <u8>(s >> 56)
    return out.reshape(np.asarray(data).shape)


cdef u64 _mulmod(u64 a, u64 b, u64 m) noexcept nogil:
    return <u64>((<u128>a * b) % m)


cdef u64 _powmod(u64 base, u64 exp, u64 modulus) noexcept nogil:
    cdef u64 result = 1
    base = base % modulus
    while exp:
        if exp & 1ULL:
            result = _mulmod(result, base, modulus)
        base = _mulmod(base, base, modulus)
        exp >>= 1
    return result


def powmod_array(values, exponent, modulus):
    """values[i]^exponent mod modulus for a uint32 array, result uint32."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if modulus > 0xFFFFFFFF:
        raise ValueError("modulus exceeds 32 bits")
    flat = np.ascontiguousarray(values, dtype=np.uint32).ravel()
    out = np.empty(flat.size, dtype=np.uint32)
    cdef u64 e = exponent
    cdef u64 m = modulus
    cdef const u32[::1] src = flat
    cdef u32[::1] dst = out
    cdef u32[::1] tab
    cdef Py_ssize_t i
    if m <= 65536 and flat.size >= <Py_ssize_t>m:
        # amortize: one ladder per residue, then a gather
        table = np.empty(m, dtype=np.uint32)
        tab = table
        with nogil:
            for i in range(tab.shape[0]):
                tab[i] = <u32>_powmod(<u64>i, e, m)
            for i in range(src.shape[0]):
                dst[i] = tab[src[i] % m]
    else:
        with nogil:
            for i in range(src.shape[0]):
                dst[i] = <u32>_powmod(src[i], e, m)
    return out.reshape(np.asarray(values).shape)
