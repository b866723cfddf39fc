"""NumPy implementations of the hot kernels.

The keystream recurrence is a 64-bit affine map, so k steps compose into a
single affine map with precomputable coefficients: state_{i+k} =
A_k * state_i + C_k (mod 2^64).  That lets whole blocks of outputs come from
one vectorized expression instead of a Python-level loop per byte.
"""

import numpy as np

BACKEND = "pure"

_A = 6364136223846793005
_C = 1442695040888963407
_BLOCK = 4096

# _A_POWS[k] = A^(k+1) mod 2^64; _C_SUMS[k] = (A^k + ... + A + 1) * C mod 2^64,
# so state after k+1 steps = _A_POWS[k] * state + _C_SUMS[k].
_A_POWS = np.empty(_BLOCK, dtype=np.uint64)
_C_SUMS = np.empty(_BLOCK, dtype=np.uint64)
_a_acc = 1
_c_acc = 0
for _k in range(_BLOCK):
    _c_acc = (_a_acc * _C + _c_acc) % (1 << 64)
    _a_acc = (_a_acc * _A) % (1 << 64)
    _A_POWS[_k] = _a_acc
    _C_SUMS[_k] = _c_acc
del _a_acc, _c_acc, _k


def keystream_advance(state: int, count: int) -> tuple[np.ndarray, int]:
    """Produce `count` keystream bytes from `state`; return (bytes, new state)."""
    out = np.empty(count, dtype=np.uint8)
    filled = 0
    with np.errstate(over="ignore"):
        while filled < count:
            take = min(_BLOCK, count - filled)
            states = _A_POWS[:take] * np.uint64(state) + _C_SUMS[:take]
            out[filled : filled + take] = (states >> np.uint64(56)).astype(np.uint8)
            state = int(states[-1])
            filled += take
    return out, state


def keystream_bytes(seed: int, count: int) -> np.ndarray:
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    if count == 0:
        return np.empty(0, dtype=np.uint8)
    data, _ = keystream_advance(seed % (1 << 64), count)
    return data


def xor_with_keystream(data: np.ndarray, seed: int) -> np.ndarray:
    """XOR a uint8 array with the keystream for `seed`, elementwise."""
    flat = np.ascontiguousarray(data, dtype=np.uint8).ravel()
    mixed = flat ^ keystream_bytes(seed, flat.size)
    return mixed.reshape(data.shape)


def powmod_array(values: np.ndarray, exponent: int, modulus: int) -> np.ndarray:
    """values[i]^exponent mod modulus for a uint32 array, result uint32.

    Small moduli mean few distinct inputs in practice; a table over the
    unique values keeps the Python-level pow loop off the hot path.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if modulus > 0xFFFFFFFF:
        raise ValueError("modulus exceeds 32 bits")
    flat = np.ascontiguousarray(values, dtype=np.uint32).ravel()
    uniq, inverse = np.unique(flat, return_inverse=True)
    mapped = np.fromiter(
        (pow(int(v), exponent, modulus) for v in uniq),
        dtype=np.uint32,
        count=uniq.size,
    )
    return mapped[inverse].reshape(values.shape).astype(np.uint32)
