"""Deterministic pseudo-noise streams.

A fixed 64-bit linear congruential recurrence drives everything: byte
keystreams for XOR masking, fixed-point sample sequences for audio
superposition, and a keyed stream cipher built on top.  The constants are
published LCG parameters; identical seeds give bit-identical output on every
platform.  None of this is cryptographically secure pseudo-randomness -- it
is reproducible noise for media scrambling.
"""

import numpy as np

from mediacrypt import _kernels

__all__ = [
    "PnGenerator",
    "keystream_bytes",
    "keystream_array",
    "xor_apply",
    "pn_audio_sequence",
    "prf_encrypt",
    "prf_decrypt",
]

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
_U64 = 1 << 64


class PnGenerator:
    """Stateful pseudo-noise byte source.

    state <- (a*state + c) mod 2^64 per step; the output byte is the most
    significant byte of the new state.  Cheap to construct, not shareable
    across threads; re-seed one per worker instead.
    """

    multiplier = MULTIPLIER
    increment = INCREMENT

    def __init__(self, seed: int):
        self.state = seed % _U64

    def read(self, count: int) -> bytes:
        """Next `count` bytes of the stream, advancing the state."""
        if count < 0:
            raise ValueError(f"count must be non-negative, got {count}")
        if count == 0:
            return b""
        data, self.state = _kernels.keystream_advance(self.state, count)
        return data.tobytes()

    def clone(self) -> "PnGenerator":
        dup = PnGenerator(self.state)
        return dup


def keystream_array(seed: int, count: int) -> np.ndarray:
    """First `count` keystream bytes for `seed` as a uint8 array."""
    return _kernels.keystream_bytes(seed, count)


def keystream_bytes(seed: int, count: int) -> bytes:
    """First `count` keystream bytes for `seed`.

    Prefix property: keystream_bytes(s, k) is a prefix of
    keystream_bytes(s, k+1).
    """
    return _kernels.keystream_bytes(seed, count).tobytes()


def xor_apply(data: bytes, seed: int) -> bytes:
    """XOR data with the keystream for `seed`; an involution."""
    arr = np.frombuffer(bytes(data), dtype=np.uint8)
    return _kernels.xor_with_keystream(arr, seed).tobytes()


def pn_audio_sequence(seed: int, count: int, amplitude: float) -> np.ndarray:
    """Pseudo-noise samples in [-amplitude, amplitude), quantized.

    Each sample comes from two consecutive keystream bytes read as a
    big-endian 16-bit value u: sample = amplitude * (u/2^15 - 1).  Every
    value is an exact multiple of amplitude * 2^-15, so superimposing onto a
    16-bit PCM carrier and subtracting later is lossless in float64.
    """
    if not 0.0 < amplitude <= 1.0:
        raise ValueError(f"amplitude must be in (0, 1], got {amplitude}")
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    raw = _kernels.keystream_bytes(seed, 2 * count)
    u = raw.reshape(count, 2).astype(np.uint16)
    words = (u[:, 0] << np.uint16(8)) | u[:, 1]
    return amplitude * (words.astype(np.float64) / 32768.0 - 1.0)


def _mix(key: int, r: int) -> int:
    r %= _U64
    rotated = ((r << 32) | (r >> 32)) % _U64
    return (key % _U64) ^ rotated


def prf_encrypt(key: int, message: bytes, r: int) -> tuple[int, bytes]:
    """Stream-cipher encryption: (r, message XOR keystream(mix(key, r))).

    The caller supplies the nonce r; reusing (key, r) pairs leaks the XOR of
    the two messages, exactly as with any stream cipher.
    """
    return r, xor_apply(message, _mix(key, r))


def prf_decrypt(key: int, ciphertext: tuple[int, bytes]) -> bytes:
    r, masked = ciphertext
    return xor_apply(masked, _mix(key, r))
