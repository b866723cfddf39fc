"""Three-level audio encryption: PN superposition, DCT, PN superposition.

The password expands into two integer state keys by Caesar-shifting its ASCII
codes and splitting the concatenated digits.  Level 1 adds a pseudo-noise
sequence to the PCM carrier, level 2 moves to the frequency domain with an
orthonormal DCT, level 3 adds a second PN sequence, and the result is
normalized to peak 1.  Every step is exactly invertible: PN samples are
multiples of amplitude * 2^-15 and the DCT pair is orthonormal, so the
decrypted PCM is bit-identical to the input when the channel is clean.

An optional AWGN channel simulates noisy transmission of the encrypted
signal; with it enabled the round trip is only approximate, by design.
"""

import string
from dataclasses import dataclass

import numpy as np
import scipy.fft

from mediacrypt.keystream import keystream_array, pn_audio_sequence
from mediacrypt.media_container import AudioTrack

__all__ = [
    "StateKeys",
    "EncryptedAudio",
    "validate_password",
    "derive_state_keys",
    "dct",
    "idct",
    "encrypt_audio",
    "decrypt_audio",
    "awgn_channel",
]

CAESAR_SHIFT = 4
_U64 = 1 << 64


def validate_password(s: str) -> list[str]:
    """Check the password policy; returns the list of unmet rules (empty = ok).

    Policy: exactly 8 characters, printable ASCII only, at least one
    uppercase letter, one digit, and one character that is neither letter
    nor digit.
    """
    violations = []
    if len(s) != 8:
        violations.append(f"length must be exactly 8 characters (got {len(s)})")
    if not all(0x20 <= ord(ch) <= 0x7E for ch in s):
        violations.append("must contain only printable ASCII characters")
    if not any(ch in string.ascii_uppercase for ch in s):
        violations.append("must contain at least one uppercase letter")
    if not any(ch in string.digits for ch in s):
        violations.append("must contain at least one digit")
    if not any(not ch.isalnum() for ch in s):
        violations.append("must contain at least one character that is neither letter nor digit")
    return violations


@dataclass(frozen=True)
class StateKeys:
    """Two decimal-digit strings derived from the password.

    key1 holds at least as many digits as key2; concatenated they restore
    the full shifted-code digit string.
    """

    key1: str
    key2: str

    def __post_init__(self):
        for name, digits in (("key1", self.key1), ("key2", self.key2)):
            if not digits or not digits.isascii() or not digits.isdigit():
                raise ValueError(f"{name} must be a non-empty decimal digit string")
        if len(self.key1) < len(self.key2):
            raise ValueError("key1 must hold at least as many digits as key2")

    @property
    def seed1(self) -> int:
        return int(self.key1) % _U64

    @property
    def seed2(self) -> int:
        return int(self.key2) % _U64


def derive_state_keys(password: str) -> StateKeys:
    """Expand a valid password into the two PN state keys.

    Each character's ASCII code is shifted up by 4 (a Caesar cipher on code
    points), the shifted codes are concatenated as decimal strings, and the
    digit string is split in half; an odd digit goes to key1.
    """
    violations = validate_password(password)
    if violations:
        raise ValueError("invalid password: " + "; ".join(violations))
    shifted = [ord(ch) + CAESAR_SHIFT for ch in password]
    z = "".join(str(v) for v in shifted)
    half = (len(z) + 1) // 2
    return StateKeys(key1=z[:half], key2=z[half:])


def dct(x) -> np.ndarray:
    """Orthonormal DCT-II.  Preserves the L2 norm; inverse is `idct`."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("dct requires a non-empty 1-D signal")
    return scipy.fft.dct(arr, type=2, norm="ortho")


def idct(x) -> np.ndarray:
    """Inverse of `dct` (orthonormal DCT-III)."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("idct requires a non-empty 1-D signal")
    return scipy.fft.idct(arr, type=2, norm="ortho")


@dataclass(eq=False)
class EncryptedAudio:
    """Encrypted samples scaled so max |sample| = 1, plus the scale to undo it."""

    samples: np.ndarray
    norm_scale: float

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"samples must be 1-D, got shape {arr.shape}")
        self.samples = arr
        if not (np.isfinite(self.norm_scale) and self.norm_scale > 0):
            raise ValueError(f"norm_scale must be finite and > 0, got {self.norm_scale}")


def encrypt_audio(track: AudioTrack, keys: StateKeys, pn_amplitude: float = 0.5) -> EncryptedAudio:
    """carrier -> +PN(key1) -> DCT -> +PN(key2) -> normalize to peak 1."""
    if not 0.0 < pn_amplitude <= 1.0:
        raise ValueError(f"pn_amplitude must be in (0, 1], got {pn_amplitude}")
    n = track.samples.size
    if n == 0:
        return EncryptedAudio(samples=np.empty(0, dtype=np.float64), norm_scale=1.0)
    carrier = track.samples.astype(np.float64) / 32768.0
    x = carrier + pn_audio_sequence(keys.seed1, n, pn_amplitude)
    y = dct(x)
    z = y + pn_audio_sequence(keys.seed2, n, pn_amplitude)
    peak = float(np.max(np.abs(z)))
    norm_scale = peak if peak > 0 else 1.0
    return EncryptedAudio(samples=z / norm_scale, norm_scale=norm_scale)


def decrypt_audio(
    enc: EncryptedAudio, keys: StateKeys, pn_amplitude: float = 0.5, sample_rate: int = 8000
) -> AudioTrack:
    """Exact inverse chain; requantizes to 16-bit PCM.

    The keys and pn_amplitude must match encryption.  Rounding is
    half-away-from-zero so a clean channel reproduces the original PCM
    bit-for-bit.
    """
    if not 0.0 < pn_amplitude <= 1.0:
        raise ValueError(f"pn_amplitude must be in (0, 1], got {pn_amplitude}")
    if not (np.isfinite(enc.norm_scale) and enc.norm_scale > 0):
        raise ValueError(f"corrupt header: norm_scale {enc.norm_scale}")
    n = enc.samples.size
    if n == 0:
        return AudioTrack(samples=np.empty(0, dtype=np.int16), sample_rate=sample_rate)
    z = enc.samples * enc.norm_scale
    y = z - pn_audio_sequence(keys.seed2, n, pn_amplitude)
    x = idct(y)
    carrier = x - pn_audio_sequence(keys.seed1, n, pn_amplitude)
    scaled = carrier * 32768.0
    pcm = np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)
    pcm = np.clip(pcm, -32768, 32767).astype(np.int16)
    return AudioTrack(samples=pcm, sample_rate=sample_rate)


def _standard_normals(seed: int, count: int) -> np.ndarray:
    """Deterministic N(0,1) draws: Box-Muller over keystream-derived uniforms."""
    pairs = (count + 1) // 2
    raw = keystream_array(seed, 16 * pairs)
    words = np.frombuffer(raw.tobytes(), dtype=">u8")
    # (word + 1) / 2^64 lies in (0, 1], keeping log() finite.
    u = (words.astype(np.float64) + 1.0) / float(_U64)
    radius = np.sqrt(-2.0 * np.log(u[0::2]))
    theta = 2.0 * np.pi * u[1::2]
    out = np.empty(2 * pairs, dtype=np.float64)
    out[0::2] = radius * np.cos(theta)
    out[1::2] = radius * np.sin(theta)
    return out[:count]


def awgn_channel(signal, snr_db: float, noise_seed: int) -> np.ndarray:
    """Add white Gaussian noise at the given SNR, deterministically.

    Noise variance is P_signal / 10^(snr_db/10) with P_signal the mean
    squared sample value.
    """
    arr = np.asarray(signal, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("awgn_channel requires a non-empty 1-D signal")
    power = float(np.mean(arr * arr))
    if power == 0.0:
        raise ValueError("awgn_channel requires a signal with nonzero power")
    noise_std = (power / 10.0 ** (snr_db / 10.0)) ** 0.5
    return arr + noise_std * _standard_normals(noise_seed, arr.size)
