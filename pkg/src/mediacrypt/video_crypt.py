"""Dual-layer video encryption: pseudo-noise XOR then per-byte RSA.

In dual mode each plane is XORed with a keystream (level 1) before every
byte is raised to the e-th power modulo n (level 2); rsa-only mode skips the
XOR and exhibits the classic ECB weakness of equal pixels mapping to equal
cipher values.  Keystream seeds mix the password-derived base seed with the
channel and frame index so no two planes reuse a stream.

There is no authentication: decrypting with the wrong password yields
deterministic garbage (or an out-of-range error when the wrong modulus is
smaller than stored cipher values), never a clean failure.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from mediacrypt import _kernels
from mediacrypt.audio_crypt import (
    EncryptedAudio,
    awgn_channel,
    decrypt_audio,
    derive_state_keys,
    encrypt_audio,
    validate_password,
)
from mediacrypt.keystream import keystream_bytes
from mediacrypt.media_container import (
    MODE_DUAL,
    MODE_RSA_ONLY,
    CipherFrame,
    CipherVolume,
    FramePlanes,
    VideoAsset,
)
from mediacrypt.rsa_core import KeyPair, generate_keypair, seed_primes_from_password

__all__ = [
    "VideoEncryptionContext",
    "CorruptCipherError",
    "context_from_password",
    "encrypt_frame",
    "decrypt_frame",
    "encrypt_video",
    "decrypt_video",
    "AWGN_SEED_TWEAK",
]

_CHANNEL_TAGS = {"r": 0, "g": 1, "b": 2}

# Tweak constant separating the audio-noise stream from the video streams.
AWGN_SEED_TWEAK = 0xA5A5A5A5A5A5A5A5


class CorruptCipherError(ValueError):
    """A cipher value does not fit the modulus being used for decryption."""


@dataclass(frozen=True)
class VideoEncryptionContext:
    """Everything frame encryption needs: key pair, base PN seed, mode."""

    key_pair: KeyPair
    pn_seed: int
    mode: str

    def __post_init__(self):
        if self.mode not in (MODE_RSA_ONLY, MODE_DUAL):
            raise ValueError(f"mode must be {MODE_RSA_ONLY!r} or {MODE_DUAL!r}, got {self.mode!r}")
        # Every XORed byte (0-255) must be a valid plaintext strictly below n.
        if self.key_pair.n <= 510:
            raise ValueError(f"modulus {self.key_pair.n} too small for byte plaintexts")

    @property
    def n(self) -> int:
        return self.key_pair.n


def context_from_password(password: str, mode: str = MODE_DUAL, e: int | None = None) -> VideoEncryptionContext:
    """Derive the full video context from a password.

    The RSA primes come from the password's ASCII sum; the base PN seed is
    the first 8 keystream bytes for that sum, read little-endian, so the CLI
    needs exactly one secret.
    """
    violations = validate_password(password)
    if violations:
        raise ValueError("invalid password: " + "; ".join(violations))
    p, q = seed_primes_from_password(password)
    key_pair = generate_keypair(p, q, e)
    x = sum(ord(ch) for ch in password)
    pn_seed = int.from_bytes(keystream_bytes(x, 8), "little")
    return VideoEncryptionContext(key_pair=key_pair, pn_seed=pn_seed, mode=mode)


def _plane_seed(pn_seed: int, channel: str, frame_index: int) -> int:
    return pn_seed ^ (_CHANNEL_TAGS[channel] << 40) ^ frame_index


@lru_cache(maxsize=16)
def _encrypt_lut(e: int, n: int) -> np.ndarray:
    dtype = np.uint16 if n <= 0x10000 else np.uint32
    return np.array([pow(v, e, n) for v in range(256)], dtype=dtype)


def encrypt_frame(frame: FramePlanes, ctx: VideoEncryptionContext, frame_index: int) -> CipherFrame:
    """Encrypt one frame; dual mode XORs each plane before the RSA map."""
    lut = _encrypt_lut(ctx.key_pair.e, ctx.key_pair.n)
    planes = {}
    for channel in ("r", "g", "b"):
        plane = getattr(frame, channel)
        if ctx.mode == MODE_DUAL:
            plane = _kernels.xor_with_keystream(
                plane, _plane_seed(ctx.pn_seed, channel, frame_index)
            )
        planes[channel] = lut[plane]
    return CipherFrame(**planes)


def decrypt_frame(cipher: CipherFrame, ctx: VideoEncryptionContext, frame_index: int) -> FramePlanes:
    """Invert encrypt_frame: RSA-decrypt every value, then undo the XOR.

    Cipher values are reduced to a byte after exponentiation; with the
    correct key the plaintext already fits, with a wrong key this yields the
    documented garbage instead of an undefined value.
    """
    kp = ctx.key_pair
    planes = {}
    for channel in ("r", "g", "b"):
        plane = getattr(cipher, channel)
        if plane.size and int(plane.max()) >= kp.n:
            pos = tuple(
                int(i) for i in np.unravel_index(int(np.argmax(plane >= kp.n)), plane.shape)
            )
            raise CorruptCipherError(
                f"cipher value {int(plane[pos])} >= modulus {kp.n} "
                f"in frame {frame_index} channel {channel} at position {pos}"
            )
        decoded = _kernels.powmod_array(plane.astype(np.uint32), kp.d, kp.n)
        decoded = (decoded & np.uint32(0xFF)).astype(np.uint8)
        if ctx.mode == MODE_DUAL:
            decoded = _kernels.xor_with_keystream(
                decoded, _plane_seed(ctx.pn_seed, channel, frame_index)
            )
        planes[channel] = decoded
    return FramePlanes(**planes)


def encrypt_video(
    asset: VideoAsset,
    password: str,
    mode: str = MODE_DUAL,
    e: int | None = None,
    pn_amplitude: float = 0.5,
    awgn: bool = False,
    snr_db: float | None = None,
) -> CipherVolume:
    """Encrypt frames and audio into a cipher volume.

    With awgn=True the encrypted audio additionally passes through a
    simulated noisy channel at snr_db, making the audio round trip
    approximate; video is unaffected.
    """
    if awgn and snr_db is None:
        raise ValueError("awgn requires snr_db")
    ctx = context_from_password(password, mode, e)
    cipher_frames = [encrypt_frame(f, ctx, i) for i, f in enumerate(asset.frames)]

    audio = np.empty(0, dtype=np.float64)
    sample_rate = 0
    norm_scale = 1.0
    if asset.audio is not None:
        keys = derive_state_keys(password)
        enc = encrypt_audio(asset.audio, keys, pn_amplitude)
        audio = enc.samples
        sample_rate = asset.audio.sample_rate
        norm_scale = enc.norm_scale
        if awgn and audio.size:
            audio = awgn_channel(audio, snr_db, ctx.pn_seed ^ AWGN_SEED_TWEAK)

    return CipherVolume(
        mode=mode,
        awgn=awgn,
        width=asset.width,
        height=asset.height,
        fps=asset.fps,
        modulus_n=ctx.key_pair.n,
        frames=cipher_frames,
        audio=audio,
        sample_rate=sample_rate,
        norm_scale=norm_scale,
    )


def decrypt_video(
    volume: CipherVolume,
    password: str,
    e: int | None = None,
    pn_amplitude: float = 0.5,
) -> VideoAsset:
    """Invert encrypt_video.  A wrong password produces garbage output."""
    ctx = context_from_password(password, volume.mode, e)
    frames = [decrypt_frame(c, ctx, i) for i, c in enumerate(volume.frames)]

    audio = None
    if volume.sample_rate > 0:
        keys = derive_state_keys(password)
        enc = EncryptedAudio(samples=volume.audio, norm_scale=volume.norm_scale)
        audio = decrypt_audio(enc, keys, pn_amplitude, sample_rate=volume.sample_rate)

    return VideoAsset(
        width=volume.width,
        height=volume.height,
        fps=volume.fps,
        frames=frames,
        audio=audio,
    )
