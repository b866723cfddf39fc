"""Dual-layer encryption for uncompressed AVI media.

Video planes are XORed with a pseudo-noise keystream and then mapped through
per-byte RSA; audio passes through a PN / DCT / PN chain.  A single short
password drives all key material.  See the README for the security caveats:
this reproduces a published scrambling scheme, it is not modern
cryptography.
"""

from mediacrypt._kernels import BACKEND as KERNEL_BACKEND
from mediacrypt.audio_crypt import (
    EncryptedAudio,
    StateKeys,
    awgn_channel,
    decrypt_audio,
    derive_state_keys,
    encrypt_audio,
    validate_password,
)
from mediacrypt.keystream import (
    PnGenerator,
    keystream_bytes,
    pn_audio_sequence,
    prf_decrypt,
    prf_encrypt,
    xor_apply,
)
from mediacrypt.media_container import (
    MODE_DUAL,
    MODE_RSA_ONLY,
    AudioTrack,
    CipherFrame,
    CipherVolume,
    ContainerError,
    FramePlanes,
    VideoAsset,
    parse_avi,
    parse_cipher_volume,
    write_avi,
    write_cipher_volume,
)
from mediacrypt.metrics import (
    MetricsReport,
    decryption_ratio,
    encryption_ratio,
    per_frame_speed,
    visual_degradation,
)
from mediacrypt.rsa_core import (
    KeyPair,
    decrypt_value,
    encrypt_value,
    generate_keypair,
    mod_inverse,
    mod_pow,
    next_prime,
    seed_primes_from_password,
)
from mediacrypt.video_crypt import (
    CorruptCipherError,
    VideoEncryptionContext,
    context_from_password,
    decrypt_frame,
    decrypt_video,
    encrypt_frame,
    encrypt_video,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "KeyPair",
    "next_prime",
    "seed_primes_from_password",
    "generate_keypair",
    "mod_pow",
    "mod_inverse",
    "encrypt_value",
    "decrypt_value",
    "PnGenerator",
    "keystream_bytes",
    "xor_apply",
    "pn_audio_sequence",
    "prf_encrypt",
    "prf_decrypt",
    "ContainerError",
    "FramePlanes",
    "AudioTrack",
    "VideoAsset",
    "CipherFrame",
    "CipherVolume",
    "MODE_RSA_ONLY",
    "MODE_DUAL",
    "parse_avi",
    "write_avi",
    "parse_cipher_volume",
    "write_cipher_volume",
    "StateKeys",
    "EncryptedAudio",
    "validate_password",
    "derive_state_keys",
    "encrypt_audio",
    "decrypt_audio",
    "awgn_channel",
    "VideoEncryptionContext",
    "CorruptCipherError",
    "context_from_password",
    "encrypt_frame",
    "decrypt_frame",
    "encrypt_video",
    "decrypt_video",
    "MetricsReport",
    "encryption_ratio",
    "decryption_ratio",
    "per_frame_speed",
    "visual_degradation",
]
