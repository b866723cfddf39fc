"""Evaluation quantities for an encryption run.

Encryption/decryption ratios relate file sizes (100 * original / produced),
per-frame speed divides wall time by frame count, and visual degradation
quantifies how little the cipher frames resemble the originals: mean
absolute Pearson correlation plus PSNR of the cipher planes rescaled onto
the byte range.  The size/time formulas are plain arithmetic; only the
degradation score touches pixel data.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from mediacrypt.media_container import CipherFrame, VideoAsset

__all__ = [
    "MetricsReport",
    "encryption_ratio",
    "decryption_ratio",
    "per_frame_speed",
    "visual_degradation",
    "build_report",
]


def encryption_ratio(original_bytes: int, encrypted_bytes: int) -> float:
    """100 * original / encrypted, rounded to one decimal place."""
    if encrypted_bytes <= 0:
        raise ValueError(f"encrypted size must be positive, got {encrypted_bytes}")
    return round(100.0 * original_bytes / encrypted_bytes, 1)


def decryption_ratio(original_bytes: int, decrypted_bytes: int) -> float:
    """100 * original / decrypted, rounded to one decimal place."""
    if decrypted_bytes <= 0:
        raise ValueError(f"decrypted size must be positive, got {decrypted_bytes}")
    return round(100.0 * original_bytes / decrypted_bytes, 1)


def per_frame_speed(total_seconds: float, frame_count: int) -> float:
    """Seconds spent per frame."""
    if frame_count < 1:
        raise ValueError(f"frame count must be >= 1, got {frame_count}")
    return total_seconds / frame_count


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    # Zero-variance planes make the usual formula 0/0; compare directly.
    if float(a.std()) == 0.0 or float(b.std()) == 0.0:
        return 1.0 if np.array_equal(a, b) else 0.0
    return float(np.corrcoef(a.ravel(), b.ravel())[0, 1])


def visual_degradation(
    original: VideoAsset, cipher_frames: Sequence[CipherFrame], modulus_n: int
) -> tuple[float, float]:
    """(mean |Pearson correlation|, mean PSNR in dB) across planes.

    Cipher values are rescaled by 255/n onto the byte range before
    comparison.  Identical content gives correlation 1 and infinite PSNR
    (the infinity is preserved as a sentinel).
    """
    if len(cipher_frames) != len(original.frames):
        raise ValueError(
            f"frame count mismatch: {len(original.frames)} original, {len(cipher_frames)} cipher"
        )
    correlations = []
    psnrs = []
    for i, (plain, cipher) in enumerate(zip(original.frames, cipher_frames)):
        if cipher.shape != plain.shape:
            raise ValueError(
                f"frame {i} dimension mismatch: {plain.shape} original, {cipher.shape} cipher"
            )
        for channel in ("r", "g", "b"):
            a = getattr(plain, channel).astype(np.float64)
            b = getattr(cipher, channel).astype(np.float64) * (255.0 / modulus_n)
            correlations.append(abs(_pearson(a, b)))
            mse = float(np.mean((a - b) ** 2))
            psnrs.append(math.inf if mse == 0.0 else 10.0 * math.log10(255.0**2 / mse))
    return float(np.mean(correlations)), float(np.mean(psnrs))


@dataclass
class MetricsReport:
    """Flat bundle of the run's numbers, renderable as text or JSON."""

    original_bytes: int
    encrypted_bytes: int
    decrypted_bytes: int
    frame_count: int
    er_percent: float
    dr_percent: float
    encrypt_seconds: float | None
    decrypt_seconds: float | None
    cs_seconds_per_frame: float | None
    vd_mean_abs_correlation: float
    vd_psnr_db: float

    def to_dict(self) -> dict:
        psnr = self.vd_psnr_db
        return {
            "original_bytes": self.original_bytes,
            "encrypted_bytes": self.encrypted_bytes,
            "decrypted_bytes": self.decrypted_bytes,
            "frame_count": self.frame_count,
            "er_percent": self.er_percent,
            "dr_percent": self.dr_percent,
            "encrypt_seconds": self.encrypt_seconds,
            "decrypt_seconds": self.decrypt_seconds,
            "cs_seconds_per_frame": self.cs_seconds_per_frame,
            "vd_mean_abs_correlation": self.vd_mean_abs_correlation,
            "vd_psnr_db": None if math.isinf(psnr) else psnr,
        }

    def render_text(self) -> str:
        def fmt(value, suffix=""):
            if value is None:
                return "n/a"
            if isinstance(value, float) and math.isinf(value):
                return "inf"
            return f"{value}{suffix}"

        lines = [
            f"original_bytes          {self.original_bytes}",
            f"encrypted_bytes         {self.encrypted_bytes}",
            f"decrypted_bytes         {self.decrypted_bytes}",
            f"frame_count             {self.frame_count}",
            f"er_percent              {self.er_percent}",
            f"dr_percent              {self.dr_percent}",
            f"encrypt_seconds         {fmt(self.encrypt_seconds)}",
            f"decrypt_seconds         {fmt(self.decrypt_seconds)}",
            f"cs_seconds_per_frame    {fmt(self.cs_seconds_per_frame)}",
            f"vd_mean_abs_correlation {self.vd_mean_abs_correlation:.6f}",
            f"vd_psnr_db              {fmt(round(self.vd_psnr_db, 3) if math.isfinite(self.vd_psnr_db) else self.vd_psnr_db)}",
        ]
        return "\n".join(lines)


def build_report(
    original: VideoAsset,
    cipher_frames: Sequence[CipherFrame],
    modulus_n: int,
    original_bytes: int,
    encrypted_bytes: int,
    decrypted_bytes: int,
    encrypt_seconds: float | None = None,
    decrypt_seconds: float | None = None,
) -> MetricsReport:
    corr, psnr = visual_degradation(original, cipher_frames, modulus_n)
    frame_count = len(original.frames)
    return MetricsReport(
        original_bytes=original_bytes,
        encrypted_bytes=encrypted_bytes,
        decrypted_bytes=decrypted_bytes,
        frame_count=frame_count,
        er_percent=encryption_ratio(original_bytes, encrypted_bytes),
        dr_percent=decryption_ratio(original_bytes, decrypted_bytes),
        encrypt_seconds=encrypt_seconds,
        decrypt_seconds=decrypt_seconds,
        cs_seconds_per_frame=(
            per_frame_speed(encrypt_seconds, frame_count) if encrypt_seconds is not None else None
        ),
        vd_mean_abs_correlation=corr,
        vd_psnr_db=psnr,
    )
