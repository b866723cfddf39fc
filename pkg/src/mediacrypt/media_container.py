"""Uncompressed-AVI parsing/writing and the EVC1 encrypted-volume format.

The AVI support is deliberately a narrow subset: RIFF('AVI ') with one
uncompressed 24-bit DIB video stream ('00db' chunks, BGR bottom-up rows
padded to 4 bytes) and an optional 16-bit mono PCM audio stream ('01wb'
chunks).  An 'idx1' index is emitted on write and ignored on read.

Encrypted output goes into a purpose-built lossless container (magic "EVC1")
instead of per-frame image files: cipher values exceed 8 bits and survive no
lossy re-encode.  Layout, all little-endian:

    magic "EVC1" | version u16=1 | mode u8 (0=rsa-only, 1=dual) | awgn u8 |
    width u32 | height u32 | fps_num u32 | fps_den u32 | frame_count u32 |
    modulus_n u32 | audio_sample_count u64 | sample_rate u32 | norm_scale f64

followed by the cipher planes (per frame: R, G, B, row-major) and the cipher
audio as f64.  Plane elements are u16 when modulus_n <= 65536 and u32
otherwise, so paper-scale moduli keep the compact documented layout while
password-derived moduli (which always exceed 16 bits) remain storable.
"""

import struct
from dataclasses import dataclass, field

import numpy as np

__all__ = [
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
]

MODE_RSA_ONLY = "rsa-only"
MODE_DUAL = "dual"


class ContainerError(ValueError):
    """Structured parse/serialization failure with file position context."""

    def __init__(self, message: str, offset: int | None = None, fourcc: bytes | None = None):
        self.offset = offset
        self.fourcc = fourcc
        parts = [message]
        if fourcc is not None:
            parts.append(f"chunk {fourcc!r}")
        if offset is not None:
            parts.append(f"at byte {offset}")
        super().__init__(" ".join(parts))


def _as_plane(a, dtype, name: str) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype != dtype:
        raise ValueError(f"{name} plane must have dtype {np.dtype(dtype).name}, got {arr.dtype}")
    if arr.ndim != 2:
        raise ValueError(f"{name} plane must be 2-D, got shape {arr.shape}")
    return arr


@dataclass(eq=False)
class FramePlanes:
    """One video frame as separate R, G, B byte matrices (height x width)."""

    r: np.ndarray
    g: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.r = _as_plane(self.r, np.uint8, "r")
        self.g = _as_plane(self.g, np.uint8, "g")
        self.b = _as_plane(self.b, np.uint8, "b")
        if not (self.r.shape == self.g.shape == self.b.shape):
            raise ValueError(
                f"plane shapes differ: r={self.r.shape} g={self.g.shape} b={self.b.shape}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return self.r.shape


@dataclass(eq=False)
class AudioTrack:
    """Mono 16-bit PCM samples."""

    samples: np.ndarray
    sample_rate: int
    channels: int = 1

    def __post_init__(self):
        arr = np.asarray(self.samples)
        if arr.dtype != np.int16:
            raise ValueError(f"samples must be int16, got {arr.dtype}")
        if arr.ndim != 1:
            raise ValueError(f"samples must be 1-D, got shape {arr.shape}")
        self.samples = arr
        if self.sample_rate < 1:
            raise ValueError(f"sample_rate must be >= 1, got {self.sample_rate}")
        if self.channels != 1:
            raise ValueError("only mono audio is supported")


@dataclass(eq=False)
class VideoAsset:
    """Decoded clip: fixed-size frames plus optional mono PCM audio."""

    width: int
    height: int
    fps: tuple[int, int]
    frames: list[FramePlanes]
    audio: AudioTrack | None = None

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"invalid dimensions {self.width}x{self.height}")
        num, den = self.fps
        if num < 1 or den < 1:
            raise ValueError(f"fps numerator/denominator must be >= 1, got {self.fps}")
        if not self.frames:
            raise ValueError("asset must contain at least one frame")
        for i, f in enumerate(self.frames):
            if f.shape != (self.height, self.width):
                raise ValueError(
                    f"frame {i} has shape {f.shape}, expected {(self.height, self.width)}"
                )


@dataclass(eq=False)
class CipherFrame:
    """One encrypted frame: unsigned cipher-value matrices per channel."""

    r: np.ndarray
    g: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        planes = []
        for name in ("r", "g", "b"):
            arr = np.asarray(getattr(self, name))
            if arr.dtype not in (np.uint16, np.uint32):
                raise ValueError(f"{name} plane must be uint16 or uint32, got {arr.dtype}")
            if arr.ndim != 2:
                raise ValueError(f"{name} plane must be 2-D, got shape {arr.shape}")
            planes.append(arr)
        self.r, self.g, self.b = planes
        if not (self.r.shape == self.g.shape == self.b.shape):
            raise ValueError("cipher plane shapes differ")

    @property
    def shape(self) -> tuple[int, int]:
        return self.r.shape


@dataclass(eq=False)
class CipherVolume:
    """Encrypted clip plus the header fields needed to invert it."""

    mode: str
    awgn: bool
    width: int
    height: int
    fps: tuple[int, int]
    modulus_n: int
    frames: list[CipherFrame]
    audio: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.float64))
    sample_rate: int = 0
    norm_scale: float = 1.0

    def __post_init__(self):
        if self.mode not in (MODE_RSA_ONLY, MODE_DUAL):
            raise ValueError(f"mode must be {MODE_RSA_ONLY!r} or {MODE_DUAL!r}, got {self.mode!r}")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"invalid dimensions {self.width}x{self.height}")
        num, den = self.fps
        if num < 1 or den < 1:
            raise ValueError(f"fps numerator/denominator must be >= 1, got {self.fps}")
        if self.modulus_n < 2:
            raise ValueError(f"modulus_n must be >= 2, got {self.modulus_n}")
        if not self.frames:
            raise ValueError("volume must contain at least one frame")
        for i, f in enumerate(self.frames):
            if f.shape != (self.height, self.width):
                raise ValueError(
                    f"cipher frame {i} has shape {f.shape}, expected {(self.height, self.width)}"
                )
            for channel, plane in (("r", f.r), ("g", f.g), ("b", f.b)):
                if plane.size and int(plane.max()) >= self.modulus_n:
                    pos = np.unravel_index(int(np.argmax(plane >= self.modulus_n)), plane.shape)
                    raise ValueError(
                        f"cipher value >= modulus in frame {i} channel {channel} at {pos}"
                    )
        audio = np.asarray(self.audio, dtype=np.float64)
        if audio.ndim != 1:
            raise ValueError(f"cipher audio must be 1-D, got shape {audio.shape}")
        if audio.size and not np.isfinite(audio).all():
            raise ValueError("cipher audio contains non-finite values")
        self.audio = audio
        if audio.size and self.sample_rate < 1:
            raise ValueError("sample_rate must be >= 1 when audio is present")
        if not (np.isfinite(self.norm_scale) and self.norm_scale > 0):
            raise ValueError(f"norm_scale must be finite and > 0, got {self.norm_scale}")


# ---------------------------------------------------------------------------
# AVI

_AVIH = struct.Struct("<14I")
_STRH = struct.Struct("<4s4sIHHIIIIIIII4h")
_BMIH = struct.Struct("<IiiHHIIiiII")
_WAVE = struct.Struct("<HHIIHH")
_IDX1_ENTRY = struct.Struct("<4sIII")


def _row_bytes(width: int) -> int:
    return (3 * width + 3) & ~3


def _iter_chunks(data: bytes, start: int, end: int, context: str):
    """Yield (fourcc, payload_offset, size) for chunks in data[start:end].

    Every step advances by at least the 8-byte header, so the walk always
    terminates; payloads are bounds-checked against `end` before yielding.
    """
    offset = start
    while offset < end:
        if offset + 8 > end:
            raise ContainerError(f"truncated chunk header in {context}", offset=offset)
        fourcc = bytes(data[offset : offset + 4])
        size = int.from_bytes(data[offset + 4 : offset + 8], "little")
        payload = offset + 8
        if payload + size > end:
            raise ContainerError(
                f"declared size {size} overruns {context}", offset=offset, fourcc=fourcc
            )
        yield fourcc, payload, size
        offset = payload + size + (size & 1)


def _chunk(fourcc: bytes, payload: bytes) -> bytes:
    pad = b"\x00" if len(payload) & 1 else b""
    return fourcc + struct.pack("<I", len(payload)) + payload + pad


def _list_chunk(list_type: bytes, payload: bytes) -> bytes:
    return _chunk(b"LIST", list_type + payload)


def parse_avi(data: bytes) -> VideoAsset:
    """Decode a supported-subset AVI file into frames and audio."""
    data = bytes(data)
    if len(data) < 12:
        raise ContainerError(f"file of {len(data)} bytes cannot hold a RIFF header", offset=0)
    if data[0:4] != b"RIFF":
        raise ContainerError("not a RIFF file", offset=0, fourcc=data[0:4])
    riff_size = int.from_bytes(data[4:8], "little")
    if 8 + riff_size > len(data):
        raise ContainerError(f"RIFF size {riff_size} overruns file", offset=4)
    if data[8:12] != b"AVI ":
        raise ContainerError("RIFF form is not AVI", offset=8, fourcc=data[8:12])

    end = 8 + riff_size
    video = None  # (width, height, fps)
    audio_meta = None  # sample_rate
    frame_payloads: list[tuple[int, int]] = []  # (offset, size)
    audio_payloads: list[tuple[int, int]] = []

    for fourcc, payload, size in _iter_chunks(data, 12, end, "RIFF body"):
        if fourcc != b"LIST" or size < 4:
            continue  # idx1, JUNK and friends
        list_type = data[payload : payload + 4]
        if list_type == b"hdrl":
            video, audio_meta = _parse_hdrl(data, payload + 4, payload + size)
        elif list_type == b"movi":
            # hdrl must precede movi, so frame sizes can be checked as the
            # chunks are walked; a wrong size would otherwise derail the walk
            # and produce a misleading error about a later phantom chunk.
            if video is None:
                raise ContainerError(
                    "movi list appears before the hdrl stream headers",
                    offset=payload - 8,
                )
            expected = _row_bytes(video[0]) * video[1]
            for sub, sub_payload, sub_size in _iter_chunks(
                data, payload + 4, payload + size, "movi list"
            ):
                if sub == b"00db":
                    if sub_size != expected:
                        raise ContainerError(
                            f"frame payload is {sub_size} bytes, expected {expected}",
                            offset=sub_payload - 8,
                            fourcc=b"00db",
                        )
                    frame_payloads.append((sub_payload, sub_size))
                elif sub == b"01wb":
                    audio_payloads.append((sub_payload, sub_size))

    if video is None:
        raise ContainerError("no video stream header found", offset=12)
    width, height, fps = video
    if not frame_payloads:
        raise ContainerError("no video frame chunks found", offset=12, fourcc=b"00db")

    rowbytes = _row_bytes(width)
    frames = []
    for offset, size in frame_payloads:
        rows = np.frombuffer(data, dtype=np.uint8, count=size, offset=offset)
        rows = rows.reshape(height, rowbytes)[::-1, : 3 * width]
        pixels = rows.reshape(height, width, 3)
        frames.append(
            FramePlanes(r=pixels[:, :, 2].copy(), g=pixels[:, :, 1].copy(), b=pixels[:, :, 0].copy())
        )

    audio = None
    if audio_payloads and audio_meta is None:
        raise ContainerError(
            "audio chunks present without an audio stream header",
            offset=audio_payloads[0][0] - 8,
            fourcc=b"01wb",
        )
    if audio_meta is not None:
        pieces = []
        for offset, size in audio_payloads:
            if size & 1:
                raise ContainerError(
                    f"PCM payload of {size} bytes is not sample-aligned",
                    offset=offset - 8,
                    fourcc=b"01wb",
                )
            pieces.append(np.frombuffer(data, dtype="<i2", count=size // 2, offset=offset))
        samples = np.concatenate(pieces) if pieces else np.empty(0, dtype=np.int16)
        audio = AudioTrack(samples=samples.astype(np.int16), sample_rate=audio_meta)

    return VideoAsset(width=width, height=height, fps=fps, frames=frames, audio=audio)


def _parse_hdrl(data: bytes, start: int, end: int):
    video = None
    audio_rate = None
    for fourcc, payload, size in _iter_chunks(data, start, end, "hdrl list"):
        if fourcc != b"LIST" or size < 4 or data[payload : payload + 4] != b"strl":
            continue
        stream_type = None
        fps = None
        strf = None
        strf_offset = 0
        for sub, sub_payload, sub_size in _iter_chunks(data, payload + 4, payload + size, "strl list"):
            if sub == b"strh":
                if sub_size < _STRH.size:
                    raise ContainerError(
                        f"stream header is {sub_size} bytes, expected {_STRH.size}",
                        offset=sub_payload - 8,
                        fourcc=b"strh",
                    )
                fields = _STRH.unpack_from(data, sub_payload)
                stream_type = fields[0]
                scale, rate = fields[6], fields[7]
                if stream_type == b"vids":
                    if scale < 1 or rate < 1:
                        raise ContainerError(
                            f"invalid frame rate {rate}/{scale}",
                            offset=sub_payload - 8,
                            fourcc=b"strh",
                        )
                    fps = (rate, scale)
            elif sub == b"strf":
                strf = (sub_payload, sub_size)
                strf_offset = sub_payload - 8
        if stream_type == b"vids":
            if strf is None:
                raise ContainerError("video stream missing format chunk", offset=start, fourcc=b"strf")
            off, size_ = strf
            if size_ < _BMIH.size:
                raise ContainerError(
                    f"bitmap header is {size_} bytes, expected {_BMIH.size}",
                    offset=strf_offset,
                    fourcc=b"strf",
                )
            (_, w, h, _, bits, compression, *_rest) = _BMIH.unpack_from(data, off)
            if compression != 0:
                raise ContainerError(
                    f"unsupported video compression 0x{compression:08x} (only raw DIB)",
                    offset=strf_offset,
                    fourcc=b"strf",
                )
            if bits != 24:
                raise ContainerError(
                    f"unsupported bit depth {bits} (only 24-bit)", offset=strf_offset, fourcc=b"strf"
                )
            if w < 1 or h < 1:
                raise ContainerError(f"invalid dimensions {w}x{h}", offset=strf_offset, fourcc=b"strf")
            video = (w, h, fps)
        elif stream_type == b"auds":
            if strf is None:
                raise ContainerError("audio stream missing format chunk", offset=start, fourcc=b"strf")
            off, size_ = strf
            if size_ < _WAVE.size:
                raise ContainerError(
                    f"wave format is {size_} bytes, expected {_WAVE.size}",
                    offset=strf_offset,
                    fourcc=b"strf",
                )
            tag, channels, rate, _, _, bits = _WAVE.unpack_from(data, off)
            if tag != 1:
                raise ContainerError(
                    f"unsupported audio format tag {tag} (only PCM)", offset=strf_offset, fourcc=b"strf"
                )
            if channels != 1:
                raise ContainerError(
                    f"unsupported channel count {channels} (only mono)",
                    offset=strf_offset,
                    fourcc=b"strf",
                )
            if bits != 16:
                raise ContainerError(
                    f"unsupported sample width {bits} (only 16-bit)",
                    offset=strf_offset,
                    fourcc=b"strf",
                )
            if rate < 1:
                raise ContainerError(f"invalid sample rate {rate}", offset=strf_offset, fourcc=b"strf")
            audio_rate = rate
    return video, audio_rate


def _encode_frame(frame: FramePlanes, width: int, height: int) -> bytes:
    rowbytes = _row_bytes(width)
    rows = np.zeros((height, rowbytes), dtype=np.uint8)
    pixels = rows[:, : 3 * width].reshape(height, width, 3)
    pixels[:, :, 0] = frame.b
    pixels[:, :, 1] = frame.g
    pixels[:, :, 2] = frame.r
    return rows[::-1].tobytes()


def write_avi(asset: VideoAsset) -> bytes:
    """Serialize an asset to the supported AVI subset; inverse of parse_avi."""
    width, height = asset.width, asset.height
    fps_num, fps_den = asset.fps
    frame_count = len(asset.frames)
    frame_size = _row_bytes(width) * height
    usec_per_frame = round(1_000_000 * fps_den / fps_num)

    streams = 1 if asset.audio is None else 2
    avih = _chunk(
        b"avih",
        _AVIH.pack(
            usec_per_frame, 0, 0, 0x10, frame_count, 0, streams, frame_size,
            width, height, 0, 0, 0, 0,
        ),
    )
    rc = (0, 0, min(width, 0x7FFF), min(height, 0x7FFF))  # rcFrame is signed 16-bit
    video_strh = _chunk(
        b"strh",
        _STRH.pack(
            b"vids", b"DIB ", 0, 0, 0, 0, fps_den, fps_num, 0, frame_count,
            frame_size, 0, 0, *rc,
        ),
    )
    video_strf = _chunk(
        b"strf", _BMIH.pack(_BMIH.size, width, height, 1, 24, 0, frame_size, 0, 0, 0, 0)
    )
    hdrl_body = avih + _list_chunk(b"strl", video_strh + video_strf)

    audio = asset.audio
    if audio is not None:
        audio_strh = _chunk(
            b"strh",
            _STRH.pack(
                b"auds", b"\x00" * 4, 0, 0, 0, 0, 1, audio.sample_rate, 0,
                audio.samples.size, 0, 0, 2, 0, 0, 0, 0,
            ),
        )
        audio_strf = _chunk(
            b"strf", _WAVE.pack(1, 1, audio.sample_rate, audio.sample_rate * 2, 2, 16)
        )
        hdrl_body += _list_chunk(b"strl", audio_strh + audio_strf)

    # Interleave: one video chunk per frame, audio split evenly between them.
    movi_parts = []
    index = []  # (fourcc, offset within movi data, payload size)
    cursor = 4  # movi fourcc occupies the first 4 bytes of the list payload
    total_samples = 0 if audio is None else audio.samples.size
    for i, frame in enumerate(asset.frames):
        payload = _encode_frame(frame, width, height)
        index.append((b"00db", cursor, len(payload)))
        movi_parts.append(_chunk(b"00db", payload))
        cursor += 8 + len(payload) + (len(payload) & 1)
        if audio is not None:
            lo = i * total_samples // frame_count
            hi = (i + 1) * total_samples // frame_count
            if hi > lo:
                pcm = audio.samples[lo:hi].astype("<i2").tobytes()
                index.append((b"01wb", cursor, len(pcm)))
                movi_parts.append(_chunk(b"01wb", pcm))
                cursor += 8 + len(pcm) + (len(pcm) & 1)
    movi = _list_chunk(b"movi", b"".join(movi_parts))

    idx1 = _chunk(
        b"idx1",
        b"".join(_IDX1_ENTRY.pack(fcc, 0x10, off, size) for fcc, off, size in index),
    )

    body = _list_chunk(b"hdrl", hdrl_body) + movi + idx1
    return b"RIFF" + struct.pack("<I", 4 + len(body)) + b"AVI " + body


# ---------------------------------------------------------------------------
# EVC1 cipher volume

_EVC1_HEADER = struct.Struct("<4sHBBIIIIIIQId")
_EVC1_MAGIC = b"EVC1"
_EVC1_VERSION = 1


def _plane_dtype(modulus_n: int):
    return np.dtype("<u2") if modulus_n <= 0x10000 else np.dtype("<u4")


def write_cipher_volume(volume: CipherVolume) -> bytes:
    """Serialize a cipher volume; exact inverse of parse_cipher_volume."""
    dtype = _plane_dtype(volume.modulus_n)
    header = _EVC1_HEADER.pack(
        _EVC1_MAGIC,
        _EVC1_VERSION,
        1 if volume.mode == MODE_DUAL else 0,
        1 if volume.awgn else 0,
        volume.width,
        volume.height,
        volume.fps[0],
        volume.fps[1],
        len(volume.frames),
        volume.modulus_n,
        volume.audio.size,
        volume.sample_rate,
        volume.norm_scale,
    )
    parts = [header]
    for frame in volume.frames:
        for plane in (frame.r, frame.g, frame.b):
            parts.append(np.ascontiguousarray(plane, dtype=dtype).tobytes())
    parts.append(volume.audio.astype("<f8").tobytes())
    return b"".join(parts)


def parse_cipher_volume(data: bytes) -> CipherVolume:
    data = bytes(data)
    if len(data) < _EVC1_HEADER.size:
        raise ContainerError(
            f"file of {len(data)} bytes cannot hold a {_EVC1_HEADER.size}-byte header", offset=0
        )
    (
        magic, version, mode_flag, awgn_flag, width, height, fps_num, fps_den,
        frame_count, modulus_n, audio_count, sample_rate, norm_scale,
    ) = _EVC1_HEADER.unpack_from(data, 0)
    if magic != _EVC1_MAGIC:
        raise ContainerError(f"bad magic {magic!r}, expected {_EVC1_MAGIC!r}", offset=0)
    if version != _EVC1_VERSION:
        raise ContainerError(f"unsupported version {version}", offset=4)
    if mode_flag not in (0, 1):
        raise ContainerError(f"invalid mode flag {mode_flag}", offset=6)
    if awgn_flag not in (0, 1):
        raise ContainerError(f"invalid awgn flag {awgn_flag}", offset=7)
    if width < 1 or height < 1:
        raise ContainerError(f"invalid dimensions {width}x{height}", offset=8)
    if fps_num < 1 or fps_den < 1:
        raise ContainerError(f"invalid frame rate {fps_num}/{fps_den}", offset=16)
    if frame_count < 1:
        raise ContainerError("frame count must be >= 1", offset=24)
    if modulus_n < 2:
        raise ContainerError(f"invalid modulus {modulus_n}", offset=28)
    if audio_count and sample_rate < 1:
        raise ContainerError(f"invalid sample rate {sample_rate}", offset=40)
    if not (np.isfinite(norm_scale) and norm_scale > 0):
        raise ContainerError(f"invalid normalization scale {norm_scale}", offset=44)

    dtype = _plane_dtype(modulus_n)
    plane_elems = width * height
    frames_bytes = frame_count * 3 * plane_elems * dtype.itemsize
    expected = _EVC1_HEADER.size + frames_bytes + audio_count * 8
    if len(data) != expected:
        raise ContainerError(
            f"file is {len(data)} bytes but header implies {expected}", offset=0
        )

    raw = np.frombuffer(
        data, dtype=dtype, count=frame_count * 3 * plane_elems, offset=_EVC1_HEADER.size
    ).reshape(frame_count, 3, height, width)
    if raw.size and int(raw.max()) >= modulus_n:
        flat_index = int(np.argmax(raw.reshape(-1) >= modulus_n))
        raise ContainerError(
            f"cipher value >= modulus {modulus_n}",
            offset=_EVC1_HEADER.size + flat_index * dtype.itemsize,
        )
    frames = [
        CipherFrame(r=raw[i, 0].copy(), g=raw[i, 1].copy(), b=raw[i, 2].copy())
        for i in range(frame_count)
    ]

    audio = np.frombuffer(
        data, dtype="<f8", count=audio_count, offset=_EVC1_HEADER.size + frames_bytes
    ).astype(np.float64)
    if audio.size and not np.isfinite(audio).all():
        flat_index = int(np.argmax(~np.isfinite(audio)))
        raise ContainerError(
            "cipher audio contains a non-finite value",
            offset=_EVC1_HEADER.size + frames_bytes + flat_index * 8,
        )

    return CipherVolume(
        mode=MODE_DUAL if mode_flag else MODE_RSA_ONLY,
        awgn=bool(awgn_flag),
        width=width,
        height=height,
        fps=(fps_num, fps_den),
        modulus_n=modulus_n,
        frames=frames,
        audio=audio,
        sample_rate=sample_rate,
        norm_scale=norm_scale,
    )
