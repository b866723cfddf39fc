"""Shared fixtures and the acceptance-summary reporting hooks."""

import numpy as np
import pytest

from mediacrypt.media_container import AudioTrack, FramePlanes, VideoAsset

PASSWORD = "Pass@12!"
# Wrong password whose ASCII sum exceeds the right one, so its derived
# modulus covers every stored cipher value and decryption proceeds to
# garbage instead of raising.
WRONG_PASSWORD_LARGER_N = "Zz~9!Qxz"


def fixture_frames(frame_count: int, width: int, height: int) -> list[FramePlanes]:
    """Structured frames with exactly two distinct values per plane.

    Two-valued planes give |Pearson| = 1 against any injective cipher map,
    which makes the rsa-only vs dual degradation ordering sharp.  A block
    moving with the frame index keeps frames distinct.
    """
    frames = []
    for i in range(frame_count):
        r = np.full((height, width), 40, dtype=np.uint8)
        r[:, width // 2 :] = 200
        g = np.full((height, width), 90, dtype=np.uint8)
        g[height // 2 :, :] = 17
        b = np.zeros((height, width), dtype=np.uint8)
        b[(np.arange(height)[:, None] + np.arange(width)[None, :]) % 2 == 0] = 230
        if width > 8 and height > 8:
            y = (3 * i) % (height - 8)
            x = (5 * i) % (width - 8)
            r[y : y + 8, x : x + 8] = 200
            g[y : y + 8, x : x + 8] = 17
            b[y : y + 8, x : x + 8] = 230
        frames.append(FramePlanes(r=r, g=g, b=b))
    return frames


def tone_track(seconds: float = 1.0, rate: int = 8000, freq: float = 440.0,
               amplitude: float = 0.8) -> AudioTrack:
    t = np.arange(int(round(seconds * rate))) / rate
    pcm = np.round(amplitude * 32767.0 * np.sin(2 * np.pi * freq * t)).astype(np.int16)
    return AudioTrack(samples=pcm, sample_rate=rate)


def random_asset(rng: np.random.Generator, max_dim: int = 8, max_frames: int = 4,
                 with_audio: bool | None = None) -> VideoAsset:
    width = int(rng.integers(1, max_dim + 1))
    height = int(rng.integers(1, max_dim + 1))
    frames = [
        FramePlanes(
            r=rng.integers(0, 256, (height, width), dtype=np.uint8),
            g=rng.integers(0, 256, (height, width), dtype=np.uint8),
            b=rng.integers(0, 256, (height, width), dtype=np.uint8),
        )
        for _ in range(int(rng.integers(1, max_frames + 1)))
    ]
    audio = None
    if with_audio is None:
        with_audio = bool(rng.integers(0, 2))
    if with_audio:
        count = int(rng.integers(0, 64))
        audio = AudioTrack(
            samples=rng.integers(-32768, 32768, count).astype(np.int16),
            sample_rate=int(rng.integers(1, 48001)),
        )
    fps = (int(rng.integers(1, 121)), int(rng.integers(1, 4)))
    return VideoAsset(width=width, height=height, fps=fps, frames=frames, audio=audio)


def frames_equal(a: FramePlanes, b: FramePlanes) -> bool:
    return (
        np.array_equal(a.r, b.r) and np.array_equal(a.g, b.g) and np.array_equal(a.b, b.b)
    )


def assets_equal(a: VideoAsset, b: VideoAsset) -> bool:
    if (a.width, a.height, a.fps) != (b.width, b.height, b.fps):
        return False
    if len(a.frames) != len(b.frames):
        return False
    if not all(frames_equal(x, y) for x, y in zip(a.frames, b.frames)):
        return False
    if (a.audio is None) != (b.audio is None):
        return False
    if a.audio is not None:
        if a.audio.sample_rate != b.audio.sample_rate:
            return False
        if not np.array_equal(a.audio.samples, b.audio.samples):
            return False
    return True


@pytest.fixture
def clip() -> VideoAsset:
    """The desk-scale fixture: 10 frames of 64x64 plus one second of audio."""
    return VideoAsset(
        width=64, height=64, fps=(30, 1),
        frames=fixture_frames(10, 64, 64), audio=tone_track(),
    )


# --- acceptance criterion reporting -------------------------------------

_RESULTS: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance_criterion(num, label): marks a test as one numbered acceptance criterion",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance_criterion")
    if marker is not None and report.when == "call":
        _RESULTS[marker.args[0]] = (marker.args[1], report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        label, passed = _RESULTS[num]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status} - {label}")
