import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mediacrypt.keystream import keystream_bytes
from mediacrypt.media_container import (
    CipherFrame,
    FramePlanes,
    VideoAsset,
    parse_cipher_volume,
    write_cipher_volume,
)
from mediacrypt.rsa_core import generate_keypair
from mediacrypt.video_crypt import (
    CorruptCipherError,
    VideoEncryptionContext,
    context_from_password,
    decrypt_frame,
    decrypt_video,
    encrypt_frame,
    encrypt_video,
)

from conftest import (
    PASSWORD,
    WRONG_PASSWORD_LARGER_N,
    assets_equal,
    fixture_frames,
    frames_equal,
    tone_track,
)


def paper_context(mode="rsa-only") -> VideoEncryptionContext:
    return VideoEncryptionContext(
        key_pair=generate_keypair(73, 89, e=113), pn_seed=42, mode=mode
    )


def random_frame(rng, width=12, height=10) -> FramePlanes:
    return FramePlanes(
        r=rng.integers(0, 256, (height, width), dtype=np.uint8),
        g=rng.integers(0, 256, (height, width), dtype=np.uint8),
        b=rng.integers(0, 256, (height, width), dtype=np.uint8),
    )


class TestContext:
    def test_reference_password_key_material(self):
        ctx = context_from_password(PASSWORD)
        assert (ctx.key_pair.p, ctx.key_pair.q) == (607, 613)
        assert ctx.key_pair.n == 372091

    def test_pn_seed_is_first_keystream_bytes_of_ascii_sum(self):
        ctx = context_from_password(PASSWORD)
        x = sum(ord(ch) for ch in PASSWORD)
        assert ctx.pn_seed == int.from_bytes(keystream_bytes(x, 8), "little")

    def test_rejects_invalid_password(self):
        with pytest.raises(ValueError, match="invalid password"):
            context_from_password("nope")

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            context_from_password(PASSWORD, mode="triple")

    def test_rejects_small_modulus(self):
        # 7 * 11 = 77 cannot hold byte plaintexts
        with pytest.raises(ValueError, match="too small"):
            VideoEncryptionContext(key_pair=generate_keypair(7, 11), pn_seed=0, mode="dual")

    def test_exponent_override(self):
        ctx = context_from_password(PASSWORD, e=7)
        assert ctx.key_pair.e == 7


class TestFrameOps:
    def test_uniform_plane_of_114_maps_to_6369(self):
        ctx = paper_context()
        plane = np.full((5, 5), 114, dtype=np.uint8)
        cipher = encrypt_frame(FramePlanes(r=plane, g=plane, b=plane), ctx, 0)
        assert cipher.r.dtype == np.uint16
        for channel in (cipher.r, cipher.g, cipher.b):
            assert np.all(channel == 6369)

    def test_round_trip_both_modes(self):
        rng = np.random.default_rng(5)
        frame = random_frame(rng)
        for mode in ("dual", "rsa-only"):
            ctx = paper_context(mode)
            for index in (0, 1, 17):
                back = decrypt_frame(encrypt_frame(frame, ctx, index), ctx, index)
                assert frames_equal(back, frame)

    def test_identical_frames_encrypt_differently_in_dual_mode(self):
        ctx = context_from_password(PASSWORD, "dual")
        frame = fixture_frames(1, 64, 64)[0]
        c0 = encrypt_frame(frame, ctx, 0)
        c1 = encrypt_frame(frame, ctx, 1)
        for a, b in ((c0.r, c1.r), (c0.g, c1.g), (c0.b, c1.b)):
            assert float(np.mean(a != b)) > 0.99

    def test_channels_use_distinct_streams(self):
        ctx = context_from_password(PASSWORD, "dual")
        plane = np.zeros((32, 32), dtype=np.uint8)
        cipher = encrypt_frame(FramePlanes(r=plane, g=plane, b=plane), ctx, 0)
        assert not np.array_equal(cipher.r, cipher.g)
        assert not np.array_equal(cipher.g, cipher.b)

    def test_rsa_only_preserves_equality_pattern(self):
        ctx = paper_context()
        frame = fixture_frames(1, 16, 16)[0]
        cipher = encrypt_frame(frame, ctx, 0)
        for channel in ("r", "g", "b"):
            plain = getattr(frame, channel).ravel()
            enc = getattr(cipher, channel).ravel()
            # same plaintext <-> same ciphertext, elementwise across all pairs
            assert np.array_equal(
                plain[:, None] == plain[None, :], enc[:, None] == enc[None, :]
            )

    def test_corrupt_value_names_frame_channel_position(self):
        ctx = paper_context()
        good = np.zeros((2, 2), dtype=np.uint16)
        bad = good.copy()
        bad[1, 0] = 6497  # == n, out of range
        cipher = CipherFrame(r=good, g=bad, b=good)
        with pytest.raises(CorruptCipherError) as info:
            decrypt_frame(cipher, ctx, 3)
        message = str(info.value)
        assert "frame 3" in message
        assert "channel g" in message
        assert "(1, 0)" in message

    def test_boundary_value_just_below_modulus_accepted(self):
        ctx = paper_context()
        plane = np.full((2, 2), 6496, dtype=np.uint16)
        decrypt_frame(CipherFrame(r=plane, g=plane, b=plane), ctx, 0)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), index=st.integers(0, 10**6))
    def test_round_trip_property(self, seed, index):
        frame = random_frame(np.random.default_rng(seed), width=6, height=4)
        ctx = context_from_password(PASSWORD, "dual")
        assert frames_equal(decrypt_frame(encrypt_frame(frame, ctx, index), ctx, index), frame)


class TestVideoPipeline:
    def test_round_trip_with_audio(self, clip):
        for mode in ("dual", "rsa-only"):
            volume = encrypt_video(clip, PASSWORD, mode=mode)
            assert volume.modulus_n == 372091
            assert volume.fps == clip.fps
            back = decrypt_video(volume, PASSWORD)
            assert assets_equal(back, clip)

    def test_round_trip_through_serialization(self, clip):
        volume = encrypt_video(clip, PASSWORD)
        back = decrypt_video(parse_cipher_volume(write_cipher_volume(volume)), PASSWORD)
        assert assets_equal(back, clip)

    def test_without_audio(self):
        asset = VideoAsset(width=8, height=8, fps=(30, 1), frames=fixture_frames(2, 8, 8))
        volume = encrypt_video(asset, PASSWORD)
        assert volume.audio.size == 0
        assert volume.sample_rate == 0
        back = decrypt_video(volume, PASSWORD)
        assert back.audio is None
        assert assets_equal(back, asset)

    def test_empty_audio_track_round_trips(self):
        asset = VideoAsset(
            width=8, height=8, fps=(30, 1), frames=fixture_frames(2, 8, 8),
            audio=tone_track(seconds=0.0),
        )
        volume = encrypt_video(asset, PASSWORD)
        assert volume.sample_rate == 8000
        back = decrypt_video(volume, PASSWORD)
        assert back.audio is not None
        assert back.audio.samples.size == 0

    def test_runs_are_bit_identical(self, clip):
        a = write_cipher_volume(encrypt_video(clip, PASSWORD))
        b = write_cipher_volume(encrypt_video(clip, PASSWORD))
        assert a == b

    def test_frames_are_independent_of_the_clip(self, clip):
        volume = encrypt_video(clip, PASSWORD)
        ctx = context_from_password(PASSWORD)
        solo = encrypt_frame(clip.frames[4], ctx, 4)
        assert np.array_equal(volume.frames[4].r, solo.r)

    def test_wrong_password_with_larger_modulus_yields_garbage(self, clip):
        volume = encrypt_video(clip, PASSWORD)
        garbled = decrypt_video(volume, WRONG_PASSWORD_LARGER_N)
        mismatch = np.mean(
            [float(np.mean(a.r != b.r)) for a, b in zip(clip.frames, garbled.frames)]
        )
        assert mismatch > 0.99
        assert not np.array_equal(garbled.audio.samples, clip.audio.samples)

    def test_wrong_password_with_smaller_modulus_raises(self, clip):
        # " A1! A1!" sums to 358: derived n = 359 * 367 < stored values
        volume = encrypt_video(clip, PASSWORD)
        with pytest.raises(CorruptCipherError):
            decrypt_video(volume, " A1! A1!")

    def test_awgn_flag_wiring(self, clip):
        volume = encrypt_video(clip, PASSWORD, awgn=True, snr_db=40.0)
        assert volume.awgn
        clean = encrypt_video(clip, PASSWORD)
        assert not np.array_equal(volume.audio, clean.audio)
        # video planes unaffected by the audio channel simulation
        assert np.array_equal(volume.frames[0].r, clean.frames[0].r)

    def test_awgn_requires_snr(self, clip):
        with pytest.raises(ValueError, match="snr"):
            encrypt_video(clip, PASSWORD, awgn=True)

    def test_exponent_override_round_trips(self, clip):
        volume = encrypt_video(clip, PASSWORD, e=7)
        assert assets_equal(decrypt_video(volume, PASSWORD, e=7), clip)

    def test_pn_amplitude_must_match(self):
        asset = VideoAsset(
            width=8, height=8, fps=(30, 1), frames=fixture_frames(1, 8, 8),
            audio=tone_track(seconds=0.05),
        )
        volume = encrypt_video(asset, PASSWORD, pn_amplitude=0.25)
        exact = decrypt_video(volume, PASSWORD, pn_amplitude=0.25)
        assert np.array_equal(exact.audio.samples, asset.audio.samples)
        off = decrypt_video(volume, PASSWORD, pn_amplitude=0.5)
        assert not np.array_equal(off.audio.samples, asset.audio.samples)
