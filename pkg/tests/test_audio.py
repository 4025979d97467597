"""WAV round trips, clip validation, resampling."""

import io
import wave

import numpy as np
import pytest

from innerself.audio import (
    CANONICAL_RATE,
    AudioClip,
    ensure_rate,
    read_wav,
    read_wav_bytes,
    resample_linear,
    to_pcm16,
    write_wav,
    write_wav_bytes,
)


def tone(freq=220.0, duration=0.5, rate=CANONICAL_RATE, amp=0.5):
    t = np.arange(int(duration * rate)) / rate
    return AudioClip(amp * np.sin(2 * np.pi * freq * t), rate)


class TestAudioClip:
    def test_rejects_stereo_array(self):
        with pytest.raises(ValueError, match="1-D"):
            AudioClip(np.zeros((100, 2)))

    def test_rejects_out_of_range_samples(self):
        with pytest.raises(ValueError, match="exceed"):
            AudioClip(np.array([0.0, 1.5]))

    def test_rejects_bad_rate(self):
        with pytest.raises(ValueError):
            AudioClip(np.zeros(10), 0)

    def test_duration_and_peak(self):
        clip = AudioClip(np.array([0.0, -0.25, 0.5]), 16000)
        assert clip.duration_seconds == pytest.approx(3 / 16000)
        assert clip.peak == 0.5

    def test_empty_clip_peak_is_zero(self):
        assert AudioClip(np.zeros(0)).peak == 0.0


class TestWavRoundTrip:
    def test_bytes_round_trip_within_quantization(self):
        rng = np.random.default_rng(7)
        clip = AudioClip(rng.uniform(-1, 1, 2048), 16000)
        back = read_wav_bytes(write_wav_bytes(clip))
        assert back.sample_rate == 16000
        assert len(back.samples) == 2048
        assert np.max(np.abs(back.samples - clip.samples)) <= 1.0 / 32767

    def test_file_round_trip(self, tmp_path):
        clip = tone()
        path = tmp_path / "t.wav"
        write_wav(path, clip)
        back = read_wav(path)
        assert back.fingerprint() == clip.fingerprint()

    def test_pcm16_round_trip_is_lossless(self):
        clip = tone()
        once = read_wav_bytes(write_wav_bytes(clip))
        twice = read_wav_bytes(write_wav_bytes(once))
        assert np.array_equal(once.samples, twice.samples)

    def test_stereo_input_downmixes_to_mono(self):
        left = to_pcm16(0.5 * np.ones(100))
        right = to_pcm16(-0.5 * np.ones(100))
        interleaved = np.empty(200, dtype="<i2")
        interleaved[0::2] = left
        interleaved[1::2] = right
        buf = io.BytesIO()
        with wave.open(buf, "wb") as w:
            w.setnchannels(2)
            w.setsampwidth(2)
            w.setframerate(16000)
            w.writeframes(interleaved.tobytes())
        clip = read_wav_bytes(buf.getvalue())
        assert len(clip.samples) == 100
        assert np.max(np.abs(clip.samples)) < 1e-4

    def test_rejects_8bit_wav(self):
        buf = io.BytesIO()
        with wave.open(buf, "wb") as w:
            w.setnchannels(1)
            w.setsampwidth(1)
            w.setframerate(16000)
            w.writeframes(bytes(100))
        with pytest.raises(ValueError, match="16-bit"):
            read_wav_bytes(buf.getvalue())


class TestFingerprint:
    def test_stable_across_wav_round_trip(self):
        clip = tone(freq=330.0)
        back = read_wav_bytes(write_wav_bytes(clip))
        assert back.fingerprint() == clip.fingerprint()

    def test_distinguishes_content_and_rate(self):
        a = tone(freq=220.0)
        b = tone(freq=221.0)
        assert a.fingerprint() != b.fingerprint()
        c = AudioClip(a.samples, 8000)
        assert c.fingerprint() != a.fingerprint()


class TestResample:
    def test_identity_length_copies(self):
        x = np.linspace(-1, 1, 50)
        y = resample_linear(x, 50)
        assert np.array_equal(x, y)
        assert y is not x

    def test_output_length(self):
        assert len(resample_linear(np.zeros(100), 37)) == 37
        assert len(resample_linear(np.zeros(0), 10)) == 10
        assert len(resample_linear(np.zeros(10), 0)) == 0

    def test_endpoints_preserved(self):
        x = np.array([0.2, 0.5, -0.3, 0.9])
        y = resample_linear(x, 11)
        assert y[0] == pytest.approx(0.2)
        assert y[-1] == pytest.approx(0.9)

    def test_ensure_rate_same_rate_returns_same_object(self):
        clip = tone()
        assert ensure_rate(clip, CANONICAL_RATE) is clip

    def test_ensure_rate_converts(self):
        clip = tone(rate=8000, duration=1.0)
        out = ensure_rate(clip, 16000)
        assert out.sample_rate == 16000
        assert len(out.samples) == 16000
