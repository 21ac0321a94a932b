import io
import struct

import numpy as np
import pytest

from tonalang.errors import FormatError
from tonalang.synth import AudioBuffer, encode_text
from tonalang.wavio import read_wav, wav_bytes, write_wav


def parse_header(data):
    riff, riff_size, wave = struct.unpack("<4sI4s", data[:12])
    fmt_id, fmt_size, tag, ch, rate, byte_rate, align, bits = struct.unpack("<4sIHHIIHH", data[12:36])
    data_id, data_size = struct.unpack("<4sI", data[36:44])
    return dict(riff=riff, riff_size=riff_size, wave=wave, fmt_id=fmt_id, fmt_size=fmt_size,
                tag=tag, channels=ch, rate=rate, byte_rate=byte_rate, align=align, bits=bits,
                data_id=data_id, data_size=data_size)


def test_empty_buffer_is_header_only():
    sink = io.BytesIO()
    assert write_wav(AudioBuffer(np.zeros(0), 192000), sink) == 44
    h = parse_header(sink.getvalue())
    assert h["data_size"] == 0 and h["riff_size"] == 36


def test_header_layout_for_7680_samples():
    data = wav_bytes(AudioBuffer(np.zeros(7680), 192000))
    h = parse_header(data)
    assert h == dict(riff=b"RIFF", riff_size=15396, wave=b"WAVE", fmt_id=b"fmt ", fmt_size=16,
                     tag=1, channels=1, rate=192000, byte_rate=384000, align=2, bits=16,
                     data_id=b"data", data_size=15360)
    assert len(data) == 44 + 15360


def test_quantization_scale_and_clamp():
    data = wav_bytes(AudioBuffer(np.array([1.0, -1.0, 0.5, 2.0, -3.0, 0.0]), 8000))
    assert struct.unpack("<6h", data[44:]) == (32767, -32767, 16384, 32767, -32768, 0)


def test_round_trip_within_quantization():
    rng = np.random.default_rng(0)
    original = rng.uniform(-1, 1, 5000)
    back = read_wav(wav_bytes(AudioBuffer(original, 48000)))
    assert back.sample_rate_hz == 48000
    # writer scales by 32767, reader by 32768: worst case (|s| + 0.5) / 32768
    bound = (np.abs(original) + 0.5) / 32768 + 1e-12
    assert np.all(np.abs(back.samples - original) <= bound)
    small = original[np.abs(original) <= 0.5]
    assert np.all(np.abs(read_wav(wav_bytes(AudioBuffer(small, 48000))).samples - small) <= 1 / 32768)


def test_bytes_are_deterministic():
    assert wav_bytes(encode_text("abc")) == wav_bytes(encode_text("abc"))


def _with_chunk(data, chunk):
    return data[:12] + chunk + data[12:]


def test_skips_unknown_chunks():
    data = wav_bytes(AudioBuffer(np.linspace(-0.5, 0.5, 101), 22050))
    extra = b"LIST" + struct.pack("<I", 5) + b"INFOx" + b"\0"
    moved = data[:36] + extra + data[36:]  # between fmt and data
    fixed = bytearray(moved)
    struct.pack_into("<I", fixed, 4, len(fixed) - 8)
    expected = read_wav(data)
    assert read_wav(bytes(fixed)) == expected
    assert read_wav(_with_chunk(data, extra)) == expected


def _set(data, offset, fmt, value):
    out = bytearray(data)
    struct.pack_into(fmt, out, offset, value)
    return bytes(out)


def test_rejects_bad_files():
    good = wav_bytes(AudioBuffer(np.zeros(10), 8000))
    with pytest.raises(FormatError, match="riff"):
        read_wav(b"RIFX" + good[4:])
    with pytest.raises(FormatError, match="channels=2"):
        read_wav(_set(good, 22, "<H", 2))
    with pytest.raises(FormatError, match="format_tag=3"):
        read_wav(_set(good, 20, "<H", 3))
    with pytest.raises(FormatError, match="bits_per_sample=8"):
        read_wav(_set(good, 34, "<H", 8))
    with pytest.raises(FormatError, match="truncated data"):
        read_wav(good[:-4])
    with pytest.raises(FormatError, match="data"):
        read_wav(good[:36])


def test_file_object_source():
    buf = encode_text("Q")
    sink = io.BytesIO()
    write_wav(buf, sink)
    sink.seek(0)
    assert len(read_wav(sink)) == len(buf)
