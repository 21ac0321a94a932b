"""16-bit mono PCM WAV reading and writing.

Layout written (all little-endian)::

    "RIFF" <36 + data bytes> "WAVE"
    "fmt " 16  tag=1 channels=1 rate byte_rate block_align=2 bits=16
    "data" <data bytes> <int16 samples>
"""
from __future__ import annotations

import io
import struct
from typing import BinaryIO

import numpy as np

from tonalang.errors import FormatError
from tonalang.synth import AudioBuffer

_FMT = struct.Struct("<HHIIHH")


def quantize(samples: np.ndarray) -> np.ndarray:
    scaled = np.rint(np.asarray(samples, dtype=np.float64) * 32767.0)
    return np.clip(scaled, -32768, 32767).astype("<i2")


def wav_bytes(buffer: AudioBuffer) -> bytes:
    payload = quantize(buffer.samples).tobytes()
    rate = int(buffer.sample_rate_hz)
    header = b"".join([
        b"RIFF", struct.pack("<I", 36 + len(payload)), b"WAVE",
        b"fmt ", struct.pack("<I", 16), _FMT.pack(1, 1, rate, rate * 2, 2, 16),
        b"data", struct.pack("<I", len(payload)),
    ])
    return header + payload


def write_wav(buffer: AudioBuffer, destination: BinaryIO) -> int:
    data = wav_bytes(buffer)
    destination.write(data)
    return len(data)


def _read_exact(stream: BinaryIO, n: int, what: str) -> bytes:
    data = stream.read(n)
    if len(data) != n:
        raise FormatError(f"truncated {what}: expected {n} bytes, got {len(data)}")
    return data


def read_wav(source: BinaryIO | bytes) -> AudioBuffer:
    if isinstance(source, (bytes, bytearray, memoryview)):
        source = io.BytesIO(bytes(source))
    riff = source.read(12)
    if len(riff) < 12 or riff[:4] != b"RIFF" or riff[8:12] != b"WAVE":
        raise FormatError("not a RIFF/WAVE stream (riff header)")

    fmt = None
    while True:
        head = source.read(8)
        if len(head) < 8:
            raise FormatError("no data chunk found (data)")
        chunk_id, size = head[:4], struct.unpack("<I", head[4:])[0]
        if chunk_id == b"fmt ":
            if size < 16:
                raise FormatError(f"fmt chunk too short: size={size}")
            body = _read_exact(source, size + (size & 1), "fmt chunk")
            tag, channels, rate, _byte_rate, _align, bits = _FMT.unpack(body[:16])
            if tag != 1:
                raise FormatError(f"unsupported format tag: format_tag={tag}")
            if channels != 1:
                raise FormatError(f"only mono supported: channels={channels}")
            if bits != 16:
                raise FormatError(f"only 16-bit PCM supported: bits_per_sample={bits}")
            if rate == 0:
                raise FormatError("invalid sample rate: sample_rate=0")
            fmt = rate
        elif chunk_id == b"data":
            if fmt is None:
                raise FormatError("data chunk precedes fmt chunk (fmt)")
            payload = _read_exact(source, size, "data chunk")
            if size % 2:
                raise FormatError(f"data size not a whole number of samples: data_size={size}")
            samples = np.frombuffer(payload, dtype="<i2").astype(np.float64) / 32768.0
            return AudioBuffer(samples, fmt)
        else:
            # unknown chunk, padded to an even length
            _read_exact(source, size + (size & 1), f"{chunk_id!r} chunk")


def save_wav(buffer: AudioBuffer, path) -> int:
    with open(path, "wb") as fh:
        return write_wav(buffer, fh)


def load_wav(path) -> AudioBuffer:
    with open(path, "rb") as fh:
        return read_wav(fh)
