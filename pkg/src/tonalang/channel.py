"""Simulated acoustic link: gain, then low-pass, then additive noise.

Noise generator, fixed so runs are bit-reproducible:

* state update ``x <- 6364136223846793005 * x + 1442695040888963407 (mod 2**64)``,
  starting from ``x = seed``; the first draw uses the state after one update;
* uniform ``u = ((x >> 11) + 1) / 2**53``, which lies in (0, 1];
* consecutive pairs ``(u1, u2)`` give two normals by Box-Muller,
  ``sqrt(-2 ln u1) * cos(2 pi u2)`` then ``sqrt(-2 ln u1) * sin(2 pi u2)``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from tonalang._backend import lcg_uniforms
from tonalang.decode import DecodeResult
from tonalang.errors import AlignmentError, DomainError
from tonalang.synth import AudioBuffer

DEFAULT_TAPS = 511
AUDIBLE_CUTOFF_HZ = 20000.0


@dataclass(frozen=True)
class ChannelConfig:
    snr_db: float | None = None
    lowpass_cutoff_hz: float | None = None
    gain: float = 1.0
    seed: int = 0
    fir_taps: int = DEFAULT_TAPS

    def __post_init__(self):
        if not self.gain > 0:
            raise DomainError(f"gain must be positive, got {self.gain}")
        if self.fir_taps < 1 or self.fir_taps % 2 == 0:
            raise DomainError(f"fir_taps must be odd and positive, got {self.fir_taps}")
        if self.lowpass_cutoff_hz is not None and not self.lowpass_cutoff_hz > 0:
            raise DomainError("lowpass cutoff must be positive")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 unsigned bits")


def gaussian_noise(count: int, seed: int) -> np.ndarray:
    """Standard normal draws from the pinned LCG + Box-Muller generator."""
    pairs = (count + 1) // 2
    u = lcg_uniforms(seed, 2 * pairs)
    radius = np.sqrt(-2.0 * np.log(u[0::2]))
    angle = 2.0 * np.pi * u[1::2]
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:count]


def apply_awgn(buffer: AudioBuffer, snr_db: float | None, seed: int = 0) -> AudioBuffer:
    """Add white Gaussian noise at ``snr_db`` relative to the buffer's mean power.

    ``None`` or ``+inf`` leaves the buffer untouched.
    """
    if len(buffer) == 0:
        raise DomainError("cannot add noise to an empty buffer")
    if snr_db is None or snr_db == math.inf:
        return buffer
    variance = buffer.mean_power() / 10.0 ** (snr_db / 10.0)
    noise = math.sqrt(variance) * gaussian_noise(len(buffer), seed)
    return AudioBuffer(buffer.samples + noise, buffer.sample_rate_hz)


def lowpass_taps(cutoff_hz: float, sample_rate_hz: int, taps: int = DEFAULT_TAPS) -> np.ndarray:
    """Hamming-windowed sinc, normalized to unit gain at DC."""
    if taps < 1 or taps % 2 == 0:
        raise DomainError(f"FIR length must be odd and positive, got {taps}")
    if not 0 < cutoff_hz < sample_rate_hz / 2:
        raise DomainError(
            f"cutoff {cutoff_hz} Hz must lie strictly between 0 and Nyquist "
            f"({sample_rate_hz / 2} Hz)"
        )
    fc = cutoff_hz / sample_rate_hz
    n = np.arange(taps) - (taps - 1) / 2
    h = 2.0 * fc * np.sinc(2.0 * fc * n) * np.hamming(taps)
    return h / h.sum()


def apply_lowpass(buffer: AudioBuffer, cutoff_hz: float,
                  fir_taps: int = DEFAULT_TAPS) -> AudioBuffer:
    h = lowpass_taps(cutoff_hz, buffer.sample_rate_hz, fir_taps)
    if len(buffer) == 0:
        return buffer
    # centre-tap alignment keeps the output on the input timeline
    full = np.convolve(buffer.samples, h)
    delay = (fir_taps - 1) // 2
    return AudioBuffer(full[delay:delay + len(buffer)], buffer.sample_rate_hz)


def apply_channel(buffer: AudioBuffer, config: ChannelConfig | None = None) -> AudioBuffer:
    config = config or ChannelConfig()
    out = buffer
    if config.gain != 1.0:
        out = AudioBuffer(out.samples * config.gain, out.sample_rate_hz)
    if config.lowpass_cutoff_hz is not None:
        out = apply_lowpass(out, config.lowpass_cutoff_hz, config.fir_taps)
    if config.snr_db is not None:
        out = apply_awgn(out, config.snr_db, config.seed)
    return out


@dataclass(frozen=True)
class SerReport:
    total: int
    errors: int
    ser: float
    confusion: Counter = field(default_factory=Counter)


def measure_ser(sent: str, received: DecodeResult) -> SerReport:
    """Symbol error rate; undecodable symbols count as errors.

    ``confusion`` maps ``(sent_char, received_char_or_None)`` to a count.
    """
    if len(sent) != received.symbol_count:
        raise AlignmentError(
            f"sent {len(sent)} symbols but received {received.symbol_count}"
        )
    confusion: Counter = Counter()
    for ch, det in zip(sent, received.detections):
        confusion[(ch, det.detected_char)] += 1
    errors = sum(n for (s, r), n in confusion.items() if s != r)
    total = len(sent)
    return SerReport(total, errors, errors / total if total else 0.0, confusion)
