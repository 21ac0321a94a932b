"""Spectrograms, tone-grid images, and information-rate arithmetic.

Images are binary PPM (P6). Intensities in [0, 1] map onto a black-red-
yellow-white ramp: ``r = clip(3t)``, ``g = clip(3t - 1)``, ``b = clip(3t - 2)``,
each scaled to 0..255 and rounded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from tonalang._backend import goertzel_matrix
from tonalang.decode import DecodeParams
from tonalang.errors import ConfigurationError, DomainError
from tonalang.freqmap import ALPHABET_SIZE, FrequencyTable, build_table
from tonalang.synth import AudioBuffer, SynthParams

DEFAULT_SPEECH_BASELINE_BPS = 39.0
DEFAULT_DB_FLOOR = -80.0


@dataclass(frozen=True, eq=False)
class Spectrogram:
    frames: np.ndarray  # (time, bin) magnitudes
    window_size: int
    hop: int
    sample_rate_hz: int

    @property
    def bin_hz(self) -> float:
        return self.sample_rate_hz / self.window_size


@dataclass(frozen=True)
class RateReport:
    bits_per_symbol: float
    symbols_per_second: float
    bits_per_second: float
    speech_baseline_bps: float
    exceeds_speech: bool

    def as_text(self) -> str:
        rows = [
            ("bits_per_symbol", f"{self.bits_per_symbol:.4f}"),
            ("symbols_per_second", f"{self.symbols_per_second:.4f}"),
            ("bits_per_second", f"{self.bits_per_second:.2f}"),
            ("speech_baseline_bps", f"{self.speech_baseline_bps:.2f}"),
            ("exceeds_speech", "yes" if self.exceeds_speech else "no"),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"

    def csv_rows(self):
        yield ["bits_per_symbol", "symbols_per_second", "bits_per_second",
               "speech_baseline_bps", "exceeds_speech"]
        yield [f"{self.bits_per_symbol:.6f}", f"{self.symbols_per_second:.6f}",
               f"{self.bits_per_second:.6f}", f"{self.speech_baseline_bps:.6f}",
               "true" if self.exceeds_speech else "false"]


def hann(n: int) -> np.ndarray:
    """Periodic Hann window."""
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def stft(buffer: AudioBuffer, window_size: int = 4096, hop: int = 1024) -> Spectrogram:
    if window_size < 64 or window_size & (window_size - 1):
        raise DomainError(f"window size must be a power of two >= 64, got {window_size}")
    if not 0 < hop <= window_size:
        raise DomainError(f"hop must lie in 1..{window_size}, got {hop}")
    n = len(buffer)
    if n < window_size:
        raise DomainError(f"buffer of {n} samples is shorter than the {window_size}-sample window")
    count = (n - window_size) // hop + 1
    window = hann(window_size)
    idx = np.arange(count)[:, None] * hop + np.arange(window_size)[None, :]
    spectra = np.fft.rfft(buffer.samples[idx] * window, axis=1)
    return Spectrogram(np.abs(spectra) / window.sum(), window_size, hop, buffer.sample_rate_hz)


def hot_ramp(intensity: np.ndarray) -> np.ndarray:
    t = np.clip(intensity, 0.0, 1.0)[..., None]
    rgb = np.clip(3.0 * t - np.array([0.0, 1.0, 2.0]), 0.0, 1.0)
    return np.rint(rgb * 255.0).astype(np.uint8)


def ppm_bytes(rgb: np.ndarray) -> bytes:
    height, width, _ = rgb.shape
    return f"P6\n{width} {height}\n255\n".encode("ascii") + np.ascontiguousarray(rgb).tobytes()


def render_spectrogram(spec: Spectrogram, db_floor: float = DEFAULT_DB_FLOOR) -> bytes:
    """Time runs left to right, frequency bottom to top."""
    if not db_floor < 0:
        raise DomainError(f"db_floor must be negative, got {db_floor}")
    mags = spec.frames
    if mags.size == 0:
        raise DomainError("empty spectrogram")
    peak = float(mags.max())
    if peak <= 0:
        raise DomainError("silent input: spectrogram has no energy")
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mags / peak)
    intensity = (np.clip(db, db_floor, 0.0) - db_floor) / -db_floor
    return ppm_bytes(hot_ramp(intensity.T[::-1]))


def tone_grid(buffer: AudioBuffer, table: FrequencyTable | None = None,
              params: DecodeParams | None = None) -> np.ndarray:
    """Per-frame Goertzel power over the alphabet, scaled so each frame peaks at 1.

    Shape is (characters, frames). Frames below the energy gate are all zero.
    """
    table = table or build_table()
    params = params or DecodeParams()
    rate = buffer.sample_rate_hz
    if rate < 2 * table[0].frequency_hz:
        raise ConfigurationError(f"sample rate {rate} Hz cannot represent the lowest tone")
    frame = params.frame_samples(rate)
    margin = params.margin_samples(rate)
    start, stop = margin, params.symbol_samples(rate) - margin
    n_frames = len(buffer) // frame
    if len(buffer) - n_frames * frame >= stop:
        n_frames += 1
    grid = np.zeros((len(table), n_frames))
    if n_frames == 0:
        return grid
    idx = np.arange(n_frames)[:, None] * frame + np.arange(start, stop)[None, :]
    windows = buffer.samples[idx]
    freqs = np.array(table.frequencies)
    usable = np.flatnonzero(freqs < rate / 2)
    active = np.flatnonzero(np.mean(windows * windows, axis=1) >= params.min_energy)
    if len(active) and len(usable):
        omegas = np.tile(2.0 * np.pi * freqs[usable] / rate, (len(active), 1))
        power = goertzel_matrix(np.ascontiguousarray(windows[active]), omegas)
        peak = power.max(axis=1, keepdims=True)
        power = np.divide(power, peak, out=np.zeros_like(power), where=peak > 0)
        grid[np.ix_(usable, active)] = power.T
    return grid


def render_tone_grid(buffer: AudioBuffer, table: FrequencyTable | None = None,
                     params: DecodeParams | None = None) -> bytes:
    """One column per symbol frame, one row per character (space at the top)."""
    return ppm_bytes(hot_ramp(tone_grid(buffer, table, params)))


def info_rate(params: SynthParams | None = None,
              speech_baseline_bps: float = DEFAULT_SPEECH_BASELINE_BPS) -> RateReport:
    params = params or SynthParams()
    if not speech_baseline_bps > 0:
        raise DomainError("speech baseline must be positive")
    bits = math.log2(ALPHABET_SIZE)
    symbols = 1.0 / (params.symbol_duration_s + params.gap_duration_s)
    bps = bits * symbols
    return RateReport(bits, symbols, bps, speech_baseline_bps, bps > speech_baseline_bps)
