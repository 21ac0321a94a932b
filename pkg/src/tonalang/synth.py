"""Text to tone rendering."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tonalang.errors import AliasingError, ConfigurationError, EncodingError
from tonalang.freqmap import FrequencyTable, build_table


@dataclass(frozen=True)
class SynthParams:
    sample_rate_hz: int = 192000
    symbol_duration_s: float = 0.040
    gap_duration_s: float = 0.010
    fade_duration_s: float = 0.002
    amplitude: float = 0.8

    def __post_init__(self):
        if int(self.sample_rate_hz) != self.sample_rate_hz or self.sample_rate_hz <= 0:
            raise ConfigurationError(f"sample rate must be a positive integer, got {self.sample_rate_hz}")
        if not self.symbol_duration_s > 0:
            raise ConfigurationError("symbol duration must be positive")
        if self.gap_duration_s < 0 or self.fade_duration_s < 0:
            raise ConfigurationError("gap and fade durations must be non-negative")
        if 2 * self.fade_duration_s > self.symbol_duration_s:
            raise ConfigurationError(
                f"fades ({self.fade_duration_s} s each) do not fit in a "
                f"{self.symbol_duration_s} s symbol"
            )
        if not 0 < self.amplitude <= 1:
            raise ConfigurationError(f"amplitude must lie in (0, 1], got {self.amplitude}")

    @property
    def symbol_samples(self) -> int:
        return round(self.symbol_duration_s * self.sample_rate_hz)

    @property
    def gap_samples(self) -> int:
        return round(self.gap_duration_s * self.sample_rate_hz)

    @property
    def fade_samples(self) -> int:
        return round(self.fade_duration_s * self.sample_rate_hz)

    def covers_alphabet(self, table: FrequencyTable | None = None) -> bool:
        """True when every tone in ``table`` is below Nyquist."""
        table = table or build_table()
        return self.sample_rate_hz / 2 > table[-1].frequency_hz


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    """Mono float64 samples at a fixed rate.

    Synthesized buffers stay within [-1, 1]; channel impairments may push
    samples past that, and WAV export clamps on quantization.
    """

    samples: np.ndarray
    sample_rate_hz: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError("AudioBuffer holds mono samples only")
        object.__setattr__(self, "samples", samples)
        if self.sample_rate_hz <= 0:
            raise ValueError("sample rate must be positive")

    def __len__(self) -> int:
        return len(self.samples)

    def __getitem__(self, index: slice) -> AudioBuffer:
        if not isinstance(index, slice):
            raise TypeError("AudioBuffer supports slicing only")
        return AudioBuffer(self.samples[index], self.sample_rate_hz)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, AudioBuffer)
                and self.sample_rate_hz == other.sample_rate_hz
                and np.array_equal(self.samples, other.samples))

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate_hz

    def mean_power(self) -> float:
        if len(self.samples) == 0:
            return 0.0
        return float(np.mean(self.samples * self.samples))


def _raised_cosine(n: int) -> np.ndarray:
    return 0.5 - 0.5 * np.cos(np.pi * np.arange(n) / n)


def synth_symbol(frequency_hz: float, params: SynthParams) -> AudioBuffer:
    rate = params.sample_rate_hz
    if frequency_hz >= rate / 2:
        raise AliasingError(
            f"{frequency_hz:.2f} Hz is at or above Nyquist for sample rate {rate} Hz "
            f"(limit {rate / 2:.1f} Hz)"
        )
    if frequency_hz <= 0:
        raise AliasingError(f"tone frequency must be positive, got {frequency_hz}")
    k = np.arange(params.symbol_samples)
    tone = params.amplitude * np.sin(2.0 * np.pi * frequency_hz * k / rate)
    fade = min(params.fade_samples, len(tone) // 2)
    if fade:
        ramp = _raised_cosine(fade)
        tone[:fade] *= ramp
        tone[-fade:] *= ramp[::-1]
    return AudioBuffer(tone, rate)


def encode_text(text: str, table: FrequencyTable | None = None,
                params: SynthParams | None = None) -> AudioBuffer:
    """One faded tone per character, each followed by a silent gap."""
    table = table or build_table()
    params = params or SynthParams()
    tones = []
    for position, ch in enumerate(text):
        entry = table.lookup(ch)
        if entry is None:
            raise EncodingError(
                f"character at index {position} (code point U+{ord(ch):04X}) has no tone"
            )
        tones.append(entry.frequency_hz)

    frame = params.symbol_samples + params.gap_samples
    out = np.zeros(len(text) * frame)
    cache: dict[float, np.ndarray] = {}
    for position, freq in enumerate(tones):
        if freq not in cache:
            cache[freq] = synth_symbol(freq, params).samples
        start = position * frame
        out[start:start + params.symbol_samples] = cache[freq]
    return AudioBuffer(out, params.sample_rate_hz)
