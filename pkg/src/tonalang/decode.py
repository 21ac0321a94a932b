"""Tone to text: fixed-frame segmentation and a Goertzel filter bank.

Each frame's symbol window (minus a margin at both edges, so the fade ramps
are excluded) is scored against every table tone below Nyquist. The loudest
tone wins if it beats the runner-up by ``min_confidence``; silent or
ambiguous frames decode to ``None`` and print as ``'?'``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from tonalang._backend import goertzel_matrix
from tonalang.errors import ConfigurationError, DomainError
from tonalang.freqmap import FrequencyTable, build_table
from tonalang.synth import AudioBuffer, SynthParams

SUBSTITUTION_MARKER = "?"
_HALF_SEMITONE = 2.0 ** (1.0 / 24.0)


@dataclass(frozen=True)
class DecodeParams:
    symbol_duration_s: float = 0.040
    gap_duration_s: float = 0.010
    analysis_margin_s: float = 0.002
    min_confidence: float = 2.0
    min_energy: float = 1e-6

    def __post_init__(self):
        if not self.symbol_duration_s > 0:
            raise ConfigurationError("symbol duration must be positive")
        if self.gap_duration_s < 0 or self.analysis_margin_s < 0:
            raise ConfigurationError("gap and margin must be non-negative")
        if not 2 * self.analysis_margin_s < self.symbol_duration_s:
            raise ConfigurationError(
                f"analysis margin {self.analysis_margin_s} s leaves nothing of a "
                f"{self.symbol_duration_s} s symbol"
            )
        if self.min_confidence < 1:
            raise ConfigurationError("min_confidence must be >= 1")
        if self.min_energy < 0:
            raise ConfigurationError("min_energy must be non-negative")

    @classmethod
    def matching(cls, synth: SynthParams, **overrides) -> DecodeParams:
        """Decoder framing that mirrors ``synth``; the margin equals the fade."""
        values = dict(symbol_duration_s=synth.symbol_duration_s,
                      gap_duration_s=synth.gap_duration_s,
                      analysis_margin_s=synth.fade_duration_s)
        values.update(overrides)
        return cls(**values)

    def symbol_samples(self, rate: int) -> int:
        return round(self.symbol_duration_s * rate)

    def frame_samples(self, rate: int) -> int:
        # same per-segment rounding as the encoder
        return round(self.symbol_duration_s * rate) + round(self.gap_duration_s * rate)

    def margin_samples(self, rate: int) -> int:
        return round(self.analysis_margin_s * rate)


@dataclass(frozen=True)
class SymbolDetection:
    index: int
    detected_char: str | None
    target_frequency_hz: float
    power: float
    confidence: float
    cents_error: float


@dataclass(frozen=True)
class DecodeResult:
    text: str
    detections: tuple[SymbolDetection, ...] = field(default_factory=tuple)

    @property
    def symbol_count(self) -> int:
        return len(self.detections)

    @property
    def failed_count(self) -> int:
        return sum(1 for d in self.detections if d.detected_char is None)


def goertzel_power(segment: AudioBuffer, target_hz: float) -> float:
    """|DTFT(segment)|^2 at ``target_hz``, divided by N^2."""
    rate = segment.sample_rate_hz
    if not 0 < target_hz < rate / 2:
        raise DomainError(
            f"target {target_hz} Hz must lie strictly between 0 and Nyquist ({rate / 2} Hz)"
        )
    if len(segment) < 8:
        raise DomainError(f"segment needs at least 8 samples, got {len(segment)}")
    omega = np.array([[2.0 * np.pi * target_hz / rate]])
    return float(goertzel_matrix(segment.samples[None, :], omega)[0, 0])


def _bank(table: FrequencyTable, rate: int) -> tuple[np.ndarray, np.ndarray]:
    freqs = np.array(table.frequencies)
    usable = freqs < rate / 2
    return freqs, usable


def _parabolic_cents(left: float, centre: float, right: float) -> float:
    denom = left - 2.0 * centre + right
    if denom >= 0 or centre <= 0:
        return 0.0
    offset = 0.5 * (left - right) / denom
    return 50.0 * max(-1.0, min(1.0, offset))


def _analyse(windows: np.ndarray, rate: int, table: FrequencyTable,
             params: DecodeParams, first_index: int = 0) -> list[SymbolDetection]:
    """Detections for a stack of already-trimmed analysis windows."""
    n_frames = windows.shape[0]
    if n_frames == 0:
        return []
    freqs, usable = _bank(table, rate)
    energy = np.mean(windows * windows, axis=1)
    active = np.flatnonzero(energy >= params.min_energy)

    powers = np.zeros((n_frames, len(freqs)))
    if len(active):
        omegas = 2.0 * np.pi * freqs[usable] / rate
        sub = np.ascontiguousarray(windows[active])
        bank = goertzel_matrix(sub, np.ascontiguousarray(np.broadcast_to(omegas, (len(active), len(omegas)))))
        powers[np.ix_(active, np.flatnonzero(usable))] = bank

    # refinement probes half a semitone either side of each winner
    winners = np.argmax(powers, axis=1)
    probes = np.zeros((n_frames, 2))
    if len(active):
        win_freqs = freqs[winners[active]]
        probe_hz = np.stack([win_freqs / _HALF_SEMITONE, win_freqs * _HALF_SEMITONE], axis=1)
        in_band = probe_hz < rate / 2
        probe_omegas = np.where(in_band, 2.0 * np.pi * probe_hz / rate, 0.0)
        probed = goertzel_matrix(np.ascontiguousarray(windows[active]), np.ascontiguousarray(probe_omegas))
        probes[active] = np.where(in_band, probed, 0.0)

    detections = []
    active_set = set(active.tolist())
    for row in range(n_frames):
        index = first_index + row
        if row not in active_set:
            detections.append(SymbolDetection(index, None, 0.0, 0.0, 1.0, 0.0))
            continue
        ranked = powers[row]
        best = int(winners[row])
        best_power = float(ranked[best])
        runner_up = float(np.max(np.delete(ranked, best))) if len(ranked) > 1 else 0.0
        if runner_up > 0:
            confidence = best_power / runner_up
        else:
            confidence = math.inf if best_power > 0 else 1.0
        char = table[best].character if confidence >= params.min_confidence and best_power > 0 else None
        cents = _parabolic_cents(probes[row, 0], best_power, probes[row, 1])
        detections.append(SymbolDetection(index, char, float(freqs[best]), best_power,
                                          confidence, cents))
    return detections


def detect_symbol(segment: AudioBuffer, table: FrequencyTable | None = None,
                  params: DecodeParams | None = None, index: int = 0) -> SymbolDetection:
    """Classify one symbol-length segment (fade ramps included; they get trimmed)."""
    table = table or build_table()
    params = params or DecodeParams()
    rate = segment.sample_rate_hz
    margin = params.margin_samples(rate)
    window = segment.samples[margin:len(segment) - margin]
    return _analyse(window[None, :], rate, table, params, index)[0]


def decode_audio(buffer: AudioBuffer, table: FrequencyTable | None = None,
                 params: DecodeParams | None = None) -> DecodeResult:
    table = table or build_table()
    params = params or DecodeParams()
    rate = buffer.sample_rate_hz
    if rate < 2 * table[0].frequency_hz:
        raise ConfigurationError(
            f"sample rate {rate} Hz cannot represent the lowest tone "
            f"({table[0].frequency_hz:.2f} Hz)"
        )
    frame = params.frame_samples(rate)
    symbol = params.symbol_samples(rate)
    margin = params.margin_samples(rate)
    start, stop = margin, symbol - margin

    n = len(buffer)
    n_frames = n // frame
    if n - n_frames * frame >= stop:
        n_frames += 1
    if n_frames == 0:
        return DecodeResult("", ())

    offsets = np.arange(n_frames)[:, None] * frame + np.arange(start, stop)[None, :]
    windows = buffer.samples[offsets]
    detections = _analyse(windows, rate, table, params)
    text = "".join(d.detected_char or SUBSTITUTION_MARKER for d in detections)
    return DecodeResult(text, tuple(detections))


def report_rows(result: DecodeResult):
    """CSV rows (header first) for ``decode --report``."""
    yield ["index", "char", "freq_hz", "power", "confidence", "cents_error"]
    for d in result.detections:
        yield [str(d.index), d.detected_char or "", f"{d.target_frequency_hz:.2f}",
               f"{d.power:.6e}", f"{d.confidence:.4f}", f"{d.cents_error:.2f}"]
