import numpy as np
import pytest

from tonalang.errors import AliasingError, ConfigurationError, EncodingError
from tonalang.freqmap import build_table
from tonalang.synth import AudioBuffer, SynthParams, encode_text, synth_symbol

RATE = 192000


def test_defaults():
    p = SynthParams()
    assert (p.sample_rate_hz, p.symbol_duration_s, p.gap_duration_s, p.fade_duration_s,
            p.amplitude) == (192000, 0.040, 0.010, 0.002, 0.8)
    assert p.covers_alphabet()
    assert not SynthParams(sample_rate_hz=96000).covers_alphabet()


@pytest.mark.parametrize("kwargs", [
    dict(sample_rate_hz=0), dict(symbol_duration_s=0), dict(gap_duration_s=-0.1),
    dict(fade_duration_s=0.021), dict(amplitude=0), dict(amplitude=1.5),
])
def test_invalid_params(kwargs):
    with pytest.raises(ConfigurationError):
        SynthParams(**kwargs)


def test_unfaded_symbol_is_pure_sine():
    p = SynthParams(fade_duration_s=0.0)
    buf = synth_symbol(220.0, p)
    assert len(buf) == 7680
    k = np.arange(7680)
    np.testing.assert_allclose(buf.samples, 0.8 * np.sin(2 * np.pi * 220 * k / RATE), atol=1e-9)


def test_fades_ramp_from_zero():
    buf = synth_symbol(1000.0, SynthParams())
    assert buf.samples[0] == 0.0
    assert np.max(np.abs(buf.samples[:10])) < 1e-3
    assert np.max(np.abs(buf.samples[-10:])) < 1e-2
    assert np.max(np.abs(buf.samples)) <= 0.8


def test_nyquist_guard():
    synth_symbol(50175.42, SynthParams(sample_rate_hz=192000))
    with pytest.raises(AliasingError, match=r"50175\.42.*96000"):
        synth_symbol(50175.42, SynthParams(sample_rate_hz=96000))


def test_encode_lengths():
    assert len(encode_text("")) == 0
    buf = encode_text(" ", params=SynthParams(fade_duration_s=0))
    assert len(buf) == 9600
    np.testing.assert_array_equal(buf.samples[:7680],
                                  synth_symbol(220.0, SynthParams(fade_duration_s=0)).samples)
    assert not buf.samples[7680:].any()


def test_length_law_with_per_segment_rounding():
    p = SynthParams(sample_rate_hz=44100, symbol_duration_s=0.0333, gap_duration_s=0.0071,
                    fade_duration_s=0.001)
    assert len(encode_text("abc", params=p)) == 3 * (round(0.0333 * 44100) + round(0.0071 * 44100))


def test_hi_segments_use_table_tones():
    table = build_table()
    buf = encode_text("HI")
    p = SynthParams()
    first = synth_symbol(table.lookup("H").frequency_hz, p).samples
    second = synth_symbol(table.lookup("I").frequency_hz, p).samples
    np.testing.assert_array_equal(buf.samples[:7680], first)
    np.testing.assert_array_equal(buf.samples[9600:9600 + 7680], second)
    assert table.lookup("H").frequency_hz == pytest.approx(2217.46, abs=0.01)
    assert table.lookup("I").frequency_hz == pytest.approx(2349.32, abs=0.01)


def test_unmappable_character_reports_position():
    with pytest.raises(EncodingError, match=r"index 2 .*U\+00E9"):
        encode_text("abé")
    with pytest.raises(EncodingError, match="index 0"):
        encode_text("\n")


def test_determinism_and_no_clipping():
    text = "The quick brown fox ~ {|}"
    a, b = encode_text(text), encode_text(text)
    assert a == b
    assert np.max(np.abs(a.samples)) <= 0.8


def _energy_fraction(freq, params):
    x = synth_symbol(freq, params).samples
    spectrum = np.abs(np.fft.rfft(x, 1 << 21)) ** 2
    f = np.fft.rfftfreq(1 << 21, 1 / params.sample_rate_hz)
    band = (f >= freq * 2 ** (-1 / 12)) & (f <= freq * 2 ** (1 / 12))
    return spectrum[band].sum() / spectrum.sum()


@pytest.mark.parametrize("duration", [0.02, 0.04])
def test_energy_localization_above_resolution_limit(duration):
    # a +-1 semitone band narrower than ~2/duration Hz cannot hold 99%; that
    # excludes the low end of the alphabet (below 'O' at 20 ms, 'H' at 40 ms)
    params = SynthParams(symbol_duration_s=duration)
    for entry in build_table()[79 - 32:]:
        assert _energy_fraction(entry.frequency_hz, params) >= 0.99, entry.character


def test_energy_localization_is_limited_at_the_low_end():
    assert _energy_fraction(220.0, SynthParams()) < 0.99


def test_audio_buffer_slicing():
    buf = AudioBuffer(np.arange(10.0), 8000)
    part = buf[2:5]
    assert isinstance(part, AudioBuffer) and len(part) == 3 and part.sample_rate_hz == 8000
    assert buf.duration_s == pytest.approx(10 / 8000)
