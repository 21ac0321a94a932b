"""Semitone ASCII tonal codec.

Printable ASCII maps onto equal-tempered semitones from 220 Hz; text is
rendered as framed sine tones and recovered with a Goertzel filter bank.
"""
__version__ = "0.1.0"

from tonalang.abcnotation import parse_abc, to_abc
from tonalang.channel import ChannelConfig, apply_channel, measure_ser
from tonalang.decode import DecodeParams, DecodeResult, decode_audio, detect_symbol, goertzel_power
from tonalang.freqmap import build_table, frequency_of, nearest_char, note_name, octave_span
from tonalang.synth import AudioBuffer, SynthParams, encode_text, synth_symbol
from tonalang.wavio import load_wav, read_wav, save_wav, write_wav

__all__ = [
    "AudioBuffer", "ChannelConfig", "DecodeParams", "DecodeResult", "SynthParams",
    "apply_channel", "build_table", "decode_audio", "detect_symbol", "encode_text",
    "frequency_of", "goertzel_power", "load_wav", "measure_ser", "nearest_char",
    "note_name", "octave_span", "parse_abc", "read_wav", "save_wav", "synth_symbol",
    "to_abc", "write_wav",
]
