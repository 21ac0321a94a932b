"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data or format error, 3 I/O error.
Framing, channel and analysis flags may also come from ``--config FILE``
(``key = value`` lines, keys spelled like the long flags); explicit flags win.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from tonalang import __version__
from tonalang.abcnotation import parse_abc, to_abc
from tonalang.analysis import info_rate, render_spectrogram, render_tone_grid, stft
from tonalang.channel import ChannelConfig, apply_channel, measure_ser
from tonalang.decode import DecodeParams, decode_audio, report_rows
from tonalang.errors import TonalangError
from tonalang.freqmap import table_rows
from tonalang.selftest import run_all
from tonalang.synth import SynthParams, encode_text
from tonalang.wavio import load_wav, save_wav

DEFAULTS = {
    "rate": 192000,
    "symbol_ms": 40.0,
    "gap_ms": 10.0,
    "fade_ms": 2.0,
    "amp": 0.8,
    "min_confidence": 2.0,
    "min_energy": 1e-6,
    "snr_db": None,
    "lowpass_hz": None,
    "gain": 1.0,
    "seed": 0,
    "taps": 511,
    "window": 4096,
    "hop": 1024,
    "db_floor": -80.0,
    "baseline_bps": 39.0,
}
TYPES = {"rate": int, "seed": int, "taps": int, "window": int, "hop": int}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def read_config(path: str) -> dict:
    values = {}
    for line_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{line_no}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{line_no}: unknown setting {key!r}")
        try:
            values[key] = TYPES.get(key, float)(value)
        except ValueError:
            raise UsageError(f"{path}:{line_no}: bad value for {key}: {value!r}") from None
    return values


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from the config file, then from built-in defaults."""
    config = read_config(args.config) if getattr(args, "config", None) else {}
    for key, default in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, config.get(key, default))
    return args


def synth_params(args) -> SynthParams:
    return SynthParams(sample_rate_hz=args.rate, symbol_duration_s=args.symbol_ms / 1000,
                       gap_duration_s=args.gap_ms / 1000, fade_duration_s=args.fade_ms / 1000,
                       amplitude=args.amp)


def decode_params(args) -> DecodeParams:
    return DecodeParams(symbol_duration_s=args.symbol_ms / 1000, gap_duration_s=args.gap_ms / 1000,
                        analysis_margin_s=args.fade_ms / 1000,
                        min_confidence=args.min_confidence, min_energy=args.min_energy)


def channel_config(args) -> ChannelConfig:
    return ChannelConfig(snr_db=args.snr_db, lowpass_cutoff_hz=args.lowpass_hz,
                         gain=args.gain, seed=args.seed, fir_taps=args.taps)


def _write_csv(rows, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerows(rows)


def cmd_table(args) -> int:
    _write_csv(table_rows(), sys.stdout)
    return 0


def cmd_encode(args) -> int:
    if args.infile is not None:
        text = Path(args.infile).read_text()
        if text.endswith("\n"):
            text = text[:-1]
    else:
        text = args.text
    buffer = encode_text(text, params=synth_params(args))
    size = save_wav(buffer, args.out)
    print(f"wrote {args.out}: {len(text)} symbols, {len(buffer)} samples, {size} bytes",
          file=sys.stderr)
    return 0


def cmd_decode(args) -> int:
    result = decode_audio(load_wav(args.in_path), params=decode_params(args))
    print(result.text)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            _write_csv(report_rows(result), fh)
    if result.failed_count:
        print(f"{result.failed_count} of {result.symbol_count} symbols undecodable",
              file=sys.stderr)
    return 0


def cmd_abc_export(args) -> int:
    Path(args.out).write_text(to_abc(args.text, synth_params(args), title=args.title))
    return 0


def cmd_abc_import(args) -> int:
    print(parse_abc(Path(args.in_path).read_text()))
    return 0


def cmd_channel(args) -> int:
    save_wav(apply_channel(load_wav(args.in_path), channel_config(args)), args.out)
    return 0


def cmd_chirp(args) -> int:
    sent = args.text
    audio = apply_channel(encode_text(sent, params=synth_params(args)), channel_config(args))
    result = decode_audio(audio, params=decode_params(args))
    report = measure_ser(sent, result)
    print(f"sent:     {sent}")
    print(f"received: {result.text}")
    print(f"ser:      {report.ser:.6f} ({report.errors}/{report.total})")
    return 0


def cmd_spectrogram(args) -> int:
    spec = stft(load_wav(args.in_path), args.window, args.hop)
    Path(args.out).write_bytes(render_spectrogram(spec, args.db_floor))
    return 0


def cmd_grid(args) -> int:
    image = render_tone_grid(load_wav(args.in_path), params=decode_params(args))
    Path(args.out).write_bytes(image)
    return 0


def cmd_rate(args) -> int:
    params = SynthParams(symbol_duration_s=args.symbol_ms / 1000, gap_duration_s=args.gap_ms / 1000,
                         fade_duration_s=0.0)
    report = info_rate(params, args.baseline_bps)
    sys.stdout.write(report.as_text())
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            _write_csv(report.csv_rows(), fh)
    return 0


def cmd_selftest(args) -> int:
    results = run_all(args.golden)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 2


def _finite(value: str) -> float:
    x = float(value)
    if math.isnan(x):
        raise argparse.ArgumentTypeError("NaN not allowed")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value settings file")

    framing = _Parser(add_help=False)
    g = framing.add_argument_group("framing")
    g.add_argument("--rate", type=int, help="sample rate in Hz (default 192000)")
    g.add_argument("--symbol-ms", type=_finite, help="tone length per character (default 40)")
    g.add_argument("--gap-ms", type=_finite, help="silence between characters (default 10)")
    g.add_argument("--fade-ms", type=_finite, help="raised-cosine edge ramp (default 2)")
    g.add_argument("--amp", type=_finite, help="peak amplitude in (0, 1] (default 0.8)")

    detect = _Parser(add_help=False)
    g = detect.add_argument_group("detection")
    g.add_argument("--min-confidence", type=_finite, help="best/runner-up power ratio (default 2)")
    g.add_argument("--min-energy", type=_finite, help="silence gate on mean square (default 1e-6)")

    chan = _Parser(add_help=False)
    g = chan.add_argument_group("channel")
    g.add_argument("--snr-db", type=_finite, help="additive noise SNR in dB (default none)")
    g.add_argument("--lowpass-hz", type=_finite, help="FIR low-pass cutoff (default none)")
    g.add_argument("--gain", type=_finite, help="linear gain (default 1)")
    g.add_argument("--seed", type=int, help="noise seed (default 0)")
    g.add_argument("--taps", type=int, help="FIR length, odd (default 511)")

    parser = _Parser(prog="tonalang", description="Semitone ASCII tonal codec.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("table", help="print the character/frequency table as CSV")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("encode", parents=[common, framing], help="text to WAV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--text")
    src.add_argument("--infile", metavar="PATH")
    p.add_argument("--out", required=True, metavar="WAV")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common, framing, detect], help="WAV to text")
    p.add_argument("--in", dest="in_path", required=True, metavar="WAV")
    p.add_argument("--report", metavar="CSV", help="per-symbol detection report")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("abc", help="ABC notation export/import")
    abc_sub = p.add_subparsers(dest="abc_command", metavar="ACTION", parser_class=_Parser)
    abc_sub.required = True
    q = abc_sub.add_parser("export", parents=[common, framing], help="text to ABC")
    q.add_argument("--text", required=True)
    q.add_argument("--out", required=True, metavar="PATH")
    q.add_argument("--title", default="Tonal message")
    q.set_defaults(func=cmd_abc_export)
    q = abc_sub.add_parser("import", help="ABC to text")
    q.add_argument("--in", dest="in_path", required=True, metavar="PATH")
    q.set_defaults(func=cmd_abc_import)

    p = sub.add_parser("channel", parents=[common, chan], help="impair a WAV file")
    p.add_argument("--in", dest="in_path", required=True, metavar="WAV")
    p.add_argument("--out", required=True, metavar="WAV")
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("chirp", parents=[common, framing, detect, chan],
                       help="encode, impair and decode in one go")
    p.add_argument("--text", required=True)
    p.set_defaults(func=cmd_chirp)

    p = sub.add_parser("spectrogram", parents=[common], help="WAV to P6 spectrogram")
    p.add_argument("--in", dest="in_path", required=True, metavar="WAV")
    p.add_argument("--out", required=True, metavar="PPM")
    p.add_argument("--window", type=int, help="FFT size, power of two (default 4096)")
    p.add_argument("--hop", type=int, help="frame advance in samples (default 1024)")
    p.add_argument("--db-floor", type=_finite, help="darkest level in dB (default -80)")
    p.set_defaults(func=cmd_spectrogram)

    p = sub.add_parser("grid", parents=[common, framing, detect], help="WAV to P6 tone grid")
    p.add_argument("--in", dest="in_path", required=True, metavar="WAV")
    p.add_argument("--out", required=True, metavar="PPM")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("rate", parents=[common], help="information-rate report")
    p.add_argument("--symbol-ms", type=_finite)
    p.add_argument("--gap-ms", type=_finite)
    p.add_argument("--baseline-bps", type=_finite, help="speech reference (default 39)")
    p.add_argument("--csv", metavar="PATH", help="also write the report as CSV")
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("selftest", help="run the built-in checks")
    p.add_argument("--golden", metavar="CSV", help="alternative reference table (ascii,frequency_hz)")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = resolve(parser.parse_args(argv))
        return args.func(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except TonalangError as exc:
        print(f"tonalang: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"tonalang: I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
