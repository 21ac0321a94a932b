"""Built-in end-to-end checks run by ``tonalang selftest``."""
from __future__ import annotations

from typing import Callable, NamedTuple

from tonalang.abcnotation import parse_abc, to_abc
from tonalang.channel import AUDIBLE_CUTOFF_HZ, apply_lowpass
from tonalang.decode import DecodeParams, decode_audio
from tonalang.freqmap import FIRST_CODE, LAST_CODE, build_table, check_golden, load_golden_table
from tonalang.synth import SynthParams, encode_text

ALPHABET = "".join(chr(c) for c in range(FIRST_CODE, LAST_CODE + 1))


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def check_golden_table(golden_path=None) -> CheckResult:
    golden = load_golden_table(golden_path)
    bad = check_golden(golden)
    if not bad:
        return CheckResult("golden-table", True, f"{len(golden)}/95 frequencies within 0.01 Hz")
    codes = ", ".join(str(code) for code, _, _ in bad[:5])
    return CheckResult("golden-table", False, f"{len(bad)} mismatches (ascii {codes})")


def check_round_trip() -> CheckResult:
    result = decode_audio(encode_text(ALPHABET))
    wrong = sum(a != b for a, b in zip(ALPHABET, result.text))
    ok = result.text == ALPHABET and result.failed_count == 0
    return CheckResult("alphabet-round-trip", ok,
                       f"{len(ALPHABET) - wrong}/{len(ALPHABET)} characters recovered")


def check_abc_round_trip() -> CheckResult:
    recovered = parse_abc(to_abc(ALPHABET))
    ok = recovered == ALPHABET
    return CheckResult("abc-round-trip", ok,
                       "alphabet preserved" if ok else "alphabet altered by ABC round trip")


def audible_partition() -> tuple[set[int], set[int]]:
    """ASCII codes (decoded, lost) after a 20 kHz low-pass of the full alphabet."""
    params = SynthParams()
    filtered = apply_lowpass(encode_text(ALPHABET, params=params), AUDIBLE_CUTOFF_HZ)
    result = decode_audio(filtered, params=DecodeParams.matching(params))
    ok, lost = set(), set()
    for ch, det in zip(ALPHABET, result.detections):
        (ok if det.detected_char == ch else lost).add(ord(ch))
    return ok, lost


def check_partition() -> CheckResult:
    table = build_table()
    ok, lost = audible_partition()
    expected_lost = {e.ascii_code for e in table if e.ultrasonic}
    passed = lost == expected_lost and ok == {e.ascii_code for e in table} - expected_lost
    return CheckResult("ultrasonic-partition", passed,
                       f"{len(ok)} audible decoded, {len(lost)} lost above 20 kHz "
                       f"(ascii {min(lost, default=0)}..{max(lost, default=0)})")


def run_all(golden_path=None) -> list[CheckResult]:
    checks: list[Callable[[], CheckResult]] = [
        lambda: check_golden_table(golden_path),
        check_round_trip,
        check_abc_round_trip,
        check_partition,
    ]
    return [check() for check in checks]
