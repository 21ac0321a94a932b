"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from tonalang import _fallback
from tonalang.freqmap import build_table

try:
    from tonalang import _kernels
except ImportError:
    _kernels = None

RATE = 192000
WINDOW = 6912  # 40 ms symbol minus 2 ms margins at 192 kHz


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    omegas = 2 * np.pi * np.array(build_table().frequencies) / RATE
    for frames in (1, 16, 128):
        x = rng.uniform(-1, 1, (frames, WINDOW))
        w = np.ascontiguousarray(np.tile(omegas, (frames, 1)))
        yield f"goertzel {frames:>3} frames x 95 tones", "goertzel_matrix", (x, w)
    yield "lcg 4.8M uniforms (25 s of noise)", "lcg_uniforms", (2024, 4_800_000)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':<36} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, name, call_args in cases():
        py = best_of(lambda: getattr(_fallback, name)(*call_args), args.repeat)
        if _kernels is None:
            print(f"{label:<36} {py * 1e3:>8.1f}ms {'n/a':>10} {'':>8}")
            continue
        cy = best_of(lambda: getattr(_kernels, name)(*call_args), args.repeat)
        print(f"{label:<36} {py * 1e3:>8.1f}ms {cy * 1e3:>8.1f}ms {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
