"""Pure numpy versions of the compiled kernels.

Selected automatically when ``tonalang._kernels`` is not built, or when
``TONALANG_PURE_PYTHON`` is set in the environment.
"""
from __future__ import annotations

import numpy as np

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1


def goertzel_matrix(frames: np.ndarray, omegas: np.ndarray) -> np.ndarray:
    """Normalized Goertzel power for every (frame, target) pair.

    The recurrence runs sample by sample, vectorized across all frames and
    targets at once, so a whole message costs one pass over the window.
    """
    frames = np.ascontiguousarray(frames, dtype=np.float64)
    omegas = np.ascontiguousarray(omegas, dtype=np.float64)
    n_frames, n = frames.shape
    if omegas.shape[0] != n_frames:
        raise ValueError("omegas must have one row per frame")
    if n == 0:
        return np.zeros(omegas.shape)
    coeff = 2.0 * np.cos(omegas)
    s1 = np.zeros(omegas.shape)
    s2 = np.zeros(omegas.shape)
    s0 = np.empty(omegas.shape)
    columns = frames.T[:, :, None]
    for k in range(n):
        np.multiply(coeff, s1, out=s0)
        s0 -= s2
        s0 += columns[k]
        s1, s2, s0 = s0, s1, s2
    re = s1 - np.cos(omegas) * s2
    im = np.sin(omegas) * s2
    return (re * re + im * im) / (float(n) * float(n))


def _affine_power(steps: int) -> tuple[int, int]:
    # x_{n+steps} = A * x_n + C (mod 2**64)
    a, c = 1, 0
    for _ in range(steps):
        a = (LCG_MULTIPLIER * a) & _MASK64
        c = (LCG_MULTIPLIER * c + LCG_INCREMENT) & _MASK64
    return a, c


def lcg_states(seed: int, count: int) -> np.ndarray:
    """States x_1..x_count of the LCG, via jump-ahead doubling in uint64."""
    out = np.empty(count, dtype=np.uint64)
    if count == 0:
        return out
    a1, c1 = _affine_power(1)
    out[0] = np.uint64((a1 * (seed & _MASK64) + c1) & _MASK64)
    filled = 1
    jump_a, jump_c = a1, c1
    while filled < count:
        take = min(filled, count - filled)
        # unsigned array arithmetic wraps modulo 2**64
        out[filled:filled + take] = out[:take] * np.uint64(jump_a) + np.uint64(jump_c)
        filled += take
        jump_c = (jump_a * jump_c + jump_c) & _MASK64
        jump_a = (jump_a * jump_a) & _MASK64
    return out


def lcg_uniforms(seed: int, count: int) -> np.ndarray:
    """``count`` uniforms in (0, 1] from the top 53 bits of each LCG state."""
    states = lcg_states(seed, count)
    return ((states >> np.uint64(11)) + np.uint64(1)).astype(np.float64) * 2.0**-53
