"""Compiled kernels and their numpy fallback must agree with each other
and with an independent direct-correlation oracle."""
import numpy as np
import pytest

from tonalang import _fallback
from tonalang._backend import BACKEND

kernels = pytest.importorskip("tonalang._kernels")
BACKENDS = {"python": _fallback, "cython": kernels}


def correlation_power(frames, omegas):
    n = frames.shape[1]
    k = np.arange(n)
    out = np.empty(omegas.shape)
    for f in range(frames.shape[0]):
        basis = np.exp(-1j * np.outer(omegas[f], k))
        out[f] = np.abs(basis @ frames[f]) ** 2 / n**2
    return out


def test_backend_is_known():
    assert BACKEND in ("cython", "python")


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_goertzel_matches_correlation(name):
    rng = np.random.default_rng(7)
    frames = rng.uniform(-1, 1, (4, 1000))
    omegas = rng.uniform(0.001, np.pi - 0.001, (4, 9))
    got = BACKENDS[name].goertzel_matrix(frames, omegas)
    np.testing.assert_allclose(got, correlation_power(frames, omegas), rtol=1e-6)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_goertzel_empty_and_zero(name):
    mod = BACKENDS[name]
    assert mod.goertzel_matrix(np.zeros((2, 0)), np.ones((2, 3))).shape == (2, 3)
    assert not mod.goertzel_matrix(np.zeros((1, 64)), np.full((1, 3), 0.3)).any()


def test_backends_agree_on_goertzel():
    rng = np.random.default_rng(11)
    frames = rng.standard_normal((6, 2048))
    omegas = rng.uniform(0.01, 3.1, (6, 95))
    np.testing.assert_allclose(kernels.goertzel_matrix(frames, omegas),
                               _fallback.goertzel_matrix(frames, omegas), rtol=1e-9)


@pytest.mark.parametrize("seed", [0, 1, 2**63 + 5, 2**64 - 1])
def test_lcg_bit_identical_across_backends(seed):
    for count in (0, 1, 2, 3, 1000, 4097):
        a = kernels.lcg_uniforms(seed, count)
        b = _fallback.lcg_uniforms(seed, count)
        assert a.tobytes() == b.tobytes()


def test_lcg_matches_scalar_definition():
    x = 12345
    expected = []
    for _ in range(50):
        x = (6364136223846793005 * x + 1442695040888963407) % 2**64
        expected.append(((x >> 11) + 1) / 2**53)
    assert _fallback.lcg_uniforms(12345, 50).tolist() == expected
    assert kernels.lcg_uniforms(12345, 50).tolist() == expected


def test_lcg_uniform_range():
    u = kernels.lcg_uniforms(3, 200_000)
    assert u.min() > 0 and u.max() <= 1
    assert abs(u.mean() - 0.5) < 0.005


def test_env_switch_forces_fallback():
    import os
    import subprocess
    import sys

    code = ("from tonalang._backend import BACKEND\n"
            "from tonalang.decode import decode_audio\n"
            "from tonalang.synth import encode_text\n"
            "print(BACKEND, decode_audio(encode_text('ok~')).text)")
    env = dict(os.environ, TONALANG_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.split() == ["python", "ok~"]
