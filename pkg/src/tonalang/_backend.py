"""Kernel selection: compiled core when importable, numpy fallback otherwise."""
from __future__ import annotations

import os

if os.environ.get("TONALANG_PURE_PYTHON"):
    from tonalang._fallback import goertzel_matrix, lcg_uniforms

    BACKEND = "python"
else:
    try:
        from tonalang._kernels import goertzel_matrix, lcg_uniforms

        BACKEND = "cython"
    except ImportError:
        from tonalang._fallback import goertzel_matrix, lcg_uniforms

        BACKEND = "python"

__all__ = ["BACKEND", "goertzel_matrix", "lcg_uniforms"]
