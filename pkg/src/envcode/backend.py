"""Selects the coding kernel: compiled extension if importable, else pure Python.

Set ENVCODE_BACKEND=python or ENVCODE_BACKEND=compiled to force a choice
(benchmarks and parity tests use this). Both kernels produce bit-identical
streams; the compiled one is roughly an order of magnitude faster.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built on this install
    _ckernel = None

__all__ = ["active_backend", "available_backends", "encode_stream", "decode_stream"]


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _ckernel is not None else ("python",)


def _select():
    forced = os.environ.get("ENVCODE_BACKEND")
    if forced == "python":
        return "python", _pykernel
    if forced == "compiled":
        if _ckernel is None:
            raise RuntimeError("ENVCODE_BACKEND=compiled but envcode._ckernel is not built")
        return "compiled", _ckernel
    if forced not in (None, ""):
        raise RuntimeError(f"unknown ENVCODE_BACKEND value: {forced!r}")
    if _ckernel is not None:
        return "compiled", _ckernel
    return "python", _pykernel


def active_backend() -> str:
    """Name of the kernel that encode/decode will use right now."""
    return _select()[0]


def encode_stream(xs, cutoffs):
    return _select()[1].encode_stream(xs, cutoffs)


def decode_stream(c2, cutoffs, c1_values, n):
    return _select()[1].decode_stream(c2, cutoffs, c1_values, n)
