"""Compiled-vs-pure kernel parity: identical bytes, identical decodes."""

import numpy as np
import pytest

from envcode import backend, _pykernel
from envcode.censoring import CodecParams, _cutoffs_for, _schedule_array, cutoff_schedule

compiled = pytest.importorskip("envcode._ckernel", reason="compiled kernel not built")


def _random_streams(seed, cases=40):
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        n = int(rng.integers(0, 600))
        xs = (1 + rng.pareto(1.2, size=n)).astype(np.int64)
        if rng.random() < 0.5:
            params = CodecParams.fixed_schedule(float(rng.uniform(1.1, 3.5)), float(rng.uniform(0.1, 5)))
        else:
            params = CodecParams.adaptive(float(rng.uniform(0.2, 3)))
        cutoffs, _ = _cutoffs_for(xs, params)
        yield xs, cutoffs


def test_encode_parity():
    for xs, cutoffs in _random_streams(123):
        c2a, cena = compiled.encode_stream(xs, cutoffs)
        c2b, cenb = _pykernel.encode_stream(xs, cutoffs)
        assert c2a == c2b
        assert list(cena) == list(cenb)


def test_decode_parity_and_roundtrip():
    for xs, cutoffs in _random_streams(456):
        c2, cen = compiled.encode_stream(xs, cutoffs)
        ya, ia = compiled.decode_stream(c2, cutoffs, cen, len(xs))
        yb, ib = _pykernel.decode_stream(c2, cutoffs, cen, len(xs))
        assert np.array_equal(ya, xs) and np.array_equal(yb, xs)
        assert ia == ib == len(cen)


def test_backend_env_override(monkeypatch):
    monkeypatch.setenv("ENVCODE_BACKEND", "python")
    assert backend.active_backend() == "python"
    monkeypatch.setenv("ENVCODE_BACKEND", "compiled")
    assert backend.active_backend() == "compiled"
    monkeypatch.delenv("ENVCODE_BACKEND")
    assert backend.active_backend() in ("compiled", "python")
    monkeypatch.setenv("ENVCODE_BACKEND", "bogus")
    with pytest.raises(RuntimeError):
        backend.active_backend()


def test_schedule_scalar_vector_agreement():
    for alpha, c in [(2.0, 1.0), (1.5, 0.3), (3.0, 7.0), (1.01, 1.0), (2.7, 0.01)]:
        params = CodecParams.fixed_schedule(alpha, c)
        arr = _schedule_array(params, 3000)
        for i in (1, 2, 3, 17, 100, 999, 3000):
            assert int(arr[i - 1]) == cutoff_schedule(params, i), (alpha, c, i)
