"""envcode: lossless universal coding for integer sequences over unbounded alphabets.

Subpackages by concern:

* bitio      bit strings and the Elias delta code
* kt         Krichevsky-Trofimov predictor and exact minimax-regret sums
* coder      exact-integer adaptive range coder
* censoring  the censoring codecs (fixed schedule and adaptive) + container format
* envelopes  dominating-envelope families, zeta machinery
* bounds     closed-form redundancy/regret bound evaluation
* sources    samplers, entropies and the empirical-redundancy harness
* cli        command-line front end

The per-symbol coding loop runs on a compiled kernel when the extension is
built (see envcode.backend.active_backend()); a pure-Python kernel with
bit-identical output is the fallback.
"""

from .backend import active_backend, available_backends
from .censoring import CodecParams, codelength_report, decode, encode
from .errors import (
    DecodeError,
    DomainError,
    EnvcodeError,
    FormatError,
    ResourceLimitError,
)

__version__ = "0.1.0"

__all__ = [
    "encode",
    "decode",
    "codelength_report",
    "CodecParams",
    "active_backend",
    "available_backends",
    "EnvcodeError",
    "DomainError",
    "ResourceLimitError",
    "DecodeError",
    "FormatError",
    "__version__",
]
