"""Krichevsky-Trofimov predictor over a finite alphabet and exact minimax-regret sums.

All log-probabilities and regrets are in bits (base-2 logs). Conditionals are
exact integer rationals so an arithmetic coder can consume them with zero
drift between encoder and decoder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import DomainError, ResourceLimitError

__all__ = [
    "CountVector",
    "kt_conditional",
    "kt_log_marginal",
    "shtarkov_regret_exact",
    "kt_pointwise_regret_bound",
    "regret_asymptote",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class CountVector:
    """Occurrence counts over the alphabet {0, ..., K}; counts[j] >= 0."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) < 1:
            raise DomainError("alphabet must have at least one symbol")
        if any(c < 0 for c in self.counts):
            raise DomainError("counts must be non-negative")

    @property
    def alphabet_size(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def incremented(self, j: int) -> "CountVector":
        c = list(self.counts)
        c[j] += 1
        return CountVector(tuple(c))


def kt_conditional(counts: CountVector, j: int) -> tuple[int, int]:
    """Jeffreys-posterior probability of symbol j as an exact rational.

    Returns (2*counts[j] + 1, 2*total + alphabet_size); over all j the
    numerators sum exactly to the denominator.
    """
    if not 0 <= j < counts.alphabet_size:
        raise DomainError(f"symbol {j} outside alphabet of size {counts.alphabet_size}")
    return 2 * counts.counts[j] + 1, 2 * counts.total + counts.alphabet_size


def kt_log_marginal(counts: CountVector) -> float:
    """log2 of the KT mixture probability of any sequence with these counts.

    Equals the sum of log2 kt_conditional along any symbol order
    (exchangeability); computed through log-gamma.
    """
    m = counts.alphabet_size
    n = counts.total
    ln = sum(math.lgamma(c + 0.5) for c in counts.counts) - m * math.lgamma(0.5)
    ln += math.lgamma(m / 2.0) - math.lgamma(n + m / 2.0)
    return ln / _LN2


def kt_pointwise_regret_bound(m: int, n: int) -> float:
    """Classical upper bound, in bits, on the KT mixture's pointwise regret
    over m-ary strings of length n:
    log2( Gamma(n + m/2) Gamma(1/2) / (Gamma(n + 1/2) Gamma(m/2)) ).
    """
    if m < 1 or n < 0:
        raise DomainError("need m >= 1 and n >= 0")
    ln = (
        math.lgamma(n + m / 2.0)
        + math.lgamma(0.5)
        - math.lgamma(n + 0.5)
        - math.lgamma(m / 2.0)
    )
    return ln / _LN2


def regret_asymptote(m: int, n: int) -> float:
    """Large-n limit shape of the exact minimax regret for the full m-ary
    memoryless class: (m-1)/2 * log2(n / 2pi) + log2(Gamma(1/2)^m / Gamma(m/2)).
    """
    const = (m * math.lgamma(0.5) - math.lgamma(m / 2.0)) / _LN2
    return (m - 1) / 2 * math.log2(n / (2.0 * math.pi)) + const


def shtarkov_regret_exact(m: int, n: int, budget: int = 10_000_000) -> float:
    """Exact minimax regret, in bits, of the full m-ary memoryless class:
    log2 of the sum over all length-n strings of the maximized likelihood
    prod_j (n_j/n)^(n_j), folded over types with multinomial weights.

    The number of types C(n+m-1, m-1) must stay below `budget`; the sum is
    accumulated in log space (0^0 = 1 convention).
    """
    if m < 1 or n < 1:
        raise DomainError("need m >= 1 and n >= 1")
    if m == 1:
        return 0.0
    ntypes = math.comb(n + m - 1, m - 1)
    if ntypes > budget:
        raise ResourceLimitError(
            f"type enumeration needs {ntypes} compositions, over the budget of {budget}"
        )

    k = np.arange(n + 1)
    lgfact = gammaln(k + 1.0)  # ln k!
    xlx = np.zeros(n + 1)
    xlx[1:] = k[1:] * np.log(k[1:])  # k ln k, 0 ln 0 = 0
    ln_n = math.log(n)
    base = float(lgfact[n]) - n * ln_n  # ln n! - n ln n, shared by every term
    per = xlx - lgfact  # per-coordinate contribution

    if m == 2:
        block = base + per[k] + per[n - k]
        return float(logsumexp(block)) / _LN2

    # generic: recurse over leading coordinates, vectorize the last two, and
    # fold everything into a single stable logsumexp at the end
    blocks: list[np.ndarray] = []
    per_list = per.tolist()

    def rec(prefix: float, remaining: int, parts_left: int) -> None:
        if parts_left == 2:
            kk = np.arange(remaining + 1)
            blocks.append(prefix + per[kk] + per[remaining - kk])
            return
        for c in range(remaining + 1):
            rec(prefix + per_list[c], remaining - c, parts_left - 1)

    rec(base, n, m)
    return float(logsumexp(np.concatenate(blocks))) / _LN2
