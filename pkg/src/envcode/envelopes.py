"""Dominating envelopes f: {1,2,...} -> [0,1] and exact tail sums.

An envelope describes a class of memoryless sources whose per-symbol
probabilities are pointwise below f. Four families are provided: power law
min(1, C/k^alpha), exponential min(1, C e^{-alpha k}), finite (f = 1 on
{1..m}) and tabulated. Tail sums F(u) = sum_{k>u} f(k) are exact for the
closed forms; power-law tails use Euler-Maclaurin with a remainder bound well
under 1e-10.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "Envelope",
    "PowerLawEnvelope",
    "ExponentialEnvelope",
    "FiniteUniformEnvelope",
    "TableEnvelope",
    "load_table_envelope",
    "zeta",
    "zeta_tail",
    "zeta_log_tail",
]


def zeta_tail(alpha: float, u: int) -> float:
    """sum_{k > u} k^-alpha for alpha > 1, via Euler-Maclaurin past a short
    explicit sum. The remainder after the x^-(alpha+3) correction term is the
    next Euler-Maclaurin term, below (alpha+4)^5 * M^-(alpha+5) / 30240, which
    the M floor keeps under 1e-13.
    """
    if alpha <= 1.0:
        raise DomainError("tail sums require alpha > 1")
    if u < 0:
        raise DomainError("u must be >= 0")
    m = max(u + 1, 64, int(alpha) + 16)
    ks = np.arange(u + 1, m, dtype=np.float64)
    head = float(np.sum(ks**-alpha)) if len(ks) else 0.0
    # sum_{k >= m} k^-a = m^(1-a)/(a-1) + m^-a/2 + a m^(-a-1)/12 - a(a+1)(a+2) m^(-a-3)/720
    tail = (
        m ** (1.0 - alpha) / (alpha - 1.0)
        + 0.5 * m**-alpha
        + alpha * m ** (-alpha - 1.0) / 12.0
        - alpha * (alpha + 1.0) * (alpha + 2.0) * m ** (-alpha - 3.0) / 720.0
    )
    return head + tail


def zeta(alpha: float) -> float:
    """Riemann zeta for alpha > 1 (absolute error far below 1e-10)."""
    return zeta_tail(alpha, 0)


def zeta_log_tail(alpha: float, u: int) -> float:
    """sum_{k > u} k^-alpha * ln(k), same Euler-Maclaurin treatment.

    With f(x) = x^-a ln x: integral_m^inf f = m^(1-a)(ln m)/(a-1) + m^(1-a)/(a-1)^2
    and f'(x) = x^(-a-1)(1 - a ln x); the first omitted correction is O(f'''(m)),
    negligible at the m floor used here.
    """
    if alpha <= 1.0:
        raise DomainError("log-weighted tails require alpha > 1")
    if u < 0:
        raise DomainError("u must be >= 0")
    m = max(u + 1, 4096, int(alpha) + 16)
    ks = np.arange(u + 1, m, dtype=np.float64)
    head = float(np.sum(ks**-alpha * np.log(ks))) if len(ks) else 0.0
    lm = math.log(m)
    integral = m ** (1.0 - alpha) * lm / (alpha - 1.0) + m ** (1.0 - alpha) / (alpha - 1.0) ** 2
    tail = integral + 0.5 * m**-alpha * lm - m ** (-alpha - 1.0) * (1.0 - alpha * lm) / 12.0
    return head + tail


def _powerlaw_crossover(c: float, alpha: float) -> int:
    """Largest k >= 0 with c * k^-alpha >= 1 (boundary checked exactly)."""
    if c < 1.0:
        return 0
    k = int(c ** (1.0 / alpha))
    while (k + 1.0) ** alpha <= c:
        k += 1
    while k >= 1 and float(k) ** alpha > c:
        k -= 1
    return k


def _exponential_crossover(c: float, alpha: float) -> int:
    """Largest k >= 0 with c * e^{-alpha k} >= 1 (boundary checked exactly)."""
    if c < 1.0:
        return 0
    k = max(int(math.log(c) / alpha), 0)
    while c * math.exp(-alpha * (k + 1)) >= 1.0:
        k += 1
    while k >= 1 and c * math.exp(-alpha * k) < 1.0:
        k -= 1
    return k


class Envelope:
    """Interface: f(k) on positive integers, vectorized f_array, exact tail_sum."""

    summable: bool = True

    def f(self, k: int) -> float:
        raise NotImplementedError

    def f_array(self, ks: np.ndarray) -> np.ndarray:
        return np.array([self.f(int(k)) for k in ks], dtype=np.float64)

    def tail_sum(self, u: int) -> float:
        """F(u) = sum_{k > u} f(k)."""
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


class PowerLawEnvelope(Envelope):
    """f(k) = min(1, C / k^alpha); summable iff alpha > 1."""

    def __init__(self, alpha: float, c: float):
        if alpha <= 0 or c <= 0:
            raise DomainError("power-law envelope needs alpha > 0 and C > 0")
        self.alpha = float(alpha)
        self.c = float(c)
        self.summable = self.alpha > 1.0
        # largest k with C k^-alpha >= 1, i.e. k <= C^(1/alpha)
        self._kstar = _powerlaw_crossover(self.c, self.alpha)

    def f(self, k: int) -> float:
        if k < 1:
            raise DomainError("envelope arguments are positive integers")
        return min(1.0, self.c * float(k) ** -self.alpha)

    def f_array(self, ks: np.ndarray) -> np.ndarray:
        return np.minimum(1.0, self.c * np.asarray(ks, dtype=np.float64) ** -self.alpha)

    def tail_sum(self, u: int) -> float:
        if not self.summable:
            raise DomainError("power-law envelope with alpha <= 1 is not summable")
        ones = max(self._kstar - u, 0)
        start = max(u, self._kstar)
        return ones + self.c * zeta_tail(self.alpha, start)

    def describe(self) -> dict:
        return {"kind": "powerlaw", "alpha": self.alpha, "c": self.c}


class ExponentialEnvelope(Envelope):
    """f(k) = min(1, C e^{-alpha k}); always summable (alpha > 0)."""

    def __init__(self, alpha: float, c: float):
        if alpha <= 0 or c <= 0:
            raise DomainError("exponential envelope needs alpha > 0 and C > 0")
        self.alpha = float(alpha)
        self.c = float(c)
        self._kstar = _exponential_crossover(self.c, self.alpha)

    def f(self, k: int) -> float:
        if k < 1:
            raise DomainError("envelope arguments are positive integers")
        return min(1.0, self.c * math.exp(-self.alpha * k))

    def f_array(self, ks: np.ndarray) -> np.ndarray:
        return np.minimum(1.0, self.c * np.exp(-self.alpha * np.asarray(ks, dtype=np.float64)))

    def tail_sum(self, u: int) -> float:
        # geometric beyond the 1-crossover: sum_{k>s} C q^k = C q^(s+1) / (1-q)
        ones = max(self._kstar - u, 0)
        s = max(u, self._kstar)
        geo = self.c * math.exp(-self.alpha * (s + 1)) / -math.expm1(-self.alpha)
        return ones + geo

    def describe(self) -> dict:
        return {"kind": "exponential", "alpha": self.alpha, "c": self.c}


class FiniteUniformEnvelope(Envelope):
    """f = 1 on {1..m}, 0 beyond: the class of all m-ary memoryless sources."""

    def __init__(self, m: int):
        if m < 1:
            raise DomainError("finite envelope needs m >= 1")
        self.m = int(m)

    def f(self, k: int) -> float:
        if k < 1:
            raise DomainError("envelope arguments are positive integers")
        return 1.0 if k <= self.m else 0.0

    def f_array(self, ks: np.ndarray) -> np.ndarray:
        return (np.asarray(ks) <= self.m).astype(np.float64)

    def tail_sum(self, u: int) -> float:
        return float(max(self.m - u, 0))

    def describe(self) -> dict:
        return {"kind": "finite", "m": self.m}


class TableEnvelope(Envelope):
    """Explicit values f(1), ..., f(K); zero beyond the table."""

    def __init__(self, values):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise DomainError("table envelope needs at least one value")
        if any(not 0.0 <= v <= 1.0 for v in vals):
            raise DomainError("table values must lie in [0, 1]")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise DomainError("table values must be non-increasing")
        self.values = vals

    def f(self, k: int) -> float:
        if k < 1:
            raise DomainError("envelope arguments are positive integers")
        return self.values[k - 1] if k <= len(self.values) else 0.0

    def tail_sum(self, u: int) -> float:
        return math.fsum(self.values[u:]) if u < len(self.values) else 0.0

    def describe(self) -> dict:
        return {"kind": "table", "size": len(self.values)}


def load_table_envelope(path) -> TableEnvelope:
    """Read "k f(k)" pairs, one per line, k ascending and contiguous from 1.

    Blank lines and lines starting with '#' are skipped.
    """
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise DomainError(f"{path}:{lineno}: expected 'k f(k)'")
            k, v = int(parts[0]), float(parts[1])
            if k != len(values) + 1:
                raise DomainError(f"{path}:{lineno}: k must ascend contiguously from 1")
            values.append(v)
    return TableEnvelope(values)
