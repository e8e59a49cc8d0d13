"""Closed-form redundancy / regret bound evaluation for envelope classes.

Every value is in bits (base-2 logs); where a formula mixes natural-log
constants they appear explicitly (log2(e), 2*ln 2) so no silent ln/log2
factor can creep in. Results come back as BoundReport records carrying the
inputs and a validity flag for each formula's preconditions.

Two different occupancy integrals appear and are deliberately kept apart:

* powerlaw_lower_integral(alpha):
      (1/alpha) * int_1^inf u^(1/alpha - 1) (1 - e^{-1/(zeta(alpha) u)}) du,
  the constant in the power-law redundancy lower bound;
* distinct_symbols_integral(alpha):
      int_0^inf (1 - e^{-u}) u^(-1 - 1/alpha) du  ( = alpha * Gamma(1 - 1/alpha) ),
  the constant in the expected-distinct-symbol bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.integrate import quad

from .envelopes import Envelope, FiniteUniformEnvelope, zeta
from .errors import DomainError

__all__ = [
    "BoundReport",
    "DesperateParams",
    "DistinctBoundInterval",
    "regret_upper_bound",
    "powerlaw_bounds",
    "exponential_bounds",
    "desperate_lower_bound",
    "search_desperate_params",
    "expected_distinct_bounds",
    "dictionary_length_bound",
    "powerlaw_lower_integral",
    "distinct_symbols_integral",
]

LOG2E = math.log2(math.e)
TWO_LN2 = 2.0 * math.log(2.0)
FULL_SCAN_LIMIT = 10**6


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound: bits, the inputs it came from, and validity."""

    name: str
    value: float
    params: dict = field(default_factory=dict)
    valid: bool = True
    messages: tuple = ()


@dataclass(frozen=True)
class DesperateParams:
    """Free parameters (p, lambda, epsilon) of the generic redundancy lower bound."""

    p: int
    lam: float
    eps: float

    def __post_init__(self):
        if self.p < 1:
            raise DomainError("p must be a positive integer")
        if not 0.0 < self.lam < 1.0:
            raise DomainError("lambda must lie in (0, 1)")
        if self.eps <= 0.0:
            raise DomainError("epsilon must be positive")


@dataclass(frozen=True)
class DistinctBoundInterval:
    """Bounds on E[distinct symbols in n draws]: constant * n^(1/alpha)."""

    lower: float
    upper: float
    lower_constant: float
    upper_constant: float


def _objective(env: Envelope, n: int, u: int, log2n: float, tail: float) -> float:
    return n * tail * LOG2E + (u - 1) / 2 * log2n


def regret_upper_bound(env: Envelope, n: int, full_scan_limit: int = FULL_SCAN_LIMIT) -> BoundReport:
    """Tail-vs-alphabet tradeoff bound on the minimax regret:

        min over u in {1..n} of [ n F(u) log2 e + (u-1)/2 log2 n ] + 2.

    Exhaustive integer scan up to full_scan_limit (auditable); golden-section
    on the real relaxation plus a local integer sweep beyond that.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if not env.summable:
        raise DomainError("the regret bound requires a summable envelope")
    log2n = math.log2(n)

    if n <= full_scan_limit:
        import numpy as np

        ks = np.arange(1, n + 1, dtype=np.float64)
        fk = env.f_array(ks)
        tail_n = env.tail_sum(n)
        # suffix[u-1] = sum_{k>u, k<=n} f(k); exact zeros for finite envelopes
        suffix = np.concatenate((np.cumsum(fk[::-1])[::-1], [0.0]))[1:]
        tails = tail_n + suffix
        objective = n * tails * LOG2E + (ks - 1.0) / 2.0 * log2n
        u_star = int(np.argmin(objective)) + 1
        best = float(objective[u_star - 1])
    else:
        g = lambda u: _objective(env, n, u, log2n, env.tail_sum(u))  # noqa: E731
        lo, hi = 1.0, float(n)
        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc, fd = g(int(round(c))), g(int(round(d)))
        for _ in range(200):
            if b - a < 8.0:
                break
            if fc <= fd:
                b, d, fd = d, c, fc
                c = b - invphi * (b - a)
                fc = g(int(round(c)))
            else:
                a, c, fc = c, d, fd
                d = a + invphi * (b - a)
                fd = g(int(round(d)))
        center = int(round((a + b) / 2.0))
        best, u_star = math.inf, center
        for u in range(max(1, center - 1024), min(n, center + 1024) + 1):
            val = g(u)
            if val < best:
                best, u_star = val, u

    return BoundReport(
        name="regret_upper_tail_scan",
        value=best + 2.0,
        params={"n": n, "u_star": u_star, **env.describe()},
    )


def powerlaw_lower_integral(alpha: float) -> float:
    """Occupancy constant of the power-law redundancy lower bound (quadrature,
    relative error well under 1e-6)."""
    if alpha <= 1.0:
        raise DomainError("requires alpha > 1")
    z = zeta(alpha)
    integrand = lambda u: u ** (1.0 / alpha - 1.0) * -math.expm1(-1.0 / (z * u))  # noqa: E731
    val, _ = quad(integrand, 1.0, math.inf, epsabs=0.0, epsrel=1e-10, limit=200)
    return val / alpha


def powerlaw_bounds(alpha: float, c: float, n: int) -> tuple[BoundReport, BoundReport]:
    """Leading terms for the power-law envelope min(1, C/k^alpha):

    redundancy lower bound  n^(1/a) * A(a) * log2 floor((C zeta(a))^(1/a)),
    regret upper bound      (2 C n / (a-1))^(1/a) * (log2 n)^(1 - 1/a).

    The lower bound needs C zeta(alpha) >= 2^alpha (equivalently the floor
    >= 2); otherwise its report carries valid=False.
    """
    if alpha <= 1.0 or c <= 0.0 or n < 1:
        raise DomainError("need alpha > 1, C > 0, n >= 1")
    z = zeta(alpha)
    prod = c * z
    m = int(prod ** (1.0 / alpha))
    while (m + 1.0) ** alpha <= prod:
        m += 1
    while m >= 1 and float(m) ** alpha > prod:
        m -= 1
    params = {"alpha": alpha, "c": c, "n": n}
    messages: tuple = ()
    valid = prod >= 2.0**alpha and m >= 2
    if valid:
        lower_val = n ** (1.0 / alpha) * powerlaw_lower_integral(alpha) * math.log2(m)
    else:
        lower_val = 0.0
        messages = (f"requires C*zeta(alpha) >= 2^alpha (have {prod:.6g} < {2.0 ** alpha:.6g})",)
    lower = BoundReport("powerlaw_redundancy_lower", lower_val, {**params, "m": m}, valid, messages)
    upper_val = (2.0 * c * n / (alpha - 1.0)) ** (1.0 / alpha) * math.log2(n) ** (1.0 - 1.0 / alpha)
    upper = BoundReport("powerlaw_regret_upper", upper_val, params)
    return lower, upper


def exponential_bounds(alpha: float, c: float, n: int) -> tuple[BoundReport, BoundReport]:
    """Leading terms for the exponential envelope min(1, C e^{-alpha k}):
    (1/(8 alpha)) log2^2 n below, (1/(2 alpha)) log2^2 n above. The lower
    bound's validity requires C > e^{2 alpha}."""
    if alpha <= 0.0 or c <= 0.0 or n < 1:
        raise DomainError("need alpha > 0, C > 0, n >= 1")
    l2 = math.log2(n) ** 2
    params = {"alpha": alpha, "c": c, "n": n}
    valid = c > math.exp(2.0 * alpha)
    messages = () if valid else (f"requires C > e^(2 alpha) = {math.exp(2.0 * alpha):.6g}",)
    lower = BoundReport("exponential_redundancy_lower", l2 / (8.0 * alpha), params, valid, messages)
    upper = BoundReport("exponential_regret_upper", l2 / (2.0 * alpha), params)
    return lower, upper


def desperate_lower_bound(env: Envelope, n: int, dp: DesperateParams) -> BoundReport:
    """Generic redundancy lower bound for a summable non-increasing envelope:

        C(p,n,lam,eps) * sum_{i=1..p} ( 1/2 log2( n (1-lam) pi f(2i) / (2 c(p) e) ) - eps )

    with c(p) = sum_{k<=p} f(2k) and
    C = [1 + c(p)/(lam^2 n f(2p))]^-1 * (1 - (4/pi) sqrt(5 c(p) / ((1-lam) eps n f(2p)))).

    Preconditions (reported through validity, never raised): c(p) > 1 and
    n > (c(p)/f(2p)) * 10/(eps (1-lam)).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    f2 = [env.f(2 * i) for i in range(1, dp.p + 1)]
    cp = math.fsum(f2)
    f2p = f2[-1]
    params = {"n": n, "p": dp.p, "lam": dp.lam, "eps": dp.eps, "c_p": cp, **env.describe()}
    messages = []
    if not cp > 1.0:
        messages.append(f"needs c(p) > 1, have c(p) = {cp:.6g}")
    if f2p <= 0.0:
        messages.append("f(2p) must be positive")
    else:
        n_floor = (cp / f2p) * 10.0 / (dp.eps * (1.0 - dp.lam))
        if not n > n_floor:
            messages.append(f"needs n > (c(p)/f(2p)) * 10/(eps(1-lam)) = {n_floor:.6g}")
    if messages:
        return BoundReport("desperate_redundancy_lower", 0.0, params, False, tuple(messages))

    cfac = 1.0 / (1.0 + cp / (dp.lam**2 * n * f2p))
    cfac *= 1.0 - (4.0 / math.pi) * math.sqrt(5.0 * cp / ((1.0 - dp.lam) * dp.eps * n * f2p))
    total = math.fsum(
        0.5 * math.log2(n * (1.0 - dp.lam) * math.pi * f2i / (2.0 * cp * math.e)) - dp.eps
        for f2i in f2
    )
    return BoundReport("desperate_redundancy_lower", cfac * total, params)


def search_desperate_params(
    env: Envelope, n: int, lam: float = 0.5, eps: float = 0.5, p_max: int = 400
) -> DesperateParams | None:
    """Best valid (largest-value) DesperateParams for this envelope and n,
    scanning p; None when no p satisfies the preconditions."""
    best = None
    best_val = -math.inf
    for p in range(1, p_max + 1):
        dp = DesperateParams(p, lam, eps)
        rep = desperate_lower_bound(env, n, dp)
        if rep.valid and rep.value > best_val:
            best, best_val = dp, rep.value
    return best


def distinct_symbols_integral(alpha: float) -> float:
    """int_0^inf (1 - e^{-u}) u^(-1-1/alpha) du by quadrature; the endpoint
    singularity over [0, 1] is summed analytically:
    sum_k (-1)^(k+1) / (k! (k - 1/alpha))."""
    if alpha <= 1.0:
        raise DomainError("requires alpha > 1")
    s = 1.0 / alpha
    series = 0.0
    term_sign = 1.0
    fact = 1.0
    for k in range(1, 40):
        fact *= k
        series += term_sign / (fact * (k - s))
        term_sign = -term_sign
    integrand = lambda u: -math.expm1(-u) * u ** (-1.0 - s)  # noqa: E731
    tail, _ = quad(integrand, 1.0, math.inf, epsabs=0.0, epsrel=1e-10, limit=200)
    return series + tail


def expected_distinct_bounds(alpha: float, c_lo: float, c_hi: float, n: int) -> DistinctBoundInterval:
    """Sandwich for E[Z_n] when the marginal satisfies
    c_lo / k^alpha <= P(k) <= c_hi / k^alpha beyond some k0:

        c_lo^(1/a) A(a)/a * n^(1/a) (1-o(1))  <=  E[Z_n]  <=  (2 ln2 c_hi)^(1/a) A(a)/a * n^(1/a)

    with A(a) = distinct_symbols_integral(a). The returned lower value is the
    leading term (no o(1) discount).
    """
    if alpha <= 1.0:
        raise DomainError("requires alpha > 1")
    if not 0.0 < c_lo <= c_hi:
        raise DomainError("need 0 < c_lo <= c_hi")
    a_int = distinct_symbols_integral(alpha)
    lower_c = c_lo ** (1.0 / alpha) * a_int / alpha
    upper_c = (TWO_LN2 * c_hi) ** (1.0 / alpha) * a_int / alpha
    scale = n ** (1.0 / alpha)
    return DistinctBoundInterval(lower_c * scale, upper_c * scale, lower_c, upper_c)


def dictionary_length_bound(alpha: float, c: float, n: int) -> float:
    """Expected bits to ship a dictionary of first occurrences under a
    power-law envelope: 2 * (1 + int_1^inf (1 - e^{-(2 ln2) C n / x^alpha}) log2 x dx),
    quadrature relative error < 1e-6."""
    if alpha <= 1.0 or c <= 0.0 or n < 0:
        raise DomainError("need alpha > 1, C > 0, n >= 0")
    scale = TWO_LN2 * c * n
    integrand = lambda x: -math.expm1(-scale * x**-alpha) * math.log2(x)  # noqa: E731
    split = max(scale ** (1.0 / alpha), 2.0)
    part1, _ = quad(integrand, 1.0, split, epsabs=0.0, epsrel=1e-9, limit=200)
    part2, _ = quad(integrand, split, math.inf, epsabs=0.0, epsrel=1e-9, limit=200)
    return 2.0 * (1.0 + part1 + part2)


def finite_class_regret_bound(m: int, n: int) -> float:
    """Convenience: regret_upper_bound for the full m-ary class, which the
    scan resolves to (m-1)/2 log2 n + 2 exactly for n >= m."""
    return regret_upper_bound(FiniteUniformEnvelope(m), n).value
