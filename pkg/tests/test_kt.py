import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envcode.errors import DomainError, ResourceLimitError
from envcode.kt import (
    CountVector,
    kt_conditional,
    kt_log_marginal,
    kt_pointwise_regret_bound,
    regret_asymptote,
    shtarkov_regret_exact,
)


def test_conditional_examples():
    assert kt_conditional(CountVector((0, 0)), 0) == (1, 2)
    assert kt_conditional(CountVector((2, 0)), 0) == (5, 6)
    assert kt_conditional(CountVector((2, 1, 0)), 0) == (5, 9)


def test_conditional_domain():
    with pytest.raises(DomainError):
        kt_conditional(CountVector((1, 1)), 2)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=50), min_size=1, max_size=8))
def test_conditionals_sum_to_one_exactly(counts):
    cv = CountVector(tuple(counts))
    nums = [kt_conditional(cv, j) for j in range(cv.alphabet_size)]
    den = nums[0][1]
    assert all(d == den for _, d in nums)
    assert sum(n for n, _ in nums) == den


def test_log_marginal_examples():
    assert kt_log_marginal(CountVector((1, 0))) == pytest.approx(-1.0, abs=1e-12)
    assert kt_log_marginal(CountVector((2, 0))) == pytest.approx(math.log2(3 / 8), abs=1e-12)
    assert kt_log_marginal(CountVector((1, 1))) == pytest.approx(math.log2(1 / 8), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=64), st.integers(2, 5))
def test_chain_rule(seq, m):
    seq = [s % m for s in seq]
    cv = CountVector((0,) * m)
    acc = 0.0
    for s in seq:
        num, den = kt_conditional(cv, s)
        acc += math.log2(num / den)
        cv = cv.incremented(s)
    assert kt_log_marginal(cv) == pytest.approx(acc, abs=1e-10)


def _types(m, n):
    for combo in itertools.combinations(range(n + m - 1), m - 1):
        prev = -1
        parts = []
        for c in combo + (n + m - 1,):
            parts.append(c - prev - 1)
            prev = c
        yield tuple(parts)


def _multinomial(n, parts):
    v = math.factorial(n)
    for p in parts:
        v //= math.factorial(p)
    return v


def test_normalization_direct_enumeration():
    # every sequence, tiny alphabets: sum of KT marginals is exactly 1
    for m, n in ((2, 10), (3, 6), (4, 4)):
        total = 0.0
        for seq in itertools.product(range(m), repeat=n):
            counts = [0] * m
            for s in seq:
                counts[s] += 1
            total += 2.0 ** kt_log_marginal(CountVector(tuple(counts)))
        assert total == pytest.approx(1.0, abs=1e-9)


def test_normalization_via_types():
    for m, n in ((2, 16), (4, 8), (16, 4)):
        if m**n > 1 << 16:
            continue
        total = sum(
            _multinomial(n, t) * 2.0 ** kt_log_marginal(CountVector(t)) for t in _types(m, n)
        )
        assert total == pytest.approx(1.0, abs=1e-9)


def test_shtarkov_examples():
    assert shtarkov_regret_exact(1, 5) == 0.0
    assert shtarkov_regret_exact(2, 1) == pytest.approx(1.0, abs=1e-12)
    assert shtarkov_regret_exact(2, 2) == pytest.approx(math.log2(2.5), abs=1e-12)


def test_shtarkov_budget_error_names_budget():
    with pytest.raises(ResourceLimitError, match="budget of 1000"):
        shtarkov_regret_exact(6, 100, budget=1000)


def _brute_shtarkov(m, n):
    total = 0.0
    for seq in itertools.product(range(m), repeat=n):
        counts = [0] * m
        for s in seq:
            counts[s] += 1
        total += math.prod((c / n) ** c for c in counts if c)
    return math.log2(total)


def test_shtarkov_matches_string_enumeration():
    for m, n in ((2, 8), (3, 5), (4, 4), (5, 3)):
        assert shtarkov_regret_exact(m, n) == pytest.approx(_brute_shtarkov(m, n), abs=1e-10)


def test_pointwise_bound_examples():
    assert kt_pointwise_regret_bound(2, 0) == pytest.approx(0.0, abs=1e-12)
    assert kt_pointwise_regret_bound(2, 1) == pytest.approx(1.0, abs=1e-12)
    v = kt_pointwise_regret_bound(3, 8)
    assert shtarkov_regret_exact(3, 8) <= v


def _kt_max_regret(m, n):
    best = -math.inf
    for t in _types(m, n):
        phat = sum(c * math.log2(c / n) for c in t if c)
        best = max(best, phat - kt_log_marginal(CountVector(t)))
    return best


def test_regret_ordering_chain():
    # exact minimax <= KT's max regret <= the Gamma-ratio bound
    for m, n in ((2, 12), (3, 8), (4, 6)):
        exact = shtarkov_regret_exact(m, n)
        ktmax = _kt_max_regret(m, n)
        bound = kt_pointwise_regret_bound(m, n)
        assert exact <= ktmax + 1e-10
        assert ktmax <= bound + 1e-10


def test_final_inequality_small_grid():
    for m in range(2, 11):
        for n in range(2, 11):
            assert shtarkov_regret_exact(m, n) <= (m - 1) / 2 * math.log2(n) + 2


def test_monotone_and_subadditive():
    for m in (2, 3):
        vals = {n: shtarkov_regret_exact(m, n) for n in range(1, 13)}
        for n in range(1, 12):
            assert vals[n] <= vals[n + 1] + 1e-12
        for a in range(1, 12):
            for b in range(1, 13 - a):
                assert vals[a + b] <= vals[a] + vals[b] + 1e-10


def test_asymptote_shape():
    # deviation from the limit shape shrinks with n
    for m in (2, 3):
        d1 = abs(shtarkov_regret_exact(m, 256) - regret_asymptote(m, 256))
        d2 = abs(shtarkov_regret_exact(m, 1024) - regret_asymptote(m, 1024))
        assert d2 < d1


def test_count_vector_validation():
    with pytest.raises(DomainError):
        CountVector(())
    with pytest.raises(DomainError):
        CountVector((1, -1))
