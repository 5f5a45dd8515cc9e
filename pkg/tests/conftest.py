import pytest

from skystream import NormalizationBounds, UncertainItem, k_dominates

# Worked 4-dimensional example set used across the suite: five items with
# known dominance structure (u4 fully dominates u2; u1 and u3 2-dominate
# each other; {u3, u4} is the 3-dominant skyline).
TABLE1_ROWS = [
    ((10.0, 3.0, 4.0, 6.0), 0.2),
    ((9.0, 8.0, 5.0, 9.0), 0.4),
    ((2.0, 10.0, 4.0, 4.0), 0.5),
    ((5.0, 2.0, 3.0, 8.0), 0.1),
    ((7.0, 6.0, 4.0, 6.0), 0.8),
]


@pytest.fixture
def table1():
    """The five example items, ids 0..4 (u1..u5)."""
    return [UncertainItem(i, attrs, prob) for i, (attrs, prob) in enumerate(TABLE1_ROWS)]


@pytest.fixture
def table1_bounds():
    return NormalizationBounds.uniform(0.0, 10.0, 4)


def brute_force_probability(item, window_items, k):
    """Direct brute-force skyline probability: item's own probability times
    the product of (1 - P(u')) over every window item u' that k-dominates it.

    Plain multiply chain, independent of the ledger's log-domain bookkeeping.
    """
    p = item.prob
    for other in window_items:
        if other.id != item.id and k_dominates(other, item, k):
            p *= 1.0 - other.prob
    return p
