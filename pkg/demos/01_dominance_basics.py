"""Dominance, k-dominance, and the k-dominant skyline on a worked example.

Five items with four smaller-is-better attributes each.  Full dominance
requires being no worse everywhere; k-dominance relaxes that to any k of the
d dimensions, which shrinks the skyline but breaks transitivity.
"""

from skystream import UncertainItem, dominance_counts, dominates, k_dominant_skyline, k_dominates

items = [
    UncertainItem(0, (10, 3, 4, 6), 0.2),
    UncertainItem(1, (9, 8, 5, 9), 0.4),
    UncertainItem(2, (2, 10, 4, 4), 0.5),
    UncertainItem(3, (5, 2, 3, 8), 0.1),
    UncertainItem(4, (7, 6, 4, 6), 0.8),
]
u1, u2, u3, u4, u5 = items

print("item  attrs            prob")
for it in items:
    print(f"u{it.id + 1}    {str(it.attrs):16} {it.prob}")

print()
print(f"u4 vs u2 counts: {dominance_counts(u4, u2)}  -> dominates: {dominates(u4, u2)}")
print(f"u1 vs u2 counts: {dominance_counts(u1, u2)}  -> 3-dominates: {k_dominates(u1, u2, 3)}")

print()
print("relaxing k allows cycles (no transitivity below k = d):")
print(f"  u1 2-dominates u3: {k_dominates(u1, u3, 2)}")
print(f"  u3 2-dominates u1: {k_dominates(u3, u1, 2)}")

print()
for k in (4, 3, 2):
    members = sorted(k_dominant_skyline(items, k))
    names = ", ".join(f"u{i + 1}" for i in members)
    print(f"{k}-dominant skyline: {{{names}}}")
