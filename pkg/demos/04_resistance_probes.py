"""
Rules that refuse to be captured
================================

The trimmed mean and the highest median come with a guarantee: no
coalition of injected theories with total credence at or below the trim
level (or below 1/2, for the median) can become dominant in the
canonical two-action family.  The probes throw adversaries at that
family and check the guarantee; the audit does so at scale.
"""

import random
from fractions import Fraction

from moralagg import (
    ActionSet,
    Theory,
    probe_hm_non_fanatical,
    probe_kthm_non_fanatical,
    run_audit,
)
from moralagg.sampling import random_adversary

# A single adversary with billion-scale stakes and credence k/2.
extremist = Theory("x", {"a": -(10**9), "b": 10**9})
k = Fraction(1, 10)
print(
    "extremist trimmed out at k=1/10:",
    probe_kthm_non_fanatical(k, [(extremist, k / 2)]),
)
print(
    "median ignores the same extremist:",
    probe_hm_non_fanatical(k, [(extremist, k / 2)]),
)

# Random adversaries, as wild as the sampler can make them.
rng = random.Random(2024)
for _ in range(5):
    adversary = random_adversary(rng, ActionSet(("a", "b")), Fraction(2, 5))
    mass = sum((c for _, c in adversary), Fraction(0))
    survived = probe_kthm_non_fanatical(Fraction(2, 5), adversary)
    print(f"adversary of mass {mass}: resisted={survived}")
print()

# The audit bundles the capture suites (the witnesses must succeed) and
# the resistance suites (the probes must hold) over seeded populations.
report = run_audit(seed=1, trials=25)
for suite in report.suites:
    print(f"{suite.name:<16} {suite.level:<22} {suite.passed}/{suite.total}")
print("all suites passed:", report.ok)
