"""
Dominant subsets, and how to build one to order
===============================================

A subset of theories is dominant when the full framework ranks actions
exactly as that subset would on its own, while the remaining theories
would rank them differently.  The witness constructors go the other
way: given a framework and a credence budget k, they inject one theory
that captures the chosen rule.
"""

from fractions import Fraction

from moralagg import (
    ActionSet,
    EthicalFramework,
    SwfSpec,
    Theory,
    enumerate_dominant_subsets,
    is_dominant_subset,
    witness_maximin,
    witness_mec,
)

framework = EthicalFramework(
    [
        Theory("u", {"left": -1, "right": -2}),
        Theory("d", {"left": -10000, "right": -1000}),
    ],
    {"u": Fraction(99, 100), "d": Fraction(1, 100)},
)
actions = ActionSet(("left", "right"))

# Under the expected mean, the 1/100 doomsayer is dominant: the full
# ranking is its ranking, and the other 99/100 disagree.
verdict = is_dominant_subset(SwfSpec.mec(), framework, actions, {"d"})
print("is {d} dominant under mec?", verdict.is_dominant)
print("  full ranking:    ", verdict.full_ranking)
print("  {d} alone:       ", verdict.dominant_ranking)
print("  {u} alone:       ", verdict.yielding_ranking)
print()

for spec in (SwfSpec.mec(), SwfSpec.kthm(Fraction(1, 10)), SwfSpec.hm()):
    found = enumerate_dominant_subsets(spec, framework, actions)
    names = [
        "{" + ", ".join(sorted(s.theory_ids)) + "}" for s in found
    ] or ["none"]
    print(f"dominant subsets under {spec.label()}: " + ", ".join(names))
print()

# Now the constructive direction.  Start from a single-theory framework
# that prefers 'a', and ask for a 1/4-credence theory that flips the
# expected-mean ranking toward 'b'.
base = EthicalFramework([Theory("t", {"a": 1, "b": 0})], {"t": 1})
pair = ActionSet(("a", "b"))
report = witness_mec(base, pair, Fraction(1, 4), target="b")
ft = report.extended_framework.theory("ft")
print("injected theory for mec:", dict(ft.evaluations))
print("verified dominant:", report.verdict.is_dominant)
print("extension ranking:", report.verdict.full_ranking)
print()

# Maximin is even cheaper to capture: the injected theory only has to
# dig the floor a little deeper under its preferred action.
report = witness_maximin(framework, actions, Fraction(1, 100))
ft = report.extended_framework.theory("ft")
print("injected theory for maximin:", dict(ft.evaluations))
print("verified dominant:", report.verdict.is_dominant)
