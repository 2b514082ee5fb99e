"""
A rescue dilemma under moral uncertainty
========================================

One firefighter, two doors.  Behind the left door: a child.  Behind the
right door: a stranger's dog.  The agent is almost sure (99/100) of a
theory that mildly prefers saving the child, but keeps a sliver of
credence (1/100) in a theory for which opening the left door is a moral
catastrophe.  Which door does each aggregation rule open?
"""

from fractions import Fraction

from moralagg import (
    ActionSet,
    EthicalFramework,
    SwfSpec,
    Theory,
    TrimMode,
    aggregate,
)

# Evaluations are exact rationals; nothing here is ever a float.
usual = Theory("u", {"left": -1, "right": -2})
doom = Theory("d", {"left": -10000, "right": -1000})

framework = EthicalFramework(
    [usual, doom],
    {"u": Fraction(99, 100), "d": Fraction(1, 100)},
)
actions = ActionSet(("left", "right"))

rules = [
    SwfSpec.mec(),
    SwfSpec.maximin(),
    SwfSpec.kthm(Fraction(1, 10)),
    SwfSpec.kthm(Fraction(1, 10), TrimMode.RENORMALIZED),
    SwfSpec.hm(),
]

for spec in rules:
    result = aggregate(spec, framework, actions)
    print(f"{spec.label()}:")
    for action in actions:
        print(f"  {action:>5} -> {result.scores[action]}")
    # Rankings read worst to best, so the rightmost group wins.
    print(f"  ranking: {result.ranking}")
    print()

# The expected mean and the minimum both obey the doomsayer: its stakes
# are huge enough to swamp a 1/100 credence.  Trimming it away (any k
# above 1/100) or taking the credence-weighted median restores the
# majority verdict.
