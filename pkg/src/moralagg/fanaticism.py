"""Dominant subsets and fanaticism analysis.

A subset of theories is *dominant* when restricting the framework to it
reproduces the full ranking while the remaining theories, on their own,
rank differently: the subset settles the outcome and the rest yield.

A functional is *fanatical* at credence level k when every framework can
be captured this way by newly added theories of total credence at most k.
This module constructs explicit capturing extensions for the mean and
maximin rules at every level, and for the trimmed mean when the injected
credence exceeds the trim level; it also provides probes showing that the
trimmed mean below its trim level and the weighted median resist every
such adversary on the canonical two-action family.

Every constructed witness is re-verified through
:func:`is_dominant_subset` before it is returned; a construction that
fails verification raises :class:`ConstructionFailed` instead of
returning quietly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .core import (
    ActionId,
    ActionSet,
    EthicalFramework,
    MoralAggError,
    Ranking,
    RationalLike,
    Theory,
    TheoryId,
    UnknownTheoryId,
    extend,
    restrict,
    to_rational,
)
from .functionals import (
    HALF,
    SwfSpec,
    TrimMode,
    aggregate,
    bottom_k,
    top_k,
    wmedian,
)


class NotProperSubset(MoralAggError):
    def __init__(self) -> None:
        super().__init__(
            "a dominant-subset candidate must be a nonempty proper subset"
        )


class TooManyTheories(MoralAggError):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(
            f"framework has {count} theories; enumeration is capped at {limit}"
        )


class TargetIsUniqueMaximizer(MoralAggError):
    def __init__(self, action: ActionId):
        self.action = action
        super().__init__(
            f"target action {action!r} is already the unique best action"
        )


class BadCredence(MoralAggError):
    def __init__(self, value: Fraction):
        self.value = value
        super().__init__(f"credence level must lie in (0, 1/2), got {value}")


class BadCredencePair(MoralAggError):
    def __init__(self, k: Fraction, k_prime: Fraction):
        self.k = k
        self.k_prime = k_prime
        super().__init__(
            f"need 0 <= k < k' < 1/2, got k={k}, k'={k_prime}"
        )


class CredenceTooHigh(MoralAggError):
    def __init__(self, mass: Fraction, limit: Fraction):
        self.mass = mass
        self.limit = limit
        super().__init__(
            f"adversary credence mass {mass} exceeds the probed level {limit}"
        )


class ConstructionFailed(MoralAggError):
    pass


@dataclass(frozen=True)
class DominanceVerdict:
    """Outcome of one dominance check.

    ``is_dominant`` holds iff the full ranking equals the candidate
    subset's ranking and that ranking differs from the complement's.
    """

    is_dominant: bool
    full_ranking: Ranking
    dominant_ranking: Ranking
    yielding_ranking: Ranking


@dataclass(frozen=True)
class DominantSubset:
    theory_ids: frozenset[TheoryId]
    total_credence: Fraction
    verdict: DominanceVerdict


@dataclass(frozen=True)
class WitnessReport:
    """A verified capturing extension.

    ``construction`` records the intermediate constants (bounds, floor
    values, the action permutation, the chosen target) so a reader can
    recompute the injected evaluations by hand.
    """

    extended_framework: EthicalFramework
    injected_theories: frozenset[TheoryId]
    total_credence: Fraction
    verdict: DominanceVerdict
    construction: Mapping[str, object]


def is_dominant_subset(
    spec: SwfSpec,
    framework: EthicalFramework,
    actions: ActionSet,
    theory_ids: Iterable[TheoryId],
) -> DominanceVerdict:
    """Check whether ``theory_ids`` is a dominant subset of ``framework``.

    Both the candidate and its complement are renormalized restrictions
    of the framework, and all three rankings are computed under ``spec``.

    Raises
    ------
    NotProperSubset
        ``theory_ids`` is empty or contains every theory.
    UnknownTheoryId
        Some id does not occur in the framework.
    """
    candidate = frozenset(theory_ids)
    all_ids = frozenset(framework.theory_ids())
    for tid in sorted(candidate - all_ids):
        raise UnknownTheoryId(tid)
    if not candidate or candidate == all_ids:
        raise NotProperSubset()
    full = aggregate(spec, framework, actions).ranking
    dominant = aggregate(spec, restrict(framework, candidate), actions).ranking
    yielding = aggregate(
        spec, restrict(framework, all_ids - candidate), actions
    ).ranking
    return DominanceVerdict(
        is_dominant=(full == dominant) and (dominant != yielding),
        full_ranking=full,
        dominant_ranking=dominant,
        yielding_ranking=yielding,
    )


def enumerate_dominant_subsets(
    spec: SwfSpec,
    framework: EthicalFramework,
    actions: ActionSet,
    max_theories: int = 16,
) -> list[DominantSubset]:
    """Exhaustively list every dominant subset of ``framework``.

    All nonempty proper subsets are checked, so the work is exponential
    in the number of theories; frameworks larger than ``max_theories``
    are rejected up front with :class:`TooManyTheories`.  Results are
    ordered by subset size, then lexicographically by ids.
    """
    ids = sorted(framework.theory_ids())
    if len(ids) > max_theories:
        raise TooManyTheories(len(ids), max_theories)
    found: list[DominantSubset] = []
    for size in range(1, len(ids)):
        for combo in itertools.combinations(ids, size):
            verdict = is_dominant_subset(spec, framework, actions, combo)
            if verdict.is_dominant:
                found.append(
                    DominantSubset(
                        theory_ids=frozenset(combo),
                        total_credence=framework.total_credence(combo),
                        verdict=verdict,
                    )
                )
    return found


def _fresh_theory_id(taken: Iterable[TheoryId], base: str = "ft") -> TheoryId:
    taken = set(taken)
    if base not in taken:
        return base
    n = 2
    while f"{base}{n}" in taken:
        n += 1
    return f"{base}{n}"


def _declaration_first(group: Iterable[ActionId], actions: ActionSet) -> ActionId:
    members = set(group)
    for a in actions:
        if a in members:
            return a
    raise AssertionError("ranking group disjoint from action set")


def _choose_target(
    ranking: Ranking, actions: ActionSet, target: Optional[ActionId]
) -> ActionId:
    """Pick or vet the action the injected theory will push to the top.

    Any action works except a unique best one: the capture must change
    something, and an already uniquely best target would leave the
    yielding ranking potentially identical to the imposed chain.
    Defaults to the first worst-group action, or the first action
    outright when every action is tied.
    """
    maximal = ranking.maximal_group()
    if target is None:
        if len(ranking.groups) >= 2:
            candidates = ranking.groups[0]
        else:
            candidates = frozenset(actions)
        for a in actions:
            if a in candidates and maximal != frozenset({a}):
                return a
        raise AssertionError("no valid target exists")
    if target not in actions:
        raise MoralAggError(f"target {target!r} is not in the action set")
    if maximal == frozenset({target}):
        raise TargetIsUniqueMaximizer(target)
    return target


def _chain_theory(
    framework: EthicalFramework,
    actions: ActionSet,
    target: ActionId,
    slope: Fraction,
) -> tuple[Theory, tuple[ActionId, ...]]:
    # Values slope, 2*slope, ..., n*slope along a permutation that puts the
    # target last, so the injected theory alone ranks the target strictly best.
    permutation = tuple(a for a in actions if a != target) + (target,)
    values = {a: slope * (i + 1) for i, a in enumerate(permutation)}
    ft_id = _fresh_theory_id(framework.theory_ids())
    return Theory(ft_id, values), permutation


def _verify(
    spec: SwfSpec,
    extended: EthicalFramework,
    actions: ActionSet,
    injected: frozenset[TheoryId],
    construction: Mapping[str, object],
) -> DominanceVerdict:
    verdict = is_dominant_subset(spec, extended, actions, injected)
    if not verdict.is_dominant:
        raise ConstructionFailed(
            f"constructed extension failed dominance verification: {construction!r}"
        )
    return verdict


def witness_mec(
    framework: EthicalFramework,
    actions: ActionSet,
    k: RationalLike,
    target: Optional[ActionId] = None,
) -> WitnessReport:
    """Capture the mean rule with one theory of credence exactly ``k``.

    The injected theory walks the actions up an arithmetic ladder with
    step ``m/k`` where ``m`` exceeds twice the largest absolute weighted
    mean of the base framework, so after extension the weighted means
    form a strict chain ending at ``target`` no matter what the base
    theories say.  Works for every ``k`` in (0, 1/2).

    Raises
    ------
    BadCredence
        ``k`` outside (0, 1/2).
    TargetIsUniqueMaximizer
        ``target`` was supplied and is already the unique best action.
    ConstructionFailed
        The re-verification failed (this would be a bug, not an input
        defect).
    """
    k = to_rational(k)
    if not (0 < k < HALF):
        raise BadCredence(k)
    if len(actions) < 2:
        raise MoralAggError("capturing needs at least two actions")
    spec = SwfSpec.mec()
    base = aggregate(spec, framework, actions)
    chosen = _choose_target(base.ranking, actions, target)
    a_star = _declaration_first(base.ranking.maximal_group() - {chosen}, actions)
    s = max(abs(v) for v in base.scores.values())
    m = 2 * s + 1
    ft, permutation = _chain_theory(framework, actions, chosen, m / k)
    extended = extend(framework, [(ft, k)])
    construction = {
        "target": chosen,
        "a_star": a_star,
        "bound": s,
        "step": m,
        "permutation": permutation,
        "injected_id": ft.id,
    }
    verdict = _verify(spec, extended, actions, frozenset({ft.id}), construction)
    return WitnessReport(extended, frozenset({ft.id}), k, verdict, construction)


def witness_maximin(
    framework: EthicalFramework,
    actions: ActionSet,
    k: RationalLike,
    reading: str = "corrected",
) -> WitnessReport:
    """Capture the maximin rule with one theory of credence exactly ``k``.

    The injected theory undercuts every existing evaluation: M - 2 on one
    distinguished action, M - 1 elsewhere, where M is the global minimum
    evaluation.  Maximin then listens only to the injected theory.  With
    ``reading="corrected"`` (default) the undercut action is a best
    action of the base maximin ranking, which guarantees the base
    ranking changes; ``reading="literal"`` undercuts the action attaining
    the global minimum instead, which can fail verification (for
    instance when that action is already alone at the bottom) and then
    raises :class:`ConstructionFailed`.
    """
    k = to_rational(k)
    if not (0 < k < HALF):
        raise BadCredence(k)
    if len(actions) < 2:
        raise MoralAggError("capturing needs at least two actions")
    if reading not in ("corrected", "literal"):
        raise ValueError(f"unknown reading {reading!r}")
    spec = SwfSpec.maximin()
    base = aggregate(spec, framework, actions)
    floor = min(base.scores.values())
    if reading == "corrected":
        a_star = _declaration_first(base.ranking.maximal_group(), actions)
    else:
        a_star = _declaration_first(base.ranking.groups[0], actions)
    values = {a: floor - 2 if a == a_star else floor - 1 for a in actions}
    ft = Theory(_fresh_theory_id(framework.theory_ids()), values)
    extended = extend(framework, [(ft, k)])
    construction = {
        "a_star": a_star,
        "floor": floor,
        "reading": reading,
        "injected_id": ft.id,
    }
    verdict = _verify(spec, extended, actions, frozenset({ft.id}), construction)
    return WitnessReport(extended, frozenset({ft.id}), k, verdict, construction)


def witness_kthm(
    framework: EthicalFramework,
    actions: ActionSet,
    k: RationalLike,
    k_prime: RationalLike,
    target: Optional[ActionId] = None,
) -> WitnessReport:
    """Capture the k-trimmed mean with one theory of credence ``k_prime > k``.

    A theory whose credence exceeds the trim level can never be trimmed,
    on either side: any trimmed prefix or suffix has mass at most ``k``.
    So the same ladder construction as for the mean rule goes through,
    with the bound taken over the credence-weighted absolute evaluations
    (which dominates every partially-trimmed remainder).  Verification
    runs in LITERAL mode at level ``k``.

    Raises
    ------
    BadCredencePair
        Unless ``0 <= k < k_prime < 1/2``.
    TargetIsUniqueMaximizer
        ``target`` was supplied and is already the unique best action of
        the base trimmed ranking.
    """
    k = to_rational(k)
    k_prime = to_rational(k_prime)
    if not (0 <= k < k_prime < HALF):
        raise BadCredencePair(k, k_prime)
    if len(actions) < 2:
        raise MoralAggError("capturing needs at least two actions")
    spec = SwfSpec.kthm(k, TrimMode.LITERAL)
    base = aggregate(spec, framework, actions)
    chosen = _choose_target(base.ranking, actions, target)
    a_star = _declaration_first(base.ranking.maximal_group() - {chosen}, actions)
    bound = max(
        sum(
            (framework.credences[t.id] * abs(t.evaluation(a))
             for t in framework.theories),
            Fraction(0),
        )
        for a in actions
    )
    s = (1 - k_prime) * bound
    m = 2 * s + 1
    ft, permutation = _chain_theory(framework, actions, chosen, m / k_prime)
    extended = extend(framework, [(ft, k_prime)])
    construction = {
        "target": chosen,
        "a_star": a_star,
        "bound": s,
        "step": m,
        "permutation": permutation,
        "injected_id": ft.id,
    }
    verdict = _verify(spec, extended, actions, frozenset({ft.id}), construction)
    return WitnessReport(extended, frozenset({ft.id}), k_prime, verdict, construction)


CANONICAL_ACTIONS = ActionSet(("a", "b"))


def canonical_family(
    adversary_ids: Iterable[TheoryId] = (),
) -> tuple[EthicalFramework, ActionSet]:
    """The two-action, single-theory family used by the resistance probes.

    One theory of full credence prefers action ``a`` (evaluation 1) to
    action ``b`` (evaluation 0).  The theory id avoids the given
    adversary ids.
    """
    tid = _fresh_theory_id(adversary_ids, base="t")
    base = Theory(tid, {"a": Fraction(1), "b": Fraction(0)})
    return EthicalFramework([base], {tid: Fraction(1)}), CANONICAL_ACTIONS


def _checked_adversary(
    adversary: Sequence[tuple[Theory, RationalLike]],
    k: Fraction,
) -> list[tuple[Theory, Fraction]]:
    fixed = [(t, to_rational(c)) for t, c in adversary]
    mass = sum((c for _, c in fixed), Fraction(0))
    if mass > k:
        raise CredenceTooHigh(mass, k)
    return fixed


def probe_kthm_non_fanatical(
    k: RationalLike,
    adversary: Sequence[tuple[Theory, RationalLike]],
) -> bool:
    """Throw an adversary of credence mass <= k at the trimmed mean.

    Every adversary theory must evaluate actions ``a`` and ``b``.  After
    extending the canonical family, the base theory's credence exceeds
    1/2 > k, so the sorted evaluations of either action trim exactly the
    adversary theories on both sides of it; the LITERAL ranking therefore
    stays put.  Returns True iff the adversary is *not* a dominant
    subset.  The structural claims (all adversaries trimmed, ranking
    preserved) are re-checked at runtime and raise
    :class:`ConstructionFailed` if violated.
    """
    k = to_rational(k)
    if not (0 < k < HALF):
        raise BadCredence(k)
    fixed = _checked_adversary(adversary, k)
    base, actions = canonical_family([t.id for t, _ in fixed])
    extended = extend(base, fixed)
    spec = SwfSpec.kthm(k, TrimMode.LITERAL)
    adversary_ids = frozenset(t.id for t, _ in fixed)
    for action in actions:
        shed = bottom_k(extended, action, k) | top_k(extended, action, k)
        if not adversary_ids <= shed:
            raise ConstructionFailed(
                f"adversary theory survived trimming on {action!r}"
            )
    expected = Ranking([{"b"}, {"a"}])
    result = aggregate(spec, extended, actions)
    if result.ranking != expected:
        raise ConstructionFailed(
            f"trimmed ranking moved to {result.ranking} under the adversary"
        )
    if not adversary_ids:
        return True
    verdict = is_dominant_subset(spec, extended, actions, adversary_ids)
    return not verdict.is_dominant


def probe_hm_non_fanatical(
    k: RationalLike,
    adversary: Sequence[tuple[Theory, RationalLike]],
) -> bool:
    """Throw an adversary of credence mass <= k at the weighted median.

    The base theory keeps credence above 1/2 after extension, so it
    dictates the weighted median of every action and the ranking cannot
    move.  Returns True iff the adversary is *not* a dominant subset.
    """
    k = to_rational(k)
    if not (0 < k < HALF):
        raise BadCredence(k)
    fixed = _checked_adversary(adversary, k)
    base, actions = canonical_family([t.id for t, _ in fixed])
    base_theory = base.theories[0]
    extended = extend(base, fixed)
    spec = SwfSpec.hm()
    for action in actions:
        if wmedian(extended, action) != base_theory.evaluation(action):
            raise ConstructionFailed(
                f"majority theory failed to dictate the median of {action!r}"
            )
    expected = Ranking([{"b"}, {"a"}])
    result = aggregate(spec, extended, actions)
    if result.ranking != expected:
        raise ConstructionFailed(
            f"median ranking moved to {result.ranking} under the adversary"
        )
    adversary_ids = frozenset(t.id for t, _ in fixed)
    if not adversary_ids:
        return True
    verdict = is_dominant_subset(spec, extended, actions, adversary_ids)
    return not verdict.is_dominant
