"""
Success semantics of quantified goals.

Any short-circuits on the first success, All on the first failure, and
AllPossible always visits every element. Leaves are three-valued so the same
walk serves execution (never undecided) and environment-only evaluation.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence

import config.settings as settings

from ..assets import Asset, EnvironmentKnowledge
from .goal import Goal, Quantifier, QuantifierType


class GoalStatus(str, Enum):
    SUCCESS = "success"
    FAILURE = "failure"
    UNDECIDED = "undecided"


@dataclass
class Judgement:
    status: GoalStatus
    completed: List[Asset] = field(default_factory=list)
    attempted: List[Asset] = field(default_factory=list)
    outcomes: Dict[Hashable, GoalStatus] = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.status is GoalStatus.SUCCESS

    @property
    def decided(self) -> bool:
        return self.status is not GoalStatus.UNDECIDED

    @classmethod
    def leaf(cls, template: Asset, status: GoalStatus, completed: Sequence[Asset] = ()) -> "Judgement":
        return cls(
            status=status,
            completed=list(completed) if status is GoalStatus.SUCCESS else [],
            attempted=[template],
            outcomes={template.signature(): status},
        )


LeafAttempt = Callable[[Asset], Judgement]


def evaluate(goal: Goal, attempt: LeafAttempt) -> Judgement:
    """Walk the quantifiers outermost first, calling attempt on each concrete template."""
    return _evaluate(goal.template, goal.quantifiers, attempt)


def _evaluate(template: Asset, quantifiers: Sequence[Quantifier], attempt: LeafAttempt) -> Judgement:
    if not quantifiers:
        return attempt(template)
    head, rest = quantifiers[0], quantifiers[1:]
    children: List[Judgement] = []
    for value in head.domain:
        child = _evaluate(template.with_attrs(**{head.attribute: value}), rest, attempt)
        children.append(child)
        if head.qtype is QuantifierType.ANY and child.status is GoalStatus.SUCCESS:
            break
        if head.qtype is QuantifierType.ALL and child.status is GoalStatus.FAILURE:
            break
    return _combine(head.qtype, children)


def _combine(qtype: QuantifierType, children: List[Judgement]) -> Judgement:
    statuses = [c.status for c in children]
    if not children:
        # An empty domain completes nothing.
        status = GoalStatus.FAILURE
    elif qtype is QuantifierType.ANY:
        if GoalStatus.SUCCESS in statuses:
            status = GoalStatus.SUCCESS
        elif GoalStatus.UNDECIDED in statuses:
            status = GoalStatus.UNDECIDED
        else:
            status = GoalStatus.FAILURE
    elif qtype is QuantifierType.ALL:
        if GoalStatus.FAILURE in statuses:
            status = GoalStatus.FAILURE
        elif GoalStatus.UNDECIDED in statuses:
            status = GoalStatus.UNDECIDED
        else:
            status = GoalStatus.SUCCESS
    else:
        if GoalStatus.UNDECIDED in statuses:
            status = GoalStatus.UNDECIDED
        elif GoalStatus.SUCCESS in statuses:
            status = GoalStatus.SUCCESS
        else:
            status = GoalStatus.FAILURE

    merged = Judgement(status=status)
    for child in children:
        if child.status is GoalStatus.SUCCESS:
            merged.completed.extend(child.completed)
        merged.attempted.extend(child.attempted)
        merged.outcomes.update(child.outcomes)
    return merged


def judge(goal: Goal, outcomes: Mapping[Hashable, bool]) -> Judgement:
    """
    Verdict of a goal given per-template success booleans keyed by
    Asset.signature(). The map must cover every template the walk visits.
    """
    def attempt(template: Asset) -> Judgement:
        ok = outcomes[template.signature()]
        status = GoalStatus.SUCCESS if ok else GoalStatus.FAILURE
        return Judgement.leaf(template, status, [template] if ok else [])

    return evaluate(goal, attempt)


def environment_leaf(template: Asset, env: EnvironmentKnowledge, now: float, min_trust: float) -> Judgement:
    """Decide one concrete template from stored evidence alone."""
    for candidate in env.query(template, min_trust=min_trust, now=now):
        if candidate.probability >= 1.0:
            return Judgement.leaf(template, GoalStatus.SUCCESS, [candidate])
    negative = env.find(template)
    if negative is not None and negative.is_negative and env.query(negative, min_trust=min_trust, now=now):
        return Judgement.leaf(template, GoalStatus.FAILURE)
    return Judgement.leaf(template, GoalStatus.UNDECIDED)


def satisfied_by_environment(goal: Goal, env: EnvironmentKnowledge, now: float = 0.0,
                             min_trust: float = settings.DEFAULT_MIN_TRUST) -> Optional[Judgement]:
    """
    The goal's verdict from env queries only (zero cost), or None when the
    stored evidence does not decide it.
    """
    result = evaluate(goal, lambda template: environment_leaf(template, env, now, min_trust))
    return result if result.decided else None
