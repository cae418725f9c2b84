"""
Quantified goals: an asset template plus an ordered list of quantifiers.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Hashable, Iterator, List, Mapping, Sequence, Tuple

from ..assets import UNKNOWN, Asset
from ..exceptions import GoalValidationError
from .domains import Domain


class QuantifierType(str, Enum):
    ANY = "Any"
    ALL = "All"
    ALL_POSSIBLE = "AllPossible"


@dataclass(frozen=True)
class Quantifier:
    qtype: QuantifierType
    attribute: str
    domain: Domain

    def to_dict(self) -> Dict[str, Any]:
        return {"type": self.qtype.value, "attribute": self.attribute, "domain": self.domain.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Quantifier":
        try:
            qtype = QuantifierType(data["type"])
        except (KeyError, ValueError) as e:
            raise GoalValidationError(f"invalid quantifier type in {dict(data)!r}") from e
        return cls(qtype=qtype, attribute=str(data["attribute"]).lstrip("#"), domain=Domain.from_dict(data["domain"]))

    def __str__(self) -> str:
        return f"({self.qtype.value} #{self.attribute} from:{self.domain!r})"


@dataclass(frozen=True)
class Goal:
    """
    "Complete this asset", scoped by quantifiers. The first quantifier is the
    outermost loop. candidate_actions is filled once, by graph construction.
    """

    template: Asset
    quantifiers: Tuple[Quantifier, ...] = ()
    candidate_actions: List[str] = field(default_factory=list, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "quantifiers", tuple(self.quantifiers))
        seen = set()
        for q in self.quantifiers:
            if q.attribute not in self.template.kind.attributes:
                raise GoalValidationError(f"quantified attribute '{q.attribute}' not in {self.template.kind.name}")
            if q.attribute in seen:
                raise GoalValidationError(f"attribute '{q.attribute}' quantified more than once")
            if self.template.attrs[q.attribute] is not UNKNOWN:
                raise GoalValidationError(f"quantified attribute '{q.attribute}' must be Unknown in the template")
            q.domain.check_category(self.template.kind.category(q.attribute))
            seen.add(q.attribute)

    @property
    def quantified_attributes(self) -> Tuple[str, ...]:
        return tuple(q.attribute for q in self.quantifiers)

    def common_attributes(self) -> Dict[str, Any]:
        """Concrete, non-quantified information shared by every instantiation."""
        return {a: v for a, v in self.template.attrs.items() if v is not UNKNOWN}

    def signature(self) -> Tuple[Hashable, ...]:
        return (self.template.signature(),) + tuple(
            (q.qtype.value, q.attribute, q.domain.key()) for q in self.quantifiers
        )

    def size(self) -> int:
        total = 1
        for q in self.quantifiers:
            total *= len(q.domain)
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {"template": self.template.to_dict(), "quantifiers": [q.to_dict() for q in self.quantifiers]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Goal":
        return cls(
            template=Asset.from_dict(data["template"]),
            quantifiers=tuple(Quantifier.from_dict(q) for q in data.get("quantifiers", [])),
        )

    @classmethod
    def concrete(cls, template: Asset) -> "Goal":
        return cls(template=template)

    def describe(self) -> str:
        quant = " ".join(str(q) for q in self.quantifiers)
        return f"{self.template.describe()} {quant}".strip()


def instantiations(goal: Goal) -> Iterator[Asset]:
    """
    Lazily yield concrete templates by nesting quantifiers left to right.
    Nothing is materialized ahead of the consumer.
    """
    yield from _expand(goal.template, goal.quantifiers)


def _expand(template: Asset, quantifiers: Sequence[Quantifier]) -> Iterator[Asset]:
    if not quantifiers:
        yield template
        return
    head, rest = quantifiers[0], quantifiers[1:]
    for value in head.domain:
        yield from _expand(template.with_attrs(**{head.attribute: value}), rest)
