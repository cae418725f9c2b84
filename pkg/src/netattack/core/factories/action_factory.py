from typing import TYPE_CHECKING, Callable, Dict, List, Type

from ..actions import ActionSpec
from .logger_factory import LoggerFactory

if TYPE_CHECKING:
    from ..catalog.base import BaseAction

logger = LoggerFactory.get_logger("netattack.action_factory")


class ActionFactory:
    """
    Factory for creating concrete actions from catalog specs.
    Maps an ActionSpec's `implementation` name to the class that runs it.
    """

    _registry: Dict[str, Type["BaseAction"]] = {}

    @classmethod
    def register(cls, implementation: str) -> Callable[[Type["BaseAction"]], Type["BaseAction"]]:
        def decorator(action_cls: Type["BaseAction"]) -> Type["BaseAction"]:
            cls._registry[implementation] = action_cls
            return action_cls
        return decorator

    @classmethod
    def implementations(cls) -> List[str]:
        cls._load_builtin()
        return sorted(cls._registry)

    @classmethod
    def create(cls, spec: ActionSpec) -> "BaseAction":
        """
        Instantiate the action for a spec.

        Args:
            spec: Catalog entry to bind.

        Returns:
            The concrete action.
        """
        cls._load_builtin()
        try:
            action_cls = cls._registry[spec.implementation]
        except KeyError:
            raise ValueError(f"Unsupported action implementation: {spec.implementation}") from None
        logger.debug(f"Creating {action_cls.__name__} for {spec.name}")
        return action_cls(spec)

    @staticmethod
    def _load_builtin() -> None:
        # Importing the catalog package registers the built-in actions.
        from .. import catalog  # noqa: F401
