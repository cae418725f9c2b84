"""
Exceptions raised by the netattack core.

Budget exhaustion and detection are attack verdicts, not errors, and never
surface through this hierarchy.
"""

from typing import List, Optional


class NetAttackError(Exception):
    """Base class for all netattack errors."""


class ConfigurationError(NetAttackError, ValueError):
    """A tunable (half-life, depth limit, weights...) is out of range."""


class AssetSchemaError(NetAttackError, ValueError):
    """An asset does not conform to its kind's attribute schema."""


class GoalValidationError(NetAttackError, ValueError):
    """A goal's quantifiers or domains are inconsistent with its template."""


class PlannerInvariantError(NetAttackError, RuntimeError):
    """Internal planner inconsistency; always signals a bug."""


class UnplannableError(NetAttackError):
    """No action graph or no pivot path reaches the requested goal."""


class ActionUnavailable(NetAttackError):
    """The action may not be used under the current attack parameters."""


class ScenarioValidationError(NetAttackError, ValueError):
    """
    A scenario failed validation.

    Carries every diagnostic found, not just the first one.
    """

    def __init__(self, diagnostics: List[str], message: Optional[str] = None):
        self.diagnostics = list(diagnostics)
        super().__init__(message or f"{len(self.diagnostics)} scenario problem(s): " + "; ".join(self.diagnostics))
