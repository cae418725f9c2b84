"""Concrete actions run against the simulator, and the action catalog."""

from .base import ActionContext, ActionOutcome, BaseAction, run_quantified
from .catalog import Catalog, deep_merge
from .discovery import IPConnect, NetworkDiscovery, PortScan
from .fingerprinting import BannerGrabber, OSDetectByBanner, OSFingerprint, match_fingerprint
from .connect import TCPConnect, TCPConnectCreatingHops
from .exploit import Exploit
from .maintenance import CleanLogs

__all__ = [
    "ActionContext",
    "ActionOutcome",
    "BaseAction",
    "run_quantified",
    "Catalog",
    "deep_merge",
    "IPConnect",
    "NetworkDiscovery",
    "PortScan",
    "BannerGrabber",
    "OSDetectByBanner",
    "OSFingerprint",
    "match_fingerprint",
    "TCPConnect",
    "TCPConnectCreatingHops",
    "Exploit",
    "CleanLogs",
]
