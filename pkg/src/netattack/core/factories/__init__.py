from .logger_factory import LoggerFactory
from .action_factory import ActionFactory
