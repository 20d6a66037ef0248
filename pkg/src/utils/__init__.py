"""工具包"""

from .logger import Logger
from .config_manager import ConfigManager
from .exceptions import AppError, ConfigError

__all__ = [
    'Logger',
    'ConfigManager',
    'AppError',
    'ConfigError',
]
