"""命令行平台"""

from .app import cli, main

__all__ = ["cli", "main"]
