from .cli import run_cli, setup_parser

__all__ = ["run_cli", "setup_parser"]
