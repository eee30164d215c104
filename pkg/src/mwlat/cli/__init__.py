"""Command-line interface (``mwlat``) and the text formats it reads."""

from .main import build_parser, main, run

__all__ = ["main", "run", "build_parser"]
