"""
Command-line front end.

Public API: main, emit_plot
"""

from .main import build_parser, main
from .plots import PLOT_KINDS, emit_plot

__all__ = [
    'PLOT_KINDS',
    'build_parser',
    'emit_plot',
    'main'
]
