"""Render ewadyn CSV outputs as PNG figures.

Stateless file-to-file converters: each call reads CSVs produced by the
ewadyn CLI and writes one image.  The analysis package stays free of any
plotting stack; this one pins matplotlib's Agg backend so identical inputs
produce identical image bytes.
"""

from .io import SchemaError, read_table
from .render import FIGURE_KINDS, PERIOD_COLORS, REGIME_COLORS, FigureSpec, render

__version__ = "0.1.0"
