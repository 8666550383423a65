"""Render publication-style figures from ctqw CSV/JSON artifacts.

This package only reads the documented file schemas; it never computes or
re-derives distributions.
"""

__version__ = "0.1.0"

from .recipes import FIGURE_IDS, FigureRecipe, RecipeError, build_recipe
from .render import render
