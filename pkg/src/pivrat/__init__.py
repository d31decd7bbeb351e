"""Rational Painleve-IV solutions and their large-parameter asymptotics."""

from . import asymptotics, boutroux, curves, exact, numerics

__version__ = "0.1.0"
__all__ = ["exact", "numerics", "curves", "boutroux", "asymptotics"]
